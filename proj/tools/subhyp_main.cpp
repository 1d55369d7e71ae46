#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subhyp/dataset.hpp"
#include "subhyp/error.hpp"
#include "subhyp/io.hpp"
#include "subhyp/runner.hpp"

namespace {

using subhyp::Error;
using subhyp::ErrorKind;
using subhyp::Json;

// Relative paths that do not exist locally are looked up in SUBHYP_DATA_DIR.
std::string resolve_data_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path) || fs::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv("SUBHYP_DATA_DIR")) {
    const auto candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

class LineSink {
 public:
  explicit LineSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
    }
  }
  void write(const Json& j) { (file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout) << j.dump() << '\n'; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Submodular hypergraph clustering and spectra"};
  app.require_subcommand(1);

  subhyp::DatasetSpec ds;
  std::string ingest_out, categorical, numerical;
  bool no_header = false, equal_frequency = false;
  auto* ingest = app.add_subcommand("ingest", "Build a hypergraph from a CSV file");
  ingest->add_option("--csv", ds.path, "CSV file (also searched in SUBHYP_DATA_DIR)")->required();
  ingest->add_option("--label", ds.label, "Label column name (0-based index with --no-header)");
  ingest->add_option("--alpha", ds.alpha, "Cardinality weight parameter in (0, 0.5]");
  ingest->add_option("--bins", ds.bins, "Bins per numerical column");
  ingest->add_option("--theta", ds.theta, "Hyperedge scale");
  ingest->add_option("--categorical", categorical, "Comma-separated columns forced categorical");
  ingest->add_option("--numerical", numerical, "Comma-separated columns forced numerical");
  ingest->add_flag("--no-header", no_header, "First row holds data");
  ingest->add_flag("--equal-frequency", equal_frequency, "Quantile bins instead of equal-width bins");
  ingest->add_option("--out", ingest_out, "Output hypergraph JSON")->required();

  subhyp::RunConfig rc;
  std::string hyper_path, config_path, report_out, alphas;
  auto* cluster = app.add_subcommand("cluster", "Run IPM-S, IPM-H and optionally SDP");
  cluster->add_option("--hypergraph", hyper_path, "Hypergraph JSON")->required();
  cluster->add_option("--config", config_path, "Run config JSON; flags given on the command line override it");
  auto* inner_opt = cluster->add_option("--inner", rc.inner, "rcdm | sfm");
  auto* restarts_opt = cluster->add_option("--restarts", rc.restarts, "IPM restarts");
  auto* seed_opt = cluster->add_option("--seed", rc.seed, "Seed");
  cluster->add_option("--alphas", alphas, "Comma-separated alpha grid for IPM-S");
  auto* sdp_flag = cluster->add_flag("--sdp", rc.sdp, "Also run the SDP method");
  cluster->add_option("--out", report_out, "JSON-lines report (default stdout)");

  std::string suite = "all";
  std::uint64_t verify_seed = 1;
  int count = 50, max_n = 8;
  auto* verify = app.add_subcommand("verify", "Run invariant suites on random instances");
  verify->add_option("--suite", suite, "all | lovasz | reduce | rayleigh | ipm | sweep | eigen | sdp");
  verify->add_option("--seed", verify_seed, "First seed");
  verify->add_option("--count", count, "Instances per suite");
  verify->add_option("--max-n", max_n, "Largest vertex count");

  double p = 2.0;
  std::string method = "sdp", spectrum_out;
  auto* spectrum = app.add_subcommand("spectrum", "Second eigenpair estimate with certificate");
  spectrum->add_option("--hypergraph", hyper_path, "Hypergraph JSON")->required();
  spectrum->add_option("--p", p, "1 or 2");
  spectrum->add_option("--method", method, "ipm | sdp | dense");
  spectrum->add_option("--seed", rc.seed, "Seed");
  spectrum->add_option("--restarts", rc.restarts, "IPM restarts");
  spectrum->add_option("--out", spectrum_out, "JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ingest->parsed()) {
      ds.path = resolve_data_path(ds.path);
      ds.header = !no_header;
      ds.binning = equal_frequency ? subhyp::Binning::EqualFrequency : subhyp::Binning::EqualWidth;
      for (const auto& c : split_list(categorical)) ds.column_types[c] = subhyp::ColumnType::Categorical;
      for (const auto& c : split_list(numerical)) ds.column_types[c] = subhyp::ColumnType::Numerical;
      const auto res = subhyp::ingest(ds);
      subhyp::write_hypergraph(ingest_out, res.graph, res.labels.empty() ? nullptr : &res.labels);
      std::cout << Json{{"vertices", res.graph.num_vertices()},
                        {"edges", res.graph.num_edges()},
                        {"total_size", res.total_size},
                        {"rows_read", res.rows_read},
                        {"rows_dropped", res.rows_dropped},
                        {"edges_dropped", res.edges_dropped},
                        {"label_values", res.label_values},
                        {"out", ingest_out}}
                       .dump()
                << '\n';
    } else if (cluster->parsed()) {
      if (!config_path.empty()) {
        subhyp::RunConfig cli = rc;
        std::ifstream in(config_path);
        if (!in) throw Error(ErrorKind::Config, "cannot open '" + config_path + "'");
        Json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& ex) {
          throw Error(ErrorKind::Config, config_path + ": " + ex.what());
        }
        rc = subhyp::config_from_json(j);
        if (inner_opt->count()) rc.inner = cli.inner;
        if (restarts_opt->count()) rc.restarts = cli.restarts;
        if (seed_opt->count()) rc.seed = cli.seed;
        if (sdp_flag->count()) rc.sdp = true;
      }
      for (const auto& a : split_list(alphas)) {
        try {
          rc.alphas.push_back(std::stod(a));
        } catch (const std::exception&) {
          throw Error(ErrorKind::Config, "bad alpha '" + a + "'");
        }
      }
      const auto file = subhyp::read_hypergraph(resolve_data_path(hyper_path));
      LineSink sink(report_out);
      for (const auto& r : subhyp::run_cluster(file, rc)) sink.write(r);
    } else if (verify->parsed()) {
      bool ok = true;
      for (const auto& r : subhyp::run_verify(suite, verify_seed, count, max_n)) {
        std::cout << r.dump() << '\n';
        ok = ok && r.at("passed").get<bool>();
      }
      return ok ? 0 : 3;
    } else if (spectrum->parsed()) {
      const auto file = subhyp::read_hypergraph(resolve_data_path(hyper_path));
      LineSink sink(spectrum_out);
      sink.write(subhyp::run_spectrum(file, p, method, rc));
    }
  } catch (const Error& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", subhyp::to_string(e.kind())}}.dump() << '\n';
    return subhyp::exit_code(e.kind());
  }
  return 0;
}
