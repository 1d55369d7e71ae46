#include "subhyp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "subhyp/error.hpp"

namespace subhyp {

namespace {

std::vector<std::string> split_line(const std::string& line, int row) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw Error(ErrorKind::ParseError, "row " + std::to_string(row) + ": unterminated quote");
  cells.push_back(std::move(cur));
  for (auto& s : cells) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }
  return cells;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

int find_column(const CsvTable& t, const std::string& name) {
  for (std::size_t c = 0; c < t.header.size(); ++c)
    if (t.header[c] == name) return static_cast<int>(c);
  return -1;
}

}  // namespace

CsvTable read_csv(std::istream& in, bool header) {
  CsvTable t;
  std::string line;
  int row = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto cells = split_line(line, row);
    if (width == 0) {
      width = cells.size();
      if (header) {
        t.header = std::move(cells);
        continue;
      }
      for (std::size_t c = 0; c < width; ++c) t.header.push_back(std::to_string(c));
    }
    if (cells.size() != width)
      throw Error(ErrorKind::ParseError, "row " + std::to_string(row) + ": expected " + std::to_string(width) +
                                             " columns, found " + std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

IngestResult ingest(const CsvTable& table, const DatasetSpec& spec) {
  if (spec.bins < 2) throw Error(ErrorKind::Config, "bins must be >= 2");
  if (!(spec.alpha > 0.0 && spec.alpha <= 0.5)) throw Error(ErrorKind::Config, "alpha must lie in (0, 0.5]");
  if (!(spec.theta > 0.0)) throw Error(ErrorKind::Config, "theta must be positive");
  const int label_col = spec.label.empty() ? -1 : find_column(table, spec.label);
  if (!spec.label.empty() && label_col < 0)
    throw Error(ErrorKind::Config, "label column '" + spec.label + "' not found");
  for (const auto& [name, type] : spec.column_types)
    if (find_column(table, name) < 0) throw Error(ErrorKind::Config, "column '" + name + "' not found");

  // Rows with an empty cell are dropped; '?' is an ordinary category value.
  std::vector<const std::vector<std::string>*> rows;
  IngestResult res{SubmodularHypergraph({1.0}, {}, false), {}, {}, {}, {}, 0, 0, 0, 0};
  for (const auto& r : table.rows) {
    ++res.rows_read;
    if (std::any_of(r.begin(), r.end(), [](const std::string& s) { return s.empty(); })) {
      ++res.rows_dropped;
      continue;
    }
    rows.push_back(&r);
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw Error(ErrorKind::EmptyHypergraph, "no complete rows");

  std::vector<std::vector<int>> groups;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (static_cast<int>(c) == label_col) continue;
    const auto& name = table.header[c];
    ColumnType type = ColumnType::Auto;
    if (auto it = spec.column_types.find(name); it != spec.column_types.end()) type = it->second;
    std::vector<double> num(n);
    if (type != ColumnType::Categorical) {
      bool all = true;
      for (int v = 0; v < n && all; ++v) all = parse_number((*rows[v])[c], num[v]);
      if (type == ColumnType::Numerical && !all) {
        for (int v = 0; v < n; ++v)
          if (!parse_number((*rows[v])[c], num[v]))
            throw Error(ErrorKind::ParseError, "row " + std::to_string(v + 1) + ", column '" + name +
                                                   "': not a number: '" + (*rows[v])[c] + "'");
      }
      type = all ? ColumnType::Numerical : ColumnType::Categorical;
    }
    res.column_kinds.push_back(type == ColumnType::Numerical ? "numerical" : "categorical");

    if (type == ColumnType::Categorical) {
      std::map<std::string, std::vector<int>> by_value;
      for (int v = 0; v < n; ++v) by_value[(*rows[v])[c]].push_back(v);
      for (auto& [value, members] : by_value) {
        groups.push_back(std::move(members));
        names.push_back(name + "=" + value);
      }
    } else {
      std::vector<std::vector<int>> bins(spec.bins);
      if (spec.binning == Binning::EqualWidth) {
        const auto [lo, hi] = std::minmax_element(num.begin(), num.end());
        const double width = *hi - *lo;
        for (int v = 0; v < n; ++v) {
          int b = width > 0 ? static_cast<int>(std::floor((num[v] - *lo) / width * spec.bins)) : 0;
          bins[std::clamp(b, 0, spec.bins - 1)].push_back(v);
        }
      } else {
        std::vector<double> sorted = num;
        std::sort(sorted.begin(), sorted.end());
        for (int v = 0; v < n; ++v) {
          const auto rank = std::lower_bound(sorted.begin(), sorted.end(), num[v]) - sorted.begin();
          bins[std::min<long>(spec.bins - 1, rank * spec.bins / n)].push_back(v);
        }
      }
      for (int b = 0; b < spec.bins; ++b) {
        groups.push_back(std::move(bins[b]));
        names.push_back(name + "#" + std::to_string(b));
      }
    }
  }

  std::vector<Hyperedge> edges;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].size() <= 1) {
      if (!groups[i].empty()) ++res.edges_dropped;
      continue;
    }
    const int arity = static_cast<int>(groups[i].size());
    res.total_size += arity;
    res.edge_names.push_back(names[i]);
    edges.emplace_back(std::move(groups[i]), spec.theta, CutWeightFn::alpha_cardinality(arity, spec.alpha));
  }
  if (edges.empty()) throw Error(ErrorKind::EmptyHypergraph, "every feature group has at most one vertex");
  res.graph = SubmodularHypergraph::with_degree_measure(n, std::move(edges), false);

  if (label_col >= 0) {
    std::set<std::string> values;
    for (const auto* r : rows) values.insert((*r)[label_col]);
    res.label_values.assign(values.begin(), values.end());
    for (const auto* r : rows) {
      const auto it = std::lower_bound(res.label_values.begin(), res.label_values.end(), (*r)[label_col]);
      res.labels.push_back(static_cast<int>(it - res.label_values.begin()));
    }
  }
  return res;
}

IngestResult ingest(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + spec.path + "'");
  return ingest(read_csv(in, spec.header), spec);
}

int clustering_error(std::span<const std::uint8_t> side, std::span<const int> labels) {
  if (side.size() != labels.size()) throw Error(ErrorKind::LabelArityMismatch, "partition and labels differ in length");
  int mismatch = 0;
  for (std::size_t v = 0; v < side.size(); ++v) {
    if (labels[v] != 0 && labels[v] != 1) throw Error(ErrorKind::LabelArityMismatch, "labels must be binary");
    mismatch += (side[v] ? 1 : 0) != labels[v] ? 1 : 0;
  }
  return std::min(mismatch, static_cast<int>(side.size()) - mismatch);
}

}  // namespace subhyp
