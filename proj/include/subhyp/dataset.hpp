#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "subhyp/hypergraph.hpp"

namespace subhyp {

enum class ColumnType { Auto, Categorical, Numerical };
enum class Binning { EqualWidth, EqualFrequency };

struct DatasetSpec {
  std::string path;
  std::string label;        ///< column name, or a 0-based index when there is no header
  bool header = true;
  std::map<std::string, ColumnType> column_types;  ///< by name or index; others are auto-detected
  int bins = 10;
  Binning binning = Binning::EqualWidth;
  double alpha = 0.04;
  double theta = 1.0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Comma-separated values with double-quote escaping. A missing header gets
/// column names "0", "1", ... Throws Error(ParseError) on ragged rows.
CsvTable read_csv(std::istream& in, bool header);

struct IngestResult {
  SubmodularHypergraph graph;
  std::vector<int> labels;               ///< index of the label value, by sorted value
  std::vector<std::string> label_values;
  std::vector<std::string> edge_names;   ///< "column=value" or "column#bin"
  std::vector<std::string> column_kinds; ///< per feature column, "categorical" or "numerical"
  int rows_read = 0;
  int rows_dropped = 0;    ///< rows with an empty cell
  int edges_dropped = 0;   ///< groups with at most one vertex
  long long total_size = 0;
};

/// One hyperedge per (categorical column, value) and per (numerical column,
/// bin); groups of size <= 1 are dropped. theta_e = spec.theta, alpha weights,
/// mu = degrees. Throws Error(ParseError) or Error(EmptyHypergraph).
IngestResult ingest(const CsvTable& table, const DatasetSpec& spec);
IngestResult ingest(const DatasetSpec& spec);

/// Misclassified count under the better of the two side-to-label bijections.
/// Throws Error(LabelArityMismatch) for non-binary labels or length mismatch.
int clustering_error(std::span<const std::uint8_t> side, std::span<const int> labels);

}  // namespace subhyp
