#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gea {

// Opaque alphanumeric token identifying a category (an origin lab, or the
// composite category pooling small labs).
using CategoryId = std::string;

inline constexpr const char* kCompositeDisplayName = "Unknown Engineered";

// Row sums may deviate from exact unity by this much before validation flags
// them; accepts submissions written with 6 decimal places.
inline constexpr double kRowSumTolerance = 1e-4;

// One predictor's submission: J x K row-stochastic probabilities.
struct PredictionMatrix {
  std::vector<std::string> sequence_ids;  // length J, unique, file order
  std::vector<CategoryId> category_ids;   // length K, unique, file order
  Eigen::MatrixXd values;                 // J x K

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

// sequence_id -> true category. Keeps insertion order so that a loaded file
// serializes back byte-identically.
class LabelMap {
 public:
  void insert(std::string sequence_id, CategoryId category);
  bool contains(const std::string& sequence_id) const {
    return index_.count(sequence_id) != 0;
  }
  const CategoryId& at(const std::string& sequence_id) const;
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<std::string, CategoryId>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, CategoryId>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Raw metadata travels as field -> raw value; the field names form the fixed
// vocabulary accepted by encode_metadata.
struct SequenceRecord {
  std::string sequence_id;
  std::string dna;     // over {A,C,G,T,N}, length >= 1
  std::string lab_id;  // raw pre-pooling lab token; may be empty
  std::map<std::string, std::string> metadata;
};

// Acknowledgement links between sequences; endpoints must name known
// sequences and self-loops are rejected at load.
struct LineageGraph {
  std::vector<std::pair<std::string, std::string>> edges;
};

struct RowSumFinding {
  std::string sequence_id;
  double sum = 0.0;
};

struct RangeFinding {
  std::string sequence_id;
  CategoryId category_id;
  double value = 0.0;
};

// All findings are reported, never thrown, so partial analyses of malformed
// submissions stay possible.
struct ValidationReport {
  std::vector<RowSumFinding> row_sum_violations;
  std::vector<std::string> labels_without_row;  // labelled ids absent from matrix
  std::vector<std::string> rows_without_label;  // matrix rows absent from labels
  std::vector<CategoryId> unknown_categories;   // label categories outside matrix set
  std::vector<RangeFinding> out_of_range;       // values < 0 or > 1

  bool ok() const {
    return row_sum_violations.empty() && labels_without_row.empty() &&
           rows_without_label.empty() && unknown_categories.empty() &&
           out_of_range.empty();
  }
  std::string summary() const;
};

ValidationReport validate(const PredictionMatrix& matrix, const LabelMap& labels);

// id -> position lookup for the ordered id lists carried by the matrix types.
std::unordered_map<std::string, int> index_of(const std::vector<std::string>& ids);

}  // namespace gea
