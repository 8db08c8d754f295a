#pragma once

#include "gea/core_data.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gea {

class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& message)
      : std::runtime_error(message) {}
};

// Labs below the threshold pool into one composite category; everything else
// maps to itself. The mapping is total over the labs observed in `records`.
struct CategoryPooling {
  int threshold = 10;
  std::unordered_map<std::string, CategoryId> mapping;
  CategoryId composite_id;

  const CategoryId& category_of(const std::string& lab_id) const;
  std::size_t category_count() const;
};

CategoryPooling pool_small_labs(const std::vector<SequenceRecord>& records,
                                int threshold = 10,
                                CategoryId composite_id = "unknown_engineered");

// Connected components of the acknowledgement graph; sequences without edges
// form singleton components. Output order is deterministic: components sorted
// by their smallest member id, members sorted within each component.
std::vector<std::vector<std::string>> lineage_components(
    const LineageGraph& graph, const std::vector<std::string>& all_ids);

enum class Split { train, leaderboard, holdout };
const char* split_name(Split split);

struct SplitFractions {
  double train = 0.770;
  double leaderboard = 0.091;
  double holdout = 0.139;
};

struct SplitAssignment {
  std::vector<std::pair<std::string, Split>> entries;  // record order of input
  std::unordered_map<std::string, Split> index;
  // Sequences shorter than the minimum length are excluded from leaderboard
  // and holdout rather than assigned; they are listed here with a notice.
  std::vector<std::string> dropped;
  std::vector<std::string> notices;
  SplitFractions targets;
  std::uint64_t seed = 0;

  std::array<double, 3> realized_fractions() const;  // train, leaderboard, holdout
};

// Seeded, deterministic three-way split. Whole lineage components are
// assigned atomically: shuffle components, reserve components into holdout
// until every category holds at least `min_holdout` records there, then feed
// the rest to whichever split has the largest remaining quota (ties to
// train). Categories that cannot reach the holdout floor raise
// InfeasibleError naming the category.
SplitAssignment split_dataset(const std::vector<SequenceRecord>& records,
                              const CategoryPooling& pooling,
                              const std::vector<std::vector<std::string>>& components,
                              const SplitFractions& fractions, int min_holdout,
                              std::uint64_t seed, std::size_t min_sequence_length = 2);

// Deterministic-under-seed bijection onto distinct lowercase alphanumeric
// tokens of fixed length. Depends only on the id set and seed, not the input
// order.
std::unordered_map<std::string, std::string> obfuscate_ids(
    const std::vector<std::string>& ids, std::uint64_t seed, int length = 12);

struct OneHotTable {
  std::vector<std::string> sequence_ids;
  std::vector<std::string> columns;  // the 39 fixed feature columns
  Eigen::MatrixXi values;            // 0/1
};

// The fixed one-hot vocabulary, in emission order.
const std::vector<std::string>& one_hot_columns();

// Raw metadata values one-hot encoded into the fixed 39 columns. Unrecognized
// values fall to the group's `_other` column; a group without `_other`
// (copy_number) rejects unrecognized values. `selectable_markers` accepts
// multiple `;`-separated values, so several of its columns may be set.
OneHotTable encode_metadata(const std::vector<SequenceRecord>& records);

void serialize_one_hot(const OneHotTable& table, std::ostream& out);

}  // namespace gea
