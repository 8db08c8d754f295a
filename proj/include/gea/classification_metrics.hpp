#pragma once

#include "gea/core_data.hpp"
#include "gea/rank_metrics.hpp"

#include <Eigen/Dense>

namespace gea {

// Per-category rank-1 counts. A row whose top probability is tied carries no
// rank-1 assignment at all (every tied category holds the group maximum), so
// that row contributes one fn and nothing else.
struct CategoryCounts {
  std::vector<CategoryId> category_ids;
  Eigen::VectorXi tp;
  Eigen::VectorXi fp;
  Eigen::VectorXi fn;
  Eigen::VectorXi support;  // true-label count per category
};

struct PRFReport {
  std::vector<CategoryId> category_ids;
  Eigen::VectorXd precision;
  Eigen::VectorXd recall;
  Eigen::VectorXd f1;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

// Degenerate 0/0 ratios become 0 and the category still joins the macro
// averages (the pessimistic, reproducible choice). `defined_only` instead
// drops categories whose denominator is 0 from the corresponding average;
// it is not the default and no acceptance figure depends on it.
enum class MacroPolicy { all_categories, defined_only };

CategoryCounts category_counts(const RankMatrix& r, const LabelMap& labels);

PRFReport precision_recall_f1(const CategoryCounts& counts,
                              MacroPolicy policy = MacroPolicy::all_categories);

}  // namespace gea
