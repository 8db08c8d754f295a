#pragma once

#include "gea/core_data.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <vector>

namespace gea {

// J x K integer ranks. The category with the highest probability in a row
// holds rank 1; every member of a tie group holds the group's maximum
// position, so a row of K equal values is all rank K.
struct RankMatrix {
  std::vector<std::string> sequence_ids;
  std::vector<CategoryId> category_ids;
  Eigen::MatrixXi ranks;  // each entry in [1, K]

  Eigen::Index rows() const { return ranks.rows(); }
  Eigen::Index cols() const { return ranks.cols(); }
};

// values[N-1] = top-N accuracy. Non-decreasing, and values[K-1] == 1 exactly
// because maximum-rank ties keep every rank within [1, K].
struct AccuracyCurve {
  Eigen::VectorXd values;

  double at(int n) const { return values(n - 1); }
  Eigen::Index size() const { return values.size(); }
};

struct XMetricSet {
  std::vector<double> thresholds;  // percentages, ascending
  std::vector<int> scores;         // X{threshold}, each in [1, K]
};

// Maximum-rank ranking of one row of probabilities. Ties are detected by
// exact value equality: the rule exists for deliberately uniform padding
// (all-zero tails), which is exact, and an epsilon would merge near ties.
template <typename Derived>
Eigen::VectorXi rank_row(const Eigen::DenseBase<Derived>& probs) {
  const Eigen::Index k = probs.size();
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return probs(a) > probs(b); });

  Eigen::VectorXi ranks(k);
  Eigen::Index group_start = 0;
  while (group_start < k) {
    Eigen::Index group_end = group_start;  // last index sharing the value
    while (group_end + 1 < k &&
           probs(order[group_end + 1]) == probs(order[group_start])) {
      ++group_end;
    }
    const int max_rank = static_cast<int>(group_end) + 1;
    for (Eigen::Index i = group_start; i <= group_end; ++i) {
      ranks(order[i]) = max_rank;
    }
    group_start = group_end + 1;
  }
  return ranks;
}

RankMatrix rank_matrix(const PredictionMatrix& p);

// Rank of each row's true category; throws naming the first unlabelled
// sequence. Shared by the accuracy and per-category metrics below.
Eigen::VectorXi true_ranks(const RankMatrix& r, const LabelMap& labels);

double top_n_accuracy(const RankMatrix& r, const LabelMap& labels, int n);

// Single O(J + K) pass over a rank histogram; values[N-1] equals
// top_n_accuracy(r, labels, N) for every N.
AccuracyCurve accuracy_curve(const RankMatrix& r, const LabelMap& labels);

// Smallest N with curve[N-1] >= r_threshold/100. Always exists: the curve
// ends at exactly 1.
int x_metric(const AccuracyCurve& curve, double r_threshold);
XMetricSet x_metrics(const AccuracyCurve& curve, const std::vector<double>& thresholds);

Eigen::VectorXd misclassification_curve(const AccuracyCurve& curve);

}  // namespace gea
