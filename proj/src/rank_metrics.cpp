#include "gea/rank_metrics.hpp"

#include <stdexcept>

namespace gea {

RankMatrix rank_matrix(const PredictionMatrix& p) {
  RankMatrix r;
  r.sequence_ids = p.sequence_ids;
  r.category_ids = p.category_ids;
  r.ranks.resize(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    r.ranks.row(i) = rank_row(p.values.row(i)).transpose();
  }
  return r;
}

Eigen::VectorXi true_ranks(const RankMatrix& r, const LabelMap& labels) {
  const auto column = index_of(r.category_ids);
  Eigen::VectorXi out(r.rows());
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    const std::string& id = r.sequence_ids[i];
    if (!labels.contains(id)) {
      throw std::runtime_error("no label for sequence: " + id);
    }
    const auto it = column.find(labels.at(id));
    if (it == column.end()) {
      throw std::runtime_error("label category not in matrix: " + labels.at(id));
    }
    out(i) = r.ranks(i, it->second);
  }
  return out;
}

double top_n_accuracy(const RankMatrix& r, const LabelMap& labels, int n) {
  if (n < 1 || n > r.cols()) {
    throw std::invalid_argument("top-N threshold out of range: " + std::to_string(n));
  }
  const Eigen::VectorXi ranks = true_ranks(r, labels);
  const Eigen::Index hits = (ranks.array() <= n).count();
  return static_cast<double>(hits) / static_cast<double>(r.rows());
}

AccuracyCurve accuracy_curve(const RankMatrix& r, const LabelMap& labels) {
  const Eigen::VectorXi ranks = true_ranks(r, labels);
  std::vector<std::int64_t> histogram(static_cast<std::size_t>(r.cols()) + 1, 0);
  for (Eigen::Index i = 0; i < ranks.size(); ++i) {
    histogram[static_cast<std::size_t>(ranks(i))]++;
  }
  AccuracyCurve curve;
  curve.values.resize(r.cols());
  std::int64_t cumulative = 0;
  for (Eigen::Index n = 1; n <= r.cols(); ++n) {
    cumulative += histogram[static_cast<std::size_t>(n)];
    curve.values(n - 1) =
        static_cast<double>(cumulative) / static_cast<double>(r.rows());
  }
  return curve;
}

int x_metric(const AccuracyCurve& curve, double r_threshold) {
  if (!(r_threshold > 0.0 && r_threshold <= 100.0)) {
    throw std::invalid_argument("X-metric threshold must lie in (0, 100]");
  }
  const double target = r_threshold / 100.0;
  for (Eigen::Index n = 0; n < curve.size(); ++n) {
    if (curve.values(n) >= target) return static_cast<int>(n) + 1;
  }
  // Unreachable: the curve ends at exactly 1.
  return static_cast<int>(curve.size());
}

XMetricSet x_metrics(const AccuracyCurve& curve,
                     const std::vector<double>& thresholds) {
  XMetricSet set;
  set.thresholds = thresholds;
  set.scores.reserve(thresholds.size());
  for (double t : thresholds) set.scores.push_back(x_metric(curve, t));
  return set;
}

Eigen::VectorXd misclassification_curve(const AccuracyCurve& curve) {
  return (1.0 - curve.values.array()).matrix();
}

}  // namespace gea
