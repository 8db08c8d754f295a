#include "gea/classification_metrics.hpp"

#include <stdexcept>

namespace gea {

CategoryCounts category_counts(const RankMatrix& r, const LabelMap& labels) {
  const auto column = index_of(r.category_ids);
  CategoryCounts counts;
  counts.category_ids = r.category_ids;
  counts.tp = Eigen::VectorXi::Zero(r.cols());
  counts.fp = Eigen::VectorXi::Zero(r.cols());
  counts.fn = Eigen::VectorXi::Zero(r.cols());
  counts.support = Eigen::VectorXi::Zero(r.cols());

  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    const std::string& id = r.sequence_ids[i];
    if (!labels.contains(id)) {
      throw std::runtime_error("no label for sequence: " + id);
    }
    const auto it = column.find(labels.at(id));
    if (it == column.end()) {
      throw std::runtime_error("label category not in matrix: " + labels.at(id));
    }
    const int true_col = it->second;
    counts.support(true_col) += 1;

    // At most one rank-1 entry can exist per row; a tied top group has none.
    int rank1_col = -1;
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      if (r.ranks(i, j) == 1) {
        rank1_col = static_cast<int>(j);
        break;
      }
    }
    if (rank1_col == true_col) {
      counts.tp(true_col) += 1;
    } else {
      counts.fn(true_col) += 1;
      if (rank1_col >= 0) counts.fp(rank1_col) += 1;
    }
  }
  return counts;
}

namespace {

double ratio_or_zero(int numerator, int denominator) {
  return denominator == 0 ? 0.0
                          : static_cast<double>(numerator) /
                                static_cast<double>(denominator);
}

// Left-to-right accumulation keeps macro values bit-reproducible.
double mean_where(const Eigen::VectorXd& values,
                  const std::vector<bool>& include) {
  double sum = 0.0;
  std::int64_t n = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (include[static_cast<std::size_t>(i)]) {
      sum += values(i);
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace

PRFReport precision_recall_f1(const CategoryCounts& counts, MacroPolicy policy) {
  const Eigen::Index k = counts.tp.size();
  PRFReport report;
  report.category_ids = counts.category_ids;
  report.precision.resize(k);
  report.recall.resize(k);
  report.f1.resize(k);

  std::vector<bool> p_defined(static_cast<std::size_t>(k));
  std::vector<bool> r_defined(static_cast<std::size_t>(k));
  std::vector<bool> f_defined(static_cast<std::size_t>(k));
  for (Eigen::Index c = 0; c < k; ++c) {
    const int tp = counts.tp(c);
    const int fp = counts.fp(c);
    const int fn = counts.fn(c);
    const double p = ratio_or_zero(tp, tp + fp);
    const double r = ratio_or_zero(tp, tp + fn);
    report.precision(c) = p;
    report.recall(c) = r;
    report.f1(c) = (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
    p_defined[static_cast<std::size_t>(c)] = (tp + fp) > 0;
    r_defined[static_cast<std::size_t>(c)] = (tp + fn) > 0;
    f_defined[static_cast<std::size_t>(c)] =
        p_defined[static_cast<std::size_t>(c)] &&
        r_defined[static_cast<std::size_t>(c)];
  }

  if (policy == MacroPolicy::all_categories) {
    const std::vector<bool> all(static_cast<std::size_t>(k), true);
    report.macro_precision = mean_where(report.precision, all);
    report.macro_recall = mean_where(report.recall, all);
    report.macro_f1 = mean_where(report.f1, all);
  } else {
    report.macro_precision = mean_where(report.precision, p_defined);
    report.macro_recall = mean_where(report.recall, r_defined);
    report.macro_f1 = mean_where(report.f1, f_defined);
  }
  return report;
}

}  // namespace gea
