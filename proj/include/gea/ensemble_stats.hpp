#pragma once

#include "gea/core_data.hpp"

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

namespace gea {

// Members are averaged element-wise after alignment to the first member's
// sequence and category order. Empty weights mean uniform.
struct EnsembleSpec {
  std::vector<const PredictionMatrix*> members;
  std::vector<double> weights;
};

class AlignmentError : public std::runtime_error {
 public:
  explicit AlignmentError(const std::string& message)
      : std::runtime_error(message) {}
};

PredictionMatrix ensemble(const EnsembleSpec& spec);

// Pearson correlation of average-fractional ranks. Returns nullopt when
// either rank vector has zero variance (the coefficient is undefined).
std::optional<double> spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y);

// exp(mean(log v)), computed in log space; throws on non-positive input.
double geometric_mean(const Eigen::Ref<const Eigen::VectorXd>& values);

// Teams sorted descending by score and cut into 10 contiguous groups, sizes
// as equal as possible with the extra members going to the higher deciles.
// Entries are indices into the input scores.
std::array<std::vector<int>, 10> decile_groups(
    const Eigen::Ref<const Eigen::VectorXd>& scores);

// Per-group mean of scores (arithmetic by default); NaN marks empty groups.
Eigen::VectorXd decile_summaries(const Eigen::Ref<const Eigen::VectorXd>& scores,
                                 const std::array<std::vector<int>, 10>& groups,
                                 bool geometric = false);

// How one category behaves inside a predictor's rankings: how often it makes
// the top 10, its geometric mean rank, and top-{1,10} accuracy on all rows,
// on rows whose true label differs from it, and on its own rows.
struct CategoryAnalysis {
  CategoryId target;
  double top10_inclusion_rate = 0.0;
  double geometric_mean_rank = 1.0;
  std::array<double, 2> accuracy_all{};          // N = 1, 10
  std::array<double, 2> accuracy_known_only{};   // true label != target
  std::array<double, 2> accuracy_target_only{};  // true label == target
};

CategoryAnalysis category_analysis(const PredictionMatrix& p, const LabelMap& labels,
                                   const CategoryId& target);

// Plot-emission CSV forms.
void serialize_category_analysis(const CategoryAnalysis& analysis, std::ostream& out);
void serialize_decile_summaries(const std::array<std::vector<int>, 10>& groups,
                                const Eigen::Ref<const Eigen::VectorXd>& summaries,
                                std::ostream& out);

}  // namespace gea
