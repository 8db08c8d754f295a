#include "gea/ensemble_stats.hpp"

#include "gea/io.hpp"
#include "gea/rank_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gea {

namespace {

// Symmetric difference of two id sets, for alignment error messages.
std::string describe_mismatch(const std::vector<std::string>& expected,
                              const std::vector<std::string>& actual,
                              const std::string& what, int member_index) {
  std::set<std::string> a(expected.begin(), expected.end());
  std::set<std::string> b(actual.begin(), actual.end());
  std::vector<std::string> only_a;
  std::vector<std::string> only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::back_inserter(only_b));
  std::ostringstream out;
  out << "member " << member_index << " has mismatched " << what << ";";
  auto list = [&](const char* side, const std::vector<std::string>& ids) {
    if (ids.empty()) return;
    out << ' ' << side << ':';
    const std::size_t shown = std::min<std::size_t>(ids.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) out << ' ' << ids[i];
    if (shown < ids.size()) out << " ... (" << ids.size() - shown << " more)";
  };
  list("missing", only_a);
  list("unexpected", only_b);
  return out.str();
}

// Row/column permutation taking `member` into the canonical id order.
Eigen::MatrixXd align_to(const PredictionMatrix& canonical,
                         const PredictionMatrix& member, int member_index) {
  if (member.sequence_ids == canonical.sequence_ids &&
      member.category_ids == canonical.category_ids) {
    return member.values;
  }
  const auto row_of = index_of(member.sequence_ids);
  const auto col_of = index_of(member.category_ids);
  if (row_of.size() != canonical.sequence_ids.size()) {
    throw AlignmentError(describe_mismatch(canonical.sequence_ids,
                                           member.sequence_ids, "sequence ids",
                                           member_index));
  }
  if (col_of.size() != canonical.category_ids.size()) {
    throw AlignmentError(describe_mismatch(canonical.category_ids,
                                           member.category_ids, "category ids",
                                           member_index));
  }
  Eigen::MatrixXd aligned(canonical.rows(), canonical.cols());
  std::vector<int> row_map(static_cast<std::size_t>(canonical.rows()));
  std::vector<int> col_map(static_cast<std::size_t>(canonical.cols()));
  for (Eigen::Index i = 0; i < canonical.rows(); ++i) {
    const auto it = row_of.find(canonical.sequence_ids[i]);
    if (it == row_of.end()) {
      throw AlignmentError(describe_mismatch(canonical.sequence_ids,
                                             member.sequence_ids, "sequence ids",
                                             member_index));
    }
    row_map[static_cast<std::size_t>(i)] = it->second;
  }
  for (Eigen::Index j = 0; j < canonical.cols(); ++j) {
    const auto it = col_of.find(canonical.category_ids[j]);
    if (it == col_of.end()) {
      throw AlignmentError(describe_mismatch(canonical.category_ids,
                                             member.category_ids, "category ids",
                                             member_index));
    }
    col_map[static_cast<std::size_t>(j)] = it->second;
  }
  for (Eigen::Index i = 0; i < canonical.rows(); ++i) {
    for (Eigen::Index j = 0; j < canonical.cols(); ++j) {
      aligned(i, j) = member.values(row_map[static_cast<std::size_t>(i)],
                                    col_map[static_cast<std::size_t>(j)]);
    }
  }
  return aligned;
}

}  // namespace

PredictionMatrix ensemble(const EnsembleSpec& spec) {
  if (spec.members.empty()) {
    throw std::invalid_argument("ensemble requires at least one member");
  }
  std::vector<double> weights = spec.weights;
  if (weights.empty()) {
    weights.assign(spec.members.size(), 1.0 / static_cast<double>(spec.members.size()));
  }
  if (weights.size() != spec.members.size()) {
    throw std::invalid_argument("ensemble weights must match member count");
  }
  double weight_sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("ensemble weights must be non-negative");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("ensemble weights must sum to 1");
  }

  const PredictionMatrix& canonical = *spec.members.front();
  PredictionMatrix out;
  out.sequence_ids = canonical.sequence_ids;
  out.category_ids = canonical.category_ids;
  if (spec.members.size() == 1) {
    out.values = canonical.values;  // identity ensemble is exact
    return out;
  }
  out.values = weights[0] * canonical.values;
  for (std::size_t m = 1; m < spec.members.size(); ++m) {
    out.values += weights[m] * align_to(canonical, *spec.members[m],
                                        static_cast<int>(m));
  }
  return out;
}

namespace {

// Average-fractional ranks (standard tie handling).
Eigen::VectorXd fractional_ranks(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const Eigen::Index n = v.size();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return v(a) < v(b); });
  Eigen::VectorXd ranks(n);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start;
    while (end + 1 < n && v(order[end + 1]) == v(order[start])) ++end;
    const double shared = 0.5 * static_cast<double>(start + end) + 1.0;
    for (Eigen::Index i = start; i <= end; ++i) ranks(order[i]) = shared;
    start = end + 1;
  }
  return ranks;
}

}  // namespace

std::optional<double> spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("spearman requires equal-length sequences");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("spearman requires at least two samples");
  }
  const Eigen::VectorXd rx = fractional_ranks(x);
  const Eigen::VectorXd ry = fractional_ranks(y);
  const Eigen::VectorXd cx = rx.array() - rx.mean();
  const Eigen::VectorXd cy = ry.array() - ry.mean();
  const double var_x = cx.squaredNorm();
  const double var_y = cy.squaredNorm();
  if (var_x == 0.0 || var_y == 0.0) return std::nullopt;
  return cx.dot(cy) / std::sqrt(var_x * var_y);
}

double geometric_mean(const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() == 0) {
    throw std::invalid_argument("geometric mean of empty sequence");
  }
  double log_sum = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values(i) > 0.0)) {
      throw std::invalid_argument("geometric mean requires positive values");
    }
    log_sum += std::log(values(i));
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

std::array<std::vector<int>, 10> decile_groups(
    const Eigen::Ref<const Eigen::VectorXd>& scores) {
  const Eigen::Index n = scores.size();
  if (n == 0) throw std::invalid_argument("decile_groups of empty input");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores(a) > scores(b); });

  std::array<std::vector<int>, 10> groups;
  const std::size_t base = static_cast<std::size_t>(n) / 10;
  const std::size_t remainder = static_cast<std::size_t>(n) % 10;
  std::size_t cursor = 0;
  for (std::size_t g = 0; g < 10; ++g) {
    const std::size_t size = base + (g < remainder ? 1 : 0);
    groups[g].assign(order.begin() + cursor, order.begin() + cursor + size);
    cursor += size;
  }
  return groups;
}

Eigen::VectorXd decile_summaries(const Eigen::Ref<const Eigen::VectorXd>& scores,
                                 const std::array<std::vector<int>, 10>& groups,
                                 bool geometric) {
  Eigen::VectorXd out(10);
  for (std::size_t g = 0; g < 10; ++g) {
    if (groups[g].empty()) {
      out(static_cast<Eigen::Index>(g)) = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    Eigen::VectorXd member_scores(static_cast<Eigen::Index>(groups[g].size()));
    for (std::size_t i = 0; i < groups[g].size(); ++i) {
      member_scores(static_cast<Eigen::Index>(i)) = scores(groups[g][i]);
    }
    if (geometric) {
      out(static_cast<Eigen::Index>(g)) = geometric_mean(member_scores);
    } else {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < member_scores.size(); ++i) sum += member_scores(i);
      out(static_cast<Eigen::Index>(g)) =
          sum / static_cast<double>(member_scores.size());
    }
  }
  return out;
}

CategoryAnalysis category_analysis(const PredictionMatrix& p, const LabelMap& labels,
                                   const CategoryId& target) {
  const auto column = index_of(p.category_ids);
  const auto target_it = column.find(target);
  if (target_it == column.end()) {
    throw std::invalid_argument("unknown target category: " + target);
  }
  const int target_col = target_it->second;
  const RankMatrix r = rank_matrix(p);
  const Eigen::VectorXi truth = true_ranks(r, labels);

  const int k = static_cast<int>(p.cols());
  const std::array<int, 2> ns = {std::min(1, k), std::min(10, k)};

  std::int64_t included = 0;
  double log_rank_sum = 0.0;
  std::array<std::int64_t, 2> hits_target{};
  std::array<std::int64_t, 2> hits_known{};
  std::int64_t rows_target = 0;

  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const int target_rank = r.ranks(i, target_col);
    if (target_rank <= std::min(10, k)) ++included;
    log_rank_sum += std::log(static_cast<double>(target_rank));
    const bool is_target_row = labels.at(p.sequence_ids[i]) == target;
    if (is_target_row) ++rows_target;
    for (std::size_t t = 0; t < ns.size(); ++t) {
      if (truth(i) <= ns[t]) {
        (is_target_row ? hits_target[t] : hits_known[t]) += 1;
      }
    }
  }

  const std::int64_t rows = p.rows();
  const std::int64_t rows_known = rows - rows_target;
  CategoryAnalysis analysis;
  analysis.target = target;
  analysis.top10_inclusion_rate =
      static_cast<double>(included) / static_cast<double>(rows);
  analysis.geometric_mean_rank =
      std::exp(log_rank_sum / static_cast<double>(rows));
  for (std::size_t t = 0; t < ns.size(); ++t) {
    analysis.accuracy_all[t] =
        static_cast<double>(hits_target[t] + hits_known[t]) /
        static_cast<double>(rows);
    analysis.accuracy_target_only[t] =
        rows_target == 0 ? 0.0
                         : static_cast<double>(hits_target[t]) /
                               static_cast<double>(rows_target);
    analysis.accuracy_known_only[t] =
        rows_known == 0 ? 0.0
                        : static_cast<double>(hits_known[t]) /
                              static_cast<double>(rows_known);
  }
  return analysis;
}


void serialize_category_analysis(const CategoryAnalysis& analysis,
                                 std::ostream& out) {
  out << "metric,value\n";
  out << "target," << analysis.target << '\n';
  out << "top10_inclusion_rate,";
  write_shortest(out, analysis.top10_inclusion_rate);
  out << "\ngeometric_mean_rank,";
  write_shortest(out, analysis.geometric_mean_rank);
  out << '\n';
  const std::array<const char*, 2> ns = {"1", "10"};
  for (std::size_t t = 0; t < ns.size(); ++t) {
    out << "top" << ns[t] << "_accuracy_all,";
    write_shortest(out, analysis.accuracy_all[t]);
    out << "\ntop" << ns[t] << "_accuracy_known_only,";
    write_shortest(out, analysis.accuracy_known_only[t]);
    out << "\ntop" << ns[t] << "_accuracy_target_only,";
    write_shortest(out, analysis.accuracy_target_only[t]);
    out << '\n';
  }
}

void serialize_decile_summaries(const std::array<std::vector<int>, 10>& groups,
                                const Eigen::Ref<const Eigen::VectorXd>& summaries,
                                std::ostream& out) {
  out << "decile,size,summary\n";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out << (g + 1) << ',' << groups[g].size() << ',';
    const double value = summaries(static_cast<Eigen::Index>(g));
    if (!std::isnan(value)) write_shortest(out, value);
    out << '\n';
  }
}

}  // namespace gea
