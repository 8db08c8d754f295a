#include "gea/ensemble_stats.hpp"

#include "gea/rank_metrics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace gea;
using namespace gea::testing;

TEST_CASE("identity ensemble returns the member unchanged") {
  std::mt19937_64 rng(41);
  const auto p = random_prediction_matrix(rng, 10, 4);
  EnsembleSpec spec;
  spec.members = {&p};
  const auto out = ensemble(spec);
  CHECK(out.values == p.values);
  CHECK(out.sequence_ids == p.sequence_ids);
}

TEST_CASE("two one-hot members average to a half-half row") {
  PredictionMatrix a;
  a.sequence_ids = {"s0"};
  a.category_ids = {"x", "y"};
  a.values.resize(1, 2);
  a.values << 1.0, 0.0;
  PredictionMatrix b = a;
  b.values << 0.0, 1.0;
  EnsembleSpec spec;
  spec.members = {&a, &b};
  const auto out = ensemble(spec);
  CHECK(out.values(0, 0) == 0.5);
  CHECK(out.values(0, 1) == 0.5);
}

TEST_CASE("four random members match the element-wise mean to 1e-15") {
  std::mt19937_64 rng(42);
  std::vector<PredictionMatrix> members;
  for (int m = 0; m < 4; ++m) {
    members.push_back(random_prediction_matrix(rng, 20, 5));
    // Share ids with the first member.
    members.back().sequence_ids = members.front().sequence_ids;
    members.back().category_ids = members.front().category_ids;
  }
  EnsembleSpec spec;
  for (const auto& member : members) spec.members.push_back(&member);
  const auto out = ensemble(spec);
  // Independent accumulation order: per-element sum over members.
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      double sum = 0.0;
      for (int m = 3; m >= 0; --m) {
        sum += members[static_cast<std::size_t>(m)].values(i, j);
      }
      REQUIRE(out.values(i, j) == doctest::Approx(sum / 4.0).epsilon(1e-15));
    }
  }
  // The ensemble of valid members validates.
  const auto labels = random_labels(rng, out);
  CHECK(validate(out, labels).row_sum_violations.empty());
  CHECK(validate(out, labels).out_of_range.empty());
}

TEST_CASE("alignment reorders members by id before averaging") {
  std::mt19937_64 rng(43);
  const auto a = random_prediction_matrix(rng, 8, 5);
  PredictionMatrix shuffled = a;
  std::vector<int> row_perm(8);
  std::vector<int> col_perm(5);
  std::iota(row_perm.begin(), row_perm.end(), 0);
  std::iota(col_perm.begin(), col_perm.end(), 0);
  std::shuffle(row_perm.begin(), row_perm.end(), rng);
  std::shuffle(col_perm.begin(), col_perm.end(), rng);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 5; ++j) {
      shuffled.values(i, j) = a.values(row_perm[i], col_perm[j]);
    }
    shuffled.sequence_ids[static_cast<std::size_t>(i)] =
        a.sequence_ids[static_cast<std::size_t>(row_perm[i])];
  }
  for (int j = 0; j < 5; ++j) {
    shuffled.category_ids[static_cast<std::size_t>(j)] =
        a.category_ids[static_cast<std::size_t>(col_perm[j])];
  }
  EnsembleSpec spec;
  spec.members = {&a, &shuffled};
  const auto out = ensemble(spec);
  // A permuted copy of a averages back to a itself.
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 5; ++j) {
      REQUIRE(out.values(i, j) == doctest::Approx(a.values(i, j)).epsilon(1e-15));
    }
  }
}

TEST_CASE("uniform-weight ensemble is member-permutation equivariant") {
  std::mt19937_64 rng(44);
  std::vector<PredictionMatrix> members;
  for (int m = 0; m < 3; ++m) {
    members.push_back(random_prediction_matrix(rng, 6, 4));
    members.back().sequence_ids = members.front().sequence_ids;
    members.back().category_ids = members.front().category_ids;
  }
  EnsembleSpec forward;
  EnsembleSpec backward;
  for (int m = 0; m < 3; ++m) {
    forward.members.push_back(&members[static_cast<std::size_t>(m)]);
    backward.members.push_back(&members[static_cast<std::size_t>(2 - m)]);
  }
  const auto f = ensemble(forward);
  const auto b = ensemble(backward);
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (Eigen::Index j = 0; j < f.cols(); ++j) {
      CHECK(f.values(i, j) == doctest::Approx(b.values(i, j)).epsilon(1e-15));
    }
  }
}

TEST_CASE("mismatched id sets raise an alignment error naming the difference") {
  std::mt19937_64 rng(45);
  const auto a = random_prediction_matrix(rng, 5, 3);
  auto b = random_prediction_matrix(rng, 5, 3);
  b.sequence_ids[4] = "intruder";
  EnsembleSpec spec;
  spec.members = {&a, &b};
  CHECK_THROWS_WITH_AS(ensemble(spec), doctest::Contains("intruder"),
                       AlignmentError);
  CHECK_THROWS_WITH_AS(ensemble(spec), doctest::Contains("s4"), AlignmentError);
}

TEST_CASE("weight validation") {
  std::mt19937_64 rng(46);
  const auto a = random_prediction_matrix(rng, 3, 3);
  EnsembleSpec spec;
  spec.members = {&a, &a};
  spec.weights = {0.5, 0.6};
  CHECK_THROWS_AS(ensemble(spec), std::invalid_argument);
  spec.weights = {-0.5, 1.5};
  CHECK_THROWS_AS(ensemble(spec), std::invalid_argument);
  spec.weights = {0.25};
  CHECK_THROWS_AS(ensemble(spec), std::invalid_argument);
  spec.members = {};
  spec.weights = {};
  CHECK_THROWS_AS(ensemble(spec), std::invalid_argument);
}

TEST_CASE("spearman on monotone and reversed sequences") {
  Eigen::VectorXd x(5);
  x << 1, 2, 3, 4, 5;
  Eigen::VectorXd y = x;
  CHECK(*spearman(x, y) == doctest::Approx(1.0).epsilon(1e-15));
  Eigen::VectorXd r = x.reverse();
  CHECK(*spearman(x, r) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("spearman is invariant under strictly monotone transforms") {
  std::mt19937_64 rng(47);
  Eigen::VectorXd x(30);
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) {
    x(i) = static_cast<double>(rng() % 100);
    y(i) = static_cast<double>(rng() % 100);
  }
  const auto base = spearman(x, y);
  const Eigen::VectorXd ex = x.array().exp();
  const Eigen::VectorXd cy = y.array() * 3.0 + 7.0;
  const auto transformed = spearman(ex, cy);
  REQUIRE(base.has_value());
  REQUIRE(transformed.has_value());
  CHECK(*base == doctest::Approx(*transformed).epsilon(1e-12));
}

TEST_CASE("spearman matches the rank-then-Pearson oracle with ties") {
  std::mt19937_64 rng(48);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(30);
    std::vector<double> y(30);
    for (int i = 0; i < 30; ++i) {
      x[static_cast<std::size_t>(i)] = static_cast<double>(rng() % 10);  // ties
      y[static_cast<std::size_t>(i)] = static_cast<double>(rng() % 10);
    }
    const Eigen::VectorXd ex = Eigen::Map<const Eigen::VectorXd>(x.data(), 30);
    const Eigen::VectorXd ey = Eigen::Map<const Eigen::VectorXd>(y.data(), 30);
    const auto mine = spearman(ex, ey);
    if (!mine.has_value()) continue;  // constant draw
    REQUIRE(*mine == doctest::Approx(oracle_spearman(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("spearman edge cases") {
  Eigen::VectorXd x(3);
  x << 1, 2, 3;
  Eigen::VectorXd constant = Eigen::VectorXd::Ones(3);
  CHECK(!spearman(x, constant).has_value());
  Eigen::VectorXd short_x(1);
  short_x << 1;
  Eigen::VectorXd short_y(1);
  short_y << 2;
  CHECK_THROWS_AS(spearman(short_x, short_y), std::invalid_argument);
  Eigen::VectorXd y4(4);
  y4 << 1, 2, 3, 4;
  CHECK_THROWS_AS(spearman(x, y4), std::invalid_argument);
}

TEST_CASE("geometric mean") {
  Eigen::VectorXd single(1);
  single << 4;
  CHECK(geometric_mean(single) == doctest::Approx(4.0).epsilon(1e-15));
  Eigen::VectorXd pair(2);
  pair << 1, 4;
  CHECK(geometric_mean(pair) == doctest::Approx(2.0).epsilon(1e-15));
  Eigen::VectorXd triple(3);
  triple << 2, 8, 32;
  const double g = geometric_mean(triple);
  CHECK(g == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(g == doctest::Approx(std::cbrt(2.0 * 8.0 * 32.0)).epsilon(1e-12));
  Eigen::VectorXd bad(2);
  bad << 1, 0;
  CHECK_THROWS_AS(geometric_mean(bad), std::invalid_argument);
  CHECK_THROWS_AS(geometric_mean(Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("decile groups cut sorted teams with the remainder up top") {
  auto sizes = [](const std::array<std::vector<int>, 10>& groups) {
    std::vector<std::size_t> out;
    for (const auto& g : groups) out.push_back(g.size());
    return out;
  };

  Eigen::VectorXd twenty = Eigen::VectorXd::LinSpaced(20, 1, 20);
  CHECK(sizes(decile_groups(twenty)) ==
        std::vector<std::size_t>{2, 2, 2, 2, 2, 2, 2, 2, 2, 2});

  Eigen::VectorXd twenty_three = Eigen::VectorXd::LinSpaced(23, 1, 23);
  CHECK(sizes(decile_groups(twenty_three)) ==
        std::vector<std::size_t>{3, 3, 3, 2, 2, 2, 2, 2, 2, 2});

  Eigen::VectorXd teams_299 = Eigen::VectorXd::LinSpaced(299, 1, 299);
  CHECK(sizes(decile_groups(teams_299)) ==
        std::vector<std::size_t>{30, 30, 30, 30, 30, 30, 30, 30, 30, 29});

  Eigen::VectorXd seven = Eigen::VectorXd::LinSpaced(7, 1, 7);
  CHECK(sizes(decile_groups(seven)) ==
        std::vector<std::size_t>{1, 1, 1, 1, 1, 1, 1, 0, 0, 0});

  CHECK_THROWS_AS(decile_groups(Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("decile groups sort descending and summaries average per group") {
  Eigen::VectorXd scores(4);
  scores << 0.1, 0.9, 0.5, 0.7;
  const auto groups = decile_groups(scores);
  CHECK(groups[0] == std::vector<int>{1});  // 0.9 first
  CHECK(groups[3] == std::vector<int>{0});  // 0.1 last occupied decile

  const Eigen::VectorXd summary = decile_summaries(scores, groups);
  CHECK(summary(0) == 0.9);
  CHECK(std::isnan(summary(9)));

  Eigen::VectorXd geo(2);
  geo << 4.0, 16.0;
  const auto geo_groups = decile_groups(geo);
  const Eigen::VectorXd geo_summary = decile_summaries(geo, geo_groups, true);
  CHECK(geo_summary(0) == doctest::Approx(16.0));
}

TEST_CASE("category analysis of an always-rank-target-first predictor") {
  std::mt19937_64 rng(49);
  PredictionMatrix p;
  p.category_ids = {"target", "x", "y"};
  for (int i = 0; i < 12; ++i) p.sequence_ids.push_back("s" + std::to_string(i));
  p.values.resize(12, 3);
  LabelMap labels;
  for (int i = 0; i < 12; ++i) {
    p.values(i, 0) = 0.8;
    p.values(i, 1) = 0.15;
    p.values(i, 2) = 0.05;
    labels.insert("s" + std::to_string(i), i % 4 == 0 ? "target" : "x");
  }
  const auto analysis = category_analysis(p, labels, "target");
  CHECK(analysis.top10_inclusion_rate == 1.0);
  CHECK(analysis.geometric_mean_rank == 1.0);
  CHECK(analysis.accuracy_target_only[0] == 1.0);  // target rows hit at N=1
  CHECK(analysis.accuracy_known_only[0] == 0.0);   // known rows never hit
  CHECK_THROWS_AS(category_analysis(p, labels, "nope"), std::invalid_argument);
}

TEST_CASE("target never in the top 10 gives inclusion rate 0") {
  PredictionMatrix p;
  p.category_ids.clear();
  for (int c = 0; c < 12; ++c) p.category_ids.push_back("c" + std::to_string(c));
  p.sequence_ids = {"s0", "s1"};
  p.values.resize(2, 12);
  LabelMap labels;
  for (int i = 0; i < 2; ++i) {
    double weight = 12.0;
    double sum = 0.0;
    for (int c = 0; c < 12; ++c) {
      p.values(i, c) = weight;
      sum += weight;
      weight -= 1.0;  // strictly decreasing; c11 is always last
    }
    p.values.row(i) /= sum;
    labels.insert("s" + std::to_string(i), "c0");
  }
  const auto analysis = category_analysis(p, labels, "c11");
  CHECK(analysis.top10_inclusion_rate == 0.0);
}

TEST_CASE("category analysis and decile summaries serialize to CSV") {
  PredictionMatrix p;
  p.category_ids = {"target", "x"};
  p.sequence_ids = {"s0", "s1"};
  p.values.resize(2, 2);
  p.values << 0.9, 0.1, 0.8, 0.2;
  LabelMap labels;
  labels.insert("s0", "target");
  labels.insert("s1", "x");
  const auto analysis = category_analysis(p, labels, "target");
  std::ostringstream out;
  serialize_category_analysis(analysis, out);
  const std::string text = out.str();
  CHECK(text.rfind("metric,value\n", 0) == 0);
  CHECK(text.find("target,target\n") != std::string::npos);
  CHECK(text.find("top10_inclusion_rate,1\n") != std::string::npos);

  Eigen::VectorXd scores(4);
  scores << 0.1, 0.9, 0.5, 0.7;
  const auto groups = decile_groups(scores);
  std::ostringstream decile_out;
  serialize_decile_summaries(groups, decile_summaries(scores, groups), decile_out);
  const std::string decile_text = decile_out.str();
  CHECK(decile_text.rfind("decile,size,summary\n", 0) == 0);
  CHECK(decile_text.find("1,1,0.9\n") != std::string::npos);
  CHECK(decile_text.find("10,0,\n") != std::string::npos);  // empty decile
}

TEST_CASE("accuracy_all is the exact convex combination of the two subsets") {
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_prediction_matrix(rng, 40, 12);
    const auto labels = random_labels(rng, p);
    const auto analysis = category_analysis(p, labels, "c3");
    std::int64_t target_rows = 0;
    for (const auto& [id, category] : labels.entries()) {
      if (category == "c3") ++target_rows;
    }
    const double w = static_cast<double>(target_rows) / 40.0;
    for (std::size_t t = 0; t < 2; ++t) {
      const double combined = w * analysis.accuracy_target_only[t] +
                              (1.0 - w) * analysis.accuracy_known_only[t];
      REQUIRE(analysis.accuracy_all[t] == doctest::Approx(combined).epsilon(1e-12));
    }
  }
}
