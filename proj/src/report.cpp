#include "gea/report.hpp"

#include "gea/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gea {

using ordered_json = nlohmann::ordered_json;

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

MetricReport build_report(const std::string& predictor, const PredictionMatrix& p,
                          const LabelMap& labels, const ReportOptions& options,
                          std::vector<InputDigest> inputs,
                          std::optional<std::uint64_t> seed) {
  MetricReport report;
  report.predictor = predictor;
  report.tool_version = kToolVersion;
  report.inputs = std::move(inputs);
  report.seed = seed;
  report.n_sequences = p.rows();
  report.n_categories = p.cols();

  const RankMatrix ranks = rank_matrix(p);
  report.curve = accuracy_curve(ranks, labels);
  const int k = static_cast<int>(p.cols());
  for (int n : options.top_ns) {
    report.top_n.emplace_back(n, report.curve.at(std::min(n, k)));
  }
  report.x_metrics = x_metrics(report.curve, options.x_thresholds);

  const PRFReport prf = precision_recall_f1(category_counts(ranks, labels));
  report.macro_precision = prf.macro_precision;
  report.macro_recall = prf.macro_recall;
  report.macro_f1 = prf.macro_f1;

  report.calibration = calibration_table(p, labels, options.calibration_bins);
  if (options.analysis_target) {
    report.analysis = category_analysis(p, labels, *options.analysis_target);
  }
  return report;
}

std::string MetricReport::to_json() const {
  ordered_json j;
  j["tool"] = kToolName;
  j["tool_version"] = tool_version;
  j["predictor"] = predictor;
  j["inputs"] = ordered_json::array();
  for (const auto& input : inputs) {
    j["inputs"].push_back({{"role", input.role},
                           {"path", input.path},
                           {"fnv1a64", input.digest}});
  }
  if (seed) {
    j["seed"] = *seed;
  } else {
    j["seed"] = nullptr;
  }
  j["n_sequences"] = n_sequences;
  j["n_categories"] = n_categories;

  ordered_json top;
  for (const auto& [n, accuracy] : top_n) top[std::to_string(n)] = accuracy;
  j["top_n_accuracy"] = top;

  ordered_json x;
  for (std::size_t i = 0; i < x_metrics.thresholds.size(); ++i) {
    std::ostringstream key;
    key << x_metrics.thresholds[i];
    x[key.str()] = x_metrics.scores[i];
  }
  j["x_metrics"] = x;

  j["macro_precision"] = macro_precision;
  j["macro_recall"] = macro_recall;
  j["macro_f1"] = macro_f1;

  ordered_json cal;
  cal["bins"] = calibration.bin_count;
  cal["ece"] = calibration.ece;
  cal["mce"] = calibration.mce;
  cal["table"] = ordered_json::array();
  for (std::size_t m = 0; m < calibration.bins.size(); ++m) {
    cal["table"].push_back({{"bin", m + 1},
                            {"count", calibration.bins[m].count},
                            {"accuracy", calibration.bins[m].accuracy},
                            {"confidence", calibration.bins[m].confidence}});
  }
  j["calibration"] = cal;

  if (analysis) {
    ordered_json a;
    a["target"] = analysis->target;
    a["top10_inclusion_rate"] = analysis->top10_inclusion_rate;
    a["geometric_mean_rank"] = analysis->geometric_mean_rank;
    a["accuracy_all"] = {{"1", analysis->accuracy_all[0]},
                         {"10", analysis->accuracy_all[1]}};
    a["accuracy_known_only"] = {{"1", analysis->accuracy_known_only[0]},
                                {"10", analysis->accuracy_known_only[1]}};
    a["accuracy_target_only"] = {{"1", analysis->accuracy_target_only[0]},
                                 {"10", analysis->accuracy_target_only[1]}};
    j["category_analysis"] = a;
  } else {
    j["category_analysis"] = nullptr;
  }

  j["accuracy_curve"] = ordered_json::array();
  for (Eigen::Index i = 0; i < curve.values.size(); ++i) {
    j["accuracy_curve"].push_back(curve.values(i));
  }
  return j.dump(2) + "\n";
}

MetricReport MetricReport::from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  MetricReport report;
  report.predictor = j.at("predictor").get<std::string>();
  report.tool_version = j.value("tool_version", "");
  for (const auto& input : j.value("inputs", ordered_json::array())) {
    report.inputs.push_back({input.value("role", ""), input.value("path", ""),
                             input.value("fnv1a64", "")});
  }
  if (j.contains("seed") && !j.at("seed").is_null()) {
    report.seed = j.at("seed").get<std::uint64_t>();
  }
  report.n_sequences = j.at("n_sequences").get<std::int64_t>();
  report.n_categories = j.at("n_categories").get<std::int64_t>();
  for (const auto& [key, value] : j.at("top_n_accuracy").items()) {
    report.top_n.emplace_back(std::stoi(key), value.get<double>());
  }
  std::sort(report.top_n.begin(), report.top_n.end());
  for (const auto& [key, value] : j.at("x_metrics").items()) {
    report.x_metrics.thresholds.push_back(std::stod(key));
    report.x_metrics.scores.push_back(value.get<int>());
  }
  report.macro_precision = j.at("macro_precision").get<double>();
  report.macro_recall = j.at("macro_recall").get<double>();
  report.macro_f1 = j.at("macro_f1").get<double>();

  const auto& cal = j.at("calibration");
  report.calibration.bin_count = cal.at("bins").get<int>();
  report.calibration.ece = cal.at("ece").get<double>();
  report.calibration.mce = cal.at("mce").get<double>();
  for (const auto& bin : cal.at("table")) {
    report.calibration.bins.push_back({bin.at("count").get<int>(),
                                       bin.at("accuracy").get<double>(),
                                       bin.at("confidence").get<double>()});
  }

  if (j.contains("category_analysis") && !j.at("category_analysis").is_null()) {
    const auto& a = j.at("category_analysis");
    CategoryAnalysis analysis;
    analysis.target = a.at("target").get<std::string>();
    analysis.top10_inclusion_rate = a.at("top10_inclusion_rate").get<double>();
    analysis.geometric_mean_rank = a.at("geometric_mean_rank").get<double>();
    analysis.accuracy_all = {a.at("accuracy_all").at("1").get<double>(),
                             a.at("accuracy_all").at("10").get<double>()};
    analysis.accuracy_known_only = {
        a.at("accuracy_known_only").at("1").get<double>(),
        a.at("accuracy_known_only").at("10").get<double>()};
    analysis.accuracy_target_only = {
        a.at("accuracy_target_only").at("1").get<double>(),
        a.at("accuracy_target_only").at("10").get<double>()};
    report.analysis = analysis;
  }

  const auto& curve_values = j.at("accuracy_curve");
  report.curve.values.resize(static_cast<Eigen::Index>(curve_values.size()));
  for (std::size_t i = 0; i < curve_values.size(); ++i) {
    report.curve.values(static_cast<Eigen::Index>(i)) = curve_values[i].get<double>();
  }
  return report;
}

}  // namespace gea
