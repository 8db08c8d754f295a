#pragma once

#include "gea/calibration.hpp"
#include "gea/classification_metrics.hpp"
#include "gea/core_data.hpp"
#include "gea/ensemble_stats.hpp"
#include "gea/rank_metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gea {

// FNV-1a (64-bit) of a byte stream, as a 16-digit hex token. Used to pin
// report provenance to exact input bytes.
std::string fnv1a64(std::string_view bytes);
std::string fnv1a64_file(const std::filesystem::path& path);

struct InputDigest {
  std::string role;  // "predictions", "labels", ...
  std::string path;
  std::string digest;  // fnv1a64 of the file bytes
};

struct ReportOptions {
  int calibration_bins = 15;
  std::vector<double> x_thresholds = {80.0, 90.0, 95.0, 99.0};
  std::vector<int> top_ns = {1, 5, 10, 20};
  std::optional<CategoryId> analysis_target;
};

// Everything the reporting CLI emits for one predictor. Deterministic: the
// same inputs and options serialize byte-identically.
struct MetricReport {
  std::string predictor;
  std::string tool_version;
  std::vector<InputDigest> inputs;
  std::optional<std::uint64_t> seed;

  std::int64_t n_sequences = 0;
  std::int64_t n_categories = 0;
  std::vector<std::pair<int, double>> top_n;  // N -> top-N accuracy (N capped at K)
  XMetricSet x_metrics;
  AccuracyCurve curve;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  CalibrationTable calibration;
  std::optional<CategoryAnalysis> analysis;

  std::string to_json() const;  // stable key order, 2-space indent
  static MetricReport from_json(const std::string& text);
};

MetricReport build_report(const std::string& predictor, const PredictionMatrix& p,
                          const LabelMap& labels, const ReportOptions& options,
                          std::vector<InputDigest> inputs,
                          std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace gea
