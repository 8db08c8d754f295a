#include "gea/calibration.hpp"

#include "gea/io.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gea {

namespace {

// Bin index for confidence p under intervals ((m-1)/M, m/M]. ceil gets within
// one bin; the correction loops pin the exact interval predicate.
int bin_index(double p, int m_count) {
  if (p <= 0.0) return 1;
  int m = static_cast<int>(std::ceil(p * m_count));
  m = std::max(1, std::min(m, m_count));
  while (m > 1 && p <= static_cast<double>(m - 1) / m_count) --m;
  while (m < m_count && p > static_cast<double>(m) / m_count) ++m;
  return m;
}

}  // namespace

CalibrationTable calibration_table(const PredictionMatrix& p, const LabelMap& labels,
                                   int bin_count) {
  if (bin_count < 1) {
    throw std::invalid_argument("calibration bin count must be >= 1");
  }
  const Eigen::Index n = p.rows();
  if (n == 0) {
    throw std::invalid_argument("calibration requires at least one sample");
  }
  const auto column = index_of(p.category_ids);

  std::vector<std::int64_t> correct(static_cast<std::size_t>(bin_count), 0);
  std::vector<std::vector<double>> confidences(static_cast<std::size_t>(bin_count));

  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string& id = p.sequence_ids[i];
    if (!labels.contains(id)) {
      throw std::runtime_error("no label for sequence: " + id);
    }
    // Earliest column attaining the row maximum.
    int predicted = 0;
    double top = p.values(i, 0);
    for (Eigen::Index j = 1; j < p.cols(); ++j) {
      if (p.values(i, j) > top) {
        top = p.values(i, j);
        predicted = static_cast<int>(j);
      }
    }
    const auto it = column.find(labels.at(id));
    if (it == column.end()) {
      throw std::runtime_error("label category not in matrix: " + labels.at(id));
    }
    const std::size_t bin = static_cast<std::size_t>(bin_index(top, bin_count) - 1);
    correct[bin] += (predicted == it->second) ? 1 : 0;
    confidences[bin].push_back(top);
  }

  CalibrationTable table;
  table.bin_count = bin_count;
  table.bins.resize(static_cast<std::size_t>(bin_count));
  table.ece = 0.0;
  table.mce = 0.0;
  for (std::size_t m = 0; m < table.bins.size(); ++m) {
    CalibrationBin& bin = table.bins[m];
    bin.count = static_cast<int>(confidences[m].size());
    if (bin.count == 0) continue;
    // Canonical reduction order: the table is a function of the sample
    // multiset, not of the sample order.
    std::sort(confidences[m].begin(), confidences[m].end());
    double confidence_sum = 0.0;
    for (const double c : confidences[m]) confidence_sum += c;
    bin.accuracy = static_cast<double>(correct[m]) / static_cast<double>(bin.count);
    bin.confidence = confidence_sum / static_cast<double>(bin.count);
    const double deviation = std::abs(bin.accuracy - bin.confidence);
    table.ece +=
        (static_cast<double>(bin.count) / static_cast<double>(n)) * deviation;
    table.mce = std::max(table.mce, deviation);
  }
  // The weighted mean of deviations cannot exceed their maximum; keep the
  // identity exact under accumulated rounding.
  table.ece = std::min(table.ece, table.mce);
  return table;
}

double ece(const PredictionMatrix& p, const LabelMap& labels, int bin_count) {
  return calibration_table(p, labels, bin_count).ece;
}

double mce(const PredictionMatrix& p, const LabelMap& labels, int bin_count) {
  return calibration_table(p, labels, bin_count).mce;
}

void serialize_calibration_csv(const CalibrationTable& table, std::ostream& out) {
  out << "bin,count,accuracy,confidence\n";
  for (std::size_t m = 0; m < table.bins.size(); ++m) {
    const CalibrationBin& bin = table.bins[m];
    out << (m + 1) << ',' << bin.count << ',';
    write_shortest(out, bin.accuracy);
    out << ',';
    write_shortest(out, bin.confidence);
    out << '\n';
  }
}

}  // namespace gea
