#pragma once

#include "gea/core_data.hpp"

#include <iosfwd>
#include <vector>

namespace gea {

struct CalibrationBin {
  int count = 0;
  double accuracy = 0.0;    // 0 when the bin is empty
  double confidence = 0.0;  // 0 when the bin is empty
};

// Equal-width confidence bins over (0, 1]; bin m covers ((m-1)/M, m/M].
// ECE is the count-weighted mean of |accuracy - confidence|, MCE the maximum
// over non-empty bins, so ECE <= MCE always holds.
struct CalibrationTable {
  int bin_count = 0;
  std::vector<CalibrationBin> bins;
  double ece = 0.0;
  double mce = 0.0;
};

// Confidence of a row is its maximum probability; the predicted category is
// the earliest column attaining it, and correctness uses that single choice.
// A confidence of exactly 0 (degenerate all-zero row) lands in bin 1.
CalibrationTable calibration_table(const PredictionMatrix& p, const LabelMap& labels,
                                   int bin_count = 15);

double ece(const PredictionMatrix& p, const LabelMap& labels, int bin_count = 15);
double mce(const PredictionMatrix& p, const LabelMap& labels, int bin_count = 15);

// CSV emission: `bin,count,accuracy,confidence`, one row per bin.
void serialize_calibration_csv(const CalibrationTable& table, std::ostream& out);

}  // namespace gea
