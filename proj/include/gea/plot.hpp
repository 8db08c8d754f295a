#pragma once

#include "gea/calibration.hpp"
#include "gea/rank_metrics.hpp"

#include <iosfwd>

namespace gea {

// Minimal self-contained SVG renderings of the two standard plots: the
// top-N accuracy curve and the per-bin reliability diagram.
void emit_accuracy_curve_svg(const AccuracyCurve& curve, std::ostream& out);
void emit_reliability_svg(const CalibrationTable& table, std::ostream& out);

}  // namespace gea
