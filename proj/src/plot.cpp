#include "gea/plot.hpp"

#include <algorithm>
#include <ostream>

namespace gea {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 440;
constexpr int kMargin = 50;

double x_pos(double fraction) {
  return kMargin + fraction * (kWidth - 2 * kMargin);
}

double y_pos(double value) {  // value in [0,1], origin bottom-left
  return kHeight - kMargin - value * (kHeight - 2 * kMargin);
}

void open_svg(std::ostream& out, const char* title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << y_pos(0) << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << y_pos(0)
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << y_pos(0) << "\" x2=\""
      << kMargin << "\" y2=\"" << y_pos(1) << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = tick / 4.0;
    out << "<text x=\"" << kMargin - 8 << "\" y=\"" << y_pos(v) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << v << "</text>\n";
  }
}

}  // namespace

void emit_accuracy_curve_svg(const AccuracyCurve& curve, std::ostream& out) {
  open_svg(out, "Top-N accuracy");
  const Eigen::Index k = curve.size();
  out << "<polyline fill=\"none\" stroke=\"#4444cc\" stroke-width=\"1.5\" points=\"";
  for (Eigen::Index n = 0; n < k; ++n) {
    const double fx = k == 1 ? 1.0 : static_cast<double>(n) / (k - 1);
    out << x_pos(fx) << ',' << y_pos(curve.values(n)) << ' ';
  }
  out << "\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">N"
         " (1.."
      << k << ")</text>\n</svg>\n";
}

void emit_reliability_svg(const CalibrationTable& table, std::ostream& out) {
  open_svg(out, "Reliability diagram");
  // Identity reference: perfectly calibrated bins sit on this line.
  out << "<line x1=\"" << x_pos(0) << "\" y1=\"" << y_pos(0) << "\" x2=\""
      << x_pos(1) << "\" y2=\"" << y_pos(1)
      << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  const int m = table.bin_count;
  for (int bin = 0; bin < m; ++bin) {
    const auto& b = table.bins[static_cast<std::size_t>(bin)];
    if (b.count == 0) continue;
    const double left = x_pos(static_cast<double>(bin) / m);
    const double right = x_pos(static_cast<double>(bin + 1) / m);
    const double top = y_pos(b.accuracy);
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\""
        << std::max(1.0, right - left - 2) << "\" height=\""
        << std::max(0.0, y_pos(0) - top)
        << "\" fill=\"#cc8844\" fill-opacity=\"0.8\"/>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">confidence bin</text>\n</svg>\n";
}

}  // namespace gea
