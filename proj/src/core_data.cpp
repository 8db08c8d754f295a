#include "gea/core_data.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace gea {

void LabelMap::insert(std::string sequence_id, CategoryId category) {
  auto [it, inserted] = index_.emplace(sequence_id, entries_.size());
  if (!inserted) {
    throw std::runtime_error("duplicate sequence_id in labels: " + sequence_id);
  }
  entries_.emplace_back(std::move(sequence_id), std::move(category));
}

const CategoryId& LabelMap::at(const std::string& sequence_id) const {
  auto it = index_.find(sequence_id);
  if (it == index_.end()) {
    throw std::runtime_error("no label for sequence: " + sequence_id);
  }
  return entries_[it->second].second;
}

std::unordered_map<std::string, int> index_of(const std::vector<std::string>& ids) {
  std::unordered_map<std::string, int> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.emplace(ids[i], static_cast<int>(i));
  }
  return out;
}

ValidationReport validate(const PredictionMatrix& matrix, const LabelMap& labels) {
  ValidationReport report;

  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    const double sum = matrix.values.row(i).sum();
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      report.row_sum_violations.push_back({matrix.sequence_ids[i], sum});
    }
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      const double v = matrix.values(i, j);
      if (v < 0.0 || v > 1.0) {
        report.out_of_range.push_back(
            {matrix.sequence_ids[i], matrix.category_ids[j], v});
      }
    }
  }

  std::unordered_set<std::string> matrix_rows(matrix.sequence_ids.begin(),
                                              matrix.sequence_ids.end());
  std::unordered_set<std::string> category_set(matrix.category_ids.begin(),
                                               matrix.category_ids.end());
  std::unordered_set<std::string> seen_unknown;
  for (const auto& [id, category] : labels.entries()) {
    if (matrix_rows.count(id) == 0) {
      report.labels_without_row.push_back(id);
    }
    if (category_set.count(category) == 0 && seen_unknown.insert(category).second) {
      report.unknown_categories.push_back(category);
    }
  }
  for (const auto& id : matrix.sequence_ids) {
    if (!labels.contains(id)) {
      report.rows_without_label.push_back(id);
    }
  }
  return report;
}

namespace {

template <typename T, typename Fmt>
void append_list(std::ostringstream& out, const std::string& title,
                 const std::vector<T>& items, Fmt fmt) {
  if (items.empty()) return;
  out << title << " (" << items.size() << "):\n";
  const std::size_t shown = std::min<std::size_t>(items.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    out << "  " << fmt(items[i]) << "\n";
  }
  if (shown < items.size()) {
    out << "  ... " << (items.size() - shown) << " more\n";
  }
}

}  // namespace

std::string ValidationReport::summary() const {
  if (ok()) return "ok\n";
  std::ostringstream out;
  append_list(out, "row sums deviating from 1", row_sum_violations,
                             [](const RowSumFinding& f) {
                               return f.sequence_id + " sum=" + std::to_string(f.sum);
                             });
  append_list(out, "labelled sequences missing from matrix",
                           labels_without_row, [](const std::string& s) { return s; });
  append_list(out, "matrix rows missing from labels", rows_without_label,
                           [](const std::string& s) { return s; });
  append_list(out, "label categories outside matrix category set",
                          unknown_categories, [](const CategoryId& c) { return c; });
  append_list(out, "values outside [0,1]", out_of_range,
                            [](const RangeFinding& f) {
                              return f.sequence_id + "/" + f.category_id + " = " +
                                     std::to_string(f.value);
                            });
  return out.str();
}

}  // namespace gea
