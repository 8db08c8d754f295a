#pragma once

#include "gea/core_data.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace gea {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Prediction CSV: header `sequence_id,<cat1>,<cat2>,...`, one row per sequence,
// `.` decimal point, no quoting. Row order is preserved.
PredictionMatrix parse_predictions(std::istream& in, const std::string& source);
PredictionMatrix load_predictions(const std::filesystem::path& path);
void serialize_predictions(const PredictionMatrix& matrix, std::ostream& out);
void save_predictions(const PredictionMatrix& matrix, const std::filesystem::path& path);

// Labels CSV: header `sequence_id,lab_id`.
LabelMap parse_labels(std::istream& in, const std::string& source);
LabelMap load_labels(const std::filesystem::path& path);
void serialize_labels(const LabelMap& labels, std::ostream& out);
void save_labels(const LabelMap& labels, const std::filesystem::path& path);

// FASTA with headers `>sequence_id [lab_id]`, lab_id optional. Bases are
// uppercased; IUPAC ambiguity codes other than N fold to N.
std::vector<SequenceRecord> parse_fasta(std::istream& in, const std::string& source);
std::vector<SequenceRecord> load_fasta(const std::filesystem::path& path);
void serialize_fasta(const std::vector<SequenceRecord>& records, std::ostream& out);
void save_fasta(const std::vector<SequenceRecord>& records,
                const std::filesystem::path& path);

// Lineage CSV: header `id_a,id_b`, one acknowledgement edge per row.
LineageGraph parse_lineage(std::istream& in, const std::string& source);
LineageGraph load_lineage(const std::filesystem::path& path);
// Overload that also rejects edges whose endpoints are not in `known_ids`.
LineageGraph load_lineage(const std::filesystem::path& path,
                          const std::vector<std::string>& known_ids);
void validate_lineage(const LineageGraph& graph,
                      const std::vector<std::string>& known_ids,
                      const std::string& source);
void serialize_lineage(const LineageGraph& graph, std::ostream& out);
void save_lineage(const LineageGraph& graph, const std::filesystem::path& path);

// Shortest round-trip decimal form; keeps serialize(load(serialize(x)))
// byte-identical to serialize(x).
void write_shortest(std::ostream& out, double value);

// Metadata sidecar CSV: header `sequence_id,<field>,...` where every field is
// one of kMetadataFields. Values attach to already-loaded records by id.
inline constexpr std::array<const char*, 6> kMetadataFields = {
    "growth_strain",        "growth_temp", "copy_number",
    "bacterial_resistance", "species",     "selectable_markers"};
void load_metadata(const std::filesystem::path& path,
                   std::vector<SequenceRecord>& records);

}  // namespace gea
