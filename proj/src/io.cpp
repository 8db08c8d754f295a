#include "gea/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gea {

ParseError::ParseError(const std::string& source, std::size_t line,
                       const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path.string());
  }
  return in;
}

std::ofstream create_or_throw(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot create file: " + path.string());
  }
  return out;
}

// getline that tolerates trailing \r so CRLF files parse identically.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_probability(const char* first, const char* last,
                         const std::string& source, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(source, line_no,
                     "non-numeric cell '" + std::string(first, last) + "'");
  }
  return value;
}

}  // namespace

void write_shortest(std::ostream& out, double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.write(buf, ptr - buf);
}

PredictionMatrix parse_predictions(std::istream& in, const std::string& source) {
  std::string line;
  if (!next_line(in, line)) {
    throw ParseError(source, 0, "empty file");
  }
  auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "sequence_id") {
    throw ParseError(source, 1, "expected header `sequence_id,<cat1>,...`");
  }

  PredictionMatrix matrix;
  matrix.category_ids.assign(header.begin() + 1, header.end());
  std::unordered_set<std::string> seen_categories;
  for (const auto& c : matrix.category_ids) {
    if (c.empty()) throw ParseError(source, 1, "empty category id in header");
    if (!seen_categories.insert(c).second) {
      throw ParseError(source, 1, "duplicate category id: " + c);
    }
  }
  const std::size_t k = matrix.category_ids.size();

  std::vector<double> cells;  // row-major staging buffer
  std::unordered_set<std::string> seen_ids;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = p + line.size();
    const char* comma = std::find(p, end, ',');
    if (comma == end) {
      throw ParseError(source, line_no, "expected " + std::to_string(k + 1) +
                                            " fields, got 1");
    }
    std::string id(p, comma);
    if (id.empty()) throw ParseError(source, line_no, "empty sequence_id");
    if (!seen_ids.insert(id).second) {
      throw ParseError(source, line_no, "duplicate sequence_id: " + id);
    }
    matrix.sequence_ids.push_back(std::move(id));

    std::size_t fields = 0;
    p = comma + 1;
    while (true) {
      comma = std::find(p, end, ',');
      cells.push_back(parse_probability(p, comma, source, line_no));
      ++fields;
      if (comma == end) break;
      p = comma + 1;
    }
    if (fields != k) {
      throw ParseError(source, line_no, "expected " + std::to_string(k) +
                                            " probability cells, got " +
                                            std::to_string(fields));
    }
  }
  if (matrix.sequence_ids.empty()) {
    throw ParseError(source, line_no, "no data rows");
  }

  const Eigen::Index j = static_cast<Eigen::Index>(matrix.sequence_ids.size());
  matrix.values = Eigen::Map<
      const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      cells.data(), j, static_cast<Eigen::Index>(k));
  return matrix;
}

PredictionMatrix load_predictions(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_predictions(in, path.string());
}

void serialize_predictions(const PredictionMatrix& matrix, std::ostream& out) {
  out << "sequence_id";
  for (const auto& c : matrix.category_ids) out << ',' << c;
  out << '\n';
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    out << matrix.sequence_ids[i];
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      out << ',';
      write_shortest(out, matrix.values(i, j));
    }
    out << '\n';
  }
}

void save_predictions(const PredictionMatrix& matrix,
                      const std::filesystem::path& path) {
  auto out = create_or_throw(path);
  serialize_predictions(matrix, out);
}

LabelMap parse_labels(std::istream& in, const std::string& source) {
  std::string line;
  if (!next_line(in, line)) {
    throw ParseError(source, 0, "empty file");
  }
  if (split_csv(line) != std::vector<std::string>{"sequence_id", "lab_id"}) {
    throw ParseError(source, 1, "expected header `sequence_id,lab_id`");
  }
  LabelMap labels;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(source, line_no, "expected `sequence_id,lab_id`");
    }
    try {
      labels.insert(std::move(fields[0]), std::move(fields[1]));
    } catch (const std::runtime_error& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return labels;
}

LabelMap load_labels(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_labels(in, path.string());
}

void serialize_labels(const LabelMap& labels, std::ostream& out) {
  out << "sequence_id,lab_id\n";
  for (const auto& [id, category] : labels.entries()) {
    out << id << ',' << category << '\n';
  }
}

void save_labels(const LabelMap& labels, const std::filesystem::path& path) {
  auto out = create_or_throw(path);
  serialize_labels(labels, out);
}

namespace {

char normalize_base(char c, const std::string& source, std::size_t line_no) {
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  switch (upper) {
    case 'A':
    case 'C':
    case 'G':
    case 'T':
    case 'N':
      return upper;
    default:
      // Remaining IUPAC ambiguity codes carry no k-mer signal here.
      if (std::isalpha(static_cast<unsigned char>(upper))) return 'N';
      throw ParseError(source, line_no,
                       std::string("invalid base character '") + c + "'");
  }
}

}  // namespace

std::vector<SequenceRecord> parse_fasta(std::istream& in, const std::string& source) {
  std::vector<SequenceRecord> records;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  std::size_t header_line = 0;
  bool in_record = false;
  SequenceRecord current;

  auto flush = [&]() {
    if (!in_record) return;
    if (current.dna.empty()) {
      throw ParseError(source, header_line,
                       "empty sequence body for " + current.sequence_id);
    }
    records.push_back(std::move(current));
    current = SequenceRecord{};
  };

  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '>') {
      flush();
      in_record = true;
      header_line = line_no;
      std::string header = line.substr(1);
      const std::size_t space = header.find_first_of(" \t");
      current.sequence_id = header.substr(0, space);
      if (current.sequence_id.empty()) {
        throw ParseError(source, line_no, "missing sequence_id in header");
      }
      if (!seen_ids.insert(current.sequence_id).second) {
        throw ParseError(source, line_no,
                         "duplicate sequence_id: " + current.sequence_id);
      }
      const std::size_t open = header.find('[');
      if (open != std::string::npos) {
        const std::size_t close = header.find(']', open);
        if (close == std::string::npos) {
          throw ParseError(source, line_no, "unterminated [lab_id] in header");
        }
        current.lab_id = header.substr(open + 1, close - open - 1);
      }
    } else {
      if (!in_record) {
        throw ParseError(source, line_no, "sequence data before first header");
      }
      for (char c : line) {
        current.dna.push_back(normalize_base(c, source, line_no));
      }
    }
  }
  flush();
  return records;
}

std::vector<SequenceRecord> load_fasta(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_fasta(in, path.string());
}

void serialize_fasta(const std::vector<SequenceRecord>& records, std::ostream& out) {
  constexpr std::size_t kWrap = 70;
  for (const auto& record : records) {
    out << '>' << record.sequence_id;
    if (!record.lab_id.empty()) out << " [" << record.lab_id << ']';
    out << '\n';
    for (std::size_t i = 0; i < record.dna.size(); i += kWrap) {
      out << record.dna.substr(i, kWrap) << '\n';
    }
  }
}

void save_fasta(const std::vector<SequenceRecord>& records,
                const std::filesystem::path& path) {
  auto out = create_or_throw(path);
  serialize_fasta(records, out);
}

LineageGraph parse_lineage(std::istream& in, const std::string& source) {
  std::string line;
  if (!next_line(in, line)) {
    throw ParseError(source, 0, "empty file");
  }
  if (split_csv(line) != std::vector<std::string>{"id_a", "id_b"}) {
    throw ParseError(source, 1, "expected header `id_a,id_b`");
  }
  LineageGraph graph;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(source, line_no, "expected `id_a,id_b`");
    }
    if (fields[0] == fields[1]) {
      throw ParseError(source, line_no, "self-loop on " + fields[0]);
    }
    graph.edges.emplace_back(std::move(fields[0]), std::move(fields[1]));
  }
  return graph;
}

LineageGraph load_lineage(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_lineage(in, path.string());
}

LineageGraph load_lineage(const std::filesystem::path& path,
                          const std::vector<std::string>& known_ids) {
  LineageGraph graph = load_lineage(path);
  validate_lineage(graph, known_ids, path.string());
  return graph;
}

void validate_lineage(const LineageGraph& graph,
                      const std::vector<std::string>& known_ids,
                      const std::string& source) {
  std::unordered_set<std::string> known(known_ids.begin(), known_ids.end());
  for (const auto& [a, b] : graph.edges) {
    if (known.count(a) == 0) {
      throw std::runtime_error(source + ": dangling lineage endpoint: " + a);
    }
    if (known.count(b) == 0) {
      throw std::runtime_error(source + ": dangling lineage endpoint: " + b);
    }
  }
}

void serialize_lineage(const LineageGraph& graph, std::ostream& out) {
  out << "id_a,id_b\n";
  for (const auto& [a, b] : graph.edges) {
    out << a << ',' << b << '\n';
  }
}

void save_lineage(const LineageGraph& graph, const std::filesystem::path& path) {
  auto out = create_or_throw(path);
  serialize_lineage(graph, out);
}

void load_metadata(const std::filesystem::path& path,
                   std::vector<SequenceRecord>& records) {
  auto in = open_or_throw(path);
  const std::string source = path.string();
  std::string line;
  if (!next_line(in, line)) {
    throw ParseError(source, 0, "empty file");
  }
  auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "sequence_id") {
    throw ParseError(source, 1, "expected header `sequence_id,<field>,...`");
  }
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (std::find(kMetadataFields.begin(), kMetadataFields.end(), header[i]) ==
        kMetadataFields.end()) {
      throw ParseError(source, 1, "unknown metadata field: " + header[i]);
    }
  }

  std::unordered_map<std::string, SequenceRecord*> by_id;
  for (auto& record : records) by_id.emplace(record.sequence_id, &record);

  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(header.size()) + " fields");
    }
    auto it = by_id.find(fields[0]);
    if (it == by_id.end()) {
      throw ParseError(source, line_no, "metadata for unknown sequence: " + fields[0]);
    }
    for (std::size_t i = 1; i < header.size(); ++i) {
      it->second->metadata[header[i]] = fields[i];
    }
  }
}

}  // namespace gea
