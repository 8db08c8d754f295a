#include "gea/core_data.hpp"
#include "gea/io.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace gea;

namespace {

PredictionMatrix parse_str(const std::string& text) {
  std::istringstream in(text);
  return parse_predictions(in, "test.csv");
}

std::string roundtrip(const PredictionMatrix& m) {
  std::ostringstream out;
  serialize_predictions(m, out);
  return out.str();
}

}  // namespace

TEST_CASE("minimal well-formed prediction file") {
  const auto m = parse_str(
      "sequence_id,a,b,c\n"
      "s1,0.5,0.3,0.2\n"
      "s2,0.1,0.1,0.8\n");
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.sequence_ids == std::vector<std::string>{"s1", "s2"});
  CHECK(m.category_ids == std::vector<std::string>{"a", "b", "c"});
  CHECK(m.values(0, 0) == 0.5);
  CHECK(m.values(1, 2) == 0.8);
}

TEST_CASE("row order preserved from file") {
  const auto m = parse_str(
      "sequence_id,a\n"
      "z,1\n"
      "a,1\n"
      "m,1\n");
  CHECK(m.sequence_ids == std::vector<std::string>{"z", "a", "m"});
}

TEST_CASE("bad row sums load fine and validate flags them") {
  const auto m = parse_str("sequence_id,a,b\ns1,0.25,0.25\n");
  LabelMap labels;
  labels.insert("s1", "a");
  const auto report = validate(m, labels);
  CHECK(!report.ok());
  REQUIRE(report.row_sum_violations.size() == 1);
  CHECK(report.row_sum_violations[0].sequence_id == "s1");
  CHECK(report.row_sum_violations[0].sum == doctest::Approx(0.5));
}

TEST_CASE("validate accepts a clean matrix") {
  const auto m = parse_str("sequence_id,a,b\ns1,0.5,0.5\n");
  LabelMap labels;
  labels.insert("s1", "b");
  CHECK(validate(m, labels).ok());
}

TEST_CASE("validate reports row-sum violation for [0.6, 0.6]") {
  const auto m = parse_str("sequence_id,a,b\ns1,0.6,0.6\n");
  LabelMap labels;
  labels.insert("s1", "a");
  const auto report = validate(m, labels);
  REQUIRE(report.row_sum_violations.size() == 1);
  CHECK(report.row_sum_violations[0].sum == doctest::Approx(1.2));
}

TEST_CASE("validate finds labels for unknown sequences") {
  const auto m = parse_str("sequence_id,a,b\ns1,0.5,0.5\n");
  LabelMap labels;
  labels.insert("s1", "a");
  labels.insert("zzz", "a");
  const auto report = validate(m, labels);
  CHECK(report.labels_without_row == std::vector<std::string>{"zzz"});
}

TEST_CASE("validate finds rows without labels and unknown categories") {
  const auto m = parse_str("sequence_id,a,b\ns1,0.5,0.5\ns2,1,0\n");
  LabelMap labels;
  labels.insert("s1", "weird_lab");
  const auto report = validate(m, labels);
  CHECK(report.rows_without_label == std::vector<std::string>{"s2"});
  CHECK(report.unknown_categories == std::vector<std::string>{"weird_lab"});
}

TEST_CASE("validate flags probabilities outside [0,1]") {
  const auto m = parse_str("sequence_id,a,b\ns1,-0.2,1.2\n");
  LabelMap labels;
  labels.insert("s1", "a");
  const auto report = validate(m, labels);
  CHECK(report.out_of_range.size() == 2);
}

TEST_CASE("row-sum tolerance accepts 6-decimal rounding") {
  const auto m = parse_str("sequence_id,a,b,c\ns1,0.333333,0.333333,0.333333\n");
  LabelMap labels;
  labels.insert("s1", "a");
  CHECK(validate(m, labels).ok());
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_str("sequence_id,a\ns1,0.5\ns1,0.5\n"),
                       doctest::Contains("duplicate sequence_id"), ParseError);
  try {
    parse_str("sequence_id,a\ns1,0.5\ns2,oops\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()) == "test.csv:3: non-numeric cell 'oops'");
  }
  CHECK_THROWS_AS(parse_str("sequence_id,a\ns1,0.5,0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_str(""), ParseError);
  CHECK_THROWS_AS(parse_str("sequence_id,a\n"), ParseError);  // no data rows
  CHECK_THROWS_AS(parse_str("sequence_id,a,a\ns1,0.5,0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_str("sequence_id,a\ns1,inf\n"), ParseError);
}

TEST_CASE("prediction serialization round-trips bit-identically") {
  std::mt19937_64 rng(7);
  PredictionMatrix m;
  m.sequence_ids = {"s1", "s2", "s3"};
  m.category_ids = {"a", "b", "c", "d"};
  m.values.resize(3, 4);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      m.values(i, j) = static_cast<double>(rng() % 100000) / 99999.0;
    }
  }
  const std::string once = roundtrip(m);
  std::istringstream in(once);
  const std::string twice = roundtrip(parse_predictions(in, "mem"));
  CHECK(once == twice);
}

TEST_CASE("labels load and round-trip") {
  std::istringstream in("sequence_id,lab_id\ns1,lab_a\ns2,lab_b\n");
  const auto labels = parse_labels(in, "labels.csv");
  CHECK(labels.size() == 2);
  CHECK(labels.at("s2") == "lab_b");
  std::ostringstream out;
  serialize_labels(labels, out);
  std::istringstream again(out.str());
  std::ostringstream out2;
  serialize_labels(parse_labels(again, "mem"), out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("label errors") {
  std::istringstream dup("sequence_id,lab_id\ns1,a\ns1,b\n");
  CHECK_THROWS_AS(parse_labels(dup, "labels.csv"), ParseError);
  std::istringstream header("id,lab\ns1,a\n");
  CHECK_THROWS_AS(parse_labels(header, "labels.csv"), ParseError);
  LabelMap labels;
  labels.insert("s1", "a");
  CHECK_THROWS_WITH(labels.at("nope"), doctest::Contains("nope"));
}

TEST_CASE("large labels file loads completely") {
  std::ostringstream text;
  text << "sequence_id,lab_id\n";
  for (int i = 0; i < 63017; ++i) text << 's' << i << ",lab" << i % 100 << '\n';
  std::istringstream in(text.str());
  CHECK(parse_labels(in, "mem").size() == 63017);
}

TEST_CASE("competition-shaped prediction file loads without truncation") {
  // 11,351 rows x 1,314 categories; a single 1 per row keeps the text small.
  constexpr int kRows = 11351;
  constexpr int kCols = 1314;
  std::string text = "sequence_id";
  for (int j = 0; j < kCols; ++j) text += ",c" + std::to_string(j);
  text += '\n';
  for (int i = 0; i < kRows; ++i) {
    text += 's' + std::to_string(i);
    const int hot = i % kCols;
    for (int j = 0; j < kCols; ++j) {
      text += (j == hot) ? ",1" : ",0";
    }
    text += '\n';
  }
  std::istringstream in(text);
  const auto m = parse_predictions(in, "mem");
  CHECK(m.rows() == kRows);
  CHECK(m.cols() == kCols);
  CHECK(m.values(kRows - 1, (kRows - 1) % kCols) == 1.0);
}

TEST_CASE("fasta parses ids, optional labs, and sequence bodies") {
  std::istringstream in(
      ">s1 [lab_a]\n"
      "ACGT\n"
      "acgt\n"
      ">s2\n"
      "NNNN\n");
  const auto records = parse_fasta(in, "corpus.fa");
  REQUIRE(records.size() == 2);
  CHECK(records[0].sequence_id == "s1");
  CHECK(records[0].lab_id == "lab_a");
  CHECK(records[0].dna == "ACGTACGT");
  CHECK(records[1].lab_id.empty());
  CHECK(records[1].dna == "NNNN");
}

TEST_CASE("fasta folds ambiguity codes to N and rejects garbage") {
  std::istringstream in(">s1\nACRYT\n");
  const auto records = parse_fasta(in, "corpus.fa");
  CHECK(records[0].dna == "ACNNT");
  std::istringstream bad(">s1\nAC-GT\n");
  CHECK_THROWS_AS(parse_fasta(bad, "corpus.fa"), ParseError);
}

TEST_CASE("fasta errors: empty body, duplicate id") {
  std::istringstream empty(">s1\n>s2\nACGT\n");
  CHECK_THROWS_WITH_AS(parse_fasta(empty, "corpus.fa"),
                       doctest::Contains("empty sequence body"), ParseError);
  std::istringstream dup(">s1\nAC\n>s1\nGT\n");
  CHECK_THROWS_AS(parse_fasta(dup, "corpus.fa"), ParseError);
}

TEST_CASE("fasta serialization round-trips") {
  std::vector<SequenceRecord> records(2);
  records[0].sequence_id = "s1";
  records[0].lab_id = "lab_a";
  records[0].dna = std::string(150, 'A') + std::string(20, 'C');
  records[1].sequence_id = "s2";
  records[1].dna = "ACGTN";
  std::ostringstream out;
  serialize_fasta(records, out);
  std::istringstream in(out.str());
  std::ostringstream out2;
  serialize_fasta(parse_fasta(in, "mem"), out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("lineage loads, validates endpoints, round-trips") {
  std::istringstream in("id_a,id_b\ns1,s2\ns2,s3\n");
  const auto graph = parse_lineage(in, "lineage.csv");
  CHECK(graph.edges.size() == 2);

  validate_lineage(graph, {"s1", "s2", "s3"}, "lineage.csv");
  CHECK_THROWS_WITH(validate_lineage(graph, {"s1", "s2"}, "lineage.csv"),
                    doctest::Contains("dangling lineage endpoint: s3"));

  std::ostringstream out;
  serialize_lineage(graph, out);
  std::istringstream again(out.str());
  std::ostringstream out2;
  serialize_lineage(parse_lineage(again, "mem"), out2);
  CHECK(out.str() == out2.str());

  std::istringstream self_loop("id_a,id_b\ns1,s1\n");
  CHECK_THROWS_AS(parse_lineage(self_loop, "lineage.csv"), ParseError);
}

TEST_CASE("metadata sidecar attaches values and rejects unknown fields") {
  std::vector<SequenceRecord> records(1);
  records[0].sequence_id = "s1";
  records[0].dna = "ACGT";
  {
    std::ofstream out("/tmp/gea_meta_test.csv");
    out << "sequence_id,growth_strain,growth_temp\ns1,DH5alpha,37\n";
  }
  load_metadata("/tmp/gea_meta_test.csv", records);
  CHECK(records[0].metadata.at("growth_strain") == "DH5alpha");
  CHECK(records[0].metadata.at("growth_temp") == "37");
  {
    std::ofstream out("/tmp/gea_meta_test.csv");
    out << "sequence_id,favourite_colour\ns1,blue\n";
  }
  CHECK_THROWS_AS(load_metadata("/tmp/gea_meta_test.csv", records), ParseError);
}
