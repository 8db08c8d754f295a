#include "gea/cli.hpp"

#include "gea/baseline.hpp"
#include "gea/calibration.hpp"
#include "gea/core_data.hpp"
#include "gea/dataset_prep.hpp"
#include "gea/ensemble_stats.hpp"
#include "gea/io.hpp"
#include "gea/plot.hpp"
#include "gea/random.hpp"
#include "gea/rank_metrics.hpp"
#include "gea/report.hpp"
#include "gea/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace gea::cli {

namespace {

struct SeedRequired : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream create_or_throw(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot create file: " + path.string());
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Loaded pair used by every scoring-style command; validation failures print
// their findings and stop the command with the validation exit code.
struct ScoringInputs {
  PredictionMatrix predictions;
  LabelMap labels;
  std::vector<InputDigest> digests;
};

ScoringInputs load_scoring_inputs(const std::string& predictions_path,
                                  const std::string& labels_path) {
  ScoringInputs in;
  in.predictions = load_predictions(predictions_path);
  in.labels = load_labels(labels_path);
  in.digests = {{"predictions", predictions_path, fnv1a64_file(predictions_path)},
                {"labels", labels_path, fnv1a64_file(labels_path)}};
  return in;
}

bool validate_or_report(const ScoringInputs& in) {
  const ValidationReport report = validate(in.predictions, in.labels);
  if (!report.ok()) {
    std::cerr << report.summary();
    return false;
  }
  return true;
}

double report_top_n(const MetricReport& report, int n) {
  for (const auto& [key, value] : report.top_n) {
    if (key == n) return value;
  }
  return 0.0;
}

int report_x(const MetricReport& report, double threshold) {
  for (std::size_t i = 0; i < report.x_metrics.thresholds.size(); ++i) {
    if (report.x_metrics.thresholds[i] == threshold) {
      return report.x_metrics.scores[i];
    }
  }
  return 0;
}

void emit_report(const MetricReport& report, const std::string& out_path,
                 const std::string& format) {
  std::string text;
  if (format == "json") {
    text = report.to_json();
  } else {
    std::ostringstream csv;
    csv << "metric,value\n";
    csv << "predictor," << report.predictor << '\n';
    csv << "n_sequences," << report.n_sequences << '\n';
    csv << "n_categories," << report.n_categories << '\n';
    for (const auto& [n, accuracy] : report.top_n) {
      csv << "top_" << n << "_accuracy,";
      write_shortest(csv, accuracy);
      csv << '\n';
    }
    for (std::size_t i = 0; i < report.x_metrics.thresholds.size(); ++i) {
      csv << 'x' << report.x_metrics.thresholds[i] << ','
          << report.x_metrics.scores[i] << '\n';
    }
    csv << "macro_precision,";
    write_shortest(csv, report.macro_precision);
    csv << "\nmacro_recall,";
    write_shortest(csv, report.macro_recall);
    csv << "\nmacro_f1,";
    write_shortest(csv, report.macro_f1);
    csv << "\nece,";
    write_shortest(csv, report.calibration.ece);
    csv << "\nmce,";
    write_shortest(csv, report.calibration.mce);
    csv << '\n';
    text = csv.str();
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    create_or_throw(out_path) << text;
  }
}

int cmd_validate(const std::string& predictions_path, const std::string& labels_path) {
  const ScoringInputs in = load_scoring_inputs(predictions_path, labels_path);
  const ValidationReport report = validate(in.predictions, in.labels);
  std::cout << report.summary();
  return report.ok() ? kExitOk : kExitValidation;
}

int cmd_score(const std::string& predictions_path, const std::string& labels_path,
              std::string name, const std::string& out_path,
              const std::string& format, int bins,
              const std::vector<double>& thresholds,
              const std::string& target) {
  const ScoringInputs in = load_scoring_inputs(predictions_path, labels_path);
  if (!validate_or_report(in)) return kExitValidation;
  if (name.empty()) {
    name = std::filesystem::path(predictions_path).stem().string();
  }
  ReportOptions options;
  options.calibration_bins = bins;
  options.x_thresholds = thresholds;
  if (!target.empty()) options.analysis_target = target;
  const MetricReport report =
      build_report(name, in.predictions, in.labels, options, in.digests);
  emit_report(report, out_path, format);
  return kExitOk;
}

int cmd_xmetrics(const std::string& predictions_path, const std::string& labels_path,
                 const std::vector<double>& thresholds) {
  const ScoringInputs in = load_scoring_inputs(predictions_path, labels_path);
  if (!validate_or_report(in)) return kExitValidation;
  const AccuracyCurve curve =
      accuracy_curve(rank_matrix(in.predictions), in.labels);
  const XMetricSet set = x_metrics(curve, thresholds);
  std::cout << "threshold,score\n";
  for (std::size_t i = 0; i < set.thresholds.size(); ++i) {
    std::cout << set.thresholds[i] << ',' << set.scores[i] << '\n';
  }
  return kExitOk;
}

int cmd_calibration(const std::string& predictions_path,
                    const std::string& labels_path, int bins,
                    const std::string& out_path) {
  const ScoringInputs in = load_scoring_inputs(predictions_path, labels_path);
  if (!validate_or_report(in)) return kExitValidation;
  const CalibrationTable table = calibration_table(in.predictions, in.labels, bins);
  if (out_path.empty()) {
    serialize_calibration_csv(table, std::cout);
  } else {
    auto out = create_or_throw(out_path);
    serialize_calibration_csv(table, out);
    std::cout << "ece,";
    write_shortest(std::cout, table.ece);
    std::cout << "\nmce,";
    write_shortest(std::cout, table.mce);
    std::cout << '\n';
  }
  return kExitOk;
}

int cmd_ensemble(const std::vector<std::string>& input_paths,
                 const std::vector<double>& weights, const std::string& out_path) {
  std::vector<PredictionMatrix> members;
  members.reserve(input_paths.size());
  for (const auto& path : input_paths) {
    members.push_back(load_predictions(path));
  }
  EnsembleSpec spec;
  for (const auto& member : members) spec.members.push_back(&member);
  spec.weights = weights;
  const PredictionMatrix combined = ensemble(spec);
  save_predictions(combined, out_path);
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& report_paths,
                const std::string& format) {
  struct Row {
    std::string name;
    double top10;
    int x99;
    double top1;
    double macro_f1;
    double ece;
  };
  std::vector<Row> rows;
  for (const auto& path : report_paths) {
    const MetricReport report = MetricReport::from_json(read_file(path));
    rows.push_back({report.predictor, report_top_n(report, 10),
                    report_x(report, 99.0), report_top_n(report, 1),
                    report.macro_f1, report.calibration.ece});
  }
  // Top-10 accuracy decides; X99 then name break ties.
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.top10 != b.top10) return a.top10 > b.top10;
    if (a.x99 != b.x99) return a.x99 < b.x99;
    return a.name < b.name;
  });

  if (format == "csv") {
    std::cout << "rank,name,top10_accuracy,x99,top1_accuracy,macro_f1,ece\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      std::cout << (i + 1) << ',' << r.name << ',';
      write_shortest(std::cout, r.top10);
      std::cout << ',' << r.x99 << ',';
      write_shortest(std::cout, r.top1);
      std::cout << ',';
      write_shortest(std::cout, r.macro_f1);
      std::cout << ',';
      write_shortest(std::cout, r.ece);
      std::cout << '\n';
    }
  } else {
    std::cout << std::left << std::setw(4) << "#" << std::setw(24) << "name"
              << std::right << std::setw(10) << "top-10" << std::setw(8) << "X99"
              << std::setw(10) << "top-1" << std::setw(10) << "macroF1"
              << std::setw(10) << "ECE" << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      std::cout << std::left << std::setw(4) << (i + 1) << std::setw(24) << r.name
                << std::right << std::fixed << std::setprecision(4)
                << std::setw(10) << r.top10 << std::setw(8) << r.x99
                << std::setw(10) << r.top1 << std::setw(10) << r.macro_f1
                << std::setw(10) << r.ece << '\n';
      std::cout.unsetf(std::ios::fixed);
    }
  }
  return kExitOk;
}

int cmd_prep(const std::string& fasta_path, const std::string& lineage_path,
             const std::string& metadata_path, const std::string& out_dir,
             std::uint64_t seed, int threshold, int min_holdout,
             const std::vector<double>& fractions, std::size_t min_length,
             bool obfuscate, int obfuscation_length) {
  std::vector<SequenceRecord> records = load_fasta(fasta_path);
  for (const auto& record : records) {
    if (record.lab_id.empty()) {
      throw std::runtime_error("record without [lab_id] header: " +
                               record.sequence_id);
    }
  }
  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const auto& record : records) ids.push_back(record.sequence_id);

  LineageGraph graph;
  if (!lineage_path.empty()) {
    graph = load_lineage(lineage_path, ids);
  }
  if (!metadata_path.empty()) {
    load_metadata(metadata_path, records);
  }

  if (fractions.size() != 3) {
    throw std::runtime_error("--fractions needs train,leaderboard,holdout");
  }
  SplitFractions targets{fractions[0], fractions[1], fractions[2]};
  if (std::abs(fractions[0] + fractions[1] + fractions[2] - 1.0) > 1e-6) {
    throw std::runtime_error("--fractions must sum to 1");
  }

  const CategoryPooling pooling = pool_small_labs(records, threshold);
  const auto components = lineage_components(graph, ids);
  const SplitAssignment assignment = split_dataset(
      records, pooling, components, targets, min_holdout, seed, min_length);
  for (const auto& notice : assignment.notices) std::cerr << notice << '\n';

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  // Obfuscation maps are always emitted; a separate file keeps the secret
  // correspondence out of the shareable artifacts.
  std::vector<std::string> labs;
  for (const auto& [lab, category] : pooling.mapping) labs.push_back(lab);
  std::sort(labs.begin(), labs.end());
  const auto sequence_tokens = obfuscate_ids(ids, mix_seed(seed, 1),
                                             obfuscation_length);
  const auto lab_tokens = obfuscate_ids(labs, mix_seed(seed, 2),
                                        obfuscation_length);
  {
    auto out = create_or_throw(dir / "obfuscation_map.csv");
    out << "kind,original_id,obfuscated_id\n";
    for (const auto& id : ids) {
      out << "sequence," << id << ',' << sequence_tokens.at(id) << '\n';
    }
    for (const auto& lab : labs) {
      out << "lab," << lab << ',' << lab_tokens.at(lab) << '\n';
    }
  }

  auto sequence_name = [&](const std::string& id) -> const std::string& {
    return obfuscate ? sequence_tokens.at(id) : id;
  };
  auto lab_name = [&](const std::string& lab) -> const std::string& {
    return obfuscate ? lab_tokens.at(lab) : lab;
  };

  {
    auto out = create_or_throw(dir / "split_manifest.csv");
    out << "sequence_id,split\n";
    for (const auto& [id, split] : assignment.entries) {
      out << sequence_name(id) << ',' << split_name(split) << '\n';
    }
  }
  {
    auto out = create_or_throw(dir / "pooling_map.csv");
    out << "lab_id,category_id\n";
    for (const auto& lab : labs) {
      const CategoryId& category = pooling.mapping.at(lab);
      const bool pooled = category == pooling.composite_id;
      out << lab_name(lab) << ','
          << (pooled ? pooling.composite_id : lab_name(category)) << '\n';
    }
  }
  if (!metadata_path.empty()) {
    OneHotTable table = encode_metadata(records);
    if (obfuscate) {
      for (auto& id : table.sequence_ids) id = sequence_tokens.at(id);
    }
    auto out = create_or_throw(dir / "one_hot.csv");
    serialize_one_hot(table, out);
  }

  const auto realized = assignment.realized_fractions();
  std::cout << "records," << records.size() << '\n'
            << "categories," << pooling.category_count() << '\n'
            << "components," << components.size() << '\n'
            << "dropped," << assignment.dropped.size() << '\n';
  std::cout << "train_fraction,";
  write_shortest(std::cout, realized[0]);
  std::cout << "\nleaderboard_fraction,";
  write_shortest(std::cout, realized[1]);
  std::cout << "\nholdout_fraction,";
  write_shortest(std::cout, realized[2]);
  std::cout << '\n';
  return kExitOk;
}

int cmd_baseline_build(const std::string& fasta_path, const std::string& labels_path,
                       int k, bool canonical, const std::string& out_path) {
  const std::vector<SequenceRecord> train = load_fasta(fasta_path);
  LabelMap labels;
  if (!labels_path.empty()) {
    labels = load_labels(labels_path);
  } else {
    for (const auto& record : train) {
      if (record.lab_id.empty()) {
        throw std::runtime_error("no --labels given and record lacks [lab_id]: " +
                                 record.sequence_id);
      }
      labels.insert(record.sequence_id, record.lab_id);
    }
  }
  const KmerIndex index = build_kmer_index(train, labels, k, canonical);
  save_index(index, out_path);
  std::cout << "train_sequences," << index.train_count() << '\n'
            << "categories," << index.categories.size() << '\n'
            << "distinct_kmers," << index.postings.size() << '\n';
  return kExitOk;
}

int cmd_baseline_predict(const std::string& index_path, const std::string& fasta_path,
                         const std::string& mode, std::optional<std::uint64_t> seed,
                         double evalue_threshold, const std::string& method,
                         double alpha, const std::string& out_path) {
  const KmerIndex index = load_index(index_path);
  const std::vector<SequenceRecord> queries = load_fasta(fasta_path);
  PredictionMatrix matrix;
  if (method == "naive-bayes") {
    matrix = predict_naive_bayes(nb_from_index(index, alpha), queries);
  } else {
    SortMode sort_mode = SortMode::stable;
    if (mode == "unstable") {
      if (!seed) {
        throw SeedRequired("--mode unstable requires an explicit --seed");
      }
      sort_mode = SortMode::unstable;
    }
    matrix = predict_similarity(index, queries, sort_mode, seed.value_or(0),
                                evalue_threshold);
  }
  save_predictions(matrix, out_path);
  return kExitOk;
}

int cmd_plotdata(const std::string& report_path, const std::string& out_dir,
                 bool svg) {
  const MetricReport report = MetricReport::from_json(read_file(report_path));
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  {
    auto out = create_or_throw(dir / "accuracy_curve.csv");
    out << "n,accuracy\n";
    for (Eigen::Index n = 0; n < report.curve.values.size(); ++n) {
      out << (n + 1) << ',';
      write_shortest(out, report.curve.values(n));
      out << '\n';
    }
  }
  {
    auto out = create_or_throw(dir / "reliability.csv");
    serialize_calibration_csv(report.calibration, out);
  }
  if (report.analysis) {
    auto out = create_or_throw(dir / "category_analysis.csv");
    serialize_category_analysis(*report.analysis, out);
  }
  if (svg) {
    auto curve_out = create_or_throw(dir / "accuracy_curve.svg");
    emit_accuracy_curve_svg(report.curve, curve_out);
    auto reliability_out = create_or_throw(dir / "reliability.svg");
    emit_reliability_svg(report.calibration, reliability_out);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Attribution-predictor evaluation toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.set_config("--config", "", "read option defaults from a key=value file");
  app.require_subcommand(1);

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "check a submission against labels")
          ->configurable();
  std::string predictions_path;
  std::string labels_path;
  validate_cmd->add_option("-p,--predictions", predictions_path)->required();
  validate_cmd->add_option("-l,--labels", labels_path)->required();

  // score
  auto* score_cmd =
      app.add_subcommand("score", "full metric report for one submission")
          ->configurable();
  std::string score_predictions;
  std::string score_labels;
  std::string score_name;
  std::string score_out;
  std::string score_format = "json";
  std::string score_target;
  int score_bins = 15;
  std::vector<double> score_thresholds = {80.0, 90.0, 95.0, 99.0};
  score_cmd->add_option("-p,--predictions", score_predictions)->required();
  score_cmd->add_option("-l,--labels", score_labels)->required();
  score_cmd->add_option("--name", score_name, "predictor name in the report");
  score_cmd->add_option("-o,--out", score_out, "output path (default stdout)");
  score_cmd->add_option("--format", score_format)
      ->check(CLI::IsMember({"json", "csv"}));
  score_cmd->add_option("--bins", score_bins, "calibration bin count");
  score_cmd->add_option("--thresholds", score_thresholds, "X-metric percentages");
  score_cmd->add_option("--target", score_target,
                        "include a category analysis for this category");

  // xmetrics
  auto* x_cmd = app.add_subcommand("xmetrics", "X-metric table")->configurable();
  std::string x_predictions;
  std::string x_labels;
  std::vector<double> x_thresholds = {80.0, 90.0, 95.0, 99.0};
  x_cmd->add_option("-p,--predictions", x_predictions)->required();
  x_cmd->add_option("-l,--labels", x_labels)->required();
  x_cmd->add_option("--thresholds", x_thresholds);

  // calibration
  auto* cal_cmd =
      app.add_subcommand("calibration", "per-bin calibration table")->configurable();
  std::string cal_predictions;
  std::string cal_labels;
  std::string cal_out;
  int cal_bins = 15;
  cal_cmd->add_option("-p,--predictions", cal_predictions)->required();
  cal_cmd->add_option("-l,--labels", cal_labels)->required();
  cal_cmd->add_option("--bins", cal_bins);
  cal_cmd->add_option("-o,--out", cal_out, "CSV path (default stdout)");

  // ensemble
  auto* ens_cmd =
      app.add_subcommand("ensemble", "equal-weight probability average")
          ->configurable();
  std::vector<std::string> ens_inputs;
  std::vector<double> ens_weights;
  std::string ens_out;
  ens_cmd->add_option("-i,--input", ens_inputs, "member submission CSVs")
      ->required()
      ->expected(-1);
  ens_cmd->add_option("--weights", ens_weights, "per-member weights (sum 1)");
  ens_cmd->add_option("-o,--out", ens_out)->required();

  // compare
  auto* cmp_cmd =
      app.add_subcommand("compare", "leaderboard table from score reports")
          ->configurable();
  std::vector<std::string> cmp_reports;
  std::string cmp_format = "table";
  cmp_cmd->add_option("reports", cmp_reports)->required()->expected(-1);
  cmp_cmd->add_option("--format", cmp_format)
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // prep
  auto* prep_cmd =
      app.add_subcommand("prep", "pool, split, obfuscate and encode a corpus")
          ->configurable();
  std::string prep_fasta;
  std::string prep_lineage;
  std::string prep_metadata;
  std::string prep_out_dir;
  std::uint64_t prep_seed = 0;
  int prep_threshold = 10;
  int prep_min_holdout = 3;
  std::vector<double> prep_fractions = {0.770, 0.091, 0.139};
  std::size_t prep_min_length = 2;
  bool prep_obfuscate = false;
  int prep_obfuscation_length = 12;
  prep_cmd->add_option("--fasta", prep_fasta)->required();
  prep_cmd->add_option("--lineage", prep_lineage);
  prep_cmd->add_option("--metadata", prep_metadata);
  prep_cmd->add_option("--out-dir", prep_out_dir)->required();
  auto* prep_seed_opt = prep_cmd->add_option(
      "--seed", prep_seed, "split shuffle seed (required; no implicit seed)");
  prep_cmd->add_option("--threshold", prep_threshold, "small-lab pooling threshold");
  prep_cmd->add_option("--min-holdout", prep_min_holdout);
  prep_cmd->add_option("--fractions", prep_fractions,
                       "train,leaderboard,holdout targets");
  prep_cmd->add_option("--min-length", prep_min_length,
                       "minimum sequence length kept outside train");
  prep_cmd->add_flag("--obfuscate", prep_obfuscate,
                     "emit artifacts under obfuscated ids");
  prep_cmd->add_option("--obfuscation-length", prep_obfuscation_length);

  // baseline
  auto* baseline_cmd = app.add_subcommand("baseline", "k-mer attribution baseline");
  baseline_cmd->require_subcommand(1);
  auto* build_cmd =
      baseline_cmd->add_subcommand("build-index", "index a training corpus")
          ->configurable();
  std::string build_fasta;
  std::string build_labels;
  int build_k = 8;
  bool build_canonical = false;
  std::string build_out;
  build_cmd->add_option("--fasta", build_fasta)->required();
  build_cmd->add_option("--labels", build_labels,
                        "labels CSV (default: [lab_id] from FASTA headers)");
  build_cmd->add_option("--k", build_k)->check(CLI::Range(4, 15));
  build_cmd->add_flag("--canonical", build_canonical,
                      "fold reverse complements");
  build_cmd->add_option("-o,--out", build_out)->required();

  auto* predict_cmd =
      baseline_cmd->add_subcommand("predict", "emit a prediction CSV")
          ->configurable();
  std::string predict_index;
  std::string predict_fasta;
  std::string predict_mode = "stable";
  std::uint64_t predict_seed = 0;
  double predict_evalue = 10.0;
  std::string predict_method = "similarity";
  double predict_alpha = 1.0;
  std::string predict_out;
  predict_cmd->add_option("--index", predict_index)->required();
  predict_cmd->add_option("--fasta", predict_fasta)->required();
  predict_cmd->add_option("--mode", predict_mode)
      ->check(CLI::IsMember({"stable", "unstable"}));
  auto* predict_seed_opt = predict_cmd->add_option(
      "--seed", predict_seed, "tie-shuffle seed (required with --mode unstable)");
  predict_cmd->add_option("--evalue-threshold", predict_evalue);
  predict_cmd->add_option("--method", predict_method)
      ->check(CLI::IsMember({"similarity", "naive-bayes"}));
  predict_cmd->add_option("--alpha", predict_alpha, "naive Bayes smoothing");
  predict_cmd->add_option("-o,--out", predict_out)->required();

  // plotdata
  auto* plot_cmd =
      app.add_subcommand("plotdata", "CSV/SVG series from a score report")
          ->configurable();
  std::string plot_report;
  std::string plot_out_dir;
  bool plot_svg = false;
  plot_cmd->add_option("--report", plot_report)->required();
  plot_cmd->add_option("--out-dir", plot_out_dir)->required();
  plot_cmd->add_flag("--svg", plot_svg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*validate_cmd) return cmd_validate(predictions_path, labels_path);
    if (*score_cmd) {
      return cmd_score(score_predictions, score_labels, score_name, score_out,
                       score_format, score_bins, score_thresholds, score_target);
    }
    if (*x_cmd) return cmd_xmetrics(x_predictions, x_labels, x_thresholds);
    if (*cal_cmd) return cmd_calibration(cal_predictions, cal_labels, cal_bins,
                                         cal_out);
    if (*ens_cmd) return cmd_ensemble(ens_inputs, ens_weights, ens_out);
    if (*cmp_cmd) return cmd_compare(cmp_reports, cmp_format);
    if (*prep_cmd) {
      if (prep_seed_opt->count() == 0) {
        throw SeedRequired("prep shuffles the corpus; pass an explicit --seed");
      }
      return cmd_prep(prep_fasta, prep_lineage, prep_metadata, prep_out_dir,
                      prep_seed, prep_threshold, prep_min_holdout, prep_fractions,
                      prep_min_length, prep_obfuscate, prep_obfuscation_length);
    }
    if (*build_cmd) {
      return cmd_baseline_build(build_fasta, build_labels, build_k,
                                build_canonical, build_out);
    }
    if (*predict_cmd) {
      std::optional<std::uint64_t> seed;
      if (predict_seed_opt->count() > 0) seed = predict_seed;
      return cmd_baseline_predict(predict_index, predict_fasta, predict_mode, seed,
                                  predict_evalue, predict_method, predict_alpha,
                                  predict_out);
    }
    if (*plot_cmd) return cmd_plotdata(plot_report, plot_out_dir, plot_svg);
    std::cerr << "no subcommand given\n";
    return kExitValidation;
  } catch (const SeedRequired& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const AlignmentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace gea::cli
