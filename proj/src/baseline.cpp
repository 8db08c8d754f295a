#include "gea/baseline.hpp"

#include "gea/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <stdexcept>

namespace gea {

namespace {

constexpr int kMinK = 1;
constexpr int kMaxK = 15;  // 2 bits per base within 64 bits, with headroom

int base_code(char c) {
  switch (c) {
    case 'A':
      return 0;
    case 'C':
      return 1;
    case 'G':
      return 2;
    case 'T':
      return 3;
    default:
      return -1;
  }
}

void check_k(int k) {
  if (k < kMinK || k > kMaxK) {
    throw std::invalid_argument("k must lie in [" + std::to_string(kMinK) + ", " +
                                std::to_string(kMaxK) + "]");
  }
}

}  // namespace

std::optional<std::uint64_t> encode_kmer(std::string_view window) {
  std::uint64_t code = 0;
  for (char c : window) {
    const int b = base_code(c);
    if (b < 0) return std::nullopt;
    code = (code << 2) | static_cast<std::uint64_t>(b);
  }
  return code;
}

std::uint64_t reverse_complement(std::uint64_t kmer, int k) {
  std::uint64_t out = 0;
  for (int i = 0; i < k; ++i) {
    out = (out << 2) | (3 - (kmer & 3));
    kmer >>= 2;
  }
  return out;
}

std::string decode_kmer(std::uint64_t kmer, int k) {
  static constexpr char kBases[] = "ACGT";
  std::string out(static_cast<std::size_t>(k), 'A');
  for (int i = k - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kBases[kmer & 3];
    kmer >>= 2;
  }
  return out;
}

std::unordered_map<std::uint64_t, std::uint32_t> kmer_counts(std::string_view dna,
                                                             int k, bool canonical) {
  check_k(k);
  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  if (dna.size() < static_cast<std::size_t>(k)) return counts;

  const std::uint64_t mask = (k == 32) ? ~0ULL : ((1ULL << (2 * k)) - 1);
  std::uint64_t code = 0;
  int valid = 0;  // bases accumulated since the last non-ACGT character
  for (std::size_t i = 0; i < dna.size(); ++i) {
    const int b = base_code(dna[i]);
    if (b < 0) {
      valid = 0;
      continue;
    }
    code = ((code << 2) | static_cast<std::uint64_t>(b)) & mask;
    if (++valid >= k) {
      std::uint64_t kmer = code;
      if (canonical) kmer = std::min(kmer, reverse_complement(kmer, k));
      counts[kmer] += 1;
    }
  }
  return counts;
}

KmerIndex build_kmer_index(const std::vector<SequenceRecord>& train,
                           const LabelMap& labels, int k, bool canonical) {
  check_k(k);
  if (train.empty()) {
    throw std::invalid_argument("build_kmer_index requires a non-empty training set");
  }
  KmerIndex index;
  index.k = k;
  index.canonical = canonical;
  index.train_ids.reserve(train.size());
  index.train_labels.reserve(train.size());

  std::set<CategoryId> category_set;
  for (std::uint32_t ordinal = 0; ordinal < train.size(); ++ordinal) {
    const SequenceRecord& record = train[ordinal];
    const CategoryId& label = labels.at(record.sequence_id);
    index.train_ids.push_back(record.sequence_id);
    index.train_labels.push_back(label);
    category_set.insert(label);
    for (const auto& [kmer, count] : kmer_counts(record.dna, k, canonical)) {
      index.postings[kmer].emplace_back(ordinal, count);
    }
  }
  // Per-sequence maps iterate in hash order; restore ascending ordinals.
  for (auto& [kmer, entries] : index.postings) {
    std::sort(entries.begin(), entries.end());
  }
  index.categories.assign(category_set.begin(), category_set.end());
  return index;
}

HitList score_hits(const SequenceRecord& query, const KmerIndex& index,
                   double evalue_threshold) {
  const std::size_t d = index.train_count();
  std::vector<std::uint64_t> scores(d, 0);
  for (const auto& [kmer, query_count] : kmer_counts(query.dna, index.k,
                                                     index.canonical)) {
    const auto it = index.postings.find(kmer);
    if (it == index.postings.end()) continue;
    for (const auto& [ordinal, train_count] : it->second) {
      scores[ordinal] += std::min(query_count, train_count);
    }
  }
  HitList hits;
  for (std::uint32_t ordinal = 0; ordinal < d; ++ordinal) {
    if (scores[ordinal] == 0) continue;
    const double pseudo_evalue =
        static_cast<double>(d) / (1.0 + static_cast<double>(scores[ordinal]));
    if (pseudo_evalue > evalue_threshold) continue;
    hits.push_back({ordinal, scores[ordinal], pseudo_evalue});
  }
  return hits;  // ascending ordinal == input order
}

LabRanking rank_labs(const HitList& hits, const KmerIndex& index, SortMode mode,
                     std::uint64_t seed) {
  // Ascending pseudo E-value with input order preserved inside ties.
  HitList sorted = hits;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Hit& a, const Hit& b) {
    return a.score != b.score ? a.score > b.score : a.ordinal < b.ordinal;
  });

  if (mode == SortMode::unstable) {
    std::mt19937_64 rng(seed);
    std::size_t start = 0;
    while (start < sorted.size()) {
      std::size_t end = start;
      while (end + 1 < sorted.size() && sorted[end + 1].score == sorted[start].score) {
        ++end;
      }
      if (end > start) {
        std::vector<Hit> group(sorted.begin() + start, sorted.begin() + end + 1);
        deterministic_shuffle(group, rng);
        std::copy(group.begin(), group.end(), sorted.begin() + start);
      }
      start = end + 1;
    }
  }

  LabRanking ranking;
  std::unordered_map<CategoryId, bool> seen;
  for (const Hit& hit : sorted) {
    const CategoryId& lab = index.train_labels[hit.ordinal];
    if (seen.emplace(lab, true).second) {
      ranking.labs.emplace_back(lab, static_cast<int>(ranking.labs.size()) + 1);
    }
  }
  return ranking;
}

Eigen::RowVectorXd ranking_to_probabilities(
    const LabRanking& ranking, const std::vector<CategoryId>& category_set) {
  const Eigen::Index k = static_cast<Eigen::Index>(category_set.size());
  if (ranking.labs.empty()) {
    return Eigen::RowVectorXd::Constant(k, 1.0 / static_cast<double>(k));
  }
  const auto column = index_of(category_set);
  const int l = static_cast<int>(ranking.labs.size());

  // Reversed rank value L - r + 1; max-subtracted softmax over hit labs.
  double denominator = 0.0;
  std::vector<std::pair<int, double>> terms;
  terms.reserve(ranking.labs.size());
  for (const auto& [lab, rank] : ranking.labs) {
    const auto it = column.find(lab);
    if (it == column.end()) {
      throw std::runtime_error("ranked lab missing from category set: " + lab);
    }
    const double value = std::exp(static_cast<double>((l - rank + 1) - l));
    terms.emplace_back(it->second, value);
    denominator += value;
  }
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(k);
  for (const auto& [col, value] : terms) {
    row(col) = value / denominator;
  }
  return row;
}

NaiveBayesModel nb_train(const std::vector<SequenceRecord>& train,
                         const LabelMap& labels, int k, double alpha) {
  return nb_from_index(build_kmer_index(train, labels, k, false), alpha);
}

NaiveBayesModel nb_from_index(const KmerIndex& index, double alpha) {
  if (index.train_count() == 0) {
    throw std::invalid_argument("naive Bayes requires a non-empty training set");
  }
  NaiveBayesModel model;
  model.k = index.k;
  model.canonical = index.canonical;
  model.alpha = alpha;
  model.categories = index.categories;
  const auto category_column = index_of(model.categories);
  const Eigen::Index c = static_cast<Eigen::Index>(model.categories.size());

  std::vector<int> category_of_ordinal(index.train_count());
  Eigen::VectorXd class_counts = Eigen::VectorXd::Zero(c);
  for (std::size_t i = 0; i < index.train_count(); ++i) {
    const int col = category_column.at(index.train_labels[i]);
    category_of_ordinal[i] = col;
    class_counts(col) += 1.0;
  }
  model.log_prior =
      (class_counts.array() / static_cast<double>(index.train_count())).log();

  model.category_totals = Eigen::VectorXd::Zero(c);
  model.kmer_counts.reserve(index.postings.size());
  for (const auto& [kmer, entries] : index.postings) {
    auto& per_category = model.kmer_counts[kmer];
    per_category.assign(static_cast<std::size_t>(c), 0);
    for (const auto& [ordinal, count] : entries) {
      const int col = category_of_ordinal[ordinal];
      per_category[static_cast<std::size_t>(col)] += count;
      model.category_totals(col) += static_cast<double>(count);
    }
  }
  model.vocabulary_size = index.postings.size();
  return model;
}

Eigen::RowVectorXd nb_predict(const NaiveBayesModel& model,
                              const SequenceRecord& query) {
  const Eigen::Index c = static_cast<Eigen::Index>(model.categories.size());
  Eigen::VectorXd log_posterior = model.log_prior;

  // log P(w|class) = log(count + alpha) - log(total + alpha*V); k-mers outside
  // the training vocabulary carry no evidence and are skipped.
  const Eigen::VectorXd log_denominator =
      (model.category_totals.array() + model.alpha *
       static_cast<double>(model.vocabulary_size)).log();
  double in_vocabulary = 0.0;
  for (const auto& [kmer, count] : kmer_counts(query.dna, model.k, model.canonical)) {
    const auto it = model.kmer_counts.find(kmer);
    if (it == model.kmer_counts.end()) continue;
    in_vocabulary += static_cast<double>(count);
    for (Eigen::Index j = 0; j < c; ++j) {
      log_posterior(j) +=
          static_cast<double>(count) *
          std::log(static_cast<double>(it->second[static_cast<std::size_t>(j)]) +
                   model.alpha);
    }
  }
  log_posterior -= in_vocabulary * log_denominator;

  // Max-subtraction before exponentiation keeps long queries finite.
  const double top = log_posterior.maxCoeff();
  Eigen::RowVectorXd row = (log_posterior.array() - top).exp().transpose();
  return row / row.sum();
}

PredictionMatrix predict_similarity(const KmerIndex& index,
                                    const std::vector<SequenceRecord>& queries,
                                    SortMode mode, std::uint64_t seed,
                                    double evalue_threshold) {
  PredictionMatrix matrix;
  matrix.category_ids = index.categories;
  matrix.sequence_ids.reserve(queries.size());
  matrix.values.resize(static_cast<Eigen::Index>(queries.size()),
                       static_cast<Eigen::Index>(index.categories.size()));
  for (std::size_t i = 0; i < queries.size(); ++i) {
    matrix.sequence_ids.push_back(queries[i].sequence_id);
    const HitList hits = score_hits(queries[i], index, evalue_threshold);
    const LabRanking ranking =
        rank_labs(hits, index, mode, mix_seed(seed, static_cast<std::uint64_t>(i)));
    matrix.values.row(static_cast<Eigen::Index>(i)) =
        ranking_to_probabilities(ranking, index.categories);
  }
  return matrix;
}

PredictionMatrix predict_naive_bayes(const NaiveBayesModel& model,
                                     const std::vector<SequenceRecord>& queries) {
  PredictionMatrix matrix;
  matrix.category_ids = model.categories;
  matrix.sequence_ids.reserve(queries.size());
  matrix.values.resize(static_cast<Eigen::Index>(queries.size()),
                       static_cast<Eigen::Index>(model.categories.size()));
  for (std::size_t i = 0; i < queries.size(); ++i) {
    matrix.sequence_ids.push_back(queries[i].sequence_id);
    matrix.values.row(static_cast<Eigen::Index>(i)) = nb_predict(model, queries[i]);
  }
  return matrix;
}

namespace {

constexpr char kIndexMagic[8] = {'G', 'E', 'A', 'K', 'I', 'X', '0', '1'};

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("truncated index file");
  return value;
}

void write_string(std::ostream& out, const std::string& s) {
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
  const auto n = read_pod<std::uint32_t>(in);
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) throw std::runtime_error("truncated index file");
  return s;
}

}  // namespace

void save_index(const KmerIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot create file: " + path.string());
  out.write(kIndexMagic, sizeof(kIndexMagic));
  write_pod<std::int32_t>(out, index.k);
  write_pod<std::uint8_t>(out, index.canonical ? 1 : 0);
  write_pod<std::uint64_t>(out, index.train_count());
  for (std::size_t i = 0; i < index.train_count(); ++i) {
    write_string(out, index.train_ids[i]);
    write_string(out, index.train_labels[i]);
  }
  // Sorted k-mer order keeps the file deterministic for identical inputs.
  std::vector<std::uint64_t> kmers;
  kmers.reserve(index.postings.size());
  for (const auto& [kmer, entries] : index.postings) kmers.push_back(kmer);
  std::sort(kmers.begin(), kmers.end());
  write_pod<std::uint64_t>(out, kmers.size());
  for (const std::uint64_t kmer : kmers) {
    const auto& entries = index.postings.at(kmer);
    write_pod<std::uint64_t>(out, kmer);
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(entries.size()));
    for (const auto& [ordinal, count] : entries) {
      write_pod<std::uint32_t>(out, ordinal);
      write_pod<std::uint32_t>(out, count);
    }
  }
  if (!out) throw std::runtime_error("failed writing index: " + path.string());
}

KmerIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  char magic[sizeof(kIndexMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kIndexMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("not a k-mer index file: " + path.string());
  }
  KmerIndex index;
  index.k = read_pod<std::int32_t>(in);
  index.canonical = read_pod<std::uint8_t>(in) != 0;
  const auto train_count = read_pod<std::uint64_t>(in);
  index.train_ids.reserve(train_count);
  index.train_labels.reserve(train_count);
  std::set<CategoryId> category_set;
  for (std::uint64_t i = 0; i < train_count; ++i) {
    index.train_ids.push_back(read_string(in));
    index.train_labels.push_back(read_string(in));
    category_set.insert(index.train_labels.back());
  }
  index.categories.assign(category_set.begin(), category_set.end());
  const auto posting_count = read_pod<std::uint64_t>(in);
  index.postings.reserve(posting_count);
  for (std::uint64_t i = 0; i < posting_count; ++i) {
    const auto kmer = read_pod<std::uint64_t>(in);
    const auto entry_count = read_pod<std::uint32_t>(in);
    auto& entries = index.postings[kmer];
    entries.reserve(entry_count);
    for (std::uint32_t e = 0; e < entry_count; ++e) {
      const auto ordinal = read_pod<std::uint32_t>(in);
      const auto count = read_pod<std::uint32_t>(in);
      entries.emplace_back(ordinal, count);
    }
  }
  return index;
}

}  // namespace gea
