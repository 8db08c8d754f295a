#pragma once

#include "gea/core_data.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gea {

// 2-bit k-mer packing; k up to 15 keeps the sequence-similarity scoring and
// naive Bayes in a single 64-bit key. Windows containing N (or any non-ACGT
// base) are skipped whole.
std::optional<std::uint64_t> encode_kmer(std::string_view window);
std::uint64_t reverse_complement(std::uint64_t kmer, int k);
std::string decode_kmer(std::uint64_t kmer, int k);

// k-mer -> count multiset of one sequence; `canonical` folds each k-mer with
// its reverse complement to the lexicographically smaller encoding.
std::unordered_map<std::uint64_t, std::uint32_t> kmer_counts(std::string_view dna,
                                                             int k, bool canonical);

// Inverted index over the training corpus. Ordinals record insertion order;
// they are what the stable sort mode preserves within score ties.
struct KmerIndex {
  int k = 8;
  bool canonical = false;
  std::vector<std::string> train_ids;     // ordinal -> sequence_id
  std::vector<CategoryId> train_labels;   // ordinal -> category
  std::vector<CategoryId> categories;     // sorted unique labels
  std::unordered_map<std::uint64_t,
                     std::vector<std::pair<std::uint32_t, std::uint32_t>>>
      postings;  // k-mer -> (ordinal, count), ordinals ascending

  std::size_t train_count() const { return train_ids.size(); }
};

KmerIndex build_kmer_index(const std::vector<SequenceRecord>& train,
                           const LabelMap& labels, int k = 8,
                           bool canonical = false);

void save_index(const KmerIndex& index, const std::filesystem::path& path);
KmerIndex load_index(const std::filesystem::path& path);

// One query's scored alignments surrogate. score sums min(query count,
// train count) over shared k-mers; the pseudo E-value D/(1+score) (D = number
// of training sequences) decreases strictly in score, mirroring the
// orientation of a real E-value. Hits need score > 0 and pseudo E-value
// within the threshold.
struct Hit {
  std::uint32_t ordinal = 0;  // == input_order (index insertion ordinal)
  std::uint64_t score = 0;
  double pseudo_evalue = 0.0;
};
using HitList = std::vector<Hit>;

HitList score_hits(const SequenceRecord& query, const KmerIndex& index,
                   double evalue_threshold = 10.0);

// stable keeps insertion order inside score ties (mergesort behaviour);
// unstable re-orders each tie group with a seeded shuffle, making the
// quicksort-style nondeterminism reproducible.
enum class SortMode { stable, unstable };

struct LabRanking {
  std::vector<std::pair<CategoryId, int>> labs;  // ranks 1..L, contiguous
};

LabRanking rank_labs(const HitList& hits, const KmerIndex& index, SortMode mode,
                     std::uint64_t seed = 0);

// Ranks reversed so the best match carries the largest value, then softmax
// over the hit labs only; labs without hits get probability 0. With no hits
// at all the row is uniform over the whole category set.
Eigen::RowVectorXd ranking_to_probabilities(const LabRanking& ranking,
                                            const std::vector<CategoryId>& category_set);

// Multinomial naive Bayes over k-mer counts with additive smoothing; class
// priors follow category record counts.
struct NaiveBayesModel {
  int k = 8;
  bool canonical = false;
  double alpha = 1.0;
  std::vector<CategoryId> categories;  // sorted
  Eigen::VectorXd log_prior;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> kmer_counts;
  Eigen::VectorXd category_totals;  // total k-mer count per category
  std::size_t vocabulary_size = 0;
};

NaiveBayesModel nb_train(const std::vector<SequenceRecord>& train,
                         const LabelMap& labels, int k = 8, double alpha = 1.0);
// Same model derived from an already-built index (shared artifact on disk).
NaiveBayesModel nb_from_index(const KmerIndex& index, double alpha = 1.0);

Eigen::RowVectorXd nb_predict(const NaiveBayesModel& model,
                              const SequenceRecord& query);

// Matrix-level drivers; per-query unstable seeds derive from `seed` and the
// query ordinal so results are deterministic per seed.
PredictionMatrix predict_similarity(const KmerIndex& index,
                                    const std::vector<SequenceRecord>& queries,
                                    SortMode mode, std::uint64_t seed = 0,
                                    double evalue_threshold = 10.0);
PredictionMatrix predict_naive_bayes(const NaiveBayesModel& model,
                                     const std::vector<SequenceRecord>& queries);

}  // namespace gea
