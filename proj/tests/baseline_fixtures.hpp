// Synthetic corpora for baseline-attributor tests.
#pragma once

#include "gea/core_data.hpp"

#include <random>
#include <string>
#include <vector>

namespace gea::testing {

inline std::string random_dna(std::mt19937_64& rng, std::size_t length) {
  static constexpr char kBases[] = "ACGT";
  std::string out(length, 'A');
  for (auto& c : out) c = kBases[rng() % 4];
  return out;
}

// Corpus that pins the paper's sort-mode effect. Every query has one
// strictly-best hit from `top_lab(q)` plus an exact tie group of `tie_labs`
// training sequences (identical bodies, one per lab) in which the true lab's
// sequence is inserted FIRST. Stable ordering therefore puts the true lab at
// rank 2; unstable ordering scatters it across the tie group.
struct SortModeCorpus {
  std::vector<SequenceRecord> train;
  LabelMap train_labels;
  std::vector<SequenceRecord> queries;
  LabelMap query_labels;
};

inline SortModeCorpus make_sort_mode_corpus(std::mt19937_64& rng, int query_count,
                                            int tie_labs,
                                            int correct_top_every = 3) {
  SortModeCorpus corpus;
  int serial = 0;
  for (int q = 0; q < query_count; ++q) {
    const std::string block_a = random_dna(rng, 200);
    const std::string block_b = random_dna(rng, 300);
    const std::string true_lab = "lab" + std::to_string(q % tie_labs);

    // Strictly-best training hit: shares both blocks. Correct for every
    // correct_top_every-th query so top-1 accuracy is nonzero but equal
    // across modes.
    const bool top_is_true = q % correct_top_every == 0;
    const std::string top_lab = top_is_true ? true_lab : "top" + std::to_string(q);
    SequenceRecord top;
    top.sequence_id = "t" + std::to_string(serial++);
    top.dna = block_a + block_b;
    top.lab_id = top_lab;
    corpus.train_labels.insert(top.sequence_id, top.lab_id);
    corpus.train.push_back(std::move(top));

    // Tie group: identical bodies, true lab first in insertion order.
    for (int l = 0; l < tie_labs; ++l) {
      const std::string lab =
          "lab" + std::to_string((q % tie_labs + l) % tie_labs);
      SequenceRecord member;
      member.sequence_id = "t" + std::to_string(serial++);
      member.dna = block_b;
      member.lab_id = lab;
      corpus.train_labels.insert(member.sequence_id, member.lab_id);
      corpus.train.push_back(std::move(member));
    }

    SequenceRecord query;
    query.sequence_id = "q" + std::to_string(q);
    query.dna = block_a + block_b;
    query.lab_id = true_lab;
    corpus.query_labels.insert(query.sequence_id, true_lab);
    corpus.queries.push_back(std::move(query));
  }
  return corpus;
}

// Ten categories with disjoint planted 20-mer motifs over random background.
struct MotifCorpus {
  std::vector<SequenceRecord> train;
  LabelMap train_labels;
  std::vector<SequenceRecord> queries;
  LabelMap query_labels;
  std::vector<std::string> categories;
};

inline MotifCorpus make_motif_corpus(std::mt19937_64& rng, int categories,
                                     int train_per_category,
                                     int queries_per_category,
                                     std::size_t sequence_length = 600,
                                     int motif_copies = 10) {
  MotifCorpus corpus;
  std::vector<std::string> motifs;
  for (int c = 0; c < categories; ++c) {
    corpus.categories.push_back("cat" + std::to_string(c));
    motifs.push_back(random_dna(rng, 20));
  }
  auto planted = [&](int category) {
    std::string dna = random_dna(rng, sequence_length);
    for (int copy = 0; copy < motif_copies; ++copy) {
      const std::size_t at = rng() % (sequence_length - 20);
      dna.replace(at, 20, motifs[static_cast<std::size_t>(category)]);
    }
    return dna;
  };
  int serial = 0;
  for (int c = 0; c < categories; ++c) {
    for (int i = 0; i < train_per_category; ++i) {
      SequenceRecord record;
      record.sequence_id = "t" + std::to_string(serial++);
      record.dna = planted(c);
      record.lab_id = corpus.categories[static_cast<std::size_t>(c)];
      corpus.train_labels.insert(record.sequence_id, record.lab_id);
      corpus.train.push_back(std::move(record));
    }
    for (int i = 0; i < queries_per_category; ++i) {
      SequenceRecord record;
      record.sequence_id = "v" + std::to_string(serial++);
      record.dna = planted(c);
      record.lab_id = corpus.categories[static_cast<std::size_t>(c)];
      corpus.query_labels.insert(record.sequence_id, record.lab_id);
      corpus.queries.push_back(std::move(record));
    }
  }
  return corpus;
}

}  // namespace gea::testing
