#include "gea/dataset_prep.hpp"

#include "gea/random.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_set>

namespace gea {

const CategoryId& CategoryPooling::category_of(const std::string& lab_id) const {
  const auto it = mapping.find(lab_id);
  if (it == mapping.end()) {
    throw std::runtime_error("lab not covered by pooling: " + lab_id);
  }
  return it->second;
}

std::size_t CategoryPooling::category_count() const {
  std::unordered_set<CategoryId> categories;
  for (const auto& [lab, category] : mapping) categories.insert(category);
  return categories.size();
}

CategoryPooling pool_small_labs(const std::vector<SequenceRecord>& records,
                                int threshold, CategoryId composite_id) {
  if (records.empty()) {
    throw std::invalid_argument("pool_small_labs requires at least one record");
  }
  std::unordered_map<std::string, int> lab_counts;
  for (const auto& record : records) lab_counts[record.lab_id] += 1;

  CategoryPooling pooling;
  pooling.threshold = threshold;
  pooling.composite_id = std::move(composite_id);
  for (const auto& [lab, count] : lab_counts) {
    pooling.mapping.emplace(lab, count >= threshold ? lab : pooling.composite_id);
  }
  return pooling;
}

std::vector<std::vector<std::string>> lineage_components(
    const LineageGraph& graph, const std::vector<std::string>& all_ids) {
  std::unordered_map<std::string, int> id_index;
  id_index.reserve(all_ids.size());
  for (const auto& id : all_ids) {
    if (!id_index.emplace(id, static_cast<int>(id_index.size())).second) {
      throw std::runtime_error("duplicate sequence_id: " + id);
    }
  }

  // Union-find over id ordinals.
  std::vector<int> parent(all_ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [a, b] : graph.edges) {
    const auto ia = id_index.find(a);
    const auto ib = id_index.find(b);
    if (ia == id_index.end()) {
      throw std::runtime_error("dangling lineage endpoint: " + a);
    }
    if (ib == id_index.end()) {
      throw std::runtime_error("dangling lineage endpoint: " + b);
    }
    parent[find(ia->second)] = find(ib->second);
  }

  std::unordered_map<int, std::vector<std::string>> by_root;
  for (std::size_t i = 0; i < all_ids.size(); ++i) {
    by_root[find(static_cast<int>(i))].push_back(all_ids[i]);
  }
  std::vector<std::vector<std::string>> components;
  components.reserve(by_root.size());
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

const char* split_name(Split split) {
  switch (split) {
    case Split::train:
      return "train";
    case Split::leaderboard:
      return "leaderboard";
    case Split::holdout:
      return "holdout";
  }
  return "?";
}

std::array<double, 3> SplitAssignment::realized_fractions() const {
  std::array<std::int64_t, 3> counts{};
  for (const auto& [id, split] : entries) {
    counts[static_cast<std::size_t>(split)] += 1;
  }
  const double total = static_cast<double>(entries.size());
  return {counts[0] / total, counts[1] / total, counts[2] / total};
}

SplitAssignment split_dataset(const std::vector<SequenceRecord>& records,
                              const CategoryPooling& pooling,
                              const std::vector<std::vector<std::string>>& components,
                              const SplitFractions& fractions, int min_holdout,
                              std::uint64_t seed, std::size_t min_sequence_length) {
  SplitAssignment assignment;
  assignment.targets = fractions;
  assignment.seed = seed;

  std::unordered_map<std::string, const SequenceRecord*> record_of;
  for (const auto& record : records) record_of.emplace(record.sequence_id, &record);

  // Per-component category tallies; short sequences are tracked separately
  // because they cannot remain in leaderboard or holdout.
  struct ComponentInfo {
    std::vector<const SequenceRecord*> members;
    std::unordered_map<CategoryId, int> eligible_per_category;
    int total = 0;
  };
  std::vector<ComponentInfo> infos(components.size());
  std::unordered_map<CategoryId, std::int64_t> eligible_totals;
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (const auto& id : components[c]) {
      const auto it = record_of.find(id);
      if (it == record_of.end()) {
        throw std::runtime_error("component member is not a known record: " + id);
      }
      const SequenceRecord* record = it->second;
      infos[c].members.push_back(record);
      infos[c].total += 1;
      if (record->dna.size() >= min_sequence_length) {
        const CategoryId& category = pooling.category_of(record->lab_id);
        infos[c].eligible_per_category[category] += 1;
        eligible_totals[category] += 1;
      }
    }
  }

  for (const auto& [category, count] : eligible_totals) {
    if (count < min_holdout) {
      throw InfeasibleError("category " + category + " has only " +
                            std::to_string(count) + " usable records; " +
                            std::to_string(min_holdout) + " required for holdout");
    }
  }

  std::vector<int> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  deterministic_shuffle(order, rng);

  constexpr int kUnassigned = -1;
  std::vector<int> split_of(components.size(), kUnassigned);
  std::unordered_map<CategoryId, std::int64_t> holdout_count;

  // Stage 1: reserve whole components into holdout until every category has
  // its floor. Most-constrained categories go first.
  std::vector<CategoryId> categories;
  for (const auto& [category, count] : eligible_totals) categories.push_back(category);
  std::sort(categories.begin(), categories.end(),
            [&](const CategoryId& a, const CategoryId& b) {
              const auto ca = eligible_totals.at(a);
              const auto cb = eligible_totals.at(b);
              return ca != cb ? ca < cb : a < b;
            });
  std::array<std::int64_t, 3> assigned_records{};
  for (const auto& category : categories) {
    for (int idx : order) {
      if (holdout_count[category] >= min_holdout) break;
      if (split_of[static_cast<std::size_t>(idx)] != kUnassigned) continue;
      const auto& info = infos[static_cast<std::size_t>(idx)];
      const auto it = info.eligible_per_category.find(category);
      if (it == info.eligible_per_category.end()) continue;
      split_of[static_cast<std::size_t>(idx)] =
          static_cast<int>(Split::holdout);
      assigned_records[static_cast<std::size_t>(Split::holdout)] += info.total;
      for (const auto& [cat, n] : info.eligible_per_category) {
        holdout_count[cat] += n;
      }
    }
    if (holdout_count[category] < min_holdout) {
      throw InfeasibleError("could not reserve " + std::to_string(min_holdout) +
                            " holdout records for category " + category);
    }
  }

  // Stage 2: largest remaining quota takes the next component; quota is the
  // target share of all records minus what the split already holds.
  const double total_records = static_cast<double>(records.size());
  const std::array<double, 3> target = {fractions.train, fractions.leaderboard,
                                        fractions.holdout};
  for (int idx : order) {
    if (split_of[static_cast<std::size_t>(idx)] != kUnassigned) continue;
    int best = static_cast<int>(Split::train);
    double best_quota = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < 3; ++s) {
      const double quota =
          target[static_cast<std::size_t>(s)] * total_records -
          static_cast<double>(assigned_records[static_cast<std::size_t>(s)]);
      if (quota > best_quota) {  // ties keep the earlier split; train is first
        best_quota = quota;
        best = s;
      }
    }
    split_of[static_cast<std::size_t>(idx)] = best;
    assigned_records[static_cast<std::size_t>(best)] +=
        infos[static_cast<std::size_t>(idx)].total;
  }

  // Emit per-record assignments in input order; drop short sequences that
  // landed outside train.
  std::unordered_map<std::string, Split> split_by_id;
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (const SequenceRecord* record : infos[c].members) {
      split_by_id.emplace(record->sequence_id, static_cast<Split>(split_of[c]));
    }
  }
  for (const auto& record : records) {
    const auto it = split_by_id.find(record.sequence_id);
    if (it == split_by_id.end()) {
      throw std::runtime_error("record missing from components: " +
                               record.sequence_id);
    }
    if (record.dna.size() < min_sequence_length && it->second != Split::train) {
      assignment.dropped.push_back(record.sequence_id);
      assignment.notices.push_back(
          "dropped " + record.sequence_id + " from " + split_name(it->second) +
          ": sequence shorter than " + std::to_string(min_sequence_length) + "nt");
      continue;
    }
    assignment.entries.emplace_back(record.sequence_id, it->second);
    assignment.index.emplace(record.sequence_id, it->second);
  }

  // Constraint re-verification; failures here indicate a bug, not bad input.
  std::unordered_map<CategoryId, std::int64_t> final_holdout;
  for (const auto& [id, split] : assignment.entries) {
    if (split == Split::holdout) {
      final_holdout[pooling.category_of(record_of.at(id)->lab_id)] += 1;
    }
  }
  for (const auto& [category, count] : eligible_totals) {
    if (final_holdout[category] < min_holdout) {
      throw std::logic_error("holdout floor violated for category " + category);
    }
  }
  return assignment;
}

std::unordered_map<std::string, std::string> obfuscate_ids(
    const std::vector<std::string>& ids, std::uint64_t seed, int length) {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";
  constexpr std::uint64_t kAlphabetSize = 36;

  std::vector<std::string> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("obfuscate_ids requires unique ids");
  }

  std::mt19937_64 rng(seed);
  std::unordered_map<std::string, std::string> mapping;
  std::unordered_set<std::string> used;
  mapping.reserve(sorted.size());
  for (const auto& id : sorted) {
    std::string token(static_cast<std::size_t>(length), '\0');
    do {
      for (auto& c : token) {
        c = kAlphabet[bounded_rand(rng, kAlphabetSize)];
      }
    } while (!used.insert(token).second);
    mapping.emplace(id, std::move(token));
  }
  return mapping;
}

namespace {

struct FeatureGroup {
  std::string field;                 // raw metadata field name
  std::vector<std::string> values;   // column suffixes, emission order
  bool multi_valued = false;
};

const std::vector<FeatureGroup>& feature_groups() {
  static const std::vector<FeatureGroup> groups = {
      {"growth_strain",
       {"ccdb_survival", "dh10b", "dh5alpha", "neb_stable", "other", "stbl3",
        "top10", "xl1_blue"}},
      {"growth_temp", {"30", "37", "other"}},
      {"copy_number", {"high_copy", "low_copy", "unknown"}},
      {"species",
       {"budding_yeast", "fly", "human", "mouse", "mustard_weed", "nematode",
        "other", "rat", "synthetic", "zebrafish"}},
      {"bacterial_resistance",
       {"ampicillin", "chloramphenicol", "kanamycin", "other", "spectinomycin"}},
      {"selectable_markers",
       {"blasticidin", "his3", "hygromycin", "leu2", "neomycin", "other",
        "puromycin", "trp1", "ura3", "zeocin"},
       true},
  };
  return groups;
}

// Lowercase, runs of non-alphanumerics collapse to '_': "NEB Stable" ->
// "neb_stable", "ccdB Survival" -> "ccdb_survival".
std::string normalize_value(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_sep = false;
  for (char c : raw) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (pending_sep && !out.empty()) out.push_back('_');
      pending_sep = false;
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      pending_sep = true;
    }
  }
  return out;
}

std::vector<std::string> split_values(const std::string& raw) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= raw.size()) {
    const std::size_t sep = raw.find(';', start);
    if (sep == std::string::npos) {
      parts.push_back(raw.substr(start));
      break;
    }
    parts.push_back(raw.substr(start, sep - start));
    start = sep + 1;
  }
  return parts;
}

}  // namespace

const std::vector<std::string>& one_hot_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> out;
    for (const auto& group : feature_groups()) {
      for (const auto& value : group.values) {
        out.push_back(group.field + "_" + value);
      }
    }
    return out;
  }();
  return columns;
}

OneHotTable encode_metadata(const std::vector<SequenceRecord>& records) {
  const auto& columns = one_hot_columns();
  OneHotTable table;
  table.columns = columns;
  table.sequence_ids.reserve(records.size());
  table.values = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(records.size()),
                                       static_cast<Eigen::Index>(columns.size()));

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& record = records[i];
    table.sequence_ids.push_back(record.sequence_id);
    Eigen::Index column_base = 0;
    for (const auto& group : feature_groups()) {
      const auto it = record.metadata.find(group.field);
      if (it != record.metadata.end() && !it->second.empty()) {
        const std::vector<std::string> raw_values =
            group.multi_valued ? split_values(it->second)
                               : std::vector<std::string>{it->second};
        for (const auto& raw : raw_values) {
          const std::string value = normalize_value(raw);
          if (value.empty()) continue;
          const auto pos =
              std::find(group.values.begin(), group.values.end(), value);
          if (pos != group.values.end()) {
            table.values(static_cast<Eigen::Index>(i),
                         column_base + (pos - group.values.begin())) = 1;
          } else {
            const auto other =
                std::find(group.values.begin(), group.values.end(), "other");
            if (other == group.values.end()) {
              throw std::runtime_error("unrecognized " + group.field + " value '" +
                                       raw + "' for " + record.sequence_id +
                                       " and no _other column");
            }
            table.values(static_cast<Eigen::Index>(i),
                         column_base + (other - group.values.begin())) = 1;
          }
        }
      }
      column_base += static_cast<Eigen::Index>(group.values.size());
    }
  }
  return table;
}

void serialize_one_hot(const OneHotTable& table, std::ostream& out) {
  out << "sequence_id";
  for (const auto& column : table.columns) out << ',' << column;
  out << '\n';
  for (std::size_t i = 0; i < table.sequence_ids.size(); ++i) {
    out << table.sequence_ids[i];
    for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
      out << ',' << table.values(static_cast<Eigen::Index>(i), j);
    }
    out << '\n';
  }
}

}  // namespace gea
