// Copyright 2026 The rshar Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Frequent itemset mining over transaction groups.
//
// Three engines share one output contract (all itemsets with
// support_count >= ceil(minsup * |groups|), ordered by level then code):
//
//   fi_gen             one pass over the groups builds a bitmap extent per
//                      code (the class of groups that carry the code); all
//                      further supports are popcounts of AND-ed extents.
//   apriori_baseline   level-wise Apriori that rescans every group at each
//                      level and tests subset containment.
//   brute_force_frequent  exhaustive subset enumeration, used as an oracle.
//
// fi_gen and apriori_baseline share candidate generation (prefix join and
// subset prune) but not support counting.

#ifndef RSHAR_MINING_HPP
#define RSHAR_MINING_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "rshar/bitvector.hpp"
#include "rshar/common.hpp"
#include "rshar/itemset.hpp"
#include "rshar/mapcode.hpp"

namespace rshar {

/// Key value -> set of codes; the mining universe is the list of groups.
class TransactionView {
 public:
  struct Group {
    std::string key;
    std::vector<std::string> codes;  // sorted by code_less, unique
  };

  TransactionView() = default;

  /// Keys must be unique; code lists may be unsorted and contain repeats.
  static TransactionView from_groups(std::vector<std::pair<std::string, std::vector<std::string>>> groups) {
    TransactionView v;
    std::set<std::string> keys;
    std::set<std::string, CodeLess> universe;
    for (auto& [key, codes] : groups) {
      if (!keys.insert(key).second) throw DataError("mining", "duplicate group key '" + key + "'");
      std::sort(codes.begin(), codes.end(), CodeLess{});
      codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
      universe.insert(codes.begin(), codes.end());
      v.groups_.push_back(Group{std::move(key), std::move(codes)});
    }
    v.universe_.assign(universe.begin(), universe.end());
    for (std::size_t i = 0; i < v.universe_.size(); ++i) v.index_.emplace(v.universe_[i], static_cast<std::uint32_t>(i));
    return v;
  }

  const std::vector<Group>& groups() const { return groups_; }
  const std::vector<std::string>& code_universe() const { return universe_; }
  std::size_t num_groups() const { return groups_.size(); }

  std::uint32_t code_index(const std::string& code) const { return index_.at(code); }

  /// Groups as ascending code-index lists.
  std::vector<std::vector<std::uint32_t>> indexed_groups() const {
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(groups_.size());
    for (const auto& g : groups_) {
      std::vector<std::uint32_t> ids;
      ids.reserve(g.codes.size());
      for (const auto& c : g.codes) ids.push_back(index_.at(c));
      out.push_back(std::move(ids));
    }
    return out;
  }

 private:
  std::vector<Group> groups_;
  std::vector<std::string> universe_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct MiningStats {
  std::uint64_t full_scans_of_groups = 0;
  std::uint64_t candidates_generated = 0;
  std::uint64_t candidates_pruned = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct MiningResult {
  std::vector<FrequentItemset> itemsets;
  MiningStats stats;
};

struct MiningOptions {
  // Workers for per-level support counting; results do not depend on it.
  unsigned workers = 1;
};

/// Code-index extents, one bit vector over groups per code.
struct ItemExtents {
  std::vector<std::string> codes;
  std::vector<BitVector> extents;
  std::size_t num_groups = 0;
};

/// KeyTab/MdTabProcess construction: keys in first-occurrence order, each
/// with the union of its codes.
inline TransactionView group_by_key(const MdTable& md) {
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  std::unordered_map<std::string, std::size_t> pos;
  for (const auto& row : md.rows) {
    auto [it, inserted] = pos.emplace(row.key, groups.size());
    if (inserted) groups.push_back({row.key, {}});
    groups[it->second].second.push_back(row.code);
  }
  return TransactionView::from_groups(std::move(groups));
}

/// One full scan of the groups.
inline ItemExtents build_item_extents(const TransactionView& view, MiningStats& stats) {
  ItemExtents ex;
  ex.codes = view.code_universe();
  ex.num_groups = view.num_groups();
  ex.extents.assign(ex.codes.size(), BitVector(ex.num_groups));
  const auto& groups = view.groups();
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (const auto& c : groups[g].codes) ex.extents[view.code_index(c)].set(g);
  ++stats.full_scans_of_groups;
  return ex;
}

inline ItemExtents build_item_extents(const TransactionView& view) {
  MiningStats unused;
  return build_item_extents(view, unused);
}

namespace mining_detail {

using IdSet = std::vector<std::uint32_t>;

inline void check_minsup(const Ratio& minsup) {
  if (!minsup.in_unit_interval())
    throw UsageError("mining", "minsup must be in (0, 1], got " + minsup.str());
}

/// Candidate k-itemsets from the sorted frequent (k-1)-itemsets: join pairs
/// sharing a (k-2)-prefix, then drop those with an infrequent (k-1)-subset.
/// `parents` receives the indices of the two joined itemsets. Candidates come
/// out in lexicographic order.
inline std::vector<IdSet> generate_candidates(const std::vector<IdSet>& frequent,
                                              std::vector<std::pair<std::size_t, std::size_t>>* parents,
                                              MiningStats& stats) {
  std::vector<IdSet> out;
  if (frequent.empty()) return out;
  const std::size_t k1 = frequent.front().size();
  IdSet sub(k1);
  for (std::size_t i = 0; i < frequent.size();) {
    std::size_t end = i + 1;
    while (end < frequent.size() && std::equal(frequent[i].begin(), frequent[i].end() - 1, frequent[end].begin()))
      ++end;
    for (std::size_t a = i; a < end; ++a) {
      for (std::size_t b = a + 1; b < end; ++b) {
        IdSet cand = frequent[a];
        cand.push_back(frequent[b].back());
        ++stats.candidates_generated;
        // The two subsets that drop one of the last two items are the parents.
        bool ok = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && ok; ++drop) {
          std::size_t w = 0;
          for (std::size_t m = 0; m < cand.size(); ++m)
            if (m != drop) sub[w++] = cand[m];
          ok = std::binary_search(frequent.begin(), frequent.end(), sub);
        }
        if (!ok) {
          ++stats.candidates_pruned;
          continue;
        }
        if (parents) parents->emplace_back(a, b);
        out.push_back(std::move(cand));
      }
    }
    i = end;
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline FrequentItemset to_itemset(const IdSet& ids, std::uint64_t count, const TransactionView& view) {
  FrequentItemset fi;
  fi.items.reserve(ids.size());
  for (auto id : ids) fi.items.push_back(view.code_universe()[id]);
  fi.support_count = count;
  fi.num_groups = view.num_groups();
  return fi;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace mining_detail

/// Frequent itemsets by equivalence-class extents: one scan to build the
/// extents, then Apriori-style candidates whose supports are popcounts of
/// AND-ed extents.
inline MiningResult fi_gen(const TransactionView& view, const Ratio& minsup, const MiningOptions& opts = {}) {
  using namespace mining_detail;
  check_minsup(minsup);
  Stopwatch clock;
  MiningResult res;
  const auto ex = build_item_extents(view, res.stats);
  if (view.num_groups() == 0) {
    res.stats.elapsed = clock.elapsed();
    return res;
  }
  const std::uint64_t threshold = std::max<std::uint64_t>(1, minsup.min_count(view.num_groups()));

  std::vector<IdSet> level;
  std::vector<BitVector> level_ext;
  res.stats.candidates_generated += ex.codes.size();
  for (std::uint32_t c = 0; c < ex.codes.size(); ++c) {
    const auto n = ex.extents[c].count();
    if (n >= threshold) {
      res.itemsets.push_back(to_itemset({c}, n, view));
      level.push_back({c});
      level_ext.push_back(ex.extents[c]);
    }
  }

  while (!level.empty()) {
    std::vector<std::pair<std::size_t, std::size_t>> parents;
    auto cands = generate_candidates(level, &parents, res.stats);
    std::vector<BitVector> cand_ext(cands.size());
    std::vector<std::uint64_t> counts(cands.size());
    parallel_for(cands.size(), opts.workers, [&](std::size_t i) {
      cand_ext[i] = level_ext[parents[i].first] & level_ext[parents[i].second];
      counts[i] = cand_ext[i].count();
    });
    std::vector<IdSet> next;
    std::vector<BitVector> next_ext;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (counts[i] < threshold) continue;
      res.itemsets.push_back(to_itemset(cands[i], counts[i], view));
      next.push_back(std::move(cands[i]));
      next_ext.push_back(std::move(cand_ext[i]));
    }
    level = std::move(next);
    level_ext = std::move(next_ext);
  }
  res.stats.elapsed = clock.elapsed();
  return res;
}

inline MiningResult fi_gen(const TransactionView& view, double minsup, const MiningOptions& opts = {}) {
  return fi_gen(view, Ratio::from_double(minsup), opts);
}

/// Classic level-wise Apriori: each level with candidates costs one full
/// scan of the groups, counting by subset containment.
inline MiningResult apriori_baseline(const TransactionView& view, const Ratio& minsup,
                                     const MiningOptions& opts = {}) {
  using namespace mining_detail;
  check_minsup(minsup);
  Stopwatch clock;
  MiningResult res;
  const auto groups = view.indexed_groups();
  const std::uint64_t threshold = std::max<std::uint64_t>(1, minsup.min_count(view.num_groups()));

  std::vector<IdSet> cands;
  for (std::uint32_t c = 0; c < view.code_universe().size(); ++c) cands.push_back({c});
  res.stats.candidates_generated += cands.size();

  while (!cands.empty()) {
    std::vector<std::uint64_t> counts(cands.size(), 0);
    // Slices of candidates, each worker scanning every group.
    parallel_for(cands.size(), opts.workers, [&](std::size_t i) {
      const auto& cand = cands[i];
      std::uint64_t n = 0;
      for (const auto& g : groups)
        if (std::includes(g.begin(), g.end(), cand.begin(), cand.end())) ++n;
      counts[i] = n;
    });
    ++res.stats.full_scans_of_groups;

    std::vector<IdSet> frequent;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (counts[i] < threshold) continue;
      res.itemsets.push_back(to_itemset(cands[i], counts[i], view));
      frequent.push_back(std::move(cands[i]));
    }
    cands = generate_candidates(frequent, nullptr, res.stats);
  }
  res.stats.elapsed = clock.elapsed();
  return res;
}

inline MiningResult apriori_baseline(const TransactionView& view, double minsup, const MiningOptions& opts = {}) {
  return apriori_baseline(view, Ratio::from_double(minsup), opts);
}

inline constexpr std::size_t kBruteForceMaxCodes = 20;

/// Exhaustive oracle over all non-empty subsets of the code universe.
/// A threshold above 1 yields nothing.
inline std::vector<FrequentItemset> brute_force_frequent(const TransactionView& view, const Ratio& minsup) {
  const auto n = view.code_universe().size();
  if (n > kBruteForceMaxCodes)
    throw UsageError("mining", "brute force limited to " + std::to_string(kBruteForceMaxCodes) + " codes, view has " +
                                   std::to_string(n));
  std::vector<FrequentItemset> out;
  if (view.num_groups() == 0) return out;
  const std::uint64_t threshold = std::max<std::uint64_t>(1, minsup.min_count(view.num_groups()));

  std::vector<std::uint32_t> masks;
  for (const auto& g : view.groups()) {
    std::uint32_t m = 0;
    for (const auto& c : g.codes) m |= 1u << view.code_index(c);
    masks.push_back(m);
  }
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::uint64_t count = 0;
    for (auto m : masks)
      if ((m & s) == s) ++count;
    if (count < threshold) continue;
    FrequentItemset fi;
    for (std::uint32_t i = 0; i < n; ++i)
      if (s & (1u << i)) fi.items.push_back(view.code_universe()[i]);
    fi.support_count = count;
    fi.num_groups = view.num_groups();
    out.push_back(std::move(fi));
  }
  std::sort(out.begin(), out.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) { return itemset_less(a.items, b.items); });
  return out;
}

inline std::vector<FrequentItemset> brute_force_frequent(const TransactionView& view, double minsup) {
  return brute_force_frequent(view, Ratio::from_double(minsup));
}

/// Frequent itemset counts per level; index 0 is level 1.
inline std::vector<std::size_t> count_per_level(const std::vector<FrequentItemset>& itemsets) {
  std::vector<std::size_t> out;
  for (const auto& fi : itemsets) {
    if (fi.level() > out.size()) out.resize(fi.level(), 0);
    ++out[fi.level() - 1];
  }
  return out;
}

}  // namespace rshar

#endif  // RSHAR_MINING_HPP
