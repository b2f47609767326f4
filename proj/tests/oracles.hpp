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

// Test-only oracles and generators. Nothing here calls the mining or rule
// code paths it is used to check.

#ifndef RSHAR_TESTS_ORACLES_HPP
#define RSHAR_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rshar/rshar.hpp"

namespace rshar::testing {

inline std::string code_name(std::size_t i) {
  std::string s = std::to_string(i + 1);
  return std::string(4 - std::min<std::size_t>(4, s.size()), '0') + s;
}

/// Random view with up to `max_codes` codes and `max_groups` groups. Code
/// popularity is skewed so that deeper itemsets show up.
inline TransactionView random_view(std::mt19937_64& rng, std::size_t max_codes, std::size_t max_groups) {
  std::uniform_int_distribution<std::size_t> ncodes(1, max_codes), ngroups(1, max_groups);
  const auto n = ncodes(rng), g = ngroups(rng);
  std::vector<double> p(n);
  std::uniform_real_distribution<double> u(0.05, 0.9);
  for (auto& x : p) x = u(rng);
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  for (std::size_t k = 0; k < g; ++k) {
    std::vector<std::string> codes;
    for (std::size_t c = 0; c < n; ++c)
      if (std::bernoulli_distribution(p[c])(rng)) codes.push_back(code_name(c));
    groups.push_back({"g" + std::to_string(k), std::move(codes)});
  }
  return TransactionView::from_groups(std::move(groups));
}

inline std::uint64_t count_containing(const TransactionView& view, const std::vector<std::string>& items) {
  std::uint64_t n = 0;
  for (const auto& g : view.groups()) {
    bool all = true;
    for (const auto& it : items)
      all = all && std::find(g.codes.begin(), g.codes.end(), it) != g.codes.end();
    if (all) ++n;
  }
  return n;
}

using ItemsetKey = std::pair<std::vector<std::string>, std::uint64_t>;

inline std::set<ItemsetKey> as_set(const std::vector<FrequentItemset>& v) {
  std::set<ItemsetKey> s;
  for (const auto& f : v) s.emplace(f.items, f.support_count);
  return s;
}

/// Decodes codes as code i -> {dimension "d<i % dims>", value "v<code>"}.
struct PairDecoder {
  std::size_t dims = 3;
  DimPair operator()(const std::string& code) const {
    return {"d" + std::to_string(std::stoul(code) % dims), "v" + code};
  }
};

inline std::vector<DecodedItemset> decode_with(const std::vector<FrequentItemset>& fis, const PairDecoder& dec) {
  std::vector<DecodedItemset> out;
  for (const auto& f : fis) {
    DecodedItemset d{f.items, {}, f.support_count, f.num_groups};
    for (const auto& c : f.items) d.pairs.push_back(dec(c));
    std::sort(d.pairs.begin(), d.pairs.end());
    out.push_back(std::move(d));
  }
  return out;
}

struct RuleKey {
  std::vector<std::string> ant, cons;
  std::uint64_t support_count, antecedent_count;
  friend auto operator<=>(const RuleKey&, const RuleKey&) = default;
};

/// All splits A -> F\A of every brute-force frequent F, supports recounted
/// directly on the view, confidence compared by cross-multiplication.
inline std::set<RuleKey> brute_force_rules(const TransactionView& view, const Ratio& minsup, const Ratio& minconf,
                                           const PairDecoder& dec, const std::set<std::string>& repeatable) {
  std::set<RuleKey> out;
  const auto& U = view.code_universe();
  const auto n = U.size();
  const auto groups = view.num_groups();
  if (groups == 0) return out;
  for (std::uint32_t fs = 1; fs < (1u << n); ++fs) {
    std::vector<std::string> F;
    for (std::size_t i = 0; i < n; ++i)
      if (fs >> i & 1) F.push_back(U[i]);
    if (F.size() < 2) continue;
    const auto fc = count_containing(view, F);
    // fc / groups >= minsup
    if (fc == 0 || fc * minsup.den() < minsup.num() * groups) continue;
    std::map<std::string, int> per_dim;
    std::set<DimPair> fpairs;
    for (const auto& c : F) fpairs.insert(dec(c));
    for (const auto& p : fpairs) ++per_dim[p.dimension];
    bool ok = true;
    for (const auto& [d, k] : per_dim)
      if (k > 1 && !repeatable.count(d)) ok = false;
    if (!ok) continue;
    for (std::uint32_t as = 1; as + 1 < (1u << F.size()); ++as) {
      RuleKey r;
      for (std::size_t i = 0; i < F.size(); ++i) (as >> i & 1 ? r.ant : r.cons).push_back(F[i]);
      r.support_count = fc;
      r.antecedent_count = count_containing(view, r.ant);
      if (fc * minconf.den() < minconf.num() * r.antecedent_count) continue;
      std::set<DimPair> ap, cp;
      for (const auto& c : r.ant) ap.insert(dec(c));
      for (const auto& c : r.cons)
        if (!ap.count(dec(c))) cp.insert(dec(c));
      if (cp.empty()) continue;
      out.insert(r);
    }
  }
  return out;
}

inline std::set<RuleKey> rule_keys(const std::vector<AssociationRule>& rules) {
  std::set<RuleKey> s;
  for (const auto& r : rules) s.insert({r.antecedent_codes, r.consequent_codes, r.support_count, r.antecedent_count});
  return s;
}

/// Every non-empty proper subset of every itemset is present with support >= the superset's.
inline bool anti_monotone(const std::vector<FrequentItemset>& fis) {
  std::map<std::vector<std::string>, std::uint64_t> sup;
  for (const auto& f : fis) sup.emplace(f.items, f.support_count);
  for (const auto& f : fis) {
    const auto k = f.items.size();
    for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << k); ++m) {
      std::vector<std::string> sub;
      for (std::size_t i = 0; i < k; ++i)
        if (m >> i & 1) sub.push_back(f.items[i]);
      auto it = sup.find(sub);
      if (it == sup.end() || it->second < f.support_count) return false;
    }
  }
  return true;
}

}  // namespace rshar::testing

#endif  // RSHAR_TESTS_ORACLES_HPP
