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

#ifndef RSHAR_RULES_HPP
#define RSHAR_RULES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rshar/common.hpp"
#include "rshar/itemset.hpp"

namespace rshar {

/// Which predicates may repeat inside one rule (Buy("Beer") ... Buy("Diaper")).
/// Dimensions not listed are single.
class DimensionPolicy {
 public:
  DimensionPolicy() = default;
  explicit DimensionPolicy(std::set<std::string> repeatable) : repeatable_(std::move(repeatable)) {}

  bool is_repeatable(const std::string& dim) const { return repeatable_.count(dim) != 0; }
  void set_repeatable(const std::string& dim) { repeatable_.insert(dim); }
  const std::set<std::string>& repeatable() const { return repeatable_; }

  /// No single dimension occurs with two values.
  bool admits(const std::vector<DimPair>& pairs) const {
    std::set<std::string> seen;
    for (const auto& p : pairs)
      if (!is_repeatable(p.dimension) && !seen.insert(p.dimension).second) return false;
    return true;
  }

 private:
  std::set<std::string> repeatable_;
};

struct AssociationRule {
  std::vector<DimPair> antecedent;
  std::vector<DimPair> consequent;
  std::vector<std::string> antecedent_codes;
  std::vector<std::string> consequent_codes;
  std::uint64_t support_count = 0;     // groups containing antecedent and consequent
  std::uint64_t antecedent_count = 0;  // groups containing the antecedent
  std::uint64_t num_groups = 0;

  double support() const { return static_cast<double>(support_count) / static_cast<double>(num_groups); }
  double confidence() const { return static_cast<double>(support_count) / static_cast<double>(antecedent_count); }
  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

/// Canonical rule order: support desc, confidence desc, then codes.
inline bool rule_less(const AssociationRule& a, const AssociationRule& b) {
  if (int c = compare_fractions(a.support_count, a.num_groups, b.support_count, b.num_groups)) return c > 0;
  if (int c = compare_fractions(a.support_count, a.antecedent_count, b.support_count, b.antecedent_count)) return c > 0;
  if (a.antecedent_codes != b.antecedent_codes) return itemset_less(a.antecedent_codes, b.antecedent_codes);
  return itemset_less(a.consequent_codes, b.consequent_codes);
}

/// Every split A -> F\A of each frequent code set F with |F| >= 2 whose
/// confidence reaches minconf and whose predicates respect the policy.
/// Antecedent and consequent are disjoint as (dimension, value) sets; a split
/// whose consequent adds no new pair is dropped.
inline std::vector<AssociationRule> gen_rules(const std::vector<DecodedItemset>& frequent, const Ratio& minconf,
                                              const DimensionPolicy& policy) {
  if (!minconf.in_unit_interval()) throw UsageError("rules", "minconf must be in (0, 1], got " + minconf.str());
  std::map<std::vector<std::string>, const DecodedItemset*> by_codes;
  for (const auto& d : frequent) by_codes.emplace(d.codes, &d);
  auto lookup = [&](const std::vector<std::string>& codes) -> const DecodedItemset& {
    auto it = by_codes.find(codes);
    if (it == by_codes.end()) {
      std::string s;
      for (const auto& c : codes) s += (s.empty() ? "" : ",") + c;
      throw DataError("rules", "frequent itemset list is not downward closed: {" + s + "} missing");
    }
    return *it->second;
  };

  std::vector<AssociationRule> rules;
  for (const auto& f : frequent) {
    const auto k = f.codes.size();
    if (k < 2 || !policy.admits(f.pairs)) continue;
    if (k >= 63) throw DataError("rules", "itemset too large for split enumeration");
    std::vector<std::string> ant, cons;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
      ant.clear();
      cons.clear();
      for (std::size_t i = 0; i < k; ++i) (mask >> i & 1 ? ant : cons).push_back(f.codes[i]);
      const auto& a = lookup(ant);
      if (!minconf.le_fraction(f.support_count, a.support_count)) continue;
      const auto& c = lookup(cons);
      std::vector<DimPair> cons_pairs;
      for (const auto& p : c.pairs)
        if (std::find(a.pairs.begin(), a.pairs.end(), p) == a.pairs.end()) cons_pairs.push_back(p);
      if (cons_pairs.empty()) continue;
      rules.push_back(AssociationRule{a.pairs, std::move(cons_pairs), ant, cons, f.support_count, a.support_count,
                                      f.num_groups});
    }
  }
  std::sort(rules.begin(), rules.end(), rule_less);
  return rules;
}

inline std::vector<AssociationRule> gen_rules(const std::vector<DecodedItemset>& frequent, double minconf,
                                              const DimensionPolicy& policy) {
  return gen_rules(frequent, Ratio::from_double(minconf), policy);
}

/// count / total as a percentage with at most two decimals, half-up,
/// trailing zeros trimmed: 1/3 -> "33.33", 12/40 -> "30".
inline std::string format_percent(std::uint64_t count, std::uint64_t total) {
  if (total == 0) return "0";
  const auto num = static_cast<unsigned __int128>(count) * 10000 * 2 + total;
  const auto hundredths = static_cast<std::uint64_t>(num / (static_cast<unsigned __int128>(total) * 2));
  std::string s = std::to_string(hundredths / 100);
  auto frac = hundredths % 100;
  if (frac != 0) {
    s += '.';
    s += static_cast<char>('0' + frac / 10);
    if (frac % 10 != 0) s += static_cast<char>('0' + frac % 10);
  }
  return s;
}

inline std::string format_pairs(const std::vector<DimPair>& pairs) {
  std::string s;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) s += " ∧ ";
    s += pairs[i].dimension + "(\"" + pairs[i].value + "\")";
  }
  return s;
}

/// dim("value") ∧ ... → dim("value") ∧ ... {sup=P%, conf=Q%}
inline std::string format_rule(const AssociationRule& rule) {
  return format_pairs(rule.antecedent) + " → " + format_pairs(rule.consequent) +
         " {sup=" + format_percent(rule.support_count, rule.num_groups) +
         "%, conf=" + format_percent(rule.support_count, rule.antecedent_count) + "%}";
}

}  // namespace rshar

#endif  // RSHAR_RULES_HPP
