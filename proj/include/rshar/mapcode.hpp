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

// Dimension combination: every distinct tuple of values over the selected
// dimensions gets one mapping code, so that the tuple behaves as a single
// item during mining. Codes are expanded back to dimension values afterwards.

#ifndef RSHAR_MAPCODE_HPP
#define RSHAR_MAPCODE_HPP

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "rshar/common.hpp"
#include "rshar/datamodel.hpp"
#include "rshar/itemset.hpp"

namespace rshar {

class MapCodeRegistry {
 public:
  static constexpr std::size_t kMinCodeWidth = 4;

  struct Entry {
    std::string code;
    std::vector<std::string> values;  // one per dimension, registry order
  };

  MapCodeRegistry() = default;
  explicit MapCodeRegistry(std::vector<std::string> dimensions) : dimensions_(std::move(dimensions)) {}

  const std::vector<std::string>& dimensions() const { return dimensions_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// CheckMapCode.
  std::optional<std::string> find(const std::vector<std::string>& values) const {
    auto it = by_combo_.find(values);
    if (it == by_combo_.end()) return std::nullopt;
    return entries_[it->second].code;
  }

  /// GenMapCode: next sequential code, zero-padded to at least four digits.
  const std::string& add(std::vector<std::string> values) {
    if (values.size() != dimensions_.size())
      throw DataError("mapcode", "combination arity does not match the registry dimensions");
    if (by_combo_.count(values)) throw DataError("mapcode", "combination already has a code");
    std::string code = std::to_string(entries_.size() + 1);
    if (code.size() < kMinCodeWidth) code.insert(0, kMinCodeWidth - code.size(), '0');
    by_combo_.emplace(values, entries_.size());
    by_code_.emplace(code, entries_.size());
    entries_.push_back(Entry{std::move(code), std::move(values)});
    return entries_.back().code;
  }

  const std::string& find_or_add(const std::vector<std::string>& values) {
    if (auto it = by_combo_.find(values); it != by_combo_.end()) return entries_[it->second].code;
    return add(values);
  }

  bool contains_code(const std::string& code) const { return by_code_.count(code) != 0; }

  /// Transform_MapCode for a single code.
  std::vector<DimPair> decode(const std::string& code) const {
    auto it = by_code_.find(code);
    if (it == by_code_.end()) throw DataError("mapcode", "unknown mapping code '" + code + "'");
    const auto& e = entries_[it->second];
    std::vector<DimPair> out;
    out.reserve(dimensions_.size());
    for (std::size_t d = 0; d < dimensions_.size(); ++d) out.push_back({dimensions_[d], e.values[d]});
    return out;
  }

  std::size_t dimension_rank(const std::string& dim) const {
    for (std::size_t d = 0; d < dimensions_.size(); ++d)
      if (dimensions_[d] == dim) return d;
    return dimensions_.size();
  }

  /// Audit export: "code,dim1=val1;dim2=val2" per line, code order.
  void write_csv(std::ostream& out) const {
    out << "code,combination\n";
    for (const auto& e : entries_) {
      out << e.code << ',';
      for (std::size_t d = 0; d < dimensions_.size(); ++d) out << (d ? ";" : "") << dimensions_[d] << '=' << e.values[d];
      out << '\n';
    }
  }

 private:
  std::vector<std::string> dimensions_;
  std::vector<Entry> entries_;
  std::map<std::vector<std::string>, std::size_t> by_combo_;
  std::map<std::string, std::size_t> by_code_;
};

struct MdRow {
  std::string key;
  std::string code;
  friend bool operator==(const MdRow&, const MdRow&) = default;
};

/// (d1 value, mapping code) pairs in emission order.
struct MdTable {
  std::vector<MdRow> rows;
};

struct CombineOptions {
  // Rows are kept only if, for every filtered attribute, the row's value is
  // in the allowed set.
  std::map<std::string, std::set<std::string>> filters;
  // Scan the table twice (assign codes, then emit MdTab) instead of once.
  bool two_pass = false;
};

struct CombineResult {
  MapCodeRegistry registry;
  MdTable md;
};

inline CombineResult combine_dims(const RelationalTable& general, const std::string& key_dim,
                                  const std::vector<std::string>& selected_dims, const CombineOptions& opts = {}) {
  if (selected_dims.empty()) throw UsageError("mapcode", "no dimensions selected for combination");
  if (std::find(selected_dims.begin(), selected_dims.end(), key_dim) != selected_dims.end())
    throw UsageError("mapcode", "key dimension '" + key_dim + "' cannot also be a combined dimension");
  {
    std::set<std::string> uniq(selected_dims.begin(), selected_dims.end());
    if (uniq.size() != selected_dims.size()) throw UsageError("mapcode", "a combined dimension is listed twice");
  }

  auto categorical_col = [&](const std::string& name) {
    auto c = general.index_of(name);
    if (general.schema[c].kind != AttributeKind::categorical)
      throw DataError("mapcode", "attribute '" + name + "' is not categorical; discretize it first");
    return c;
  };
  const auto key_col = categorical_col(key_dim);
  std::vector<std::size_t> cols;
  for (const auto& d : selected_dims) cols.push_back(categorical_col(d));
  std::vector<std::pair<std::size_t, const std::set<std::string>*>> filter_cols;
  for (const auto& [dim, allowed] : opts.filters) filter_cols.emplace_back(general.index_of(dim), &allowed);

  auto keep = [&](const std::vector<Value>& row) {
    for (const auto& [c, allowed] : filter_cols)
      if (!allowed->count(to_string(row[c]))) return false;
    return true;
  };
  auto combo_of = [&](const std::vector<Value>& row) {
    std::vector<std::string> v;
    v.reserve(cols.size());
    for (auto c : cols) v.push_back(std::get<std::string>(row[c]));
    return v;
  };

  CombineResult res{MapCodeRegistry(selected_dims), {}};
  std::set<std::pair<std::string, std::string>> emitted;
  auto emit = [&](const std::vector<Value>& row, const std::string& code) {
    const auto& key = std::get<std::string>(row[key_col]);
    if (emitted.emplace(key, code).second) res.md.rows.push_back({key, code});
  };

  if (opts.two_pass) {
    for (const auto& row : general.rows)
      if (keep(row)) {
        auto combo = combo_of(row);
        if (!res.registry.find(combo)) res.registry.add(std::move(combo));
      }
    for (const auto& row : general.rows)
      if (keep(row)) {
        auto code = res.registry.find(combo_of(row));
        if (!code) throw DataError("mapcode", "combination vanished between passes");
        emit(row, *code);
      }
  } else {
    for (const auto& row : general.rows)
      if (keep(row)) emit(row, res.registry.find_or_add(combo_of(row)));
  }
  return res;
}

/// Expands each itemset's codes into (dimension, value) pairs. Pairs are
/// ordered by dimension position in the registry, then by value; identical
/// pairs contributed by different codes appear once.
inline std::vector<DecodedItemset> transform_map_code(const std::vector<FrequentItemset>& itemsets,
                                                      const MapCodeRegistry& registry) {
  std::vector<DecodedItemset> out;
  out.reserve(itemsets.size());
  for (const auto& fi : itemsets) {
    DecodedItemset d{fi.items, {}, fi.support_count, fi.num_groups};
    for (const auto& code : fi.items)
      for (auto& p : registry.decode(code)) d.pairs.push_back(std::move(p));
    std::sort(d.pairs.begin(), d.pairs.end(), [&](const DimPair& a, const DimPair& b) {
      auto ra = registry.dimension_rank(a.dimension), rb = registry.dimension_rank(b.dimension);
      return ra != rb ? ra < rb : a.value < b.value;
    });
    d.pairs.erase(std::unique(d.pairs.begin(), d.pairs.end()), d.pairs.end());
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace rshar

#endif  // RSHAR_MAPCODE_HPP
