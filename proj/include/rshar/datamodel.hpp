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

// Tabular data, the information system view of a table, its equivalence
// class partitions, and the one-hot bitmap encoding of categorical columns.

#ifndef RSHAR_DATAMODEL_HPP
#define RSHAR_DATAMODEL_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rshar/bitvector.hpp"
#include "rshar/common.hpp"

namespace rshar {

enum class AttributeKind { categorical, quantitative };

/// Half-open interval [lower, upper) mapped to a categorical label.
struct Bin {
  std::string label;
  double lower = 0;
  double upper = 0;
  friend bool operator==(const Bin&, const Bin&) = default;
};

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::categorical;
  std::vector<Bin> bins;  // quantitative only
  // Categorical only: forces one bitmap item per listed value, in this
  // order, even for values that never occur.
  std::optional<std::vector<std::string>> domain;

  static AttributeSpec categorical(std::string name) { return {std::move(name), AttributeKind::categorical, {}, {}}; }
  static AttributeSpec quantitative(std::string name, std::vector<Bin> bins) {
    return {std::move(name), AttributeKind::quantitative, std::move(bins), {}};
  }

  void validate() const {
    if (name.empty()) throw DataError("datamodel", "attribute with empty name");
    if (kind == AttributeKind::quantitative) {
      if (bins.empty()) throw DataError("datamodel", "quantitative attribute '" + name + "' has no bins");
      if (domain) throw DataError("datamodel", "quantitative attribute '" + name + "' cannot declare a domain");
      for (std::size_t i = 0; i < bins.size(); ++i) {
        if (!(bins[i].lower < bins[i].upper))
          throw DataError("datamodel", "bin '" + bins[i].label + "' of '" + name + "' is empty or inverted");
        if (i > 0 && bins[i].lower < bins[i - 1].upper)
          throw DataError("datamodel", "bins of '" + name + "' overlap or are not ascending");
      }
    } else if (!bins.empty()) {
      throw DataError("datamodel", "categorical attribute '" + name + "' cannot have bins");
    }
  }

  friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

struct RelationalTable {
  std::string name;
  std::vector<AttributeSpec> schema;
  std::vector<std::vector<Value>> rows;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_columns() const { return schema.size(); }

  std::optional<std::size_t> find(std::string_view attr) const {
    for (std::size_t i = 0; i < schema.size(); ++i)
      if (schema[i].name == attr) return i;
    return std::nullopt;
  }

  std::size_t index_of(std::string_view attr) const {
    if (auto i = find(attr)) return *i;
    throw DataError("datamodel", "table '" + name + "' has no attribute '" + std::string(attr) + "'");
  }

  std::vector<std::string> column_names() const {
    std::vector<std::string> out;
    out.reserve(schema.size());
    for (const auto& a : schema) out.push_back(a.name);
    return out;
  }

  void validate_schema() const {
    std::set<std::string> seen;
    for (const auto& a : schema) {
      a.validate();
      if (!seen.insert(a.name).second)
        throw DataError("datamodel", "duplicate attribute '" + a.name + "' in table '" + name + "'");
    }
  }

  /// Checks arity and the per-kind type of every cell.
  void validate() const {
    validate_schema();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != schema.size())
        throw DataError("datamodel", "table '" + name + "' row " + std::to_string(r + 1) + " has " +
                                         std::to_string(rows[r].size()) + " values, expected " +
                                         std::to_string(schema.size()));
      for (std::size_t c = 0; c < schema.size(); ++c) {
        const auto& v = rows[r][c];
        if (schema[c].kind == AttributeKind::categorical) {
          if (!std::holds_alternative<std::string>(v))
            throw DataError("datamodel", "non-string value in categorical attribute '" + schema[c].name + "'");
        } else if (!std::holds_alternative<double>(v) || !std::isfinite(std::get<double>(v))) {
          throw DataError("datamodel", "non-finite or non-numeric value in quantitative attribute '" +
                                           schema[c].name + "'");
        }
      }
    }
  }

  friend bool operator==(const RelationalTable&, const RelationalTable&) = default;
};

/// S = {U, At, V, f} over a table: objects are row indices.
class InformationSystem {
 public:
  InformationSystem() = default;
  InformationSystem(std::vector<std::string> attributes, std::vector<std::vector<Value>> cells)
      : attributes_(std::move(attributes)), cells_(std::move(cells)) {
    universe_.resize(cells_.size());
    for (std::size_t i = 0; i < universe_.size(); ++i) universe_[i] = i;
    for (std::size_t a = 0; a < attributes_.size(); ++a) index_.emplace(attributes_[a], a);
  }

  const std::vector<std::size_t>& universe() const { return universe_; }
  const std::vector<std::string>& attributes() const { return attributes_; }

  std::size_t attribute_index(const std::string& attr) const {
    auto it = index_.find(attr);
    if (it == index_.end()) throw DataError("datamodel", "unknown attribute '" + attr + "'");
    return it->second;
  }

  /// f(object, attribute).
  const Value& value(std::size_t object, const std::string& attr) const {
    return cells_.at(object)[attribute_index(attr)];
  }
  const Value& value(std::size_t object, std::size_t attr_index) const { return cells_.at(object).at(attr_index); }

  /// V_p: distinct values of one attribute in first-occurrence order.
  std::vector<Value> domain(const std::string& attr) const {
    const auto a = attribute_index(attr);
    std::vector<Value> out;
    std::set<Value> seen;
    for (const auto& row : cells_)
      if (seen.insert(row[a]).second) out.push_back(row[a]);
    return out;
  }

 private:
  std::vector<std::size_t> universe_;
  std::vector<std::string> attributes_;
  std::vector<std::vector<Value>> cells_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct EquivalenceClassPartition {
  std::vector<std::string> attribute_set;
  std::vector<std::vector<std::size_t>> classes;
};

struct Item {
  std::size_t id = 0;
  std::string attribute;
  std::string value;

  /// Display name, e.g. "age_young". Not a key: (attribute, value) is.
  std::string name() const { return attribute + "_" + value; }
  friend bool operator==(const Item&, const Item&) = default;
};

struct BitmapTable {
  std::vector<std::string> attributes;  // source attributes, in schema order
  std::vector<Item> items;
  std::vector<BitVector> columns;  // columns[item.id]
  std::size_t universe_size = 0;

  std::optional<std::size_t> find_item(std::string_view attribute, std::string_view value) const {
    for (const auto& it : items)
      if (it.attribute == attribute && it.value == value) return it.id;
    return std::nullopt;
  }
};

inline InformationSystem build_information_system(const RelationalTable& table) {
  table.validate();
  return InformationSystem(table.column_names(), table.rows);
}

/// Indiscernibility partition over `attrs`; classes ordered by their first member.
inline EquivalenceClassPartition partition_by_attributes(const InformationSystem& sys,
                                                         const std::vector<std::string>& attrs) {
  if (attrs.empty()) throw UsageError("datamodel", "partition needs at least one attribute");
  std::vector<std::size_t> idx;
  idx.reserve(attrs.size());
  for (const auto& a : attrs) idx.push_back(sys.attribute_index(a));

  EquivalenceClassPartition out{attrs, {}};
  std::map<std::vector<Value>, std::size_t> class_of;
  std::vector<Value> key(idx.size());
  for (auto obj : sys.universe()) {
    for (std::size_t k = 0; k < idx.size(); ++k) key[k] = sys.value(obj, idx[k]);
    auto [it, inserted] = class_of.emplace(key, out.classes.size());
    if (inserted) out.classes.emplace_back();
    out.classes[it->second].push_back(obj);
  }
  return out;
}

/// One item per (attribute, value); item ids follow attribute position, then
/// first occurrence (or declared domain order when a domain is given).
inline BitmapTable bitmap_encode(const RelationalTable& table) {
  table.validate();
  BitmapTable bm;
  bm.universe_size = table.num_rows();
  bm.attributes = table.column_names();

  for (std::size_t c = 0; c < table.schema.size(); ++c) {
    const auto& spec = table.schema[c];
    if (spec.kind != AttributeKind::categorical)
      throw DataError("datamodel", "attribute '" + spec.name + "' is quantitative; discretize it before bitmap encoding");

    std::map<std::string, std::size_t> id_of;
    auto add_item = [&](const std::string& v) {
      auto id = bm.items.size();
      id_of.emplace(v, id);
      bm.items.push_back(Item{id, spec.name, v});
      bm.columns.emplace_back(bm.universe_size);
      return id;
    };
    if (spec.domain) {
      for (const auto& v : *spec.domain)
        if (!id_of.count(v)) add_item(v);
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& v = std::get<std::string>(table.rows[r][c]);
      auto it = id_of.find(v);
      std::size_t id;
      if (it != id_of.end()) {
        id = it->second;
      } else if (spec.domain) {
        throw DataError("datamodel", "value '" + v + "' of '" + spec.name + "' at row " + std::to_string(r + 1) +
                                         " is outside its declared domain");
      } else {
        id = add_item(v);
      }
      bm.columns[id].set(r);
    }
  }
  return bm;
}

/// Inverse of bitmap_encode: picks the single 1-bit item per attribute per object.
inline RelationalTable bitmap_decode(const BitmapTable& bm, std::string name = "decoded") {
  RelationalTable t;
  t.name = std::move(name);
  for (const auto& a : bm.attributes) t.schema.push_back(AttributeSpec::categorical(a));
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < bm.attributes.size(); ++i) col.emplace(bm.attributes[i], i);

  t.rows.assign(bm.universe_size, std::vector<Value>(bm.attributes.size()));
  std::vector<std::vector<int>> hits(bm.universe_size, std::vector<int>(bm.attributes.size(), 0));
  for (const auto& item : bm.items) {
    auto c = col.at(item.attribute);
    for (auto r : bm.columns[item.id].ones()) {
      t.rows[r][c] = item.value;
      ++hits[r][c];
    }
  }
  for (std::size_t r = 0; r < bm.universe_size; ++r)
    for (std::size_t c = 0; c < bm.attributes.size(); ++c)
      if (hits[r][c] != 1)
        throw DataError("datamodel", "bitmap is not one-hot for attribute '" + bm.attributes[c] + "' at object " +
                                         std::to_string(r));
  return t;
}

}  // namespace rshar

#endif  // RSHAR_DATAMODEL_HPP
