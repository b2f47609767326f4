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

#ifndef RSHAR_INGEST_HPP
#define RSHAR_INGEST_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rshar/common.hpp"
#include "rshar/datamodel.hpp"

namespace rshar {

namespace csv_detail {

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("ingest", "cannot open '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find('"') != std::string::npos)
      throw DataError("ingest", "'" + path.string() + "' line " + std::to_string(lines.size() + 1) +
                                    ": quoted fields are not supported");
    lines.push_back(std::move(line));
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto res = std::from_chars(first, s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace csv_detail

/// Column names from the header line of a CSV file.
inline std::vector<std::string> read_csv_header(const std::filesystem::path& path) {
  auto lines = csv_detail::read_lines(path);
  if (lines.empty()) throw DataError("ingest", "'" + path.string() + "' is empty (no header row)");
  return csv_detail::split_line(lines.front());
}

inline RelationalTable load_csv(const std::filesystem::path& path, std::vector<AttributeSpec> schema,
                                std::string table_name = {}) {
  auto lines = csv_detail::read_lines(path);
  if (lines.empty()) throw DataError("ingest", "'" + path.string() + "' is empty (no header row)");

  RelationalTable t;
  t.name = table_name.empty() ? path.stem().string() : std::move(table_name);
  t.schema = std::move(schema);
  t.validate_schema();

  auto header = csv_detail::split_line(lines.front());
  if (header != t.column_names()) {
    std::string expected, got;
    for (const auto& n : t.column_names()) expected += (expected.empty() ? "" : ",") + n;
    throw DataError("ingest", "'" + path.string() + "' header '" + lines.front() + "' does not match schema '" +
                                  expected + "'");
  }

  t.rows.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto cells = csv_detail::split_line(lines[li]);
    if (cells.size() != t.schema.size())
      throw DataError("ingest", "'" + path.string() + "' row " + std::to_string(li) + " has " +
                                    std::to_string(cells.size()) + " fields, expected " +
                                    std::to_string(t.schema.size()));
    std::vector<Value> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (t.schema[c].kind == AttributeKind::quantitative) {
        double v = 0;
        if (!csv_detail::parse_double(cells[c], v))
          throw DataError("ingest", "'" + path.string() + "' row " + std::to_string(li) + ": cannot parse '" +
                                        cells[c] + "' as a number for attribute '" + t.schema[c].name + "'");
        row.emplace_back(v);
      } else {
        row.emplace_back(std::move(cells[c]));
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// All-categorical schema from a file's header.
inline RelationalTable load_csv(const std::filesystem::path& path) {
  std::vector<AttributeSpec> schema;
  for (auto& n : read_csv_header(path)) schema.push_back(AttributeSpec::categorical(std::move(n)));
  return load_csv(path, std::move(schema));
}

inline void write_csv(const RelationalTable& t, std::ostream& out) {
  auto put = [&](const std::string& s) {
    if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos || s.find('"') != std::string::npos)
      throw DataError("ingest", "value '" + s + "' cannot be written without quoting");
    out << s;
  };
  for (std::size_t c = 0; c < t.schema.size(); ++c) {
    if (c) out << ',';
    put(t.schema[c].name);
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      put(to_string(row[c]));
    }
    out << '\n';
  }
}

struct JoinLink {
  std::string fact_key;
  std::string dim_table;
  std::string dim_key;
  friend bool operator==(const JoinLink&, const JoinLink&) = default;
};

struct Projection {
  std::string table;
  std::string attribute;
  friend bool operator==(const Projection&, const Projection&) = default;
};

struct JoinSpec {
  std::string fact_table;
  std::vector<JoinLink> links;
  std::vector<Projection> projected;
  friend bool operator==(const JoinSpec&, const JoinSpec&) = default;
};

namespace join_detail {

inline const RelationalTable& find_table(const std::vector<RelationalTable>& tables, const std::string& name) {
  for (const auto& t : tables)
    if (t.name == name) return t;
  throw DataError("ingest", "join references unknown table '" + name + "'");
}

}  // namespace join_detail

inline void validate_join_spec(const std::vector<RelationalTable>& tables, const JoinSpec& spec) {
  const auto& fact = join_detail::find_table(tables, spec.fact_table);
  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::string, int> link_count;
  for (const auto& l : spec.links) {
    fact.index_of(l.fact_key);
    join_detail::find_table(tables, l.dim_table).index_of(l.dim_key);
    if (!seen.emplace(l.fact_key, l.dim_table).second)
      throw DataError("ingest", "duplicate link " + l.fact_key + " -> " + l.dim_table);
    ++link_count[l.dim_table];
  }
  if (spec.projected.empty()) throw DataError("ingest", "join projects no attributes");
  for (const auto& p : spec.projected) {
    if (p.table != spec.fact_table) {
      auto n = link_count[p.table];
      if (n == 0) throw DataError("ingest", "projected table '" + p.table + "' is not linked to the fact table");
      if (n > 1) throw DataError("ingest", "projection from '" + p.table + "' is ambiguous: table is linked " +
                                               std::to_string(n) + " times");
    }
    join_detail::find_table(tables, p.table).index_of(p.attribute);
  }
}

/// Every linked table's non-key attributes after all fact attributes.
inline std::vector<Projection> default_projection(const std::vector<RelationalTable>& tables, const JoinSpec& spec) {
  std::vector<Projection> out;
  const auto& fact = join_detail::find_table(tables, spec.fact_table);
  for (const auto& a : fact.schema) out.push_back({fact.name, a.name});
  std::set<std::string> done;
  for (const auto& l : spec.links) {
    if (!done.insert(l.dim_table).second) continue;
    for (const auto& a : join_detail::find_table(tables, l.dim_table).schema)
      if (a.name != l.dim_key) out.push_back({l.dim_table, a.name});
  }
  return out;
}

/// Strict equi-join of the fact table with each linked dimension. Output
/// follows fact row order; a key matching several dimension rows yields one
/// row per combination. Unmatched fact keys are an error.
inline RelationalTable join_tables(const std::vector<RelationalTable>& tables, const JoinSpec& spec) {
  validate_join_spec(tables, spec);
  const auto& fact = join_detail::find_table(tables, spec.fact_table);

  struct LinkIndex {
    std::size_t fact_col;
    const RelationalTable* dim;
    std::map<Value, std::vector<std::size_t>> rows_by_key;
  };
  std::vector<LinkIndex> links;
  std::map<std::string, std::size_t> link_of_table;
  for (const auto& l : spec.links) {
    LinkIndex li{fact.index_of(l.fact_key), &join_detail::find_table(tables, l.dim_table), {}};
    auto key_col = li.dim->index_of(l.dim_key);
    for (std::size_t r = 0; r < li.dim->rows.size(); ++r) li.rows_by_key[li.dim->rows[r][key_col]].push_back(r);
    link_of_table.emplace(l.dim_table, links.size());
    links.push_back(std::move(li));
  }

  RelationalTable out;
  out.name = "general";
  std::map<std::string, int> name_uses;
  for (const auto& p : spec.projected) ++name_uses[p.attribute];
  struct Source {
    std::ptrdiff_t link;  // -1 = fact table
    std::size_t col;
  };
  std::vector<Source> sources;
  for (const auto& p : spec.projected) {
    const auto& t = join_detail::find_table(tables, p.table);
    auto col = t.index_of(p.attribute);
    AttributeSpec a = t.schema[col];
    if (name_uses[p.attribute] > 1) a.name = p.table + "." + p.attribute;
    out.schema.push_back(std::move(a));
    sources.push_back({p.table == fact.name ? -1 : static_cast<std::ptrdiff_t>(link_of_table.at(p.table)), col});
  }
  out.validate_schema();

  std::vector<std::string> orphans;
  std::vector<const std::vector<std::size_t>*> matches(links.size());
  std::vector<std::size_t> pick(links.size());
  for (std::size_t fr = 0; fr < fact.rows.size(); ++fr) {
    bool orphan = false;
    for (std::size_t k = 0; k < links.size(); ++k) {
      const auto& key = fact.rows[fr][links[k].fact_col];
      auto it = links[k].rows_by_key.find(key);
      if (it == links[k].rows_by_key.end()) {
        orphans.push_back(links[k].dim->name + ":" + to_string(key) + " (fact row " + std::to_string(fr + 1) + ")");
        orphan = true;
      } else {
        matches[k] = &it->second;
      }
    }
    if (orphan) continue;

    // Odometer over the matching dimension rows.
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<Value> row;
      row.reserve(sources.size());
      for (const auto& s : sources) {
        if (s.link < 0)
          row.push_back(fact.rows[fr][s.col]);
        else
          row.push_back(links[s.link].dim->rows[(*matches[s.link])[pick[s.link]]][s.col]);
      }
      out.rows.push_back(std::move(row));
      std::size_t k = 0;
      for (; k < links.size(); ++k) {
        if (++pick[k] < matches[k]->size()) break;
        pick[k] = 0;
      }
      if (k == links.size()) break;
    }
  }
  if (!orphans.empty()) {
    std::string msg = std::to_string(orphans.size()) + " fact key(s) have no dimension match: ";
    for (std::size_t i = 0; i < orphans.size() && i < 10; ++i) msg += (i ? ", " : "") + orphans[i];
    if (orphans.size() > 10) msg += ", ...";
    throw DataError("ingest", msg);
  }
  return out;
}

/// A finite relation f : C_1 x ... x C_k -> D_1 x ... x D_p. Repeated source
/// tuples with different targets express the one-to-many and many-to-many forms.
struct MappingFunction {
  std::vector<std::string> source_attrs;
  std::vector<std::string> target_attrs;
  std::vector<std::pair<std::vector<Value>, std::vector<std::string>>> mapping;
};

inline RelationalTable apply_mapping_function(const RelationalTable& table, const MappingFunction& fn) {
  if (fn.source_attrs.empty() || fn.target_attrs.empty())
    throw DataError("ingest", "mapping function needs source and target attributes");
  std::vector<std::size_t> src;
  for (const auto& a : fn.source_attrs) src.push_back(table.index_of(a));

  // Identical (source -> target) pairs are collapsed; distinct targets for one
  // source keep their declared order.
  std::map<std::vector<Value>, std::vector<std::vector<std::string>>> targets;
  for (const auto& [s, d] : fn.mapping) {
    if (s.size() != fn.source_attrs.size() || d.size() != fn.target_attrs.size())
      throw DataError("ingest", "mapping entry arity does not match its declared attributes");
    auto& list = targets[s];
    if (std::find(list.begin(), list.end(), d) == list.end()) list.push_back(d);
  }

  RelationalTable out;
  out.name = table.name;
  out.schema = table.schema;
  for (const auto& a : fn.target_attrs) out.schema.push_back(AttributeSpec::categorical(a));
  out.validate_schema();

  std::vector<Value> key(src.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t k = 0; k < src.size(); ++k) key[k] = table.rows[r][src[k]];
    auto it = targets.find(key);
    if (it == targets.end()) {
      std::string tuple;
      for (const auto& v : key) tuple += (tuple.empty() ? "" : ", ") + to_string(v);
      throw DataError("ingest", "mapping function has no entry for (" + tuple + ") at row " + std::to_string(r + 1));
    }
    for (const auto& d : it->second) {
      auto row = table.rows[r];
      row.insert(row.end(), d.begin(), d.end());
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

/// Replaces a quantitative attribute by the labels of its [lower, upper) bins.
inline RelationalTable discretize(const RelationalTable& table, const std::string& attr) {
  const auto col = table.index_of(attr);
  const auto& spec = table.schema[col];
  if (spec.kind != AttributeKind::quantitative)
    throw DataError("ingest", "attribute '" + attr + "' is already categorical");
  spec.validate();

  RelationalTable out = table;
  out.schema[col] = AttributeSpec::categorical(attr);
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    const double v = std::get<double>(table.rows[r][col]);
    auto it = std::upper_bound(spec.bins.begin(), spec.bins.end(), v,
                               [](double x, const Bin& b) { return x < b.lower; });
    if (it == spec.bins.begin() || !(v < std::prev(it)->upper))
      throw DataError("ingest", "value " + format_number(v) + " of '" + attr + "' at row " + std::to_string(r + 1) +
                                    " falls outside every bin");
    out.rows[r][col] = std::prev(it)->label;
  }
  return out;
}

}  // namespace rshar

#endif  // RSHAR_INGEST_HPP
