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

// End-to-end run: load -> join -> discretize -> combine_dims -> group_by_key
// -> mine -> transform_map_code -> gen_rules, plus the RSHAR/Apriori
// benchmark report and result serialization.

#ifndef RSHAR_PIPELINE_HPP
#define RSHAR_PIPELINE_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rshar/common.hpp"
#include "rshar/datamodel.hpp"
#include "rshar/ingest.hpp"
#include "rshar/mapcode.hpp"
#include "rshar/mining.hpp"
#include "rshar/rules.hpp"
#include "rshar/synth.hpp"

namespace rshar {

enum class Algorithm { rshar, apriori, both };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::rshar: return "rshar";
    case Algorithm::apriori: return "apriori";
    case Algorithm::both: return "both";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "rshar") return Algorithm::rshar;
  if (s == "apriori") return Algorithm::apriori;
  if (s == "both") return Algorithm::both;
  throw UsageError("cli", "unknown algorithm '" + s + "' (expected rshar, apriori or both)");
}

inline constexpr const char* kFactTable = "fact";

struct DimSource {
  std::string name;
  std::string path;
  friend bool operator==(const DimSource&, const DimSource&) = default;
};

struct RunConfig {
  std::string fact_path;
  std::vector<DimSource> dims;
  std::vector<JoinLink> joins;        // fact_key / dim_table / dim_key; the fact table is "fact"
  std::vector<Projection> projection;  // empty: every fact column plus non-key dimension columns
  std::string key_dim;
  std::vector<std::string> combine_dims;
  std::map<std::string, std::vector<std::string>> filters;
  std::map<std::string, std::vector<Bin>> bins;
  Ratio minsup{9, 2000};  // 0.45%
  Ratio minconf{1, 2};
  Algorithm algorithm = Algorithm::rshar;
  std::vector<std::string> repeatable_dims;
  std::optional<SynthSpec> synth;  // n_fact_rows etc.; seed comes from `seed`
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  unsigned workers = 1;
  bool two_pass = false;

  void validate() const {
    if (!minsup.in_unit_interval()) throw UsageError("cli", "minsup must be in (0, 1], got " + minsup.str());
    if (!minconf.in_unit_interval()) throw UsageError("cli", "minconf must be in (0, 1], got " + minconf.str());
    if (synth && !seed) throw UsageError("cli", "--seed is required with --synth");
    if (!synth && fact_path.empty()) throw UsageError("cli", "no input: give --fact or --synth");
    if (key_dim.empty()) throw UsageError("cli", "--key-dim is required");
    if (combine_dims.empty()) throw UsageError("cli", "--combine-dims is required");
    if (workers == 0) throw UsageError("cli", "worker count must be at least 1");
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Fills in the synthetic star schema's file layout and a default dimension
/// selection for whatever the caller left empty.
inline void apply_synth_defaults(RunConfig& cfg) {
  if (!cfg.synth) return;
  const std::filesystem::path data = std::filesystem::path(cfg.out_dir.empty() ? "." : cfg.out_dir) / "data";
  if (cfg.fact_path.empty()) cfg.fact_path = (data / "sales.csv").string();
  if (cfg.dims.empty())
    for (const auto* n : {"customers", "products", "times", "channels"})
      cfg.dims.push_back({n, (data / (std::string(n) + ".csv")).string()});
  if (cfg.joins.empty())
    cfg.joins = {{"customer_id", "customers", "customer_id"},
                 {"product_id", "products", "product_id"},
                 {"time_id", "times", "time_id"},
                 {"channel_id", "channels", "channel_id"}};
  if (cfg.key_dim.empty()) cfg.key_dim = "basket_id";
  if (cfg.combine_dims.empty()) cfg.combine_dims = {"channel_class", "product_name"};
  if (cfg.bins.empty()) cfg.bins = {{"age", synth_age_bins()}, {"income", synth_income_bins()}};
  if (cfg.repeatable_dims.empty()) cfg.repeatable_dims = {"product_name"};
}

// ---- config file (JSON) ----

inline nlohmann::json to_json(const RunConfig& c) {
  using nlohmann::json;
  json j;
  j["fact"] = c.fact_path;
  j["dims"] = json::array();
  for (const auto& d : c.dims) j["dims"].push_back({{"name", d.name}, {"path", d.path}});
  j["joins"] = json::array();
  for (const auto& l : c.joins)
    j["joins"].push_back({{"fact_key", l.fact_key}, {"dim", l.dim_table}, {"dim_key", l.dim_key}});
  j["projection"] = json::array();
  for (const auto& p : c.projection) j["projection"].push_back({{"table", p.table}, {"attribute", p.attribute}});
  j["key_dim"] = c.key_dim;
  j["combine_dims"] = c.combine_dims;
  j["filters"] = c.filters;
  j["bins"] = json::object();
  for (const auto& [attr, bins] : c.bins) {
    auto& arr = j["bins"][attr] = json::array();
    for (const auto& b : bins) arr.push_back({{"label", b.label}, {"lower", b.lower}, {"upper", b.upper}});
  }
  j["minsup"] = c.minsup.str();
  j["minconf"] = c.minconf.str();
  j["algorithm"] = to_string(c.algorithm);
  j["repeatable_dims"] = c.repeatable_dims;
  if (c.synth) {
    const auto& s = *c.synth;
    j["synth"] = {{"n_customers", s.n_customers}, {"n_products", s.n_products}, {"n_times", s.n_times},
                  {"n_channels", s.n_channels},   {"n_fact_rows", s.n_fact_rows}, {"skew", s.skew},
                  {"max_basket", s.max_basket},   {"bundle_rate", s.bundle_rate}};
  }
  if (c.seed) j["seed"] = *c.seed;
  j["out"] = c.out_dir;
  j["workers"] = c.workers;
  j["two_pass"] = c.two_pass;
  return j;
}

inline RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.fact_path = j.value("fact", "");
    for (const auto& d : j.value("dims", nlohmann::json::array())) c.dims.push_back({d.at("name"), d.at("path")});
    for (const auto& l : j.value("joins", nlohmann::json::array()))
      c.joins.push_back({l.at("fact_key"), l.at("dim"), l.at("dim_key")});
    for (const auto& p : j.value("projection", nlohmann::json::array()))
      c.projection.push_back({p.at("table"), p.at("attribute")});
    c.key_dim = j.value("key_dim", "");
    c.combine_dims = j.value("combine_dims", std::vector<std::string>{});
    c.filters = j.value("filters", std::map<std::string, std::vector<std::string>>{});
    if (j.contains("bins"))
      for (const auto& [attr, arr] : j.at("bins").items())
        for (const auto& b : arr) c.bins[attr].push_back({b.at("label"), b.at("lower"), b.at("upper")});
    if (j.contains("minsup")) c.minsup = Ratio::parse(j.at("minsup").get<std::string>());
    if (j.contains("minconf")) c.minconf = Ratio::parse(j.at("minconf").get<std::string>());
    c.algorithm = parse_algorithm(j.value("algorithm", "rshar"));
    c.repeatable_dims = j.value("repeatable_dims", std::vector<std::string>{});
    if (j.contains("synth")) {
      const auto& s = j.at("synth");
      SynthSpec spec;
      spec.n_customers = s.value("n_customers", spec.n_customers);
      spec.n_products = s.value("n_products", spec.n_products);
      spec.n_times = s.value("n_times", spec.n_times);
      spec.n_channels = s.value("n_channels", spec.n_channels);
      spec.n_fact_rows = s.value("n_fact_rows", spec.n_fact_rows);
      spec.skew = s.value("skew", spec.skew);
      spec.max_basket = s.value("max_basket", spec.max_basket);
      spec.bundle_rate = s.value("bundle_rate", spec.bundle_rate);
      c.synth = spec;
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    c.out_dir = j.value("out", "");
    c.workers = j.value("workers", 1u);
    c.two_pass = j.value("two_pass", false);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("cli", std::string("malformed config: ") + e.what());
  }
  return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cli", "cannot open config '" + path.string() + "'");
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("cli", "config '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

// ---- benchmark report ----

struct AlgorithmReport {
  std::string name;
  MiningStats stats;
  std::vector<std::size_t> per_level;
  std::size_t total = 0;
};

struct BenchReport {
  std::vector<AlgorithmReport> algorithms;
  bool agreement = true;
  std::size_t num_groups = 0;
  std::size_t num_codes = 0;

  const AlgorithmReport* find(const std::string& name) const {
    for (const auto& a : algorithms)
      if (a.name == name) return &a;
    return nullptr;
  }

  /// Apriori time over RSHAR time; 0 when either is missing.
  double speedup() const {
    const auto* r = find("rshar");
    const auto* a = find("apriori");
    if (!r || !a || r->stats.elapsed.count() == 0) return 0;
    return static_cast<double>(a->stats.elapsed.count()) / static_cast<double>(r->stats.elapsed.count());
  }
};

inline AlgorithmReport make_algorithm_report(std::string name, const MiningResult& r) {
  return {std::move(name), r.stats, count_per_level(r.itemsets), r.itemsets.size()};
}

inline double to_millis(std::chrono::nanoseconds ns) { return static_cast<double>(ns.count()) / 1e6; }

inline void print_bench_table(const BenchReport& rep, std::ostream& out) {
  out << std::left << std::setw(10) << "algorithm" << std::right << std::setw(8) << "scans" << std::setw(12)
      << "candidates" << std::setw(8) << "pruned" << std::setw(10) << "itemsets" << std::setw(12) << "time_ms"
      << "  per-level\n";
  for (const auto& a : rep.algorithms) {
    std::ostringstream levels;
    for (std::size_t i = 0; i < a.per_level.size(); ++i) levels << (i ? " " : "") << "L" << i + 1 << "=" << a.per_level[i];
    out << std::left << std::setw(10) << a.name << std::right << std::setw(8) << a.stats.full_scans_of_groups
        << std::setw(12) << a.stats.candidates_generated << std::setw(8) << a.stats.candidates_pruned << std::setw(10)
        << a.total << std::setw(12) << std::fixed << std::setprecision(3) << to_millis(a.stats.elapsed)
        << std::defaultfloat << "  " << levels.str() << '\n';
  }
  out << "groups=" << rep.num_groups << " codes=" << rep.num_codes
      << " agreement=" << (rep.agreement ? "true" : "false");
  if (rep.find("rshar") && rep.find("apriori")) out << " speedup=" << std::fixed << std::setprecision(2) << rep.speedup() << std::defaultfloat;
  out << '\n';
}

// ---- pipeline ----

struct PipelineOutput {
  RunConfig config;  // after synth defaults
  std::size_t general_rows = 0;
  CombineResult combined;
  TransactionView view;
  std::optional<MiningResult> rshar;
  std::optional<MiningResult> apriori;
  std::vector<DecodedItemset> itemsets;
  std::vector<AssociationRule> rules;
  BenchReport report;
};

/// Load, join and discretize into the general table.
inline RelationalTable build_general_table(const RunConfig& cfg) {
  std::set<std::string> unused_bins;
  for (const auto& [attr, _] : cfg.bins) unused_bins.insert(attr);
  auto load = [&](const std::string& path, const std::string& name) {
    std::vector<AttributeSpec> schema;
    for (auto& col : read_csv_header(path)) {
      if (auto it = cfg.bins.find(col); it != cfg.bins.end()) {
        schema.push_back(AttributeSpec::quantitative(col, it->second));
        unused_bins.erase(col);
      } else {
        schema.push_back(AttributeSpec::categorical(col));
      }
    }
    return load_csv(path, std::move(schema), name);
  };

  std::vector<RelationalTable> tables;
  tables.push_back(load(cfg.fact_path, kFactTable));
  for (const auto& d : cfg.dims) {
    if (d.name == kFactTable) throw UsageError("cli", "dimension table cannot be named 'fact'");
    tables.push_back(load(d.path, d.name));
  }
  if (!unused_bins.empty())
    throw DataError("ingest", "bins declared for attribute '" + *unused_bins.begin() + "' found in no input table");

  JoinSpec spec{kFactTable, cfg.joins, cfg.projection};
  if (spec.projected.empty()) spec.projected = default_projection(tables, spec);
  auto general = join_tables(tables, spec);
  for (const auto& a : std::vector<AttributeSpec>(general.schema))
    if (a.kind == AttributeKind::quantitative) general = discretize(general, a.name);
  return general;
}

namespace pipeline_detail {

inline nlohmann::json pairs_json(const std::vector<DimPair>& pairs) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pairs) arr.push_back({{"dimension", p.dimension}, {"value", p.value}});
  return arr;
}

inline std::string itemset_text(const DecodedItemset& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.pairs.size(); ++i) s += (i ? ", " : "") + d.pairs[i].dimension + "_" + d.pairs[i].value;
  return s + "}";
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cli", "cannot write '" + p.string() + "'");
  return out;
}

inline nlohmann::json stats_json(const AlgorithmReport& a) {
  return {{"full_scans_of_groups", a.stats.full_scans_of_groups},
          {"candidates_generated", a.stats.candidates_generated},
          {"candidates_pruned", a.stats.candidates_pruned},
          {"itemsets_per_level", a.per_level},
          {"itemsets_total", a.total}};
}

}  // namespace pipeline_detail

/// Writes the result files. Everything except bench.csv (wall times) is a
/// pure function of the inputs and the config.
inline void write_outputs(const PipelineOutput& po, const std::filesystem::path& dir) {
  using namespace pipeline_detail;
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "itemsets.txt");
    for (const auto& d : po.itemsets)
      out << "level=" << d.level() << " count=" << d.support_count << "/" << d.num_groups
          << " sup=" << format_percent(d.support_count, d.num_groups) << "% " << itemset_text(d) << '\n';
  }
  {
    auto out = open_out(dir / "itemsets.jsonl");
    for (const auto& d : po.itemsets)
      out << nlohmann::json{{"items", pairs_json(d.pairs)}, {"codes", d.codes},
                            {"level", d.level()},           {"support_count", d.support_count},
                            {"num_groups", d.num_groups},   {"support", d.support()}}
                 .dump()
          << '\n';
  }
  {
    auto out = open_out(dir / "rules.txt");
    for (const auto& r : po.rules) out << format_rule(r) << '\n';
  }
  {
    auto out = open_out(dir / "rules.jsonl");
    for (const auto& r : po.rules)
      out << nlohmann::json{{"antecedent", pairs_json(r.antecedent)},
                            {"consequent", pairs_json(r.consequent)},
                            {"support_count", r.support_count},
                            {"antecedent_count", r.antecedent_count},
                            {"num_groups", r.num_groups},
                            {"support", r.support()},
                            {"confidence", r.confidence()}}
                 .dump()
          << '\n';
  }
  {
    auto out = open_out(dir / "registry.csv");
    po.combined.registry.write_csv(out);
  }
  {
    nlohmann::json j;
    j["num_groups"] = po.report.num_groups;
    j["num_codes"] = po.report.num_codes;
    j["general_rows"] = po.general_rows;
    j["rules"] = po.rules.size();
    j["agreement"] = po.report.agreement;
    for (const auto& a : po.report.algorithms) j["algorithms"][a.name] = stats_json(a);
    auto out = open_out(dir / "stats.json");
    out << j.dump(2) << '\n';
  }
  {
    // One row per (algorithm, level).
    auto out = open_out(dir / "bench.csv");
    out << "algorithm,level,itemsets,total_itemsets,full_scans_of_groups,elapsed_ms\n";
    for (const auto& a : po.report.algorithms)
      for (std::size_t l = 0; l < std::max<std::size_t>(1, a.per_level.size()); ++l)
        out << a.name << ',' << l + 1 << ',' << (l < a.per_level.size() ? a.per_level[l] : 0) << ',' << a.total << ','
            << a.stats.full_scans_of_groups << ',' << to_millis(a.stats.elapsed) << '\n';
  }
}

inline bool same_itemsets(const std::vector<FrequentItemset>& a, const std::vector<FrequentItemset>& b) {
  return a == b;
}

/// Runs the whole pipeline; writes result files when cfg.out_dir is set.
/// Synthetic data, when requested, is generated into <out>/data first.
inline PipelineOutput run_pipeline(RunConfig cfg) {
  apply_synth_defaults(cfg);
  cfg.validate();
  PipelineOutput po;

  if (cfg.synth) {
    auto spec = *cfg.synth;
    spec.seed = *cfg.seed;
    write_sales(generate_sales(spec), std::filesystem::path(cfg.out_dir.empty() ? "." : cfg.out_dir) / "data");
  }

  const auto general = build_general_table(cfg);
  po.general_rows = general.num_rows();

  CombineOptions copts;
  copts.two_pass = cfg.two_pass;
  for (const auto& [dim, values] : cfg.filters) copts.filters[dim].insert(values.begin(), values.end());
  po.combined = combine_dims(general, cfg.key_dim, cfg.combine_dims, copts);
  po.view = group_by_key(po.combined.md);

  const MiningOptions mopts{cfg.workers};
  if (cfg.algorithm != Algorithm::apriori) po.rshar = fi_gen(po.view, cfg.minsup, mopts);
  if (cfg.algorithm != Algorithm::rshar) po.apriori = apriori_baseline(po.view, cfg.minsup, mopts);

  po.report.num_groups = po.view.num_groups();
  po.report.num_codes = po.view.code_universe().size();
  if (po.rshar) po.report.algorithms.push_back(make_algorithm_report("rshar", *po.rshar));
  if (po.apriori) po.report.algorithms.push_back(make_algorithm_report("apriori", *po.apriori));
  if (po.rshar && po.apriori) po.report.agreement = same_itemsets(po.rshar->itemsets, po.apriori->itemsets);

  const auto& mined = po.rshar ? po.rshar->itemsets : po.apriori->itemsets;
  po.itemsets = transform_map_code(mined, po.combined.registry);
  po.rules = gen_rules(po.itemsets, cfg.minconf,
                       DimensionPolicy(std::set<std::string>(cfg.repeatable_dims.begin(), cfg.repeatable_dims.end())));
  po.config = cfg;

  if (!cfg.out_dir.empty()) write_outputs(po, cfg.out_dir);
  if (!po.report.agreement)
    throw DisagreementError("mining", "rshar and apriori produced different frequent itemsets");
  return po;
}

/// RSHAR and Apriori on the same data; throws DisagreementError unless they agree.
inline BenchReport run_benchmark(RunConfig cfg) {
  cfg.algorithm = Algorithm::both;
  return run_pipeline(std::move(cfg)).report;
}

}  // namespace rshar

#endif  // RSHAR_PIPELINE_HPP
