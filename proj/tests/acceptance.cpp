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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "rshar/pipeline.hpp"
#include "temp_dir.hpp"

namespace fs = std::filesystem;
using namespace rshar;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct RandomCase {
  TransactionView view;
  Ratio minsup;
  std::vector<FrequentItemset> itemsets;
};

std::vector<RandomCase> cases;
std::vector<FrequentItemset> synth_itemsets;

void oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260101);
  std::vector<Ratio> minsups;
  for (int i = 1; i <= 18; ++i) minsups.push_back(Ratio(static_cast<std::uint64_t>(i), 20));  // 0.05 .. 0.90
  std::size_t mismatches = 0, total_itemsets = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto view = testing::random_view(rng, 12, 200);
    const auto ms = minsups[std::uniform_int_distribution<std::size_t>(0, minsups.size() - 1)(rng)];
    auto fast = fi_gen(view, ms).itemsets;
    auto base = apriori_baseline(view, ms).itemsets;
    auto brute = brute_force_frequent(view, ms);
    if (!(testing::as_set(fast) == testing::as_set(brute) && testing::as_set(base) == testing::as_set(brute)))
      ++mismatches;
    total_itemsets += fast.size();
    cases.push_back({std::move(view), ms, std::move(fast)});
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << cases.size() << " views, " << total_itemsets << " itemsets, " << mismatches << " mismatches, " << secs << " s";
  report(1, "oracle equivalence", mismatches == 0 && cases.size() >= 100 && secs < 30, d.str());
}

void bitmap_age_table() {
  RelationalTable t;
  t.name = "ages";
  auto age = AttributeSpec::categorical("age");
  age.domain = std::vector<std::string>{"young", "middle", "old"};
  t.schema = {age};
  t.rows = {{std::string("young")}, {std::string("middle")}, {std::string("middle")}};
  auto bm = bitmap_encode(t);
  const std::vector<std::vector<int>> want = {{1, 0, 0}, {0, 1, 0}, {0, 1, 0}};
  bool ok = bm.items.size() == 3 && bm.items[0].name() == "age_young" && bm.items[1].name() == "age_middle" &&
            bm.items[2].name() == "age_old";
  std::ostringstream d;
  for (std::size_t r = 0; ok && r < 3; ++r) {
    d << '(';
    for (std::size_t c = 0; c < 3; ++c) {
      const int bit = bm.columns[c].test(r) ? 1 : 0;
      ok = ok && bit == want[r][c];
      d << bit << (c < 2 ? "," : ")");
    }
  }
  report(2, "bitmap encoding", ok, d.str());
}

void beer_diaper_rule() {
  RelationalTable t;
  t.name = "general";
  for (const char* c : {"tid", "Times", "Location", "Buy"}) t.schema.push_back(AttributeSpec::categorical(c));
  auto add = [&](int tid, const char* y, const char* l, const char* b) {
    t.rows.push_back({"t" + std::to_string(tid), std::string(y), std::string(l), std::string(b)});
  };
  int tid = 0;
  for (int i = 0; i < 12; ++i, ++tid) {
    add(tid, "1998", "Melb", "Beer");
    add(tid, "1998", "Melb", "Diaper");
  }
  for (int i = 0; i < 3; ++i, ++tid) add(tid, "1998", "Melb", "Beer");
  for (int i = 0; i < 25; ++i, ++tid) add(tid, "1997", "Sydney", "Milk");

  auto combined = combine_dims(t, "tid", {"Times", "Location", "Buy"});
  auto view = group_by_key(combined.md);
  auto decoded = transform_map_code(fi_gen(view, Ratio(1, 20)).itemsets, combined.registry);
  auto rules = gen_rules(decoded, Ratio(4, 5), DimensionPolicy({"Buy"}));
  const std::vector<DimPair> ant = {{"Times", "1998"}, {"Location", "Melb"}, {"Buy", "Beer"}};
  const std::vector<DimPair> cons = {{"Buy", "Diaper"}};
  for (const auto& r : rules) {
    if (r.antecedent != ant || r.consequent != cons) continue;
    const bool exact = r.num_groups == 40 && r.support_count * 10 == 3 * r.num_groups &&
                       r.support_count * 5 == 4 * r.antecedent_count;
    const auto text = format_rule(r);
    const bool rendered = text.size() > 20 && text.ends_with("{sup=30%, conf=80%}");
    report(3, "beer/diaper rule", exact && rendered, text);
    return;
  }
  report(3, "beer/diaper rule", false, "rule not generated");
}

void mapping_code() {
  RelationalTable t{"general",
                    {AttributeSpec::categorical("tid"), AttributeSpec::categorical("Times"),
                     AttributeSpec::categorical("Channel/Product")},
                    {{std::string("t1"), std::string("Jan 1998"), std::string("Direct sales/Men-Jeans")},
                     {std::string("t2"), std::string("Feb 1998"), std::string("Internet/Men-Shirts")}}};
  auto combined = combine_dims(t, "tid", {"Times", "Channel/Product"});
  const auto code = combined.registry.find({"Jan 1998", "Direct sales/Men-Jeans"});
  auto decoded = transform_map_code({FrequentItemset{{"0001"}, 1, 2}}, combined.registry);
  const std::vector<DimPair> want = {{"Times", "Jan 1998"}, {"Channel/Product", "Direct sales/Men-Jeans"}};
  const bool ok = code == "0001" && decoded.size() == 1 && decoded[0].pairs == want;
  report(4, "mapping code", ok, "code=" + code.value_or("none") + " -> " + format_pairs(decoded.at(0).pairs));
}

void scan_count_law(const fs::path& root) {
  RunConfig cfg;
  cfg.synth = SynthSpec{};
  cfg.synth->n_fact_rows = 10000;
  cfg.seed = 1;
  cfg.minsup = Ratio::parse("0.45%");
  cfg.algorithm = Algorithm::both;
  cfg.out_dir = (root / "scan").string();
  const auto t0 = std::chrono::steady_clock::now();
  auto po = run_pipeline(cfg);
  const double secs = seconds_since(t0);
  const auto* r = po.report.find("rshar");
  const auto* a = po.report.find("apriori");
  const bool level2 = !r->per_level.empty() && r->per_level[0] >= 2;
  const bool ok = r->stats.full_scans_of_groups == 1 && (!level2 || a->stats.full_scans_of_groups >= 2) &&
                  po.report.agreement && r->per_level == a->per_level && secs < 60;
  synth_itemsets = po.rshar->itemsets;
  std::ostringstream d;
  d << po.report.num_groups << " groups, " << r->total << " itemsets, scans rshar=" << r->stats.full_scans_of_groups
    << " apriori=" << a->stats.full_scans_of_groups << ", speedup " << po.report.speedup() << "x, " << secs << " s";
  report(5, "scan count", ok, d.str());
}

void anti_monotonicity() {
  std::size_t bad = 0, checked = 0;
  for (const auto& c : cases) {
    bad += !testing::anti_monotone(c.itemsets);
    checked += c.itemsets.size();
  }
  bad += !testing::anti_monotone(synth_itemsets);
  checked += synth_itemsets.size();
  report(6, "anti-monotonicity", bad == 0 && !synth_itemsets.empty(),
         std::to_string(checked) + " itemsets, " + std::to_string(bad) + " violating collections");
}

void rule_completeness() {
  const Ratio minconfs[] = {Ratio(3, 10), Ratio(1, 2), Ratio(4, 5), Ratio(1, 1)};
  const testing::PairDecoder dec{3};
  const std::set<std::string> repeatable = {"d0"};
  std::size_t mismatches = 0, rules_total = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    auto decoded = testing::decode_with(c.itemsets, dec);
    for (const auto& mc : minconfs) {
      auto rules = gen_rules(decoded, mc, DimensionPolicy(repeatable));
      rules_total += rules.size();
      if (testing::rule_keys(rules) != testing::brute_force_rules(c.view, c.minsup, mc, dec, repeatable)) ++mismatches;
    }
  }
  report(7, "rule completeness", mismatches == 0,
         std::to_string(cases.size() * 4) + " runs, " + std::to_string(rules_total) + " rules, " +
             std::to_string(mismatches) + " mismatches");
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().filename() != "bench.csv")
      out[fs::relative(e.path(), dir).string()] = testing::slurp(e.path());
  return out;
}

void determinism(const fs::path& root) {
  auto run = [&](const std::string& name, unsigned workers) {
    RunConfig cfg;
    cfg.synth = SynthSpec{};
    cfg.synth->n_fact_rows = 10000;
    cfg.seed = 7;
    cfg.minsup = Ratio::parse("0.45%");
    cfg.algorithm = Algorithm::both;
    cfg.workers = workers;
    cfg.out_dir = (root / name).string();
    run_pipeline(cfg);
    return snapshot(root / name);
  };
  const auto a = run("serial_a", 1), b = run("serial_b", 1), p = run("parallel", 4);
  report(8, "determinism", !a.empty() && a == b && a == p,
         std::to_string(a.size()) + " files compared across 2 serial runs and 1 run with 4 workers");
}

template <class F>
void guarded(int id, const std::string& name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  testing::TempDir tmp;
  guarded(1, "oracle equivalence", oracle_equivalence);
  guarded(2, "bitmap encoding", bitmap_age_table);
  guarded(3, "beer/diaper rule", beer_diaper_rule);
  guarded(4, "mapping code", mapping_code);
  guarded(5, "scan count", [&] { scan_count_law(tmp.path()); });
  guarded(6, "anti-monotonicity", anti_monotonicity);
  guarded(7, "rule completeness", rule_completeness);
  guarded(8, "determinism", [&] { determinism(tmp.path()); });
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
