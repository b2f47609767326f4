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

// rshar: mine hybrid-dimension association rules from star-schema CSV files.
//
// Exit codes: 0 ok, 1 usage error, 2 data error, 3 rshar/apriori disagreement.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rshar/rshar.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDisagreement = 3;

std::pair<std::string, std::string> split_once(const std::string& s, char sep, const std::string& flag) {
  auto p = s.find(sep);
  if (p == std::string::npos || p == 0 || p + 1 == s.size())
    throw rshar::UsageError("cli", "malformed " + flag + " '" + s + "'");
  return {s.substr(0, p), s.substr(p + 1)};
}

std::vector<std::string> split_all(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto p = s.find(sep, start);
    out.push_back(s.substr(start, p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return out;
}

double parse_bound(const std::string& s, const std::string& spec) {
  double v = 0;
  if (!rshar::csv_detail::parse_double(s, v)) throw rshar::UsageError("cli", "bad bin bound in '" + spec + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid-dimension association rule mining (RSHAR) with an Apriori baseline"};

  std::string config_path, save_config, fact, key_dim, combine, minsup, minconf, algorithm, repeatable, out;
  std::vector<std::string> dims, joins, filters, bins;
  std::optional<std::size_t> synth_rows;
  std::optional<std::uint64_t> seed;
  std::optional<double> skew;
  unsigned threads = 0;
  bool two_pass = false;

  app.add_option("--config", config_path, "JSON run configuration; flags given on the command line override it");
  app.add_option("--save-config", save_config, "Write the effective configuration as JSON and continue");
  app.add_option("--fact", fact, "Fact table CSV");
  app.add_option("--dim", dims, "Dimension table, name=path (repeatable)");
  app.add_option("--join", joins, "Join link fact_key:dim:dim_key (repeatable)");
  app.add_option("--key-dim", key_dim, "Attribute whose distinct values form the transactions");
  app.add_option("--combine-dims", combine, "Comma-separated dimensions combined into mapping codes");
  app.add_option("--filter", filters, "Keep only rows with dim=value; repeat to allow several values (repeatable)");
  app.add_option("--bins", bins, "Discretize attr=label:lo:hi,label:lo:hi,... with [lo, hi) bins (repeatable)");
  app.add_option("--minsup", minsup, "Minimum support, e.g. 0.0045, 0.45% or 9/2000 (default 0.45%)");
  app.add_option("--minconf", minconf, "Minimum confidence (default 0.5)");
  app.add_option("--algorithm", algorithm, "rshar | apriori | both (both also writes the benchmark report)");
  app.add_option("--repeatable-dims", repeatable, "Comma-separated dimensions allowed to repeat within a rule");
  app.add_option("--synth", synth_rows, "Generate a synthetic sales star schema with this many fact rows");
  app.add_option("--skew", skew, "Zipf exponent for synthetic value popularity (default 1.0)");
  app.add_option("--seed", seed, "Seed for --synth");
  app.add_option("--threads", threads, "Workers for support counting (default 1)");
  app.add_flag("--two-pass", two_pass, "Assign mapping codes and emit the key/code table in two separate scans");
  app.add_option("--out", out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    rshar::RunConfig cfg;
    if (!config_path.empty()) cfg = rshar::load_config(config_path);
    if (!fact.empty()) cfg.fact_path = fact;
    if (!dims.empty()) {
      cfg.dims.clear();
      for (const auto& d : dims) {
        auto [name, path] = split_once(d, '=', "--dim");
        cfg.dims.push_back({name, path});
      }
    }
    if (!joins.empty()) {
      cfg.joins.clear();
      for (const auto& j : joins) {
        auto parts = split_all(j, ':');
        if (parts.size() != 3) throw rshar::UsageError("cli", "malformed --join '" + j + "'");
        cfg.joins.push_back({parts[0], parts[1], parts[2]});
      }
    }
    if (!key_dim.empty()) cfg.key_dim = key_dim;
    if (!combine.empty()) cfg.combine_dims = split_all(combine, ',');
    if (!filters.empty()) {
      cfg.filters.clear();
      for (const auto& f : filters) {
        auto [dim, value] = split_once(f, '=', "--filter");
        cfg.filters[dim].push_back(value);
      }
    }
    if (!bins.empty()) {
      cfg.bins.clear();
      for (const auto& b : bins) {
        auto [attr, list] = split_once(b, '=', "--bins");
        for (const auto& spec : split_all(list, ',')) {
          auto parts = split_all(spec, ':');
          if (parts.size() != 3) throw rshar::UsageError("cli", "malformed bin '" + spec + "'");
          cfg.bins[attr].push_back({parts[0], parse_bound(parts[1], spec), parse_bound(parts[2], spec)});
        }
      }
    }
    if (!minsup.empty()) cfg.minsup = rshar::Ratio::parse(minsup);
    if (!minconf.empty()) cfg.minconf = rshar::Ratio::parse(minconf);
    if (!algorithm.empty()) cfg.algorithm = rshar::parse_algorithm(algorithm);
    if (!repeatable.empty()) cfg.repeatable_dims = split_all(repeatable, ',');
    if (synth_rows) {
      if (!cfg.synth) cfg.synth = rshar::SynthSpec{};
      cfg.synth->n_fact_rows = *synth_rows;
    }
    if (skew) {
      if (!cfg.synth) throw rshar::UsageError("cli", "--skew needs --synth");
      cfg.synth->skew = *skew;
    }
    if (seed) cfg.seed = *seed;
    if (threads) cfg.workers = threads;
    if (two_pass) cfg.two_pass = true;
    if (!out.empty()) cfg.out_dir = out;

    rshar::apply_synth_defaults(cfg);
    cfg.validate();
    if (!save_config.empty()) {
      std::ofstream f(save_config);
      if (!f) throw rshar::UsageError("cli", "cannot write '" + save_config + "'");
      f << rshar::to_json(cfg).dump(2) << '\n';
    }

    const auto po = rshar::run_pipeline(cfg);
    std::cout << "general table rows: " << po.general_rows << ", transactions: " << po.view.num_groups()
              << ", mapping codes: " << po.combined.registry.size() << '\n'
              << "frequent itemsets: " << po.itemsets.size() << ", rules: " << po.rules.size() << '\n';
    rshar::print_bench_table(po.report, std::cout);
    if (cfg.out_dir.empty()) {
      for (const auto& r : po.rules) std::cout << rshar::format_rule(r) << '\n';
    } else {
      std::cout << "results written to " << cfg.out_dir << '\n';
    }
    return 0;
  } catch (const rshar::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rshar::DisagreementError& e) {
    std::cerr << "internal disagreement: " << e.what() << '\n';
    return kExitDisagreement;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
