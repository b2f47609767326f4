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

// Synthetic star-schema sales database: four dimension tables (customers,
// products, times, channels) and a basket-level sales fact table.
// Output depends only on the spec; sampling is done directly on
// mt19937_64 output so files are identical across standard libraries.

#ifndef RSHAR_SYNTH_HPP
#define RSHAR_SYNTH_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "rshar/common.hpp"
#include "rshar/datamodel.hpp"
#include "rshar/ingest.hpp"

namespace rshar {

struct SynthSpec {
  std::size_t n_customers = 100;
  std::size_t n_products = 50;
  std::size_t n_times = 50;
  std::size_t n_channels = 60;
  std::size_t n_fact_rows = 10000;
  double skew = 1.0;  // Zipf exponent of value popularity
  std::uint64_t seed = 1;
  std::size_t max_basket = 6;
  double bundle_rate = 0.3;  // share of baskets seeded with a co-purchase bundle

  void validate() const {
    if (n_customers == 0 || n_products == 0 || n_times == 0 || n_channels == 0)
      throw UsageError("synth", "dimension sizes must be at least 1");
    if (max_basket == 0) throw UsageError("synth", "max_basket must be at least 1");
    if (!(skew >= 0) || !std::isfinite(skew)) throw UsageError("synth", "skew must be a finite non-negative number");
    if (!(bundle_rate >= 0 && bundle_rate <= 1)) throw UsageError("synth", "bundle_rate must be in [0, 1]");
  }
  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

struct SalesDatabase {
  RelationalTable customers;
  RelationalTable products;
  RelationalTable times;
  RelationalTable channels;
  RelationalTable sales;

  std::vector<const RelationalTable*> all() const { return {&customers, &products, &times, &channels, &sales}; }
};

namespace synth_detail {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

 private:
  std::mt19937_64 rng_;
};

/// Rank r (0-based) drawn with weight 1 / (r + 1)^s.
class Zipf {
 public:
  Zipf(std::size_t n, double s) : cdf_(n) {
    double acc = 0;
    for (std::size_t r = 0; r < n; ++r) cdf_[r] = acc += 1.0 / std::pow(static_cast<double>(r + 1), s);
    for (auto& c : cdf_) c /= acc;
  }
  std::size_t operator()(Sampler& s) const {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), s.uniform());
    return it == cdf_.end() ? cdf_.size() - 1 : static_cast<std::size_t>(it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

inline std::string id(char prefix, std::size_t i, std::size_t width) {
  std::string n = std::to_string(i + 1);
  if (n.size() < width) n.insert(0, width - n.size(), '0');
  return std::string(1, prefix) + n;
}

inline std::size_t width_for(std::size_t n) { return std::max<std::size_t>(2, std::to_string(n).size()); }

}  // namespace synth_detail

/// Default discretization for the quantitative customer attributes.
inline std::vector<Bin> synth_age_bins() {
  return {{"18..29", 18, 30}, {"30..44", 30, 45}, {"45..59", 45, 60}, {"60..90", 60, 91}};
}
inline std::vector<Bin> synth_income_bins() {
  return {{"1K..3K", 1000, 3000}, {"3K..5K", 3000, 5000}, {"5K..7K", 5000, 7000}, {"7K..12K", 7000, 12001}};
}

inline SalesDatabase generate_sales(const SynthSpec& spec) {
  using namespace synth_detail;
  spec.validate();
  Sampler rng(spec.seed);
  SalesDatabase db;

  static constexpr std::array kCities = {"Melb", "Sydney", "Bhopal", "Delhi", "Perth", "Mumbai", "Adelaide", "Pune"};
  static constexpr std::array kCategories = {"Men", "Women", "Kids", "Home", "Sports"};
  static constexpr std::array kArticles = {"Jeans", "Shirts", "Jackets", "Shoes", "Socks",
                                           "Hats", "Sweaters", "Shorts", "Belts", "Scarves"};
  static constexpr std::array kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                         "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  static constexpr std::array kChannelClasses = {"Direct sales", "Internet", "Partners", "Catalog"};

  auto& cu = db.customers;
  cu.name = "customers";
  cu.schema = {AttributeSpec::categorical("customer_id"), AttributeSpec::quantitative("age", synth_age_bins()),
               AttributeSpec::categorical("gender"), AttributeSpec::quantitative("income", synth_income_bins()),
               AttributeSpec::categorical("city")};
  const Zipf city_pick(kCities.size(), spec.skew);
  for (std::size_t i = 0; i < spec.n_customers; ++i) {
    const double age = 18 + static_cast<double>(rng.below(73));
    const double income = 1000 + 100 * static_cast<double>(rng.below(110));
    cu.rows.push_back({id('C', i, width_for(spec.n_customers)), age, std::string(rng.below(2) ? "Female" : "Male"),
                       income, std::string(kCities[city_pick(rng)])});
  }

  auto& pr = db.products;
  pr.name = "products";
  pr.schema = {AttributeSpec::categorical("product_id"), AttributeSpec::categorical("product_name"),
               AttributeSpec::categorical("category")};
  for (std::size_t i = 0; i < spec.n_products; ++i) {
    const auto cat = kCategories[i % kCategories.size()];
    std::string name = std::string(cat) + "-" + kArticles[(i / kCategories.size()) % kArticles.size()];
    if (const auto round = i / (kCategories.size() * kArticles.size()); round > 0) name += "-" + std::to_string(round + 1);
    pr.rows.push_back({id('P', i, width_for(spec.n_products)), std::move(name), std::string(cat)});
  }

  auto& ti = db.times;
  ti.name = "times";
  ti.schema = {AttributeSpec::categorical("time_id"), AttributeSpec::categorical("month"),
               AttributeSpec::categorical("year")};
  for (std::size_t i = 0; i < spec.n_times; ++i) {
    const auto year = std::to_string(1998 + i / 12);
    ti.rows.push_back({id('T', i, width_for(spec.n_times)), std::string(kMonths[i % 12]) + " " + year, year});
  }

  auto& ch = db.channels;
  ch.name = "channels";
  ch.schema = {AttributeSpec::categorical("channel_id"), AttributeSpec::categorical("channel_name"),
               AttributeSpec::categorical("channel_class")};
  for (std::size_t i = 0; i < spec.n_channels; ++i) {
    const auto cls = kChannelClasses[i % kChannelClasses.size()];
    ch.rows.push_back({id('H', i, width_for(spec.n_channels)), std::string(cls) + " " + std::to_string(i + 1),
                       std::string(cls)});
  }

  auto& sa = db.sales;
  sa.name = "sales";
  sa.schema = {AttributeSpec::categorical("basket_id"), AttributeSpec::categorical("customer_id"),
               AttributeSpec::categorical("product_id"),  AttributeSpec::categorical("time_id"),
               AttributeSpec::categorical("channel_id"),  AttributeSpec::quantitative("quantity", {{"1..9", 1, 10}})};

  const Zipf customer_pick(spec.n_customers, spec.skew);
  const Zipf product_pick(spec.n_products, spec.skew);
  const Zipf time_pick(spec.n_times, spec.skew);
  const Zipf channel_pick(spec.n_channels, spec.skew);

  // A few fixed co-purchase bundles over popular products give the lattice depth.
  std::vector<std::vector<std::size_t>> bundles;
  if (spec.n_products >= 3) {
    bundles = {{0, 1, 2}, {0, 3}, {1, 4}, {2, 5 % spec.n_products}};
    for (auto& b : bundles) {
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
    }
  }

  std::size_t basket = 0;
  const std::size_t basket_width = width_for(spec.n_fact_rows);
  while (sa.rows.size() < spec.n_fact_rows) {
    const auto customer = id('C', customer_pick(rng), width_for(spec.n_customers));
    const auto time = id('T', time_pick(rng), width_for(spec.n_times));
    const auto channel = id('H', channel_pick(rng), width_for(spec.n_channels));
    const auto size = 1 + rng.below(spec.max_basket);
    std::vector<std::size_t> items;
    if (!bundles.empty() && rng.uniform() < spec.bundle_rate) items = bundles[rng.below(bundles.size())];
    for (std::size_t attempt = 0; items.size() < size && attempt < 4 * size; ++attempt) {
      const auto p = product_pick(rng);
      if (std::find(items.begin(), items.end(), p) == items.end()) items.push_back(p);
    }
    const auto bid = id('B', basket++, basket_width);
    for (auto p : items) {
      if (sa.rows.size() == spec.n_fact_rows) break;
      sa.rows.push_back({bid, customer, id('P', p, width_for(spec.n_products)), time, channel,
                         static_cast<double>(1 + rng.below(9))});
    }
  }
  return db;
}

/// Writes customers.csv, products.csv, times.csv, channels.csv and sales.csv.
inline void write_sales(const SalesDatabase& db, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto* t : db.all()) {
    std::ofstream out(dir / (t->name + ".csv"), std::ios::binary);
    if (!out) throw DataError("synth", "cannot write '" + (dir / (t->name + ".csv")).string() + "'");
    write_csv(*t, out);
  }
}

}  // namespace rshar

#endif  // RSHAR_SYNTH_HPP
