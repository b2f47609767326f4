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

#include <random>

#include "gtest/gtest.h"
#include "rshar/datamodel.hpp"

namespace rshar {
namespace {

RelationalTable age_table() {
  return {"ages", {AttributeSpec::categorical("age")}, {{std::string("Young")}, {std::string("Middle")}, {std::string("Middle")}}};
}

RelationalTable random_categorical(std::mt19937_64& rng, std::size_t attrs, std::size_t rows, std::size_t domain) {
  RelationalTable t;
  t.name = "rand";
  for (std::size_t a = 0; a < attrs; ++a) t.schema.push_back(AttributeSpec::categorical("a" + std::to_string(a)));
  std::uniform_int_distribution<std::size_t> pick(0, domain - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Value> row;
    for (std::size_t a = 0; a < attrs; ++a) row.emplace_back("v" + std::to_string(pick(rng)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

TEST(BitVectorTest, AndCountMatchesMaterializedAnd) {
  BitVector a(130), b(130);
  for (std::size_t i = 0; i < 130; i += 3) a.set(i);
  for (std::size_t i = 0; i < 130; i += 5) b.set(i);
  EXPECT_EQ(BitVector::and_count(a, b), (a & b).count());
  EXPECT_EQ((a & b).count(), 9u);  // multiples of 15 below 130
  EXPECT_EQ((a & b).ones().front(), 0u);
  EXPECT_EQ((a & b).ones().back(), 120u);
}

TEST(InformationSystemTest, ThreeRowAgeTable) {
  auto sys = build_information_system(age_table());
  EXPECT_EQ(sys.universe(), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(sys.attributes(), (std::vector<std::string>{"age"}));
  EXPECT_EQ(to_string(sys.value(0, "age")), "Young");
  EXPECT_EQ(to_string(sys.value(1, "age")), "Middle");
  EXPECT_EQ(to_string(sys.value(2, "age")), "Middle");
}

TEST(InformationSystemTest, EmptyAndSingleton) {
  RelationalTable empty{"e", {AttributeSpec::categorical("x"), AttributeSpec::categorical("y")}, {}};
  auto sys = build_information_system(empty);
  EXPECT_TRUE(sys.universe().empty());
  EXPECT_EQ(sys.attributes().size(), 2u);

  RelationalTable one{"o", empty.schema, {{std::string("p"), std::string("q")}}};
  auto s1 = build_information_system(one);
  EXPECT_EQ(s1.universe().size(), 1u);
  EXPECT_EQ(to_string(s1.value(0, "x")), "p");
  EXPECT_EQ(to_string(s1.value(0, "y")), "q");
}

TEST(InformationSystemTest, DuplicateAttributeRejected) {
  RelationalTable t{"d", {AttributeSpec::categorical("x"), AttributeSpec::categorical("x")}, {}};
  EXPECT_THROW(build_information_system(t), DataError);
}

TEST(PartitionTest, ThreeRowsByAge) {
  auto p = partition_by_attributes(build_information_system(age_table()), {"age"});
  EXPECT_EQ(p.classes, (std::vector<std::vector<std::size_t>>{{0}, {1, 2}}));
}

TEST(PartitionTest, SixObjectColors) {
  RelationalTable t{"c", {AttributeSpec::categorical("color")}, {}};
  for (const char* c : {"r", "r", "g", "g", "r", "g"}) t.rows.push_back({std::string(c)});
  auto p = partition_by_attributes(build_information_system(t), {"color"});
  EXPECT_EQ(p.classes, (std::vector<std::vector<std::size_t>>{{0, 1, 4}, {2, 3, 5}}));
}

TEST(PartitionTest, AllAttributesOfDuplicateFreeTableGiveSingletons) {
  RelationalTable t{"s", {AttributeSpec::categorical("x"), AttributeSpec::categorical("y")},
                    {{std::string("1"), std::string("a")}, {std::string("1"), std::string("b")}, {std::string("2"), std::string("a")}}};
  auto p = partition_by_attributes(build_information_system(t), {"x", "y"});
  EXPECT_EQ(p.classes.size(), 3u);
  for (const auto& c : p.classes) EXPECT_EQ(c.size(), 1u);
}

TEST(PartitionTest, UnknownAttributeIsNamed) {
  try {
    partition_by_attributes(build_information_system(age_table()), {"salary"});
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("salary"), std::string::npos);
  }
  EXPECT_THROW(partition_by_attributes(build_information_system(age_table()), {}), UsageError);
}

TEST(PartitionTest, RefinementAndCoverProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = random_categorical(rng, 3, 40, 3);
    auto sys = build_information_system(t);
    auto coarse = partition_by_attributes(sys, {"a0"});
    auto fine = partition_by_attributes(sys, {"a0", "a2"});
    std::vector<std::size_t> class_of(40);
    for (std::size_t c = 0; c < coarse.classes.size(); ++c)
      for (auto o : coarse.classes[c]) class_of[o] = c;
    std::size_t covered = 0;
    for (const auto& cls : fine.classes) {
      covered += cls.size();
      for (auto o : cls) EXPECT_EQ(class_of[o], class_of[cls.front()]);
      for (auto o : cls) {
        EXPECT_EQ(t.rows[o][0], t.rows[cls.front()][0]);
        EXPECT_EQ(t.rows[o][2], t.rows[cls.front()][2]);
      }
    }
    EXPECT_EQ(covered, 40u);
  }
}

TEST(BitmapTest, ThreeRowAgeColumns) {
  auto bm = bitmap_encode(age_table());
  ASSERT_EQ(bm.items.size(), 2u);
  EXPECT_EQ(bm.items[0].name(), "age_Young");
  EXPECT_EQ(bm.items[1].name(), "age_Middle");
  EXPECT_EQ(bm.columns[0].ones(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(bm.columns[1].ones(), (std::vector<std::size_t>{1, 2}));
}

TEST(BitmapTest, ExplicitDomainAddsUnusedItem) {
  auto t = age_table();
  t.schema[0].domain = std::vector<std::string>{"Young", "Middle", "Old"};
  auto bm = bitmap_encode(t);
  ASSERT_EQ(bm.items.size(), 3u);
  EXPECT_EQ(bm.items[2].name(), "age_Old");
  EXPECT_EQ(bm.columns[2].count(), 0u);

  t.rows.push_back({std::string("Ancient")});
  EXPECT_THROW(bitmap_encode(t), DataError);
}

TEST(BitmapTest, EmptyTable) {
  RelationalTable t{"e", {AttributeSpec::categorical("x")}, {}};
  auto bm = bitmap_encode(t);
  EXPECT_TRUE(bm.items.empty());
  EXPECT_EQ(bm.universe_size, 0u);
}

TEST(BitmapTest, TwoByTwoCombos) {
  RelationalTable t{"c", {AttributeSpec::categorical("x"), AttributeSpec::categorical("y")}, {}};
  for (const char* x : {"0", "1"})
    for (const char* y : {"a", "b"}) t.rows.push_back({std::string(x), std::string(y)});
  auto bm = bitmap_encode(t);
  ASSERT_EQ(bm.items.size(), 4u);
  for (const auto& col : bm.columns) EXPECT_EQ(col.count(), 2u);
}

TEST(BitmapTest, QuantitativeRejected) {
  RelationalTable t{"q", {AttributeSpec::quantitative("income", {{"lo", 0, 10}})}, {{1.0}}};
  EXPECT_THROW(bitmap_encode(t), DataError);
}

TEST(BitmapTest, UnderscoreCollisionKeepsPairsDistinct) {
  // "a_b" + "c" and "a" + "b_c" render identically but are different items.
  RelationalTable t{"u", {AttributeSpec::categorical("a_b"), AttributeSpec::categorical("a")},
                    {{std::string("c"), std::string("b_c")}}};
  auto bm = bitmap_encode(t);
  ASSERT_EQ(bm.items.size(), 2u);
  EXPECT_EQ(bm.items[0].name(), bm.items[1].name());
  EXPECT_NE(bm.items[0], bm.items[1]);
  EXPECT_EQ(bitmap_decode(bm).rows, t.rows);
}

TEST(BitmapTest, OneHotRoundTripAndClassAgreement) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = random_categorical(rng, 3, 25, 4);
    auto bm = bitmap_encode(t);
    for (std::size_t obj = 0; obj < t.num_rows(); ++obj)
      for (const auto& attr : bm.attributes) {
        int ones = 0;
        for (const auto& it : bm.items)
          if (it.attribute == attr && bm.columns[it.id].test(obj)) ++ones;
        EXPECT_EQ(ones, 1);
      }
    auto back = bitmap_decode(bm, t.name);
    EXPECT_EQ(back.rows, t.rows);

    // Single-attribute classes are exactly the item extents.
    auto sys = build_information_system(t);
    auto p = partition_by_attributes(sys, {"a1"});
    std::vector<std::vector<std::size_t>> extents;
    for (const auto& it : bm.items)
      if (it.attribute == "a1") extents.push_back(bm.columns[it.id].ones());
    EXPECT_EQ(p.classes, extents);
  }
}

TEST(AttributeSpecTest, BinInvariants) {
  EXPECT_THROW(AttributeSpec::quantitative("x", {}).validate(), DataError);
  EXPECT_THROW(AttributeSpec::quantitative("x", {{"a", 0, 5}, {"b", 4, 8}}).validate(), DataError);
  EXPECT_THROW(AttributeSpec::quantitative("x", {{"a", 5, 5}}).validate(), DataError);
  EXPECT_NO_THROW(AttributeSpec::quantitative("x", {{"a", 0, 5}, {"b", 5, 8}}).validate());
  AttributeSpec c = AttributeSpec::categorical("y");
  c.bins = {{"a", 0, 1}};
  EXPECT_THROW(c.validate(), DataError);
}

TEST(RatioTest, ParsesExactly) {
  EXPECT_EQ(Ratio::parse("0.0045"), Ratio(9, 2000));
  EXPECT_EQ(Ratio::parse("0.45%"), Ratio(9, 2000));
  EXPECT_EQ(Ratio::parse("3/8"), Ratio(3, 8));
  EXPECT_EQ(Ratio::parse("1"), Ratio(1, 1));
  EXPECT_EQ(Ratio::from_double(0.0045), Ratio(9, 2000));
  EXPECT_THROW(Ratio::parse("abc"), UsageError);
  EXPECT_THROW(Ratio::parse(""), UsageError);
  EXPECT_THROW(Ratio::from_double(-0.1), UsageError);
}

TEST(RatioTest, MinCountIsExactCeiling) {
  // 0.45% of 2000 is exactly 9; floating point would give 9.000000000000002.
  EXPECT_EQ(Ratio(9, 2000).min_count(2000), 9u);
  EXPECT_EQ(Ratio(9, 2000).min_count(2001), 10u);
  EXPECT_EQ(Ratio(1, 2).min_count(4), 2u);
  EXPECT_EQ(Ratio(1, 2).min_count(5), 3u);
  EXPECT_TRUE(Ratio(4, 5).le_fraction(12, 15));
  EXPECT_FALSE(Ratio(4, 5).le_fraction(11, 15));
}

TEST(CodeOrderTest, NumericCodesSortByValue) {
  EXPECT_TRUE(code_less("0001", "0002"));
  EXPECT_TRUE(code_less("9999", "10000"));
  EXPECT_FALSE(code_less("10000", "9999"));
  EXPECT_TRUE(code_less("0002", "a"));
  EXPECT_TRUE(code_less("a", "b"));
}

}  // namespace
}  // namespace rshar
