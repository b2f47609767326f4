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

#ifndef RSHAR_ITEMSET_HPP
#define RSHAR_ITEMSET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rshar/common.hpp"

namespace rshar {

/// A predicate instance such as Buy("Beer").
struct DimPair {
  std::string dimension;
  std::string value;
  friend auto operator<=>(const DimPair&, const DimPair&) = default;
};

/// An itemset over mapping codes. `items` is sorted by code_less.
struct FrequentItemset {
  std::vector<std::string> items;
  std::uint64_t support_count = 0;
  std::uint64_t num_groups = 0;

  std::size_t level() const { return items.size(); }
  double support() const {
    return num_groups == 0 ? 0.0 : static_cast<double>(support_count) / static_cast<double>(num_groups);
  }
  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

/// A frequent itemset after its codes were expanded to dimension values.
/// The code set is kept: rule generation splits on codes.
struct DecodedItemset {
  std::vector<std::string> codes;
  std::vector<DimPair> pairs;
  std::uint64_t support_count = 0;
  std::uint64_t num_groups = 0;

  std::size_t level() const { return codes.size(); }
  double support() const {
    return num_groups == 0 ? 0.0 : static_cast<double>(support_count) / static_cast<double>(num_groups);
  }
  friend bool operator==(const DecodedItemset&, const DecodedItemset&) = default;
};

/// Canonical itemset order: by level, then lexicographically by code.
inline bool itemset_less(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const std::string& x, const std::string& y) { return code_less(x, y); });
}

}  // namespace rshar

#endif  // RSHAR_ITEMSET_HPP
