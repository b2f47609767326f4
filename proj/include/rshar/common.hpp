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

#ifndef RSHAR_COMMON_HPP
#define RSHAR_COMMON_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>

namespace rshar {

// Errors carry the module that raised them so the CLI can report context.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

// Bad schema, bad file, orphan key, out-of-range value: anything wrong with input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Caller violated a precondition on parameters (thresholds, flags).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Two mining engines disagreed; always a bug.
class DisagreementError : public Error {
 public:
  using Error::Error;
};

/// Atomic cell value: categorical values are strings, quantitative ones numbers.
using Value = std::variant<std::string, double>;

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string to_string(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return format_number(std::get<double>(v));
}

/// Ordering on item codes. All-digit codes sort numerically (so "10000"
/// follows "9999") and precede every other code; the rest sort lexically.
inline bool is_numeric_code(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline bool code_less(std::string_view a, std::string_view b) {
  const bool na = is_numeric_code(a);
  const bool nb = is_numeric_code(b);
  if (na != nb) return na;
  if (!na) return a < b;
  auto strip = [](std::string_view s) {
    auto p = s.find_first_not_of('0');
    return p == std::string_view::npos ? std::string_view{} : s.substr(p);
  };
  auto sa = strip(a), sb = strip(b);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return a < b;  // same number, different padding
}

struct CodeLess {
  bool operator()(std::string_view a, std::string_view b) const { return code_less(a, b); }
};

/// An exact non-negative rational, used for minsup/minconf so threshold
/// comparisons never go through floating point.
class Ratio {
 public:
  constexpr Ratio() = default;
  constexpr Ratio(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw UsageError("ratio", "zero denominator");
    reduce();
  }

  /// Parses "0.0045", "1", "3/8" or "0.45%" exactly.
  static Ratio parse(std::string_view text) {
    auto fail = [&] { return UsageError("ratio", "cannot parse '" + std::string(text) + "' as a fraction"); };
    if (text.empty()) throw fail();
    bool percent = false;
    if (text.back() == '%') {
      percent = true;
      text.remove_suffix(1);
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      if (percent) throw fail();
      return Ratio(parse_uint(text.substr(0, slash), fail), parse_uint(text.substr(slash + 1), fail));
    }
    std::uint64_t num = 0, den = 1;
    bool seen_dot = false, seen_digit = false;
    for (char c : text) {
      if (c == '.') {
        if (seen_dot) throw fail();
        seen_dot = true;
        continue;
      }
      if (c < '0' || c > '9') throw fail();
      if (num > (UINT64_MAX - 9) / 10 || den > UINT64_MAX / 10) throw fail();
      num = num * 10 + static_cast<std::uint64_t>(c - '0');
      if (seen_dot) den *= 10;
      seen_digit = true;
    }
    if (!seen_digit) throw fail();
    if (percent) den *= 100;
    return Ratio(num, den);
  }

  /// Exact value of the shortest decimal that round-trips to `v`.
  static Ratio from_double(double v) {
    if (!std::isfinite(v) || v < 0) throw UsageError("ratio", "threshold must be a finite non-negative number");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
    if (res.ec != std::errc{}) throw UsageError("ratio", "threshold not representable");
    return parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }

  constexpr std::uint64_t num() const { return num_; }
  constexpr std::uint64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Smallest count c with c / total >= *this.
  std::uint64_t min_count(std::uint64_t total) const {
    unsigned __int128 p = static_cast<unsigned __int128>(num_) * total;
    return static_cast<std::uint64_t>((p + den_ - 1) / den_);
  }

  /// True iff a / b >= *this (b > 0).
  bool le_fraction(std::uint64_t a, std::uint64_t b) const {
    return static_cast<unsigned __int128>(a) * den_ >= static_cast<unsigned __int128>(num_) * b;
  }

  bool in_unit_interval() const { return num_ > 0 && num_ <= den_; }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend constexpr bool operator==(const Ratio&, const Ratio&) = default;

 private:
  template <typename Fail>
  static std::uint64_t parse_uint(std::string_view s, Fail fail) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw fail();
    return v;
  }

  constexpr void reduce() {
    std::uint64_t a = num_, b = den_;
    while (b != 0) {
      auto t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num_ /= a;
      den_ /= a;
    }
  }

  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// Compares p/q against r/s exactly; returns <0, 0, >0.
inline int compare_fractions(std::uint64_t p, std::uint64_t q, std::uint64_t r, std::uint64_t s) {
  auto lhs = static_cast<unsigned __int128>(p) * s;
  auto rhs = static_cast<unsigned __int128>(r) * q;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace rshar

#endif  // RSHAR_COMMON_HPP
