#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "zsum/errors.hpp"

namespace zsum {

/**
 * Set L of admissible zero-sum lengths, defining the invariant s_L(G).
 *
 * Kinds: all (every positive length, giving the Davenport constant),
 * interval [j, n], interval-plus-N (every length >= j, the family
 * s_{[j,n]+N} which collapses to a lower cutoff since the shifted intervals
 * tile), singleton {n}, or an explicit finite set.
 */
class LengthSet {
 public:
  enum class Kind { all, interval, interval_plus_n, singleton, explicit_set };

  static LengthSet all();
  static LengthSet interval(std::uint64_t j, std::uint64_t n);          // 1 <= j <= n
  static LengthSet interval_plus_n(std::uint64_t j, std::uint64_t n);   // members: k >= j
  static LengthSet singleton(std::uint64_t n);                          // n >= 1
  static LengthSet explicit_set(std::set<std::uint64_t> values);        // nonempty, all >= 1

  Kind kind() const { return kind_; }
  bool contains(std::uint64_t k) const;

  /// Largest member for finite kinds; nullopt for all / interval-plus-n.
  std::optional<std::uint64_t> max_value() const;
  /// Smallest member.
  std::uint64_t min_value() const;
  bool is_finite() const;

  /// For upward-closed kinds (all, interval-plus-n): the cutoff c with
  /// L = {k : k >= c}. Search states may saturate lengths at this value.
  std::optional<std::uint64_t> upward_cutoff() const;

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  const std::set<std::uint64_t>& values() const { return values_; }

  /// Stable text form: "N", "[1,3]", "[2,3]+N", "{3}", "{2,5,7}".
  std::string describe() const;
  static LengthSet parse(const std::string& text);

  friend bool operator==(const LengthSet& a, const LengthSet& b) {
    return a.kind_ == b.kind_ && a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.values_ == b.values_;
  }

 private:
  LengthSet() = default;
  Kind kind_ = Kind::all;
  std::uint64_t lo_ = 1, hi_ = 0;
  std::set<std::uint64_t> values_;
};

}  // namespace zsum
