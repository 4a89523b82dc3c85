#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

enum class BoundKind { lower, upper, exact };

const char* bound_kind_name(BoundKind kind);

struct BoundEntry {
  BoundKind kind = BoundKind::lower;
  std::uint64_t value = 0;
  std::string rule;    // provenance tag from the fixed rule table, "R1".."R15"
  std::string detail;  // instantiated hypotheses, admissible prime powers, ...
};

struct InvariantBounds {
  std::string invariant;  // "D", "eta", "s", "s_interval:j=N"
  std::vector<BoundEntry> entries;

  std::optional<std::uint64_t> best_lower() const;  // max over lower and exact
  std::optional<std::uint64_t> best_upper() const;  // min over upper and exact
  std::optional<std::uint64_t> exact_value() const;
  /// max(lower) <= min(upper) and all exact entries agree.
  bool consistent() const;
};

/**
 * Bound sheet for G = H + C_a with gcd(a, p) = 1. Every applicable rule of
 * the fixed table contributes an entry; nothing is deduplicated, so tests
 * can observe exactly which hypotheses fired.
 */
struct BoundReport {
  std::string group;  // canonical invariant-factor name of G
  PGroupSpec h;
  std::uint64_t a = 1;
  std::optional<std::uint64_t> j;
  std::vector<InvariantBounds> invariants;  // D, eta, s, and the interval when j is set
  bool consistent = true;

  const InvariantBounds* find(const std::string& invariant) const;
};

/**
 * Applies every rule whose hypotheses hold. Throws errc::gcd_violation when
 * a is zero or shares the prime with H, errc::bad_j when j is outside
 * [1, a * exp(H)].
 */
BoundReport bound_report(const PGroupSpec& h, std::uint64_t a = 1,
                         std::optional<std::uint64_t> j = std::nullopt);

struct BoundRule {
  std::string id;
  std::string summary;
};

/// The fixed rule table R1..R15, in id order.
const std::vector<BoundRule>& bound_rules();

class InvariantCache;

struct ConsistencyItem {
  std::string invariant;
  std::string status;  // "consistent", "mismatch", or "unchecked"
  std::string detail;
};

struct ConsistencyResult {
  std::vector<ConsistencyItem> items;
  bool pass = true;  // no mismatches
};

/**
 * Joins the report against exhaustively computed cached values: each cached
 * exact value must lie within [max lower, min upper] and match any rule-exact
 * value. Missing cache entries yield "unchecked" items.
 */
ConsistencyResult cross_validate(const BoundReport& report, const InvariantCache& cache);

}  // namespace zsum
