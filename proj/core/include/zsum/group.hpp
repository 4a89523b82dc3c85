#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsum/errors.hpp"

namespace zsum {

/** Element of a finite abelian group: one reduced residue per invariant factor. */
struct Element {
  std::vector<std::uint64_t> coords;

  friend bool operator==(const Element& a, const Element& b) { return a.coords == b.coords; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
};

/**
 * Finite abelian group C_{n_1} + ... + C_{n_r} given by its invariant factors,
 * with n_1 | n_2 | ... | n_r and every n_i >= 2.
 *
 * The factor list is validated, never normalized: [3,3,9] stays the chain
 * C_3+C_3+C_9 and its canonical name is "C3*C3*C9". The trivial group is the
 * empty factor list (rank 0, order 1, exponent 1), named "C1".
 */
class Group {
 public:
  Group();  // trivial group

  const std::vector<std::uint64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::uint64_t order() const { return order_; }
  std::uint64_t exponent() const { return exponent_; }
  bool is_trivial() const { return factors_.empty(); }

  /// p if every invariant factor is a power of the same prime p, else nullopt.
  /// The trivial group is not considered a p-group here.
  std::optional<std::uint64_t> p_group_prime() const;

  Element zero() const;
  /// Validates rank and residue ranges; residues are not reduced silently.
  Element element(std::vector<std::uint64_t> coords) const;
  bool is_zero(const Element& g) const;

  Element add(const Element& g, const Element& h) const;
  Element negate(const Element& g) const;
  Element sub(const Element& g, const Element& h) const;
  Element scalar_mul(std::uint64_t k, const Element& g) const;

  /// Least k >= 1 with k*g = 0; always divides exponent().
  std::uint64_t element_order(const Element& g) const;

  /// Mixed-radix bijection with [0, order()), little-endian on coords:
  /// index = sum coords[i] * n_1*...*n_{i-1}; identity <-> 0.
  std::uint64_t index_of(const Element& g) const;
  Element element_at(std::uint64_t index) const;

  /// Canonical identity string, e.g. "C3*C3*C9"; cache key and CLI format.
  std::string name() const;

  friend bool operator==(const Group& a, const Group& b) { return a.factors_ == b.factors_; }
  friend bool operator!=(const Group& a, const Group& b) { return !(a == b); }

 private:
  friend Group make_group(std::vector<std::uint64_t>);
  std::vector<std::uint64_t> factors_;
  std::uint64_t order_ = 1;
  std::uint64_t exponent_ = 1;

  void check_rank(const Element& g) const;
};

/**
 * Builds a group from an invariant factor list.
 * Throws errc::bad_factor for entries < 2 and errc::chain_violation when some
 * n_i does not divide n_{i+1}. An empty list yields the trivial group.
 */
Group make_group(std::vector<std::uint64_t> invariant_factors);

/** p-group C_{p^{a_1}} + ... + C_{p^{a_r}} given by p and the exponent list. */
struct PGroupSpec {
  std::uint64_t p = 0;
  std::vector<std::uint32_t> exponents;  // a_1..a_r, each >= 1

  /// Validates primality of p and positivity of the exponents.
  static PGroupSpec make(std::uint64_t p, std::vector<std::uint32_t> exponents);

  /// Expands to the invariant factor chain (exponents sorted ascending).
  Group to_group() const;

  std::uint64_t exponent_of_group() const;  // p^{max a_i}
  std::uint64_t order() const;

  /// Canonical spec string "p=3;a=1,1,1,2" (exponents ascending).
  std::string name() const;
};

/// Olson's closed form D(G) = sum(p^{a_i} - 1) + 1 for p-groups.
std::uint64_t davenport_formula(const PGroupSpec& spec);

/** Classification of a p-group by the deficiency c = 2*exp(G) - D(G). */
struct Classification {
  std::uint64_t davenport = 0;
  std::uint64_t exponent = 0;
  std::int64_t deficiency = 0;             // c = 2*exp - D, may be negative
  bool rank_two_like = false;              // c >= 1, i.e. D <= 2*exp - 1
  std::optional<std::uint64_t> largest_pk; // largest p^k <= min(exp, c), if c >= 1
  bool exact_value = false;                // c itself is a power of p (k >= 0)
};

Classification classify_rank_two_like(const PGroupSpec& spec);

/// Parses "C3*C3*C9" or "p=3;a=1,1,1,2"; round-trips with the formatters.
Group parse_group(const std::string& text);
PGroupSpec parse_p_group_spec(const std::string& text);
std::string format_group(const Group& g);
std::string format_p_group_spec(const PGroupSpec& spec);

bool is_prime(std::uint64_t n);

/// Overflow-checked helpers used when expanding specs.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::uint32_t e);

}  // namespace zsum
