#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "zsum/length_set.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

using Bignum = boost::multiprecision::cpp_int;

enum class CountMode { exact, modular };

struct ProfileOptions {
  CountMode mode = CountMode::exact;
  std::uint64_t modulus = 0;                    // required in modular mode
  std::uint64_t budget = 1'000'000'000;         // DP cell updates
};

/**
 * N_k(X) for k = 0..|X|: the number of zero-sum subsequences of X of length
 * k, where subsequences are counted as selections of sequence slots (so
 * X = 0^5 over C_3 gives the binomial row, not 0/1).
 */
struct ZeroSumProfile {
  CountMode mode = CountMode::exact;
  std::uint64_t modulus = 0;
  std::uint64_t length = 0;
  std::vector<Bignum> exact;             // size length+1 in exact mode
  std::vector<std::uint64_t> residues;   // size length+1 in modular mode

  /// N_k with the convention N_k = 0 for k < 0 or k > |X|.
  Bignum exact_at(std::int64_t k) const;
  std::uint64_t residue_at(std::int64_t k) const;
};

/// Flattened per-slot dynamic programming over (element index, picked
/// length); work is |X| * |G| * (|X|+1) cell updates, checked against the
/// budget upfront.
ZeroSumProfile profile(const GSequence& x, const ProfileOptions& opts = {});

/// profile(x * removed^{-1}).
ZeroSumProfile profile_without(const GSequence& x, const GSequence& removed,
                               const ProfileOptions& opts = {});

/// True iff some k in L with 1 <= k <= |X| has N_k(X) > 0; early-exits as
/// soon as a qualifying zero-sum becomes reachable.
bool has_zero_sum_with_length_in(const GSequence& x, const LengthSet& lengths);

}  // namespace zsum
