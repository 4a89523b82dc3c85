#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zsum/length_set.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

enum class SearchMode { exhaustive, sampled };

struct SearchOptions {
  std::uint64_t cap = 0;                     // 0 picks default_cap(G)
  std::uint64_t node_budget = 100'000'000;   // attempted word extensions
  unsigned threads = 0;                      // 0 picks hardware concurrency
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t samples = 10'000;            // per candidate length, sampled mode
  std::uint64_t seed = 0;                    // sampled mode only
};

struct SearchStats {
  std::uint64_t nodes = 0;        // live nodes visited (accepted extensions)
  std::uint64_t extensions = 0;   // attempted extensions (budget unit)
  double wall_seconds = 0.0;
};

/**
 * Outcome of an s_L(G) computation.
 *
 * A present value is the smallest l such that every sequence of length l has
 * a zero-sum subsequence with length in L; exhaustive results certify this
 * by counterexample at l-1 plus exhaustion at l. A missing value means a
 * counterexample of length cap exists, so s_L(G) > cap (the witness then has
 * length cap instead of value-1).
 */
struct InvariantResult {
  std::string invariant;   // "D", "eta", "s", "s_interval:j=2", "s_L:{4}", ...
  Group group;
  LengthSet lengths = LengthSet::all();
  std::optional<std::uint64_t> value;
  std::uint64_t cap = 0;
  bool exhaustive = true;  // false when produced by sampling
  std::optional<GSequence> witness;
  SearchStats stats;
};

/// 4*exp(G) + 2*|G|, the default search ceiling.
std::uint64_t default_cap(const Group& group);

/**
 * Computes s_L(G) by depth-first extension of nondecreasing element-index
 * words, pruning a branch as soon as it contains a zero-sum subsequence with
 * length in L. The witness is the first counterexample in DFS order.
 * Throws errc::cap_exceeded when the node budget is exhausted.
 */
InvariantResult compute_s_L(const Group& group, const LengthSet& lengths,
                            const SearchOptions& opts = {});

/// s_N(G): the Davenport constant D(G).
InvariantResult compute_davenport(const Group& group, const SearchOptions& opts = {});
/// s_{[1,exp]}(G): the eta invariant.
InvariantResult compute_eta(const Group& group, const SearchOptions& opts = {});
/// s_{{exp}}(G): the Erdos-Ginzburg-Ziv constant s(G).
InvariantResult compute_egz(const Group& group, const SearchOptions& opts = {});
/// s_{[j,exp]}(G); requires 1 <= j <= exp(G).
InvariantResult compute_s_interval(const Group& group, std::uint64_t j,
                                   const SearchOptions& opts = {});
/// s_{[j,exp]+N}(G), the lengths-at-least-j family; requires 1 <= j <= exp(G).
InvariantResult compute_s_interval_plus_N(const Group& group, std::uint64_t j,
                                          const SearchOptions& opts = {});

/// Re-verifies a certificate: the witness must have the claimed length and no
/// zero-sum subsequence with length in L.
bool verify_witness(const InvariantResult& result);

}  // namespace zsum
