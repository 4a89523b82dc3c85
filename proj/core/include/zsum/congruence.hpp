#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zsum/profile.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

/// C(m, k) mod p via the base-p digit product. Requires p prime.
std::uint64_t lucas_binom(std::uint64_t m, std::uint64_t k, std::uint64_t p);

/**
 * C(h*n + a, n) mod p for a p-power n and a in [0, n-1]; the returned residue
 * always equals h mod p. Throws errc::bad_window when n is not a power of p,
 * a is out of range, or h is zero.
 */
std::uint64_t check_remark42(std::uint64_t h, std::uint64_t n, std::uint64_t a, std::uint64_t p);

/**
 * A 0/1 linear system over p-groups: each equation reads
 * c_1 x_1 + ... + c_s x_s + b = 0 in its target group.
 */
struct LinearEquation {
  Group group;
  std::vector<Element> coeffs;  // size = LinearSystem::vars
  Element constant;
};

struct LinearSystem {
  std::size_t vars = 0;
  std::vector<LinearEquation> equations;
};

struct ParityCount {
  std::uint64_t even = 0;  // solutions of even weight
  std::uint64_t odd = 0;
};

/// Throws errc::rank_mismatch / errc::not_a_p_group on malformed systems.
void validate_system(const LinearSystem& sys);

/// The common prime of all equation groups. Requires at least one equation.
std::uint64_t system_prime(const LinearSystem& sys);

/// vars >= sum_i (D(G_i) - 1) + 1, the threshold guaranteeing even == odd mod p.
bool meets_parity_threshold(const LinearSystem& sys);

/**
 * Counts 0/1 solutions by weight parity over all 2^vars assignments.
 * Throws errc::too_many_variables when vars > max_vars.
 */
ParityCount baker_schmidt_parity(const LinearSystem& sys, std::size_t max_vars = 24);

/// Smallest k making length t admissible: ceil((t + gamma + beta + 1) / n).
std::uint64_t master_min_k(std::uint64_t t, std::uint64_t gamma, std::uint64_t beta,
                           std::uint64_t n);

/**
 * Alternating congruence over a p-group with exponent n: returns
 *   sum_{j=0}^{k-1} (-1)^j sum_{i=0}^{gamma} C(gamma,i) N_{jn-i-beta}(J)  mod p,
 * which is 0 whenever |J| lies in [D+n-1-gamma, kn-1-gamma-beta].
 */
std::uint64_t check_master_congruence(const GSequence& J, std::uint64_t gamma, std::uint64_t beta,
                                      std::uint64_t k, CountMode mode = CountMode::modular);

/**
 * Four specializations, windows on |J|:
 *   a: beta = 0,  [D+n-1-gamma, 3n-1-gamma],      1 - S_n + S_2n
 *   b: beta >= 1, [D+n-1-gamma, 3n-1-gamma-beta], S_{n-b} - S_{2n-b}
 *   c: gamma = beta = 0, [D+n-1, 4n-1],           1 - N_n + N_2n - N_3n
 *   d: gamma = 0, beta >= 1, [D+n-1, 4n-1-beta],  N_{n-b} - N_{2n-b} + N_{3n-b}
 * where S_m abbreviates sum_i C(gamma,i) N_{m-i}(J). All residues are 0.
 */
std::uint64_t check_cor33(const GSequence& J, char variant, std::uint64_t gamma,
                          std::uint64_t beta, CountMode mode = CountMode::modular);

/**
 * For |J| in [D+n-1, 3n-1]: returns (N_n mod p, N_2n mod p); whenever the
 * first residue is 0 the second is p-1.
 */
std::pair<std::uint64_t, std::uint64_t> check_cor34(const GSequence& J,
                                                    CountMode mode = CountMode::modular);

/**
 * For gamma in [0, n-1] with n+1+gamma <= D <= 2n and
 * |X| in [D+2n-1-gamma, 4n-1-gamma]: returns
 * 3 - 2*S_n + S_2n mod p (always 0).
 */
std::uint64_t check_lemma43(const GSequence& X, std::uint64_t gamma,
                            CountMode mode = CountMode::modular);

/**
 * For a p-power pk <= n with n+1 <= D <= n+pk, |X| in [D+2n-1-pk, 3n-1] and
 * N_n(X) = 0: returns 2 - 2*N_{n-pk} + N_{2n-pk} mod p (always 0).
 * Throws errc::premise_not_met when N_n(X) != 0.
 */
std::uint64_t check_lemma44(const GSequence& X, std::uint64_t pk,
                            CountMode mode = CountMode::modular);

/**
 * For alpha in [1, n] with alpha <= 2n+1-D, |J| in [D+2n-alpha-1, 4n-alpha-1]
 * and N_n(J) = 0: returns (N_{n-alpha} mod p, N_{3n-alpha} mod p); the two
 * residues always agree.
 */
std::pair<std::uint64_t, std::uint64_t> check_lemma45_abc(const GSequence& J, std::uint64_t alpha,
                                                          CountMode mode = CountMode::modular);

/**
 * For D <= 2n, sigma(J) = 0 and |J| = 3n: returns whether N_n(J) != 0
 * (always true).
 */
bool check_lemma46_dubiner(const GSequence& J);

enum class Conj64Outcome { disjunct_i, disjunct_ii, both, neither };

/**
 * For D <= 2n-1, ell in [1, D+1-n] and |S| >= D+n-2+ell: reports which
 * disjunct holds, (i) a zero-sum subsequence of length n, or (ii) a zero-sum
 * T | S with |T| = 2n containing a zero-sum U with
 * |U| in [2n-1-D+ell, n-1]. `neither` would be a counterexample.
 */
Conj64Outcome check_conjecture64(const GSequence& S, std::uint64_t ell);

struct FuzzOptions {
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  std::uint64_t rejection_cap = 100'000;  // sampling attempts per trial
  double exact_fraction = 0.01;           // share of trials recomputed exactly
  unsigned threads = 1;
};

struct Violation {
  std::uint64_t trial;
  std::string input;
  std::uint64_t residue;
};

struct CongruenceReport {
  std::string identity;
  std::string group;
  std::uint64_t trials_requested = 0;
  std::uint64_t trials_run = 0;
  std::uint64_t skips = 0;
  std::vector<Violation> violations;  // sorted by trial index
  bool pass = true;
  std::string status;  // "ok" or "rejection-budget-exhausted"
};

/// Identity ids accepted by fuzz_identity, in fixed order.
const std::vector<std::string>& fuzz_identities();

/**
 * Samples admissible inputs for one identity over one group and aggregates
 * violations. Deterministic for a fixed seed regardless of thread count.
 * Throws errc::inadmissible_group when the identity has no admissible
 * parameters over the group.
 */
CongruenceReport fuzz_identity(const std::string& id, const Group& group,
                               const FuzzOptions& opts = {});

}  // namespace zsum
