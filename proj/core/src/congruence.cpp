#include "zsum/congruence.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <optional>
#include <thread>

#include "dense.hpp"
#include "zsum/errors.hpp"
#include "zsum/group.hpp"
#include "zsum/length_set.hpp"
#include "zsum/rng.hpp"

namespace zsum {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(u128{a} * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) acc = mulmod(acc, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return acc;
}

// C(a, b) mod p for digits a, b < p, via the falling-factorial quotient.
std::uint64_t digit_binom(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    num = mulmod(num, (a - b + i) % p, p);
    den = mulmod(den, i % p, p);
  }
  return mulmod(num, powmod(den, p - 2, p), p);
}

struct PInfo {
  std::uint64_t p = 0;
  std::uint64_t n = 0;  // exponent
  std::uint64_t d = 0;  // Davenport constant, from the p-group closed form
};

PInfo p_info(const Group& group) {
  std::optional<std::uint64_t> p = group.p_group_prime();
  if (!p)
    fail(errc::not_a_p_group, group.name() + " is not a p-group");
  PInfo info;
  info.p = *p;
  info.n = group.exponent();
  info.d = 1;
  for (std::uint64_t f : group.factors()) info.d += f - 1;
  return info;
}

// N_k(x) mod p for k in [0, |x|].
std::vector<std::uint64_t> residue_table(const GSequence& x, std::uint64_t p, CountMode mode) {
  ProfileOptions opts;
  opts.mode = mode;
  opts.modulus = p;
  ZeroSumProfile pr = profile(x, opts);
  if (mode == CountMode::modular) return pr.residues;
  std::vector<std::uint64_t> table(x.length() + 1);
  for (std::size_t k = 0; k < table.size(); ++k)
    table[k] = (pr.exact[k] % p).convert_to<std::uint64_t>();
  return table;
}

std::uint64_t table_at(const std::vector<std::uint64_t>& table, std::int64_t k) {
  if (k < 0 || k >= static_cast<std::int64_t>(table.size())) return 0;
  return table[static_cast<std::size_t>(k)];
}

void check_window(std::uint64_t length, std::int64_t lo, std::int64_t hi, const std::string& what) {
  const std::int64_t t = static_cast<std::int64_t>(length);
  if (lo > hi || t < lo || t > hi)
    fail(errc::window_violation, what + ": length " + std::to_string(length) +
                                     " outside admissible window [" + std::to_string(lo) + ", " +
                                     std::to_string(hi) + "]");
}

// sum_i C(gamma, i) N_{m - i}(J) mod p.
std::uint64_t weighted_sum(const std::vector<std::uint64_t>& table, std::uint64_t gamma,
                           std::int64_t m, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::uint64_t i = 0; i <= gamma; ++i)
    acc = (acc + mulmod(lucas_binom(gamma, i, p), table_at(table, m - static_cast<std::int64_t>(i)), p)) % p;
  return acc;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a + p - b % p) % p;
}

bool is_p_power(std::uint64_t v, std::uint64_t p) {
  if (v == 0) return false;
  while (v % p == 0) v /= p;
  return v == 1;
}

bool has_exact_n_zero_sum(const GSequence& x, std::uint64_t n) {
  return has_zero_sum_with_length_in(x, LengthSet::singleton(n));
}

}  // namespace

std::uint64_t lucas_binom(std::uint64_t m, std::uint64_t k, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  while (k > 0 || m > 0) {
    acc = mulmod(acc, digit_binom(m % p, k % p, p), p);
    if (acc == 0) return 0;
    m /= p;
    k /= p;
  }
  return acc;
}

std::uint64_t check_remark42(std::uint64_t h, std::uint64_t n, std::uint64_t a, std::uint64_t p) {
  if (h == 0) fail(errc::bad_window, "h must be positive");
  if (!is_p_power(n, p))
    fail(errc::bad_window, std::to_string(n) + " is not a power of " + std::to_string(p));
  if (a >= n) fail(errc::bad_window, "a = " + std::to_string(a) + " outside [0, n-1]");
  return lucas_binom(checked_mul(h, n) + a, n, p);
}

void validate_system(const LinearSystem& sys) {
  std::uint64_t p = 0;
  for (const LinearEquation& eq : sys.equations) {
    if (eq.coeffs.size() != sys.vars)
      fail(errc::rank_mismatch, "equation has " + std::to_string(eq.coeffs.size()) +
                                    " coefficients, system has " + std::to_string(sys.vars) +
                                    " variables");
    std::optional<std::uint64_t> q = eq.group.p_group_prime();
    if (!q) fail(errc::not_a_p_group, "target group " + eq.group.name() + " is not a p-group");
    if (p == 0) p = *q;
    if (*q != p)
      fail(errc::not_a_p_group, "target groups mix primes " + std::to_string(p) + " and " +
                                    std::to_string(*q));
  }
}

std::uint64_t system_prime(const LinearSystem& sys) {
  validate_system(sys);
  if (sys.equations.empty())
    fail(errc::not_a_p_group, "empty system has no target prime");
  return *sys.equations.front().group.p_group_prime();
}

bool meets_parity_threshold(const LinearSystem& sys) {
  std::uint64_t need = 1;
  for (const LinearEquation& eq : sys.equations) {
    std::uint64_t d = 1;
    for (std::uint64_t f : eq.group.factors()) d += f - 1;
    need += d - 1;
  }
  return sys.vars >= need;
}

ParityCount baker_schmidt_parity(const LinearSystem& sys, std::size_t max_vars) {
  validate_system(sys);
  if (sys.vars > max_vars)
    fail(errc::too_many_variables, std::to_string(sys.vars) + " variables exceed the enumeration bound " +
                                       std::to_string(max_vars));

  // Per equation, index-space increment tables for flipping each variable,
  // so the Gray-code walk costs O(equations) per assignment.
  struct EqState {
    detail::DenseRows rows{Group()};
    std::vector<const std::uint32_t*> flip;  // per variable: add coeff row
    std::vector<const std::uint32_t*> unflip;
    std::uint32_t current = 0;
    std::uint32_t target = 0;  // index of -constant
  };
  std::vector<EqState> eqs;
  eqs.reserve(sys.equations.size());
  for (const LinearEquation& eq : sys.equations) {
    EqState st{detail::DenseRows(eq.group), {}, {}, 0, 0};
    st.flip.resize(sys.vars);
    st.unflip.resize(sys.vars);
    for (std::size_t v = 0; v < sys.vars; ++v) {
      st.flip[v] = st.rows.row(static_cast<std::uint32_t>(eq.group.index_of(eq.coeffs[v])));
      st.unflip[v] =
          st.rows.row(static_cast<std::uint32_t>(eq.group.index_of(eq.group.negate(eq.coeffs[v]))));
    }
    st.current = 0;
    st.target = static_cast<std::uint32_t>(eq.group.index_of(eq.group.negate(eq.constant)));
    eqs.push_back(std::move(st));
  }

  auto solves = [&] {
    for (const EqState& st : eqs)
      if (st.current != st.target) return false;
    return true;
  };

  ParityCount count;
  std::uint64_t assignments = std::uint64_t{1} << sys.vars;
  std::uint64_t mask = 0;
  std::uint64_t weight = 0;
  if (solves()) ++count.even;  // all-zero assignment
  for (std::uint64_t i = 1; i < assignments; ++i) {
    const unsigned bit = static_cast<unsigned>(__builtin_ctzll(i));  // Gray-code flip position
    const std::uint64_t flipped = std::uint64_t{1} << bit;
    const bool now_set = (mask & flipped) == 0;
    mask ^= flipped;
    weight += now_set ? 1 : -1;
    for (EqState& st : eqs)
      st.current = now_set ? st.flip[bit][st.current] : st.unflip[bit][st.current];
    if (solves()) {
      if (weight % 2 == 0)
        ++count.even;
      else
        ++count.odd;
    }
  }
  return count;
}

std::uint64_t master_min_k(std::uint64_t t, std::uint64_t gamma, std::uint64_t beta,
                           std::uint64_t n) {
  return (t + gamma + beta + n) / n;
}

std::uint64_t check_master_congruence(const GSequence& J, std::uint64_t gamma, std::uint64_t beta,
                                      std::uint64_t k, CountMode mode) {
  const PInfo g = p_info(J.group());
  if (k < 2) fail(errc::window_violation, "k must be at least 2");
  const std::int64_t n = static_cast<std::int64_t>(g.n);
  const std::int64_t lo = static_cast<std::int64_t>(g.d) + n - 1 - static_cast<std::int64_t>(gamma);
  const std::int64_t hi =
      static_cast<std::int64_t>(k) * n - 1 - static_cast<std::int64_t>(gamma) - static_cast<std::int64_t>(beta);
  check_window(J.length(), lo, hi, "master congruence");
  const std::vector<std::uint64_t> table = residue_table(J, g.p, mode);
  std::uint64_t acc = 0;
  for (std::uint64_t j = 0; j < k; ++j) {
    const std::uint64_t inner =
        weighted_sum(table, gamma, static_cast<std::int64_t>(j) * n - static_cast<std::int64_t>(beta), g.p);
    acc = (j % 2 == 0) ? (acc + inner) % g.p : sub_mod(acc, inner, g.p);
  }
  return acc;
}

std::uint64_t check_cor33(const GSequence& J, char variant, std::uint64_t gamma,
                          std::uint64_t beta, CountMode mode) {
  const PInfo g = p_info(J.group());
  const std::int64_t n = static_cast<std::int64_t>(g.n);
  const std::int64_t d = static_cast<std::int64_t>(g.d);
  const std::int64_t ga = static_cast<std::int64_t>(gamma);
  const std::int64_t be = static_cast<std::int64_t>(beta);
  std::int64_t lo = 0, hi = 0;
  switch (variant) {
    case 'a':
      if (beta != 0) fail(errc::window_violation, "variant a fixes beta = 0");
      lo = d + n - 1 - ga;
      hi = 3 * n - 1 - ga;
      break;
    case 'b':
      if (beta < 1) fail(errc::window_violation, "variant b needs beta >= 1");
      lo = d + n - 1 - ga;
      hi = 3 * n - 1 - ga - be;
      break;
    case 'c':
      if (gamma != 0 || beta != 0) fail(errc::window_violation, "variant c fixes gamma = beta = 0");
      lo = d + n - 1;
      hi = 4 * n - 1;
      break;
    case 'd':
      if (gamma != 0) fail(errc::window_violation, "variant d fixes gamma = 0");
      if (beta < 1) fail(errc::window_violation, "variant d needs beta >= 1");
      lo = d + n - 1;
      hi = 4 * n - 1 - be;
      break;
    default:
      fail(errc::window_violation, std::string("unknown variant '") + variant + "'");
  }
  check_window(J.length(), lo, hi, std::string("corollary variant ") + variant);
  const std::vector<std::uint64_t> table = residue_table(J, g.p, mode);
  const std::uint64_t p = g.p;
  switch (variant) {
    case 'a': {
      const std::uint64_t s1 = weighted_sum(table, gamma, n, p);
      const std::uint64_t s2 = weighted_sum(table, gamma, 2 * n, p);
      return (sub_mod(1 % p, s1, p) + s2) % p;
    }
    case 'b': {
      const std::uint64_t s1 = weighted_sum(table, gamma, n - be, p);
      const std::uint64_t s2 = weighted_sum(table, gamma, 2 * n - be, p);
      return sub_mod(s1, s2, p);
    }
    case 'c': {
      std::uint64_t acc = sub_mod(1 % p, table_at(table, n), p);
      acc = (acc + table_at(table, 2 * n)) % p;
      return sub_mod(acc, table_at(table, 3 * n), p);
    }
    default: {  // 'd'
      std::uint64_t acc = sub_mod(table_at(table, n - be), table_at(table, 2 * n - be), p);
      return (acc + table_at(table, 3 * n - be)) % p;
    }
  }
}

std::pair<std::uint64_t, std::uint64_t> check_cor34(const GSequence& J, CountMode mode) {
  const PInfo g = p_info(J.group());
  const std::int64_t n = static_cast<std::int64_t>(g.n);
  check_window(J.length(), static_cast<std::int64_t>(g.d) + n - 1, 3 * n - 1, "two-residue corollary");
  const std::vector<std::uint64_t> table = residue_table(J, g.p, mode);
  return {table_at(table, n), table_at(table, 2 * n)};
}

std::uint64_t check_lemma43(const GSequence& X, std::uint64_t gamma, CountMode mode) {
  const PInfo g = p_info(X.group());
  const std::int64_t n = static_cast<std::int64_t>(g.n);
  const std::int64_t d = static_cast<std::int64_t>(g.d);
  const std::int64_t ga = static_cast<std::int64_t>(gamma);
  if (gamma > g.n - 1)
    fail(errc::hypothesis_violation, "gamma = " + std::to_string(gamma) + " outside [0, n-1]");
  if (d < n + 1 + ga || d > 2 * n)
    fail(errc::hypothesis_violation,
         "Davenport constant " + std::to_string(g.d) + " outside [n+1+gamma, 2n]");
  check_window(X.length(), d + 2 * n - 1 - ga, 4 * n - 1 - ga, "long-sequence lemma");
  const std::vector<std::uint64_t> table = residue_table(X, g.p, mode);
  const std::uint64_t p = g.p;
  const std::uint64_t s1 = weighted_sum(table, gamma, n, p);
  const std::uint64_t s2 = weighted_sum(table, gamma, 2 * n, p);
  std::uint64_t acc = sub_mod(3 % p, mulmod(2 % p, s1, p), p);
  return (acc + s2) % p;
}

std::uint64_t check_lemma44(const GSequence& X, std::uint64_t pk, CountMode mode) {
  const PInfo g = p_info(X.group());
  const std::int64_t n = static_cast<std::int64_t>(g.n);
  const std::int64_t d = static_cast<std::int64_t>(g.d);
  if (!is_p_power(pk, g.p) || pk > g.n)
    fail(errc::window_violation, "pk = " + std::to_string(pk) + " is not a p-power in [1, n]");
  if (d < n + 1 || d > n + static_cast<std::int64_t>(pk))
    fail(errc::window_violation,
         "Davenport constant " + std::to_string(g.d) + " outside [n+1, n+pk]");
  check_window(X.length(), d + 2 * n - 1 - static_cast<std::int64_t>(pk), 3 * n - 1,
               "small-Davenport lemma");
  if (has_exact_n_zero_sum(X, g.n))
    fail(errc::premise_not_met, "sequence has a zero-sum subsequence of length n");
  const std::vector<std::uint64_t> table = residue_table(X, g.p, mode);
  const std::uint64_t p = g.p;
  const std::int64_t c = static_cast<std::int64_t>(pk);
  std::uint64_t acc = sub_mod(2 % p, mulmod(2 % p, table_at(table, n - c), p), p);
  return (acc + table_at(table, 2 * n - c)) % p;
}

std::pair<std::uint64_t, std::uint64_t> check_lemma45_abc(const GSequence& J, std::uint64_t alpha,
                                                          CountMode mode) {
  const PInfo g = p_info(J.group());
  const std::int64_t n = static_cast<std::int64_t>(g.n);
  const std::int64_t d = static_cast<std::int64_t>(g.d);
  const std::int64_t al = static_cast<std::int64_t>(alpha);
  if (alpha < 1 || alpha > g.n || al > 2 * n + 1 - d)
    fail(errc::window_violation,
         "alpha = " + std::to_string(alpha) + " outside [1, min(n, 2n+1-D)]");
  check_window(J.length(), d + 2 * n - al - 1, 4 * n - al - 1, "three-block lemma");
  if (has_exact_n_zero_sum(J, g.n))
    fail(errc::premise_not_met, "sequence has a zero-sum subsequence of length n");
  const std::vector<std::uint64_t> table = residue_table(J, g.p, mode);
  return {table_at(table, n - al), table_at(table, 3 * n - al)};
}

bool check_lemma46_dubiner(const GSequence& J) {
  const PInfo g = p_info(J.group());
  if (g.d > 2 * g.n)
    fail(errc::precondition_violation,
         "Davenport constant " + std::to_string(g.d) + " exceeds 2n");
  if (J.length() != 3 * g.n)
    fail(errc::precondition_violation, "length must be exactly 3n");
  if (!J.group().is_zero(J.sum()))
    fail(errc::precondition_violation, "sequence must be zero-sum");
  return has_exact_n_zero_sum(J, g.n);
}

namespace {

// Scans sub-multisets T | S with |T| = target and sigma(T) = 0 for an inner
// zero-sum subsequence with length in `inner`.
bool scan_middle_layer(const GSequence& S, std::uint64_t target, const LengthSet& inner) {
  const Group& group = S.group();
  const std::vector<GSequence::Entry>& entries = S.entries();
  std::vector<std::uint64_t> suffix(entries.size() + 1, 0);
  for (std::size_t i = entries.size(); i-- > 0;) suffix[i] = suffix[i + 1] + entries[i].mult;
  std::vector<std::uint64_t> take(entries.size(), 0);

  std::function<bool(std::size_t, std::uint64_t, Element)> rec =
      [&](std::size_t idx, std::uint64_t chosen, Element sum) -> bool {
    if (chosen == target) {
      if (!group.is_zero(sum)) return false;
      std::vector<GSequence::Entry> t_entries;
      for (std::size_t i = 0; i < idx; ++i)
        if (take[i] > 0) t_entries.push_back({entries[i].index, take[i]});
      GSequence t = GSequence::from_entries(group, std::move(t_entries));
      return has_zero_sum_with_length_in(t, inner);
    }
    if (idx == entries.size() || chosen + suffix[idx] < target) return false;
    const Element g = group.element_at(entries[idx].index);
    const std::uint64_t most = std::min(entries[idx].mult, target - chosen);
    for (std::uint64_t c = 0; c <= most; ++c) {
      take[idx] = c;
      if (rec(idx + 1, chosen + c, group.add(sum, group.scalar_mul(c, g)))) return true;
    }
    take[idx] = 0;
    return false;
  };
  return rec(0, 0, group.zero());
}

}  // namespace

Conj64Outcome check_conjecture64(const GSequence& S, std::uint64_t ell) {
  const PInfo g = p_info(S.group());
  const std::int64_t n = static_cast<std::int64_t>(g.n);
  const std::int64_t d = static_cast<std::int64_t>(g.d);
  if (d > 2 * n - 1)
    fail(errc::precondition_violation,
         "Davenport constant " + std::to_string(g.d) + " exceeds 2n-1");
  if (ell < 1 || static_cast<std::int64_t>(ell) > d + 1 - n)
    fail(errc::precondition_violation, "ell = " + std::to_string(ell) + " outside [1, D+1-n]");
  if (static_cast<std::int64_t>(S.length()) < d + n - 2 + static_cast<std::int64_t>(ell))
    fail(errc::precondition_violation, "sequence shorter than D+n-2+ell");

  const bool first = has_exact_n_zero_sum(S, g.n);
  bool second = false;
  const std::int64_t inner_lo = 2 * n - 1 - d + static_cast<std::int64_t>(ell);
  const std::int64_t inner_hi = n - 1;
  if (inner_lo <= inner_hi && S.length() >= 2 * g.n) {
    const LengthSet inner = LengthSet::interval(static_cast<std::uint64_t>(inner_lo),
                                                static_cast<std::uint64_t>(inner_hi));
    second = scan_middle_layer(S, 2 * g.n, inner);
  }
  if (first && second) return Conj64Outcome::both;
  if (first) return Conj64Outcome::disjunct_i;
  if (second) return Conj64Outcome::disjunct_ii;
  return Conj64Outcome::neither;
}

namespace {

enum class TrialKind { ok, violation, skip };

struct TrialResult {
  TrialKind kind = TrialKind::ok;
  std::string input;
  std::uint64_t residue = 0;
};

struct ParamTriple {
  std::uint64_t a = 0, b = 0, c = 0;
};

std::uint64_t sample_in(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return static_cast<std::uint64_t>(lo) + rng.below(static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

const std::vector<std::string>& fuzz_identities() {
  static const std::vector<std::string> ids = {"master",  "cor33-a", "cor33-b", "cor33-c",
                                               "cor33-d", "cor34",   "lemma43", "lemma44",
                                               "lemma45", "lemma46", "conj64"};
  return ids;
}

CongruenceReport fuzz_identity(const std::string& id, const Group& group,
                               const FuzzOptions& opts) {
  const PInfo g = p_info(group);
  const std::int64_t n = static_cast<std::int64_t>(g.n);
  const std::int64_t d = static_cast<std::int64_t>(g.d);
  const std::uint64_t p = g.p;

  // Admissible parameter tuples; sampling caps keep trial cost bounded.
  constexpr std::uint64_t kGammaCap = 3, kBetaCap = 3, kKCap = 4;
  std::vector<ParamTriple> params;
  if (id == "master") {
    for (std::uint64_t ga = 0; ga <= kGammaCap; ++ga)
      for (std::uint64_t be = 0; be <= kBetaCap; ++be)
        for (std::uint64_t k = 2; k <= kKCap; ++k) {
          const std::int64_t lo = d + n - 1 - static_cast<std::int64_t>(ga);
          const std::int64_t hi =
              static_cast<std::int64_t>(k) * n - 1 - static_cast<std::int64_t>(ga) - static_cast<std::int64_t>(be);
          if (lo >= 1 && lo <= hi) params.push_back({ga, be, k});
        }
  } else if (id == "cor33-a") {
    for (std::uint64_t ga = 0; ga <= kGammaCap; ++ga)
      if (d + n - 1 - static_cast<std::int64_t>(ga) >= 1 && d <= 2 * n) params.push_back({ga, 0, 0});
  } else if (id == "cor33-b") {
    for (std::uint64_t ga = 0; ga <= kGammaCap; ++ga)
      for (std::uint64_t be = 1; be <= kBetaCap; ++be)
        if (d + n - 1 - static_cast<std::int64_t>(ga) >= 1 &&
            d + static_cast<std::int64_t>(be) <= 2 * n)
          params.push_back({ga, be, 0});
  } else if (id == "cor33-c") {
    if (d <= 3 * n) params.push_back({});
  } else if (id == "cor33-d") {
    for (std::uint64_t be = 1; be <= kBetaCap; ++be)
      if (d + static_cast<std::int64_t>(be) <= 3 * n) params.push_back({0, be, 0});
  } else if (id == "cor34") {
    if (d <= 2 * n) params.push_back({});
  } else if (id == "lemma43") {
    for (std::uint64_t ga = 0; ga <= std::min<std::uint64_t>(kGammaCap, g.n - 1); ++ga)
      if (n + 1 + static_cast<std::int64_t>(ga) <= d && d <= 2 * n) params.push_back({ga, 0, 0});
  } else if (id == "lemma44") {
    for (std::uint64_t pk = 1; pk <= g.n; pk = checked_mul(pk, p)) {
      if (n + 1 <= d && d <= n + static_cast<std::int64_t>(pk)) params.push_back({pk, 0, 0});
      if (pk > g.n / p) break;
    }
  } else if (id == "lemma45") {
    if (d <= 2 * n)
      for (std::uint64_t al = 1;
           al <= std::min<std::uint64_t>(g.n, static_cast<std::uint64_t>(2 * n + 1 - d)); ++al)
        params.push_back({al, 0, 0});
  } else if (id == "lemma46") {
    if (d <= 2 * n) params.push_back({});
  } else if (id == "conj64") {
    if (d <= 2 * n - 1) params.push_back({});
  } else {
    fail(errc::parse_error, "unknown identity '" + id + "'");
  }
  if (params.empty())
    fail(errc::inadmissible_group,
         id + " has no admissible parameters over " + group.name());

  const std::uint64_t exact_threshold =
      static_cast<std::uint64_t>(opts.exact_fraction * 4294967296.0);

  auto run_trial = [&](std::uint64_t trial) -> TrialResult {
    Rng rng(mix_seed(opts.seed, trial));
    const bool recheck =
        (mix_seed(opts.seed ^ 0x517cc1b727220a95ULL, trial) & 0xffffffffULL) < exact_threshold;
    const ParamTriple pr = params[rng.below(params.size())];
    TrialResult out;

    auto residue_case = [&](std::int64_t lo, std::int64_t hi, auto checker, auto describe) {
      const std::uint64_t t = sample_in(rng, lo, hi);
      const GSequence J = sample_uniform(group, t, rng);
      const std::uint64_t r = checker(J, CountMode::modular);
      if (recheck) {
        const std::uint64_t re = checker(J, CountMode::exact);
        if (re != r) {
          out.kind = TrialKind::violation;
          out.residue = re;
          out.input = "exact-mismatch " + describe(J);
          return;
        }
      }
      if (r != 0) {
        out.kind = TrialKind::violation;
        out.residue = r;
        out.input = describe(J);
      }
    };

    if (id == "master") {
      const std::int64_t lo = d + n - 1 - static_cast<std::int64_t>(pr.a);
      const std::int64_t hi = static_cast<std::int64_t>(pr.c) * n - 1 -
                              static_cast<std::int64_t>(pr.a) - static_cast<std::int64_t>(pr.b);
      residue_case(
          lo, hi,
          [&](const GSequence& J, CountMode m) { return check_master_congruence(J, pr.a, pr.b, pr.c, m); },
          [&](const GSequence& J) {
            return "gamma=" + std::to_string(pr.a) + " beta=" + std::to_string(pr.b) +
                   " k=" + std::to_string(pr.c) + " t=" + std::to_string(J.length()) +
                   " J=" + J.to_text();
          });
    } else if (id == "cor33-a" || id == "cor33-b" || id == "cor33-c" || id == "cor33-d") {
      const char variant = id.back();
      std::int64_t lo = d + n - 1 - static_cast<std::int64_t>(pr.a);
      std::int64_t hi = 0;
      switch (variant) {
        case 'a': hi = 3 * n - 1 - static_cast<std::int64_t>(pr.a); break;
        case 'b': hi = 3 * n - 1 - static_cast<std::int64_t>(pr.a) - static_cast<std::int64_t>(pr.b); break;
        case 'c': hi = 4 * n - 1; break;
        default: hi = 4 * n - 1 - static_cast<std::int64_t>(pr.b); break;
      }
      residue_case(
          lo, hi,
          [&](const GSequence& J, CountMode m) { return check_cor33(J, variant, pr.a, pr.b, m); },
          [&](const GSequence& J) {
            return "gamma=" + std::to_string(pr.a) + " beta=" + std::to_string(pr.b) +
                   " t=" + std::to_string(J.length()) + " J=" + J.to_text();
          });
    } else if (id == "cor34") {
      for (std::uint64_t attempt = 0; attempt < opts.rejection_cap; ++attempt) {
        const std::uint64_t t = sample_in(rng, d + n - 1, 3 * n - 1);
        const GSequence J = sample_uniform(group, t, rng);
        const std::pair<std::uint64_t, std::uint64_t> r = check_cor34(J, CountMode::modular);
        if (r.first != 0) continue;
        if (recheck && check_cor34(J, CountMode::exact) != r) {
          out.kind = TrialKind::violation;
          out.residue = r.second;
          out.input = "exact-mismatch t=" + std::to_string(t) + " J=" + J.to_text();
        } else if (r.second != p - 1) {
          out.kind = TrialKind::violation;
          out.residue = r.second;
          out.input = "t=" + std::to_string(t) + " J=" + J.to_text();
        }
        return out;
      }
      out.kind = TrialKind::skip;
    } else if (id == "lemma43") {
      residue_case(
          d + 2 * n - 1 - static_cast<std::int64_t>(pr.a), 4 * n - 1 - static_cast<std::int64_t>(pr.a),
          [&](const GSequence& X, CountMode m) { return check_lemma43(X, pr.a, m); },
          [&](const GSequence& X) {
            return "gamma=" + std::to_string(pr.a) + " t=" + std::to_string(X.length()) +
                   " X=" + X.to_text();
          });
    } else if (id == "lemma44") {
      const std::uint64_t pk = pr.a;
      for (std::uint64_t attempt = 0; attempt < opts.rejection_cap; ++attempt) {
        const std::uint64_t t = sample_in(rng, d + 2 * n - 1 - static_cast<std::int64_t>(pk), 3 * n - 1);
        const GSequence X = sample_uniform(group, t, rng);
        if (has_exact_n_zero_sum(X, g.n)) continue;
        const std::uint64_t r = check_lemma44(X, pk, CountMode::modular);
        if (recheck && check_lemma44(X, pk, CountMode::exact) != r) {
          out.kind = TrialKind::violation;
          out.residue = r;
          out.input = "exact-mismatch pk=" + std::to_string(pk) + " t=" + std::to_string(t) +
                      " X=" + X.to_text();
        } else if (r != 0) {
          out.kind = TrialKind::violation;
          out.residue = r;
          out.input = "pk=" + std::to_string(pk) + " t=" + std::to_string(t) + " X=" + X.to_text();
        }
        return out;
      }
      out.kind = TrialKind::skip;
    } else if (id == "lemma45") {
      const std::uint64_t al = pr.a;
      for (std::uint64_t attempt = 0; attempt < opts.rejection_cap; ++attempt) {
        const std::uint64_t t =
            sample_in(rng, d + 2 * n - static_cast<std::int64_t>(al) - 1, 4 * n - static_cast<std::int64_t>(al) - 1);
        const GSequence J = sample_uniform(group, t, rng);
        if (has_exact_n_zero_sum(J, g.n)) continue;
        const std::pair<std::uint64_t, std::uint64_t> r = check_lemma45_abc(J, al, CountMode::modular);
        if (recheck && check_lemma45_abc(J, al, CountMode::exact) != r) {
          out.kind = TrialKind::violation;
          out.residue = r.first;
          out.input = "exact-mismatch alpha=" + std::to_string(al) + " t=" + std::to_string(t) +
                      " J=" + J.to_text();
        } else if (r.first != r.second) {
          out.kind = TrialKind::violation;
          out.residue = sub_mod(r.first, r.second, p);
          out.input = "alpha=" + std::to_string(al) + " t=" + std::to_string(t) + " J=" + J.to_text();
        }
        return out;
      }
      out.kind = TrialKind::skip;
    } else if (id == "lemma46") {
      for (std::uint64_t attempt = 0; attempt < opts.rejection_cap; ++attempt) {
        const GSequence J = sample_uniform(group, 3 * g.n, rng);
        if (!group.is_zero(J.sum())) continue;
        if (!check_lemma46_dubiner(J)) {
          out.kind = TrialKind::violation;
          out.residue = 0;
          out.input = "t=" + std::to_string(J.length()) + " J=" + J.to_text();
        }
        return out;
      }
      out.kind = TrialKind::skip;
    } else {  // conj64
      const std::uint64_t ell = 1 + rng.below(static_cast<std::uint64_t>(d + 1 - n));
      const std::uint64_t t =
          static_cast<std::uint64_t>(d + n - 2 + static_cast<std::int64_t>(ell)) + rng.below(3);
      const GSequence S = sample_uniform(group, t, rng);
      if (check_conjecture64(S, ell) == Conj64Outcome::neither) {
        out.kind = TrialKind::violation;
        out.residue = 0;
        out.input = "ell=" + std::to_string(ell) + " t=" + std::to_string(t) + " S=" + S.to_text();
      }
    }
    return out;
  };

  const std::uint64_t trials = opts.trials;
  std::vector<TrialResult> outcomes;
  const std::uint64_t probe = std::min<std::uint64_t>(trials, 64);
  bool aborted = false;

  if (opts.threads <= 1) {
    outcomes.reserve(trials);
    std::uint64_t initial_skips = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      outcomes.push_back(run_trial(trial));
      if (trial < probe && outcomes.back().kind == TrialKind::skip) ++initial_skips;
      if (trial + 1 == probe && probe == 64 && initial_skips == probe) {
        aborted = true;
        break;
      }
    }
  } else {
    outcomes.resize(trials);
    const unsigned nthreads = std::min<unsigned>(opts.threads, std::max<std::uint64_t>(trials, 1));
    std::vector<std::thread> pool;
    std::atomic<std::uint64_t> next{0};
    for (unsigned w = 0; w < nthreads; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t trial = next.fetch_add(1);
          if (trial >= trials) return;
          outcomes[trial] = run_trial(trial);
        }
      });
    for (std::thread& th : pool) th.join();
    if (probe == 64) {
      bool all_skip = true;
      for (std::uint64_t trial = 0; trial < probe; ++trial)
        if (outcomes[trial].kind != TrialKind::skip) all_skip = false;
      if (all_skip) {
        outcomes.resize(probe);
        aborted = true;
      }
    }
  }

  CongruenceReport report;
  report.identity = id;
  report.group = group.name();
  report.trials_requested = trials;
  report.trials_run = outcomes.size();
  for (std::uint64_t trial = 0; trial < outcomes.size(); ++trial) {
    const TrialResult& r = outcomes[trial];
    if (r.kind == TrialKind::skip) {
      ++report.skips;
    } else if (r.kind == TrialKind::violation) {
      report.violations.push_back({trial, r.input, r.residue});
    }
  }
  report.pass = report.violations.empty();
  const bool all_skipped = report.trials_run > 0 && report.skips == report.trials_run;
  report.status = (aborted || all_skipped) ? "rejection-budget-exhausted" : "ok";
  return report;
}

}  // namespace zsum
