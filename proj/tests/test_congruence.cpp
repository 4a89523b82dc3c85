#include <doctest.h>

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "zsum/congruence.hpp"
#include "zsum/group.hpp"
#include "zsum/profile.hpp"
#include "zsum/rng.hpp"
#include "zsum/sequence.hpp"

using namespace zsum;

namespace {

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected a zsum::error");
  return errc::parse_error;
}

// Independent binomial oracle: two rolling Pascal rows mod p.
struct PascalModP {
  std::uint64_t p;
  std::vector<std::uint8_t> row{1};

  void advance() {
    std::vector<std::uint8_t> next(row.size() + 1, 1);
    for (std::size_t k = 1; k + 1 < next.size(); ++k)
      next[k] = static_cast<std::uint8_t>((row[k - 1] + row[k]) % p);
    row = std::move(next);
  }
};

const Group& c33() {
  static const Group g = make_group({3, 3});
  return g;
}

GSequence random_seq(const Group& g, std::uint64_t len, Rng& rng) {
  return sample_uniform(g, len, rng);
}

}  // namespace

TEST_CASE("lucas_binom matches the Pascal oracle") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    PascalModP pascal{p, {1}};
    for (std::uint64_t m = 0; m < 200; ++m) {
      for (std::uint64_t k = 0; k <= m; ++k) CHECK(lucas_binom(m, k, p) == pascal.row[k]);
      CHECK(lucas_binom(m, m + 1, p) == 0);
      CHECK(lucas_binom(m, m + 17, p) == 0);
      pascal.advance();
    }
  }
  CHECK(lucas_binom(0, 0, 3) == 1);
  CHECK(lucas_binom(1000000, 0, 5) == 1);
}

TEST_CASE("remark 4.2: C(hn+a, n) is h mod p") {
  for (std::uint64_t n : {3, 9}) {
    for (std::uint64_t h = 1; h <= 6; ++h)
      for (std::uint64_t a = 0; a < n; ++a) CHECK(check_remark42(h, n, a, 3) == h % 3);
  }
  for (std::uint64_t h = 1; h <= 6; ++h)
    for (std::uint64_t a = 0; a < 4; ++a) CHECK(check_remark42(h, 4, a, 2) == h % 2);

  CHECK(code_of([] { check_remark42(1, 6, 0, 3); }) == errc::bad_window);
  CHECK(code_of([] { check_remark42(1, 9, 9, 3); }) == errc::bad_window);
  CHECK(code_of([] { check_remark42(0, 9, 0, 3); }) == errc::bad_window);
}

TEST_CASE("master congruence vanishes inside its window") {
  // C3*C3: D = 5, n = 3, window [D+n-1-gamma, kn-1-gamma-beta]
  Rng rng(31);
  for (std::uint64_t gamma : {0, 1, 2}) {
    for (std::uint64_t beta : {0, 1}) {
      for (std::uint64_t k : {3, 4}) {
        const std::uint64_t lo = 7 - gamma;
        const std::uint64_t hi = 3 * k - 1 - gamma - beta;
        for (std::uint64_t t = lo; t <= hi; ++t)
          for (int rep = 0; rep < 40; ++rep) {
            const GSequence J = random_seq(c33(), t, rng);
            CHECK(check_master_congruence(J, gamma, beta, k) == 0);
          }
      }
    }
  }
}

TEST_CASE("master congruence window boundaries") {
  const GSequence lo_bad = GSequence::from_indices(c33(), std::vector<std::uint64_t>(6, 1));
  const GSequence lo_ok = GSequence::from_indices(c33(), std::vector<std::uint64_t>(7, 1));
  const GSequence hi_ok = GSequence::from_indices(c33(), std::vector<std::uint64_t>(8, 1));
  const GSequence hi_bad = GSequence::from_indices(c33(), std::vector<std::uint64_t>(9, 1));
  // k = 3, gamma = beta = 0: window [7, 8]
  CHECK(code_of([&] { check_master_congruence(lo_bad, 0, 0, 3); }) == errc::window_violation);
  CHECK(check_master_congruence(lo_ok, 0, 0, 3) == 0);
  CHECK(check_master_congruence(hi_ok, 0, 0, 3) == 0);
  CHECK(code_of([&] { check_master_congruence(hi_bad, 0, 0, 3); }) == errc::window_violation);
  CHECK(code_of([&] { check_master_congruence(lo_ok, 0, 0, 1); }) == errc::window_violation);
  CHECK(code_of([&] {
          check_master_congruence(GSequence::from_indices(make_group({6}), {1}), 0, 0, 2);
        }) == errc::not_a_p_group);
}

TEST_CASE("cor33 variants vanish and enforce windows") {
  Rng rng(77);
  struct Case {
    char variant;
    std::uint64_t gamma, beta, lo, hi;
  };
  // C3*C3 windows per variant
  const Case cases[] = {
      {'a', 0, 0, 7, 8},  {'a', 1, 0, 6, 7},  {'b', 0, 1, 7, 7},
      {'c', 0, 0, 7, 11}, {'d', 0, 1, 7, 10}, {'d', 0, 2, 7, 9},
  };
  for (const Case& c : cases) {
    for (std::uint64_t t = c.lo; t <= c.hi; ++t)
      for (int rep = 0; rep < 30; ++rep)
        CHECK(check_cor33(random_seq(c33(), t, rng), c.variant, c.gamma, c.beta) == 0);
    const GSequence below =
        GSequence::from_indices(c33(), std::vector<std::uint64_t>(c.lo - 1, 1));
    const GSequence above =
        GSequence::from_indices(c33(), std::vector<std::uint64_t>(c.hi + 1, 1));
    CHECK(code_of([&] { check_cor33(below, c.variant, c.gamma, c.beta); }) ==
          errc::window_violation);
    CHECK(code_of([&] { check_cor33(above, c.variant, c.gamma, c.beta); }) ==
          errc::window_violation);
  }
  const GSequence J = GSequence::from_indices(c33(), std::vector<std::uint64_t>(7, 1));
  CHECK(code_of([&] { check_cor33(J, 'a', 0, 1); }) == errc::window_violation);
  CHECK(code_of([&] { check_cor33(J, 'b', 0, 0); }) == errc::window_violation);
  CHECK(code_of([&] { check_cor33(J, 'c', 1, 0); }) == errc::window_violation);
  CHECK(code_of([&] { check_cor33(J, 'd', 1, 1); }) == errc::window_violation);
  CHECK(code_of([&] { check_cor33(J, 'x', 0, 0); }) == errc::window_violation);
}

TEST_CASE("cor33-a instantiates the master congruence at k=3") {
  Rng rng(123);
  for (std::uint64_t gamma : {0, 1, 2, 3}) {
    const std::uint64_t lo = 7 - gamma;
    const std::uint64_t hi = 8 - gamma;
    for (std::uint64_t t = lo; t <= hi; ++t)
      for (int rep = 0; rep < 50; ++rep) {
        const GSequence J = random_seq(c33(), t, rng);
        CHECK(check_cor33(J, 'a', gamma, 0) == check_master_congruence(J, gamma, 0, 3));
      }
  }
}

TEST_CASE("exact and modular residues agree") {
  Rng rng(404);
  for (int rep = 0; rep < 60; ++rep) {
    const GSequence J = random_seq(c33(), 7 + rng.below(2), rng);
    CHECK(check_master_congruence(J, 1, 1, 4, CountMode::exact) ==
          check_master_congruence(J, 1, 1, 4, CountMode::modular));
    CHECK(check_cor33(J, 'c', 0, 0, CountMode::exact) ==
          check_cor33(J, 'c', 0, 0, CountMode::modular));
    CHECK(check_cor34(J, CountMode::exact) == check_cor34(J, CountMode::modular));
  }
}

TEST_CASE("cor34 pairs N_n with N_2n") {
  MultisetEnumerator en(c33(), 7);
  GSequence J(c33());
  std::uint64_t conditioned = 0;
  while (en.next(J)) {
    const std::pair<std::uint64_t, std::uint64_t> r = check_cor34(J);
    if (r.first == 0) {
      CHECK(r.second == 2);
      ++conditioned;
    }
  }
  CHECK(conditioned > 0);

  const GSequence below = GSequence::from_indices(c33(), std::vector<std::uint64_t>(6, 1));
  const GSequence above = GSequence::from_indices(c33(), std::vector<std::uint64_t>(9, 1));
  CHECK(code_of([&] { check_cor34(below); }) == errc::window_violation);
  CHECK(code_of([&] { check_cor34(above); }) == errc::window_violation);
}

TEST_CASE("lemma 4.3 window and hypotheses") {
  Rng rng(55);
  // C3*C3: gamma=0 -> [10,11], gamma=1 -> [9,10]
  for (std::uint64_t gamma : {0, 1}) {
    const std::uint64_t lo = 10 - gamma;
    for (std::uint64_t t = lo; t <= lo + 1; ++t)
      for (int rep = 0; rep < 40; ++rep)
        CHECK(check_lemma43(random_seq(c33(), t, rng), gamma) == 0);
    const GSequence below =
        GSequence::from_indices(c33(), std::vector<std::uint64_t>(lo - 1, 1));
    const GSequence above =
        GSequence::from_indices(c33(), std::vector<std::uint64_t>(lo + 2, 1));
    CHECK(code_of([&] { check_lemma43(below, gamma); }) == errc::window_violation);
    CHECK(code_of([&] { check_lemma43(above, gamma); }) == errc::window_violation);
  }
  const GSequence J = GSequence::from_indices(c33(), std::vector<std::uint64_t>(9, 1));
  CHECK(code_of([&] { check_lemma43(J, 2); }) == errc::hypothesis_violation);   // n+1+gamma > D
  CHECK(code_of([&] { check_lemma43(J, 5); }) == errc::hypothesis_violation);   // gamma >= n
  const Group c3 = make_group({3});
  const GSequence K = GSequence::from_indices(c3, std::vector<std::uint64_t>(8, 1));
  CHECK(code_of([&] { check_lemma43(K, 0); }) == errc::hypothesis_violation);   // D < n+1
}

TEST_CASE("lemma 4.4 on premise-satisfying sequences") {
  // C3*C3, pk = 3: window [7, 8], premise N_3(X) = 0
  std::uint64_t found = 0;
  for (std::uint64_t size : {7, 8}) {
    MultisetEnumerator en(c33(), size);
    GSequence X(c33());
    while (en.next(X)) {
      if (has_zero_sum_with_length_in(X, LengthSet::singleton(3))) continue;
      CHECK(check_lemma44(X, 3) == 0);
      ++found;
    }
  }
  CHECK(found > 0);

  const GSequence with_zero_sum =
      GSequence::from_entries(c33(), {{1, 3}, {3, 4}});  // (1,0)^3 has sum zero
  CHECK(code_of([&] { check_lemma44(with_zero_sum, 3); }) == errc::premise_not_met);
  CHECK(code_of([&] { check_lemma44(with_zero_sum, 2); }) == errc::window_violation);
  CHECK(code_of([&] { check_lemma44(with_zero_sum, 9); }) == errc::window_violation);
  CHECK(code_of([&] { check_lemma44(with_zero_sum, 1); }) == errc::window_violation);
  const GSequence below = GSequence::from_indices(c33(), std::vector<std::uint64_t>(6, 1));
  const GSequence above = GSequence::from_indices(c33(), std::vector<std::uint64_t>(9, 1));
  CHECK(code_of([&] { check_lemma44(below, 3); }) == errc::window_violation);
  CHECK(code_of([&] { check_lemma44(above, 3); }) == errc::window_violation);
}

TEST_CASE("lemma 4.5 on premise-satisfying sequences") {
  // C3*C3, alpha = 2: window [8, 9]; only size 8 can satisfy N_3 = 0
  std::uint64_t found = 0;
  MultisetEnumerator en(c33(), 8);
  GSequence J(c33());
  while (en.next(J)) {
    if (has_zero_sum_with_length_in(J, LengthSet::singleton(3))) continue;
    const std::pair<std::uint64_t, std::uint64_t> r = check_lemma45_abc(J, 2);
    CHECK(r.first == r.second);
    ++found;
  }
  CHECK(found > 0);

  const GSequence nine = GSequence::from_indices(c33(), std::vector<std::uint64_t>(9, 1));
  CHECK(code_of([&] { check_lemma45_abc(nine, 3); }) == errc::window_violation);  // alpha > 2n+1-D
  CHECK(code_of([&] { check_lemma45_abc(nine, 0); }) == errc::window_violation);
  const GSequence seven = GSequence::from_indices(c33(), std::vector<std::uint64_t>(7, 1));
  const GSequence ten = GSequence::from_indices(c33(), std::vector<std::uint64_t>(10, 1));
  CHECK(code_of([&] { check_lemma45_abc(seven, 2); }) == errc::window_violation);
  CHECK(code_of([&] { check_lemma45_abc(ten, 2); }) == errc::window_violation);
  // premise: sizes >= s(G) = 9 always contain a length-3 zero-sum
  CHECK(code_of([&] { check_lemma45_abc(nine, 1); }) == errc::premise_not_met);
}

TEST_CASE("lemma 4.6: long zero-sum sequences hit the middle layer") {
  Rng rng(808);
  std::uint64_t tested = 0;
  while (tested < 60) {
    GSequence J = random_seq(c33(), 8, rng);
    const Element fix = c33().negate(J.sum());
    J = J.concat(GSequence::from_elements(c33(), {fix}));
    REQUIRE(J.length() == 9);
    CHECK(check_lemma46_dubiner(J));
    ++tested;
  }
  const GSequence eight = GSequence::from_indices(c33(), std::vector<std::uint64_t>(8, 0));
  CHECK(code_of([&] { check_lemma46_dubiner(eight); }) == errc::precondition_violation);
  const GSequence off = GSequence::from_entries(c33(), {{0, 8}, {1, 1}});
  CHECK_FALSE(c33().is_zero(off.sum()));
  CHECK(code_of([&] { check_lemma46_dubiner(off); }) == errc::precondition_violation);
  const Group big = make_group({3, 3, 3, 3, 3});  // D = 11 > 2n
  const GSequence over_big = GSequence::from_indices(big, std::vector<std::uint64_t>(9, 1));
  CHECK(code_of([&] { check_lemma46_dubiner(over_big); }) == errc::precondition_violation);
}

TEST_CASE("conjecture 6.4 outcomes at ell = 1") {
  const GSequence direct =
      GSequence::from_entries(c33(), {{1, 3}, {3, 4}});  // (1,0)^3 (0,1)^4
  CHECK(check_conjecture64(direct, 1) == Conj64Outcome::disjunct_i);

  // an s-extremal sequence of length 8 has no length-3 zero-sum, so only
  // disjunct (ii) can hold for it
  MultisetEnumerator en(c33(), 8);
  GSequence J(c33());
  std::uint64_t extremal = 0;
  while (en.next(J)) {
    if (has_zero_sum_with_length_in(J, LengthSet::singleton(3))) continue;
    CHECK(check_conjecture64(J, 1) == Conj64Outcome::disjunct_ii);
    ++extremal;
  }
  CHECK(extremal > 0);

  const GSequence seven = GSequence::from_indices(c33(), std::vector<std::uint64_t>(7, 1));
  CHECK(code_of([&] { check_conjecture64(seven, 0); }) == errc::precondition_violation);
  CHECK(code_of([&] { check_conjecture64(seven, 4); }) == errc::precondition_violation);
  const GSequence six = GSequence::from_indices(c33(), std::vector<std::uint64_t>(6, 1));
  CHECK(code_of([&] { check_conjecture64(six, 1); }) == errc::precondition_violation);
  const Group big = make_group({3, 3, 3, 3, 3});  // D = 11 > 2n-1
  const GSequence far = GSequence::from_indices(big, std::vector<std::uint64_t>(20, 1));
  CHECK(code_of([&] { check_conjecture64(far, 1); }) == errc::precondition_violation);
}

TEST_CASE("linear system validation") {
  const Group c2 = make_group({2});
  const Group c3 = make_group({3});
  LinearSystem sys;
  sys.vars = 2;
  sys.equations.push_back({c2, {c2.element({1}), c2.element({1})}, c2.zero()});
  CHECK_NOTHROW(validate_system(sys));
  CHECK(system_prime(sys) == 2);

  LinearSystem short_row = sys;
  short_row.equations[0].coeffs.pop_back();
  CHECK(code_of([&] { validate_system(short_row); }) == errc::rank_mismatch);

  LinearSystem mixed = sys;
  mixed.equations.push_back({c3, {c3.element({1}), c3.element({1})}, c3.zero()});
  CHECK(code_of([&] { validate_system(mixed); }) == errc::not_a_p_group);

  const Group c6 = make_group({6});
  LinearSystem comp;
  comp.vars = 1;
  comp.equations.push_back({c6, {c6.element({1})}, c6.zero()});
  CHECK(code_of([&] { validate_system(comp); }) == errc::not_a_p_group);

  LinearSystem empty;
  empty.vars = 3;
  CHECK(code_of([&] { system_prime(empty); }) == errc::not_a_p_group);
}

TEST_CASE("parity counts by hand") {
  const Group c2 = make_group({2});
  LinearSystem sys;
  sys.vars = 2;
  sys.equations.push_back({c2, {c2.element({1}), c2.element({1})}, c2.zero()});
  CHECK(meets_parity_threshold(sys));  // threshold = D(C2) - 1 + 1 = 2
  const ParityCount pc = baker_schmidt_parity(sys);
  CHECK(pc.even == 2);  // 00 and 11
  CHECK(pc.odd == 0);

  const Group c3 = make_group({3});
  LinearSystem single;
  single.vars = 1;
  single.equations.push_back({c3, {c3.element({1})}, c3.zero()});
  CHECK_FALSE(meets_parity_threshold(single));  // needs 3 variables
  const ParityCount one = baker_schmidt_parity(single);
  CHECK(one.even == 1);
  CHECK(one.odd == 0);
}

TEST_CASE("parity theorem on random threshold systems") {
  Rng rng(1234);
  const std::vector<std::vector<std::uint64_t>> pools = {
      {2}, {2, 2}, {4}, {3}, {3, 3}, {9}, {5}};
  for (int rep = 0; rep < 40; ++rep) {
    const std::vector<std::uint64_t>& fs = pools[rng.below(pools.size())];
    const Group g = make_group(fs);
    const std::uint64_t p = *g.p_group_prime();
    std::uint64_t dav = 1;
    for (std::uint64_t f : fs) dav += f - 1;

    LinearSystem sys;
    const std::size_t eqs = 1 + rng.below(2);
    sys.vars = eqs * (dav - 1) + 1 + rng.below(3);
    if (sys.vars > 18) continue;
    for (std::size_t e = 0; e < eqs; ++e) {
      LinearEquation eq;
      eq.group = g;
      for (std::size_t v = 0; v < sys.vars; ++v)
        eq.coeffs.push_back(g.element_at(rng.below(g.order())));
      eq.constant = g.element_at(rng.below(g.order()));
      sys.equations.push_back(std::move(eq));
    }
    REQUIRE(meets_parity_threshold(sys));
    const ParityCount pc = baker_schmidt_parity(sys);
    CHECK(pc.even % p == pc.odd % p);
  }
}

TEST_CASE("parity threshold is tight") {
  for (std::uint64_t p : {2, 3, 5}) {
    const Group g = make_group({p});
    LinearSystem sys;
    sys.vars = p - 1;  // one below the threshold D(C_p) = p
    LinearEquation eq;
    eq.group = g;
    for (std::uint64_t v = 0; v + 1 < p; ++v) eq.coeffs.push_back(g.element({1}));
    eq.constant = g.zero();
    sys.equations.push_back(std::move(eq));
    CHECK_FALSE(meets_parity_threshold(sys));
    const ParityCount pc = baker_schmidt_parity(sys);
    // only the all-zero assignment solves, so even - odd = 1, not 0 mod p
    CHECK(pc.even == 1);
    CHECK(pc.odd == 0);
    CHECK(pc.even % p != pc.odd % p);
  }
}

TEST_CASE("parity enumeration bound") {
  const Group c2 = make_group({2});
  LinearSystem sys;
  sys.vars = 30;
  LinearEquation eq;
  eq.group = c2;
  for (int v = 0; v < 30; ++v) eq.coeffs.push_back(c2.element({1}));
  eq.constant = c2.zero();
  sys.equations.push_back(std::move(eq));
  CHECK(code_of([&] { baker_schmidt_parity(sys); }) == errc::too_many_variables);
  CHECK_NOTHROW(baker_schmidt_parity(sys, 30));
}

TEST_CASE("fuzz identity registry") {
  const std::vector<std::string> want = {"master",  "cor33-a", "cor33-b", "cor33-c",
                                         "cor33-d", "cor34",   "lemma43", "lemma44",
                                         "lemma45", "lemma46", "conj64"};
  CHECK(fuzz_identities() == want);
  CHECK(code_of([] { fuzz_identity("nope", c33(), {}); }) == errc::parse_error);
}

TEST_CASE("fuzz admissibility") {
  const Group big = make_group({3, 3, 3, 3, 3});  // D = 11, n = 3
  FuzzOptions opts;
  opts.trials = 10;
  CHECK(code_of([&] { fuzz_identity("lemma44", big, opts); }) == errc::inadmissible_group);
  CHECK(code_of([&] { fuzz_identity("cor34", big, opts); }) == errc::inadmissible_group);
  CHECK(code_of([&] { fuzz_identity("master", make_group({6}), opts); }) == errc::not_a_p_group);
}

TEST_CASE("fuzz runs clean on C3*C3") {
  FuzzOptions opts;
  opts.trials = 400;
  opts.seed = 20260815;
  opts.rejection_cap = 3000;
  opts.exact_fraction = 0.05;
  for (const std::string& id : fuzz_identities()) {
    const CongruenceReport rep = fuzz_identity(id, c33(), opts);
    CHECK(rep.pass);
    CHECK(rep.violations.empty());
    CHECK(rep.trials_requested == 400);
    CHECK(rep.trials_run + 0 > 0);
    CHECK(rep.identity == id);
    CHECK(rep.group == "C3*C3");
  }
}

TEST_CASE("fuzz is deterministic, including across thread counts") {
  FuzzOptions a;
  a.trials = 300;
  a.seed = 99;
  a.rejection_cap = 2000;
  FuzzOptions b = a;
  b.threads = 4;
  for (const std::string& id : {std::string("master"), std::string("lemma44")}) {
    const CongruenceReport r1 = fuzz_identity(id, c33(), a);
    const CongruenceReport r2 = fuzz_identity(id, c33(), a);
    const CongruenceReport r3 = fuzz_identity(id, c33(), b);
    CHECK(r1.trials_run == r2.trials_run);
    CHECK(r1.skips == r2.skips);
    CHECK(r1.violations.size() == r2.violations.size());
    CHECK(r1.trials_run == r3.trials_run);
    CHECK(r1.skips == r3.skips);
    CHECK(r1.violations.size() == r3.violations.size());
    CHECK(r1.status == r3.status);
  }
}

TEST_CASE("rare premises exhaust the rejection budget honestly") {
  // over C3*C9 the lemma 4.4 window sits at lengths where uniform sampling
  // essentially never produces N_9 = 0, so every probe trial skips
  FuzzOptions opts;
  opts.trials = 500;
  opts.seed = 3;
  opts.rejection_cap = 50;
  const CongruenceReport rep = fuzz_identity("lemma44", make_group({3, 9}), opts);
  CHECK(rep.pass);
  CHECK(rep.trials_run == 64);
  CHECK(rep.skips == 64);
  CHECK(rep.status == "rejection-budget-exhausted");
  CHECK(rep.trials_requested == 500);
}
