#include "zsum/bounds.hpp"

#include <algorithm>
#include <numeric>

#include "zsum/cache.hpp"
#include "zsum/errors.hpp"
#include "zsum/search.hpp"

namespace zsum {

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    default: return "exact";
  }
}

std::optional<std::uint64_t> InvariantBounds::best_lower() const {
  std::optional<std::uint64_t> best;
  for (const BoundEntry& e : entries)
    if (e.kind != BoundKind::upper && (!best || e.value > *best)) best = e.value;
  return best;
}

std::optional<std::uint64_t> InvariantBounds::best_upper() const {
  std::optional<std::uint64_t> best;
  for (const BoundEntry& e : entries)
    if (e.kind != BoundKind::lower && (!best || e.value < *best)) best = e.value;
  return best;
}

std::optional<std::uint64_t> InvariantBounds::exact_value() const {
  for (const BoundEntry& e : entries)
    if (e.kind == BoundKind::exact) return e.value;
  return std::nullopt;
}

bool InvariantBounds::consistent() const {
  const std::optional<std::uint64_t> lo = best_lower();
  const std::optional<std::uint64_t> hi = best_upper();
  if (lo && hi && *lo > *hi) return false;
  const std::optional<std::uint64_t> ex = exact_value();
  if (ex)
    for (const BoundEntry& e : entries)
      if (e.kind == BoundKind::exact && e.value != *ex) return false;
  return true;
}

const InvariantBounds* BoundReport::find(const std::string& invariant) const {
  for (const InvariantBounds& ib : invariants)
    if (ib.invariant == invariant) return &ib;
  return nullptr;
}

namespace {

bool is_p_power(std::uint64_t v, std::uint64_t p) {
  if (v == 0) return false;
  while (v % p == 0) v /= p;
  return v == 1;
}

// Prime powers p^k (k >= 0) up to the cap, ascending.
std::vector<std::uint64_t> p_powers_upto(std::uint64_t p, std::uint64_t cap) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 1; v <= cap; v = checked_mul(v, p)) {
    out.push_back(v);
    if (v > cap / p) break;
  }
  return out;
}

std::string join_values(const std::vector<std::uint64_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(values[i]);
  }
  return s;
}

struct Engine {
  const PGroupSpec& h;
  std::uint64_t a = 1;
  std::optional<std::uint64_t> j;

  std::uint64_t p = 0;
  std::uint64_t nh = 0;    // exp(H)
  std::uint64_t dh = 0;    // D(H)
  std::uint64_t expg = 0;  // exp(G) = a * exp(H)
  std::optional<std::uint64_t> dg;  // exact D(G), when derivable

  InvariantBounds dav{"D", {}};
  InvariantBounds eta{"eta", {}};
  InvariantBounds egz{"s", {}};
  InvariantBounds interval;

  void add(InvariantBounds& inv, BoundKind kind, std::uint64_t value, const char* rule,
           std::string detail) {
    inv.entries.push_back({kind, value, rule, std::move(detail)});
  }

  // R4 first: exact Davenport values feed most other rules.
  void r4() {
    if (a == 1) {
      dg = dh;
      add(dav, BoundKind::exact, *dg, "R4", "prime-power closed form");
    } else if (dh <= 2 * nh - 1) {
      dg = dh + nh * (a - 1);
      add(dav, BoundKind::exact, *dg,
          "R4", "closed form extended along the coprime cyclic factor");
    }
  }

  void r3() {
    if (h.exponents.size() > 2) return;
    const std::uint64_t m =
        h.exponents.size() == 2 ? checked_pow(p, h.exponents.front()) : 1;
    const std::uint64_t n = checked_mul(nh, a);
    const std::string detail =
        "rank <= 2 closed forms with m=" + std::to_string(m) + ", n=" + std::to_string(n);
    add(dav, BoundKind::exact, m + n - 1, "R3", detail);
    add(eta, BoundKind::exact, 2 * m + n - 2, "R3", detail);
    add(egz, BoundKind::exact, 2 * m + 2 * n - 3, "R3", detail);
  }

  void r6() {
    if (a != 1 || dh > 2 * nh - 1) return;
    add(eta, BoundKind::exact, 2 * dh - nh, "R6", "tight short-zero-sum value, any prime");
  }

  void r2() {
    if (a != 1) return;
    add(eta, BoundKind::lower, 2 * dh - nh, "R2", "p-group strengthening of the chain");
    add(egz, BoundKind::lower, 2 * dh - 1, "R2", "p-group strengthening of the chain");
  }

  void r5() {
    if (a != 1 || p < 3 || dh > 2 * nh - 1) return;
    add(egz, BoundKind::upper, dh + 2 * nh - 2, "R5", "rank-two-like upper bound");
  }

  void r7() {
    if (a != 1 || p < 3 || dh > 2 * nh - 1) return;
    const std::vector<std::uint64_t> pks = p_powers_upto(p, std::min(nh, 2 * nh - dh));
    const std::uint64_t pk = pks.back();
    add(egz, BoundKind::upper, dh + 2 * nh - pk - 1, "R7",
        "admissible prime powers " + join_values(pks) + "; using " + std::to_string(pk));
  }

  void r8() {
    if (a != 1 || p < 3) return;
    const std::uint64_t c = 2 * nh - std::min(dh, 2 * nh);  // 0 when dh >= 2nh
    if (c < 1 || c > nh || !is_p_power(c, p)) return;
    add(egz, BoundKind::exact, 2 * dh - 1, "R8",
        "deficiency " + std::to_string(c) + " is a prime power");
  }

  void r9() {
    if (a != 1 || p < 3 || dh >= 2 * nh - 1) return;
    add(egz, BoundKind::upper, dh + 2 * nh - p - 1, "R9", "strict rank-two-like refinement");
  }

  void r10() {
    if (p < 3 || dh > 2 * nh - 1) return;
    const std::vector<std::uint64_t> pks = p_powers_upto(p, std::min(nh, 2 * nh - dh));
    const std::uint64_t pk = pks.back();
    add(egz, BoundKind::upper, dh + 2 * expg - pk - 1, "R10",
        "coprime product; admissible prime powers " + join_values(pks) + "; using " +
            std::to_string(pk));
  }

  void r11() {
    if (p < 3) return;
    const std::uint64_t c = 2 * nh - std::min(dh, 2 * nh);
    if (c < 1 || c > nh || !is_p_power(c, p) || !dg) return;
    add(egz, BoundKind::exact, 2 * *dg - 1, "R11",
        "tight deficiency " + std::to_string(c) + " in the p-part");
  }

  void r12() {
    if (a != 1 || p < 3 || dh > 2 * nh - 1) return;
    const std::uint64_t c = 2 * nh - dh;
    if (c % 2 == 0)
      fail(errc::hypothesis_violation,
           "deficiency " + std::to_string(c) + " must be odd for an odd prime; refusing to floor");
    add(egz, BoundKind::upper, dh + 2 * nh - (c - 1) / 2 - 2, "R12",
        "odd deficiency c=" + std::to_string(c));
  }

  void r13() {
    const std::uint64_t dk = dh - nh + 1;  // complement of one maximal cyclic factor
    add(egz, BoundKind::lower, 2 * (dk - 1) + 2 * a * nh - 1, "R13",
        "doubling construction with complement Davenport " + std::to_string(dk));
  }

  void r15() {
    if (a < 2) return;
    const BoundReport inner = bound_report(h, 1, std::nullopt);
    const InvariantBounds* sh = inner.find("s");
    const std::optional<std::uint64_t> up = sh ? sh->best_upper() : std::nullopt;
    if (!up) return;
    add(egz, BoundKind::upper, (2 * a - 2) * nh + *up, "R15",
        "quotient composition through the cyclic factor, s(H) <= " + std::to_string(*up));
  }

  // Chain rules use the best values established so far, strongest first.
  void r1() {
    add(dav, BoundKind::lower, expg, "R1", "chain through the exponent");
    add(eta, BoundKind::lower, *dav.best_lower(), "R1", "chain through the Davenport constant");
    add(egz, BoundKind::lower, *eta.best_lower() + expg - 1, "R1",
        "chain shifted by exp - 1");
  }

  void r14() {
    if (!j) return;
    interval.invariant = "s_interval:j=" + std::to_string(*j);
    const std::uint64_t jj = *j;
    add(interval, BoundKind::lower, *eta.best_lower() + jj - 1, "R14",
        "interval bracket from eta");
    if (const std::optional<std::uint64_t> su = egz.best_upper())
      add(interval, BoundKind::upper, *su - expg + jj, "R14", "interval bracket from s");
    if (p >= 3 && dh <= 2 * nh - 1) {
      const std::vector<std::uint64_t> pks = p_powers_upto(p, std::min(nh, 2 * nh - dh));
      const std::uint64_t pk = pks.back();
      add(interval, BoundKind::lower, 2 * *dg - expg + jj - 1, "R14",
          "window transfer, lower side");
      add(interval, BoundKind::upper, dh + expg - pk + jj - 1, "R14",
          "window transfer using prime power " + std::to_string(pk));
      const std::uint64_t c = 2 * nh - dh;
      if (c <= nh && is_p_power(c, p))
        add(interval, BoundKind::exact, 2 * *dg - expg + jj - 1, "R14",
            "tight interval value under tight deficiency");
    }
  }
};

}  // namespace

BoundReport bound_report(const PGroupSpec& h, std::uint64_t a, std::optional<std::uint64_t> j) {
  PGroupSpec spec = PGroupSpec::make(h.p, h.exponents);  // revalidates and sorts
  if (a == 0 || std::gcd(a, spec.p) != 1)
    fail(errc::gcd_violation,
         "a = " + std::to_string(a) + " must be positive and coprime to " + std::to_string(spec.p));

  Engine eng{spec, a, j, 0, 0, 0, 0, {}, {"D", {}}, {"eta", {}}, {"s", {}}, {}};
  eng.p = spec.p;
  eng.nh = spec.exponent_of_group();
  eng.dh = davenport_formula(spec);
  eng.expg = checked_mul(a, eng.nh);
  if (j && (*j < 1 || *j > eng.expg))
    fail(errc::bad_j, "j = " + std::to_string(*j) + " outside [1, " + std::to_string(eng.expg) + "]");

  eng.r4();
  eng.r3();
  eng.r6();
  eng.r2();
  eng.r5();
  eng.r7();
  eng.r8();
  eng.r9();
  eng.r10();
  eng.r11();
  eng.r12();
  eng.r13();
  eng.r15();
  eng.r1();
  eng.r14();

  std::vector<std::uint64_t> factors = spec.to_group().factors();
  if (a >= 2) factors.back() = checked_mul(factors.back(), a);

  BoundReport report;
  report.group = make_group(std::move(factors)).name();
  report.h = spec;
  report.a = a;
  report.j = j;
  report.invariants = {std::move(eng.dav), std::move(eng.eta), std::move(eng.egz)};
  if (j) report.invariants.push_back(std::move(eng.interval));
  report.consistent = true;
  for (const InvariantBounds& ib : report.invariants)
    if (!ib.consistent()) report.consistent = false;
  return report;
}

const std::vector<BoundRule>& bound_rules() {
  static const std::vector<BoundRule> rules = {
      {"R1", "chain: D >= exp, eta >= D, s >= eta + exp - 1"},
      {"R2", "p-group chain: eta >= 2D - exp, s >= 2D - 1 (a = 1)"},
      {"R3", "rank <= 2: D = m+n-1, eta = 2m+n-2, s = 2m+2n-3"},
      {"R4", "exact D: closed form; D(G) = D(H) + exp(H)(a-1) when D(H) <= 2 exp(H) - 1"},
      {"R5", "s <= D + 2 exp - 2 (a = 1, D <= 2 exp - 1, p >= 3)"},
      {"R6", "eta = 2D - exp (a = 1, D <= 2 exp - 1, any p)"},
      {"R7", "s <= D + 2 exp - p^k - 1 (a = 1, D <= 2 exp - p^k, p >= 3)"},
      {"R8", "s = 2D - 1 (a = 1, D = 2 exp - p^k, p >= 3)"},
      {"R9", "s <= D + 2 exp - p - 1 (a = 1, D < 2 exp - 1, p >= 3)"},
      {"R10", "s(G) <= D(H) + 2 exp(G) - p^k - 1 (D(H) <= 2 exp(H) - p^k, p >= 3)"},
      {"R11", "s(G) = 2 D(G) - 1 (D(H) = 2 exp(H) - p^k, p >= 3)"},
      {"R12", "s <= D + 2 exp - (c-1)/2 - 2 (a = 1, D = 2 exp - c, c odd, p >= 3)"},
      {"R13", "s(G) >= 2(D(K) - 1) + 2 a exp(H) - 1 with H = K + C_exp(H)"},
      {"R14", "interval brackets for s_[j,n]: chain transfer, window transfer, tight value"},
      {"R15", "s(G) <= (s(C_a) - 1) exp(H) + s(H) (a >= 2)"},
  };
  return rules;
}

ConsistencyResult cross_validate(const BoundReport& report, const InvariantCache& cache) {
  ConsistencyResult result;
  for (const InvariantBounds& ib : report.invariants) {
    ConsistencyItem item{ib.invariant, "unchecked", ""};
    const InvariantResult* cached = cache.find(report.group, ib.invariant);
    if (cached && cached->exhaustive && cached->value) {
      const std::uint64_t v = *cached->value;
      const std::optional<std::uint64_t> lo = ib.best_lower();
      const std::optional<std::uint64_t> hi = ib.best_upper();
      const std::optional<std::uint64_t> ex = ib.exact_value();
      if ((lo && v < *lo) || (hi && v > *hi) || (ex && v != *ex)) {
        item.status = "mismatch";
        item.detail = "cached " + std::to_string(v) + " vs [" +
                      (lo ? std::to_string(*lo) : "-inf") + ", " +
                      (hi ? std::to_string(*hi) : "+inf") + "]" +
                      (ex ? " exact " + std::to_string(*ex) : "");
        result.pass = false;
      } else {
        item.status = "consistent";
        item.detail = "cached " + std::to_string(v);
      }
    } else {
      item.detail = "no exhaustive cached value";
    }
    result.items.push_back(std::move(item));
  }
  return result;
}

}  // namespace zsum
