#include "zsum/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace zsum {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::bad_factor: return "BadFactor";
    case errc::chain_violation: return "ChainViolation";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::group_mismatch: return "GroupMismatch";
    case errc::out_of_range: return "OutOfRange";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_a_subsequence: return "NotASubsequence";
    case errc::too_many_variables: return "TooManyVariables";
    case errc::window_violation: return "WindowViolation";
    case errc::not_a_p_group: return "NotAPGroup";
    case errc::hypothesis_violation: return "HypothesisViolation";
    case errc::premise_not_met: return "PremiseNotMet";
    case errc::precondition_violation: return "PreconditionViolation";
    case errc::inadmissible_group: return "InadmissibleGroup";
    case errc::rejection_budget_exhausted: return "RejectionBudgetExhausted";
    case errc::gcd_violation: return "GcdViolation";
    case errc::bad_j: return "BadJ";
    case errc::bad_window: return "BadWindow";
    case errc::parse_error: return "ParseError";
    case errc::cache_corrupt: return "CacheCorrupt";
  }
  return "UnknownError";
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(errc::out_of_range, "64-bit overflow in product");
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

Group::Group() = default;

Group make_group(std::vector<std::uint64_t> invariant_factors) {
  Group g;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    const std::uint64_t f = invariant_factors[i];
    if (f < 2) fail(errc::bad_factor, "invariant factor " + std::to_string(f) + " is below 2");
    if (i > 0 && invariant_factors[i] % invariant_factors[i - 1] != 0)
      fail(errc::chain_violation, std::to_string(invariant_factors[i - 1]) +
                                      " does not divide " + std::to_string(invariant_factors[i]));
    g.order_ = checked_mul(g.order_, f);
  }
  g.factors_ = std::move(invariant_factors);
  g.exponent_ = g.factors_.empty() ? 1 : g.factors_.back();
  return g;
}

std::optional<std::uint64_t> Group::p_group_prime() const {
  if (factors_.empty()) return std::nullopt;
  std::uint64_t n = factors_.front();
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) { p = d; break; }
  if (p == 0) p = n;  // n itself prime
  for (std::uint64_t f : factors_) {
    while (f % p == 0) f /= p;
    if (f != 1) return std::nullopt;
  }
  return p;
}

Element Group::zero() const { return Element{std::vector<std::uint64_t>(rank(), 0)}; }

void Group::check_rank(const Element& g) const {
  if (g.coords.size() != rank())
    fail(errc::rank_mismatch, "element has " + std::to_string(g.coords.size()) +
                                  " coordinates, group rank is " + std::to_string(rank()));
}

Element Group::element(std::vector<std::uint64_t> coords) const {
  Element g{std::move(coords)};
  check_rank(g);
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (g.coords[i] >= factors_[i])
      fail(errc::out_of_range, "coordinate " + std::to_string(g.coords[i]) +
                                   " not below factor " + std::to_string(factors_[i]));
  return g;
}

bool Group::is_zero(const Element& g) const {
  check_rank(g);
  return std::all_of(g.coords.begin(), g.coords.end(), [](std::uint64_t c) { return c == 0; });
}

Element Group::add(const Element& g, const Element& h) const {
  check_rank(g);
  check_rank(h);
  Element r = g;
  for (std::size_t i = 0; i < factors_.size(); ++i) r.coords[i] = (r.coords[i] + h.coords[i]) % factors_[i];
  return r;
}

Element Group::negate(const Element& g) const {
  check_rank(g);
  Element r = g;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    r.coords[i] = r.coords[i] == 0 ? 0 : factors_[i] - r.coords[i];
  return r;
}

Element Group::sub(const Element& g, const Element& h) const { return add(g, negate(h)); }

Element Group::scalar_mul(std::uint64_t k, const Element& g) const {
  check_rank(g);
  Element r = g;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    r.coords[i] = (static_cast<unsigned __int128>(g.coords[i]) * k) % factors_[i];
  return r;
}

std::uint64_t Group::element_order(const Element& g) const {
  check_rank(g);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::uint64_t oi = factors_[i] / std::gcd(factors_[i], g.coords[i]);
    ord = std::lcm(ord, oi);
  }
  return ord;
}

std::uint64_t Group::index_of(const Element& g) const {
  check_rank(g);
  std::uint64_t idx = 0, mul = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (g.coords[i] >= factors_[i])
      fail(errc::out_of_range, "coordinate not reduced modulo its factor");
    idx += g.coords[i] * mul;
    mul *= factors_[i];
  }
  return idx;
}

Element Group::element_at(std::uint64_t index) const {
  if (index >= order_) fail(errc::out_of_range, "element index " + std::to_string(index) +
                                                    " not below group order " + std::to_string(order_));
  Element g = zero();
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    g.coords[i] = index % factors_[i];
    index /= factors_[i];
  }
  return g;
}

std::string Group::name() const {
  if (factors_.empty()) return "C1";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += '*';
    s += 'C';
    s += std::to_string(factors_[i]);
  }
  return s;
}

std::string format_group(const Group& g) { return g.name(); }

PGroupSpec PGroupSpec::make(std::uint64_t p, std::vector<std::uint32_t> exponents) {
  if (!is_prime(p)) fail(errc::bad_factor, std::to_string(p) + " is not prime");
  if (exponents.empty()) fail(errc::bad_factor, "empty exponent list");
  for (std::uint32_t a : exponents)
    if (a < 1) fail(errc::bad_factor, "exponent below 1");
  std::sort(exponents.begin(), exponents.end());
  PGroupSpec s;
  s.p = p;
  s.exponents = std::move(exponents);
  s.order();  // force the overflow check
  return s;
}

Group PGroupSpec::to_group() const {
  std::vector<std::uint64_t> factors;
  factors.reserve(exponents.size());
  for (std::uint32_t a : exponents) factors.push_back(checked_pow(p, a));
  return make_group(std::move(factors));
}

std::uint64_t PGroupSpec::exponent_of_group() const {
  return checked_pow(p, *std::max_element(exponents.begin(), exponents.end()));
}

std::uint64_t PGroupSpec::order() const {
  std::uint64_t o = 1;
  for (std::uint32_t a : exponents) o = checked_mul(o, checked_pow(p, a));
  return o;
}

std::string PGroupSpec::name() const {
  std::string s = "p=" + std::to_string(p) + ";a=";
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(exponents[i]);
  }
  return s;
}

std::string format_p_group_spec(const PGroupSpec& spec) { return spec.name(); }

std::uint64_t davenport_formula(const PGroupSpec& spec) {
  std::uint64_t d = 1;
  for (std::uint32_t a : spec.exponents) d += checked_pow(spec.p, a) - 1;
  return d;
}

Classification classify_rank_two_like(const PGroupSpec& spec) {
  Classification c;
  c.davenport = davenport_formula(spec);
  c.exponent = spec.exponent_of_group();
  c.deficiency = static_cast<std::int64_t>(2 * c.exponent) - static_cast<std::int64_t>(c.davenport);
  c.rank_two_like = c.deficiency >= 1;
  if (c.rank_two_like) {
    const std::uint64_t limit = std::min<std::uint64_t>(c.exponent, static_cast<std::uint64_t>(c.deficiency));
    std::uint64_t pk = 1;
    while (pk <= limit / spec.p) pk *= spec.p;
    if (pk > limit) pk /= spec.p;  // unreachable for limit >= 1, kept for clarity
    c.largest_pk = pk;
    std::uint64_t cc = static_cast<std::uint64_t>(c.deficiency);
    while (cc % spec.p == 0) cc /= spec.p;
    c.exact_value = cc == 1;
  }
  return c;
}

namespace {

std::uint64_t parse_u64(const std::string& text, std::size_t& pos) {
  if (pos >= text.size() || !isdigit(static_cast<unsigned char>(text[pos])))
    fail(errc::parse_error, "expected a number at offset " + std::to_string(pos) + " in '" + text + "'");
  std::uint64_t v = 0;
  while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
    const std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
    v = checked_mul(v, 10);
    v += digit;
    ++pos;
  }
  return v;
}

}  // namespace

PGroupSpec parse_p_group_spec(const std::string& text) {
  if (text.rfind("p=", 0) != 0) fail(errc::parse_error, "p-group spec must start with 'p=': " + text);
  std::size_t pos = 2;
  const std::uint64_t p = parse_u64(text, pos);
  if (text.compare(pos, 3, ";a=") != 0)
    fail(errc::parse_error, "p-group spec expects ';a=' after the prime: " + text);
  pos += 3;
  std::vector<std::uint32_t> exps;
  while (true) {
    const std::uint64_t a = parse_u64(text, pos);
    if (a == 0 || a > 0xffffffffull) fail(errc::parse_error, "exponent out of range in: " + text);
    exps.push_back(static_cast<std::uint32_t>(a));
    if (pos == text.size()) break;
    if (text[pos] != ',') fail(errc::parse_error, "unexpected character '" + std::string(1, text[pos]) +
                                                      "' in p-group spec: " + text);
    ++pos;
  }
  return PGroupSpec::make(p, std::move(exps));
}

Group parse_group(const std::string& text) {
  if (text.rfind("p=", 0) == 0) return parse_p_group_spec(text).to_group();
  if (text == "C1") return Group();
  std::vector<std::uint64_t> factors;
  std::size_t pos = 0;
  while (true) {
    if (pos >= text.size() || text[pos] != 'C')
      fail(errc::parse_error, "group spec must be 'C<n>*C<n>*...' or 'p=<p>;a=...': " + text);
    ++pos;
    factors.push_back(parse_u64(text, pos));
    if (pos == text.size()) break;
    if (text[pos] != '*') fail(errc::parse_error, "unexpected character '" + std::string(1, text[pos]) +
                                                      "' in group spec: " + text);
    ++pos;
  }
  return make_group(std::move(factors));
}

}  // namespace zsum
