#include "zsum/profile.hpp"

#include <algorithm>

#include "dense.hpp"

namespace zsum {

Bignum ZeroSumProfile::exact_at(std::int64_t k) const {
  if (k < 0 || static_cast<std::uint64_t>(k) > length) return 0;
  return exact[static_cast<std::size_t>(k)];
}

std::uint64_t ZeroSumProfile::residue_at(std::int64_t k) const {
  if (k < 0 || static_cast<std::uint64_t>(k) > length) return 0;
  return residues[static_cast<std::size_t>(k)];
}

namespace {

void check_budget(const GSequence& x, std::uint64_t budget) {
  const unsigned __int128 work = static_cast<unsigned __int128>(x.length()) *
                                 x.group().order() * (x.length() + 1);
  if (work > budget)
    fail(errc::budget_exceeded, "profile of length " + std::to_string(x.length()) + " over " +
                                    x.group().name() + " needs " +
                                    std::to_string(static_cast<std::uint64_t>(work)) +
                                    " cell updates, budget is " + std::to_string(budget));
}

// dp[x * (len+1) + k] = number of slot selections of size k with sum x,
// over the prefix of flattened slots processed so far.
template <class Cell, class AddInto>
std::vector<Cell> run_dp(const GSequence& x, detail::DenseRows& rows, AddInto add_into) {
  const std::uint32_t n = rows.order();
  const std::size_t stride = static_cast<std::size_t>(x.length()) + 1;
  std::vector<Cell> cur(static_cast<std::size_t>(n) * stride, Cell(0));
  std::vector<Cell> nxt;
  cur[0] = Cell(1);  // empty selection at the identity
  std::uint64_t processed = 0;
  for (const GSequence::Entry& e : x.entries()) {
    const std::uint32_t* row = rows.row(static_cast<std::uint32_t>(e.index));
    for (std::uint64_t rep = 0; rep < e.mult; ++rep) {
      nxt = cur;
      for (std::uint32_t from = 0; from < n; ++from) {
        const Cell* src = &cur[static_cast<std::size_t>(from) * stride];
        Cell* dst = &nxt[static_cast<std::size_t>(row[from]) * stride];
        for (std::uint64_t k = 0; k <= processed; ++k) {
          if (!(src[k] == Cell(0))) add_into(dst[k + 1], src[k]);
        }
      }
      cur.swap(nxt);
      ++processed;
    }
  }
  // collect the identity row
  std::vector<Cell> counts(stride);
  for (std::size_t k = 0; k < stride; ++k) counts[k] = cur[k];
  return counts;
}

}  // namespace

ZeroSumProfile profile(const GSequence& x, const ProfileOptions& opts) {
  if (opts.mode == CountMode::modular && opts.modulus < 2)
    fail(errc::bad_window, "modular profile requires a modulus of at least 2");
  check_budget(x, opts.budget);
  detail::DenseRows rows(x.group());

  ZeroSumProfile out;
  out.mode = opts.mode;
  out.length = x.length();
  if (opts.mode == CountMode::exact) {
    out.exact = run_dp<Bignum>(x, rows, [](Bignum& dst, const Bignum& src) { dst += src; });
  } else {
    const std::uint64_t m = opts.modulus;
    out.modulus = m;
    out.residues = run_dp<std::uint64_t>(
        x, rows, [m](std::uint64_t& dst, const std::uint64_t& src) {
          dst += src;
          if (dst >= m) dst -= m;
        });
  }
  return out;
}

ZeroSumProfile profile_without(const GSequence& x, const GSequence& removed,
                               const ProfileOptions& opts) {
  return profile(x.remove(removed), opts);
}

bool has_zero_sum_with_length_in(const GSequence& x, const LengthSet& lengths) {
  if (x.empty()) return false;
  detail::DenseRows rows(x.group());
  const std::uint32_t n = rows.order();

  // Reachability of (sum, picked length); lengths saturate at the upward
  // cutoff when L is upward closed, and are dropped beyond max(L) otherwise.
  const bool saturating = lengths.upward_cutoff().has_value();
  const std::uint64_t track = saturating ? *lengths.upward_cutoff()
                                         : std::min<std::uint64_t>(*lengths.max_value(), x.length());
  if (!saturating && lengths.min_value() > x.length()) return false;

  const std::size_t stride = static_cast<std::size_t>(track) + 1;
  std::vector<char> cur(static_cast<std::size_t>(n) * stride, 0);
  std::vector<char> nxt;
  cur[0] = 1;
  for (const GSequence::Entry& e : x.entries()) {
    const std::uint32_t* row = rows.row(static_cast<std::uint32_t>(e.index));
    for (std::uint64_t rep = 0; rep < e.mult; ++rep) {
      nxt = cur;
      for (std::uint32_t from = 0; from < n; ++from) {
        const char* src = &cur[static_cast<std::size_t>(from) * stride];
        char* dst = &nxt[static_cast<std::size_t>(row[from]) * stride];
        for (std::uint64_t k = 0; k < stride; ++k) {
          if (!src[k]) continue;
          const std::uint64_t to = saturating ? std::min(k + 1, track) : k + 1;
          if (to < stride) dst[to] = 1;
        }
      }
      cur.swap(nxt);
      // check the identity row for a length in L
      const char* zero_row = &cur[0];
      if (saturating) {
        if (zero_row[track]) return true;
      } else {
        for (std::uint64_t k = 1; k < stride; ++k)
          if (zero_row[k] && lengths.contains(k)) return true;
      }
    }
  }
  return false;
}

}  // namespace zsum
