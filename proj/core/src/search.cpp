#include "zsum/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <thread>
#include <vector>

#include "dense.hpp"
#include "zsum/errors.hpp"
#include "zsum/profile.hpp"
#include "zsum/rng.hpp"

namespace zsum {
namespace {

constexpr std::uint64_t kFlushChunk = 4096;
constexpr std::uint64_t kMaxStateBytes = std::uint64_t{1} << 31;

// Shared, read-only description of the search space. Rows are fully built
// before any worker starts, so concurrent row() calls never mutate.
struct Kernel {
  detail::DenseRows rows;
  std::uint32_t n = 0;          // group order
  std::uint32_t wpr = 0;        // 64-bit words per bitset row
  std::uint32_t tracked = 0;    // highest tracked subsequence length
  bool saturating = false;      // row `tracked` means "length >= tracked"
  std::vector<char> prunable;   // finite kinds: prunable[k] != 0 iff k in L
  std::uint64_t cap = 0;
  std::uint64_t budget = 0;

  std::uint32_t words_per_state() const { return (tracked + 1) * wpr; }
};

Kernel make_kernel(const Group& group, const LengthSet& lengths, std::uint64_t cap,
                   std::uint64_t budget) {
  Kernel k{detail::DenseRows(group), 0, 0, 0, false, {}, 0, 0};
  k.n = static_cast<std::uint32_t>(group.order());
  k.wpr = (k.n + 63) / 64;
  k.cap = cap;
  k.budget = budget;
  if (std::optional<std::uint64_t> cutoff = lengths.upward_cutoff()) {
    k.saturating = true;
    k.tracked = static_cast<std::uint32_t>(*cutoff);
  } else {
    k.tracked = static_cast<std::uint32_t>(std::min(*lengths.max_value(), cap));
    k.prunable.assign(k.tracked + 1, 0);
    for (std::uint32_t len = 1; len <= k.tracked; ++len)
      k.prunable[len] = lengths.contains(len) ? 1 : 0;
  }
  const std::uint64_t bytes = (cap + 1) * std::uint64_t{k.words_per_state()} * 8;
  if (bytes > kMaxStateBytes)
    fail(errc::budget_exceeded,
         "search state for cap " + std::to_string(cap) + " over " + group.name() +
             " needs " + std::to_string(bytes) + " bytes of DP state");
  k.rows.build_all();
  return k;
}

struct SubtreeOut {
  bool caphit = false;
  std::uint32_t max_depth = 0;
  std::vector<std::vector<std::uint32_t>> first_word;  // [depth] -> word, 1-based
  std::uint64_t nodes = 0;
  std::uint64_t extensions = 0;
};

// Depth-first walk of one subtree (all words starting with a fixed element).
// The walk is standalone: it never reacts to other subtrees, so its node
// counts and recorded words are reproducible regardless of scheduling.
class SubtreeRunner {
 public:
  SubtreeRunner(Kernel& kernel, std::atomic<std::uint64_t>& shared_extensions,
                std::atomic<bool>& over_budget)
      : k_(kernel), shared_(shared_extensions), over_(over_budget) {
    state_.resize((k_.cap + 1) * k_.words_per_state());
    word_.resize(k_.cap);
  }

  SubtreeOut run(std::uint32_t root_element) {
    out_ = SubtreeOut{};
    out_.first_word.resize(k_.cap + 1);
    aborted_ = false;
    pending_ = 0;
    std::uint64_t* root = level(0);
    std::memset(root, 0, k_.words_per_state() * 8);
    root[0] = 1;  // identity reachable by the empty subsequence
    bump();
    if (!aborted_ && extend(root, level(1), root_element)) {
      ++out_.nodes;
      word_[0] = root_element;
      dfs(1, root_element);
    }
    if (pending_ != 0) {
      const std::uint64_t before = shared_.fetch_add(pending_, std::memory_order_relaxed);
      if (before + pending_ > k_.budget) over_.store(true, std::memory_order_relaxed);
      pending_ = 0;
    }
    return std::move(out_);
  }

  bool aborted() const { return aborted_; }

 private:
  std::uint64_t* level(std::uint64_t depth) { return state_.data() + depth * k_.words_per_state(); }

  void bump() {
    ++out_.extensions;
    if (++pending_ == kFlushChunk) {
      const std::uint64_t before = shared_.fetch_add(kFlushChunk, std::memory_order_relaxed);
      if (before + kFlushChunk > k_.budget) over_.store(true, std::memory_order_relaxed);
      pending_ = 0;
      if (over_.load(std::memory_order_relaxed)) aborted_ = true;
    }
  }

  // Builds the child state (parent word plus element e) and reports whether
  // the child is still free of zero-sums with length in L.
  bool extend(const std::uint64_t* src, std::uint64_t* dst, std::uint32_t e) {
    const std::uint32_t wpr = k_.wpr;
    std::memcpy(dst, src, k_.words_per_state() * 8);
    const std::uint32_t* perm = k_.rows.row(e);
    for (std::uint32_t len = k_.tracked; len >= 1; --len) {
      std::uint64_t* drow = dst + std::uint64_t{len} * wpr;
      shift_into(src + std::uint64_t{len - 1} * wpr, drow, perm, wpr);
      if (k_.saturating && len == k_.tracked)
        shift_into(src + std::uint64_t{len} * wpr, drow, perm, wpr);
    }
    if (k_.saturating) return (dst[std::uint64_t{k_.tracked} * wpr] & 1) == 0;
    for (std::uint32_t len = 1; len <= k_.tracked; ++len)
      if (k_.prunable[len] && (dst[std::uint64_t{len} * wpr] & 1)) return false;
    return true;
  }

  static void shift_into(const std::uint64_t* src, std::uint64_t* dst, const std::uint32_t* perm,
                         std::uint32_t wpr) {
    for (std::uint32_t w = 0; w < wpr; ++w) {
      std::uint64_t bits = src[w];
      while (bits) {
        const std::uint32_t x = w * 64 + static_cast<std::uint32_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        const std::uint32_t y = perm[x];
        dst[y >> 6] |= std::uint64_t{1} << (y & 63);
      }
    }
  }

  void dfs(std::uint32_t depth, std::uint32_t min_element) {
    if (depth > out_.max_depth) out_.max_depth = depth;
    if (out_.first_word[depth].empty())
      out_.first_word[depth].assign(word_.begin(), word_.begin() + depth);
    if (depth == k_.cap) {
      out_.caphit = true;
      return;
    }
    const std::uint64_t* src = level(depth);
    std::uint64_t* dst = level(depth + 1);
    for (std::uint32_t e = min_element; e < k_.n; ++e) {
      bump();
      if (aborted_) return;
      if (!extend(src, dst, e)) continue;
      ++out_.nodes;
      word_[depth] = e;
      dfs(depth + 1, e);
      if (out_.caphit || aborted_) return;
    }
  }

  Kernel& k_;
  std::atomic<std::uint64_t>& shared_;
  std::atomic<bool>& over_;
  SubtreeOut out_;
  std::vector<std::uint64_t> state_;
  std::vector<std::uint32_t> word_;
  std::uint64_t pending_ = 0;
  bool aborted_ = false;
};

GSequence word_to_sequence(const Group& group, const std::vector<std::uint32_t>& word) {
  std::vector<std::uint64_t> indices(word.begin(), word.end());
  return GSequence::from_indices(group, indices);
}

InvariantResult run_exhaustive(const Group& group, const LengthSet& lengths,
                               const SearchOptions& opts, std::uint64_t cap,
                               const std::string& name) {
  const auto t0 = std::chrono::steady_clock::now();
  Kernel kernel = make_kernel(group, lengths, cap, opts.node_budget);

  const std::uint32_t n = kernel.n;
  std::vector<SubtreeOut> results(n);
  std::atomic<std::uint64_t> shared_extensions{0};
  std::atomic<bool> over_budget{false};
  std::atomic<std::uint32_t> next_task{0};

  unsigned hw = std::thread::hardware_concurrency();
  unsigned nthreads = opts.threads ? opts.threads : (hw ? hw : 1);
  nthreads = std::min<unsigned>(nthreads, n);
  nthreads = std::max<unsigned>(nthreads, 1);

  auto worker = [&] {
    SubtreeRunner runner(kernel, shared_extensions, over_budget);
    for (;;) {
      const std::uint32_t task = next_task.fetch_add(1, std::memory_order_relaxed);
      if (task >= n) break;
      results[task] = runner.run(task);
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  if (shared_extensions.load() > opts.node_budget || over_budget.load())
    fail(errc::cap_exceeded, "node budget " + std::to_string(opts.node_budget) +
                                 " exhausted computing " + name + " over " + group.name());

  InvariantResult res;
  res.invariant = name;
  res.group = group;
  res.lengths = lengths;
  res.cap = cap;
  res.exhaustive = true;
  for (const SubtreeOut& sub : results) {
    res.stats.nodes += sub.nodes;
    res.stats.extensions += sub.extensions;
  }

  const SubtreeOut* cap_sub = nullptr;
  for (const SubtreeOut& sub : results)
    if (sub.caphit) {
      cap_sub = &sub;
      break;
    }
  if (cap_sub) {
    res.value.reset();
    res.witness = word_to_sequence(group, cap_sub->first_word[cap]);
  } else {
    std::uint32_t best = 0;
    const SubtreeOut* best_sub = nullptr;
    for (const SubtreeOut& sub : results)
      if (sub.max_depth > best) {
        best = sub.max_depth;
        best_sub = &sub;
      }
    res.value = std::uint64_t{best} + 1;
    res.witness = best_sub ? word_to_sequence(group, best_sub->first_word[best])
                           : GSequence(group);
  }
  res.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

InvariantResult run_sampled(const Group& group, const LengthSet& lengths,
                            const SearchOptions& opts, std::uint64_t cap,
                            const std::string& name) {
  const auto t0 = std::chrono::steady_clock::now();
  InvariantResult res;
  res.invariant = name;
  res.group = group;
  res.lengths = lengths;
  res.cap = cap;
  res.exhaustive = false;

  std::optional<GSequence> last_counterexample;
  for (std::uint64_t len = 1; len <= cap; ++len) {
    std::optional<GSequence> counterexample;
    for (std::uint64_t i = 0; i < opts.samples; ++i) {
      Rng rng(mix_seed(opts.seed, (len << 32) ^ i));
      GSequence x = sample_uniform(group, len, rng);
      ++res.stats.nodes;
      if (!has_zero_sum_with_length_in(x, lengths)) {
        counterexample = std::move(x);
        break;
      }
    }
    if (!counterexample) {
      res.value = len;
      res.witness = last_counterexample ? *last_counterexample : GSequence(group);
      res.stats.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return res;
    }
    last_counterexample = std::move(counterexample);
  }
  res.value.reset();
  res.witness = last_counterexample;
  res.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

InvariantResult run(const Group& group, const LengthSet& lengths, const SearchOptions& opts,
                    const std::string& name) {
  const std::uint64_t cap = opts.cap ? opts.cap : default_cap(group);
  if (opts.mode == SearchMode::sampled) return run_sampled(group, lengths, opts, cap, name);
  return run_exhaustive(group, lengths, opts, cap, name);
}

void check_j(const Group& group, std::uint64_t j) {
  if (j < 1 || j > group.exponent())
    fail(errc::bad_j, "j = " + std::to_string(j) + " must lie in [1, " +
                          std::to_string(group.exponent()) + "] for " + group.name());
}

}  // namespace

std::uint64_t default_cap(const Group& group) {
  return 4 * group.exponent() + 2 * group.order();
}

InvariantResult compute_s_L(const Group& group, const LengthSet& lengths,
                            const SearchOptions& opts) {
  return run(group, lengths, opts, "s_L:" + lengths.describe());
}

InvariantResult compute_davenport(const Group& group, const SearchOptions& opts) {
  return run(group, LengthSet::all(), opts, "D");
}

InvariantResult compute_eta(const Group& group, const SearchOptions& opts) {
  return run(group, LengthSet::interval(1, group.exponent()), opts, "eta");
}

InvariantResult compute_egz(const Group& group, const SearchOptions& opts) {
  return run(group, LengthSet::singleton(group.exponent()), opts, "s");
}

InvariantResult compute_s_interval(const Group& group, std::uint64_t j,
                                   const SearchOptions& opts) {
  check_j(group, j);
  return run(group, LengthSet::interval(j, group.exponent()), opts,
             "s_interval:j=" + std::to_string(j));
}

InvariantResult compute_s_interval_plus_N(const Group& group, std::uint64_t j,
                                          const SearchOptions& opts) {
  check_j(group, j);
  return run(group, LengthSet::interval_plus_n(j, group.exponent()), opts,
             "s_interval_plus_N:j=" + std::to_string(j));
}

bool verify_witness(const InvariantResult& result) {
  if (!result.witness) return false;
  const GSequence& w = *result.witness;
  if (!(w.group() == result.group)) return false;
  const std::uint64_t want = result.value ? *result.value - 1 : result.cap;
  if (w.length() != want) return false;
  return !has_zero_sum_with_length_in(w, result.lengths);
}

}  // namespace zsum
