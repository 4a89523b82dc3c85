#pragma once

#include <cstdint>
#include <vector>

#include "zsum/group.hpp"

namespace zsum::detail {

// Dense index-space view of a small group: one addition-permutation row per
// element, built lazily. Row g maps x to index_of(x + g).
class DenseRows {
 public:
  static constexpr std::uint64_t kMaxOrder = 1u << 16;

  explicit DenseRows(const Group& group) : group_(group) {
    if (group.order() > kMaxOrder)
      fail(errc::budget_exceeded, "dense kernels support orders up to " + std::to_string(kMaxOrder) +
                                      ", group has order " + std::to_string(group.order()));
    n_ = static_cast<std::uint32_t>(group.order());
    rows_.resize(n_);
  }

  std::uint32_t order() const { return n_; }
  const Group& group() const { return group_; }

  const std::uint32_t* row(std::uint32_t g_index) {
    std::vector<std::uint32_t>& r = rows_[g_index];
    if (r.empty()) {
      r.resize(n_);
      const Element g = group_.element_at(g_index);
      for (std::uint32_t x = 0; x < n_; ++x)
        r[x] = static_cast<std::uint32_t>(group_.index_of(group_.add(group_.element_at(x), g)));
    }
    return r.data();
  }

  void build_all() {
    for (std::uint32_t g = 0; g < n_; ++g) row(g);
  }

 private:
  Group group_;
  std::uint32_t n_;
  std::vector<std::vector<std::uint32_t>> rows_;
};

}  // namespace zsum::detail
