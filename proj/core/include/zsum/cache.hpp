#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zsum/search.hpp"

namespace zsum {

/**
 * Keyed store of search results: (canonical group name, invariant descriptor)
 * -> InvariantResult. Persisted as pretty-printed JSON; loading re-verifies
 * every stored witness and throws errc::cache_corrupt on malformed files or
 * tampered certificates.
 */
class InvariantCache {
 public:
  InvariantCache() = default;

  /// Missing file yields an empty cache; a present file must parse and verify.
  static InvariantCache load(const std::string& path);
  static InvariantCache from_json(const std::string& text);

  void save(const std::string& path) const;
  /// Deterministic serialization: entries sorted by key, stable field order.
  std::string to_json() const;

  /// Inserts or replaces the entry under (group name, invariant descriptor).
  void put(InvariantResult result);
  const InvariantResult* find(const std::string& group_name, const std::string& invariant) const;

  /// All entries in key order.
  std::vector<const InvariantResult*> list() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::pair<std::string, std::string>, InvariantResult> entries_;
};

}  // namespace zsum
