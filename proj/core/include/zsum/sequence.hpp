#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/rng.hpp"

namespace zsum {

/**
 * Sequence (finite multiset) over a group, the object written
 * multiplicatively as S = g_1 ... g_l in additive combinatorics.
 *
 * Stored as (element index, multiplicity) pairs with strictly increasing
 * indices, which keeps enumeration canonical and containment checks linear.
 */
class GSequence {
 public:
  struct Entry {
    std::uint64_t index;
    std::uint64_t mult;
    friend bool operator==(const Entry& a, const Entry& b) = default;
  };

  GSequence() = default;  // empty over the trivial group
  explicit GSequence(Group group) : group_(std::move(group)) {}

  /// Entries are merged and sorted; indices must be below the group order.
  static GSequence from_entries(Group group, std::vector<Entry> entries);
  static GSequence from_indices(Group group, const std::vector<std::uint64_t>& indices);
  static GSequence from_elements(const Group& group, const std::vector<Element>& elements);

  const Group& group() const { return group_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::uint64_t length() const { return length_; }
  bool empty() const { return length_ == 0; }

  std::uint64_t multiplicity(std::uint64_t element_index) const;

  /// sigma(S): the group sum, identity for the empty sequence.
  Element sum() const;

  /// Multiset containment: every multiplicity of *this at most that of super.
  bool divides(const GSequence& super) const;

  /// S * T^{-1}; throws errc::not_a_subsequence unless sub | *this.
  GSequence remove(const GSequence& sub) const;

  GSequence concat(const GSequence& other) const;

  /// Element indices repeated per multiplicity, ascending. Length = length().
  std::vector<std::uint64_t> flatten() const;

  /// One-line text form, e.g. "(1,0)^3 (2,2)"; empty sequence prints "".
  std::string to_text() const;

  friend bool operator==(const GSequence& a, const GSequence& b) {
    return a.group_ == b.group_ && a.entries_ == b.entries_;
  }

 private:
  Group group_;
  std::vector<Entry> entries_;
  std::uint64_t length_ = 0;
};

/// i.i.d. uniform sequence of the given length; deterministic under the rng.
GSequence sample_uniform(const Group& group, std::uint64_t length, Rng& rng);

/// Multisets of a given size over |G| elements: C(|G|+len-1, len), saturated
/// to 2^64-1 on overflow.
std::uint64_t multiset_count(std::uint64_t group_order, std::uint64_t length);

/**
 * Enumerates every multiset of the given size exactly once, in lexicographic
 * order of the nondecreasing element-index word.
 *
 * Throws errc::cap_exceeded upfront when the total count exceeds the cap.
 */
class MultisetEnumerator {
 public:
  static constexpr std::uint64_t kDefaultCap = 100'000'000;

  MultisetEnumerator(Group group, std::uint64_t length, std::uint64_t cap = kDefaultCap);

  /// Fills out with the next multiset; false once exhausted.
  bool next(GSequence& out);

  /// Nondecreasing index word of the value last produced by next().
  const std::vector<std::uint64_t>& word() const { return word_; }

  std::uint64_t total() const { return total_; }

 private:
  Group group_;
  std::uint64_t length_;
  std::uint64_t total_;
  std::vector<std::uint64_t> word_;
  bool started_ = false;
  bool done_ = false;
};

/// Sequence file format: "# group: C3*C3" header, one sequence per line.
std::string format_sequence_file(const Group& group, const std::vector<GSequence>& sequences);
struct SequenceFile {
  Group group;
  std::vector<GSequence> sequences;
};
SequenceFile parse_sequence_file(const std::string& text);
/// Parses a single sequence line like "(1,0)^3 (2,2)" over a known group.
GSequence parse_sequence_text(const Group& group, const std::string& line);

}  // namespace zsum
