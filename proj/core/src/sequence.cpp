#include "zsum/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace zsum {

GSequence GSequence::from_entries(Group group, std::vector<Entry> entries) {
  GSequence s(std::move(group));
  std::map<std::uint64_t, std::uint64_t> merged;
  for (const Entry& e : entries) {
    if (e.index >= s.group_.order())
      fail(errc::out_of_range, "element index " + std::to_string(e.index) + " not below group order");
    if (e.mult == 0) continue;
    merged[e.index] += e.mult;
  }
  for (const auto& [idx, mult] : merged) {
    s.entries_.push_back({idx, mult});
    s.length_ += mult;
  }
  return s;
}

GSequence GSequence::from_indices(Group group, const std::vector<std::uint64_t>& indices) {
  std::vector<Entry> entries;
  entries.reserve(indices.size());
  for (std::uint64_t i : indices) entries.push_back({i, 1});
  return from_entries(std::move(group), std::move(entries));
}

GSequence GSequence::from_elements(const Group& group, const std::vector<Element>& elements) {
  std::vector<Entry> entries;
  entries.reserve(elements.size());
  for (const Element& g : elements) entries.push_back({group.index_of(g), 1});
  return from_entries(group, std::move(entries));
}

std::uint64_t GSequence::multiplicity(std::uint64_t element_index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), element_index,
                             [](const Entry& e, std::uint64_t idx) { return e.index < idx; });
  return it != entries_.end() && it->index == element_index ? it->mult : 0;
}

Element GSequence::sum() const {
  Element acc = group_.zero();
  for (const Entry& e : entries_) {
    const Element g = group_.element_at(e.index);
    acc = group_.add(acc, group_.scalar_mul(e.mult, g));
  }
  return acc;
}

bool GSequence::divides(const GSequence& super) const {
  if (group_ != super.group_) fail(errc::group_mismatch, "sequences over different groups");
  for (const Entry& e : entries_)
    if (super.multiplicity(e.index) < e.mult) return false;
  return true;
}

GSequence GSequence::remove(const GSequence& sub) const {
  if (!sub.divides(*this))
    fail(errc::not_a_subsequence, "attempted to remove a non-divisor subsequence");
  GSequence out(group_);
  for (const Entry& e : entries_) {
    const std::uint64_t keep = e.mult - sub.multiplicity(e.index);
    if (keep > 0) {
      out.entries_.push_back({e.index, keep});
      out.length_ += keep;
    }
  }
  return out;
}

GSequence GSequence::concat(const GSequence& other) const {
  if (group_ != other.group_) fail(errc::group_mismatch, "sequences over different groups");
  std::vector<Entry> entries = entries_;
  entries.insert(entries.end(), other.entries_.begin(), other.entries_.end());
  return from_entries(group_, std::move(entries));
}

std::vector<std::uint64_t> GSequence::flatten() const {
  std::vector<std::uint64_t> flat;
  flat.reserve(length_);
  for (const Entry& e : entries_)
    for (std::uint64_t i = 0; i < e.mult; ++i) flat.push_back(e.index);
  return flat;
}

std::string GSequence::to_text() const {
  std::string out;
  for (const Entry& e : entries_) {
    if (!out.empty()) out += ' ';
    const Element g = group_.element_at(e.index);
    out += '(';
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(g.coords[i]);
    }
    out += ')';
    if (e.mult > 1) {
      out += '^';
      out += std::to_string(e.mult);
    }
  }
  return out;
}

GSequence sample_uniform(const Group& group, std::uint64_t length, Rng& rng) {
  std::vector<std::uint64_t> indices;
  indices.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) indices.push_back(rng.below(group.order()));
  return GSequence::from_indices(group, indices);
}

std::uint64_t multiset_count(std::uint64_t group_order, std::uint64_t length) {
  if (length == 0) return 1;
  constexpr std::uint64_t kSaturated = ~static_cast<std::uint64_t>(0);
  // C(n+l-1, l) with n = group_order, as a rising product; the division at
  // step i is exact, and each prefix C(n-1+i, i) is monotone in i, so the
  // first prefix past 2^64-1 certifies saturation.
  unsigned __int128 acc = 1;
  const unsigned __int128 u128_max = ~static_cast<unsigned __int128>(0);
  for (std::uint64_t i = 1; i <= length; ++i) {
    const unsigned __int128 factor = group_order - 1 + i;
    if (acc > u128_max / factor) return kSaturated;
    acc = acc * factor / i;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

MultisetEnumerator::MultisetEnumerator(Group group, std::uint64_t length, std::uint64_t cap)
    : group_(std::move(group)), length_(length) {
  total_ = multiset_count(group_.order(), length_);
  if (total_ > cap)
    fail(errc::cap_exceeded, "enumerating length-" + std::to_string(length_) + " multisets over " +
                                 group_.name() + " needs " + std::to_string(total_) +
                                 " items, cap is " + std::to_string(cap));
}

bool MultisetEnumerator::next(GSequence& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    word_.assign(length_, 0);
  } else {
    // advance the nondecreasing word like an odometer
    std::size_t i = word_.size();
    while (i > 0) {
      --i;
      if (word_[i] + 1 < group_.order()) {
        const std::uint64_t v = word_[i] + 1;
        for (std::size_t j = i; j < word_.size(); ++j) word_[j] = v;
        break;
      }
      if (i == 0) {
        done_ = true;
        return false;
      }
    }
    if (done_ || (word_.empty())) {
      done_ = true;
      return false;
    }
  }
  if (word_.empty()) done_ = true;  // single empty multiset
  out = GSequence::from_indices(group_, word_);
  return true;
}

std::string format_sequence_file(const Group& group, const std::vector<GSequence>& sequences) {
  std::string out = "# group: " + group.name() + "\n";
  for (const GSequence& s : sequences) {
    if (s.group() != group) fail(errc::group_mismatch, "sequence not over the header group");
    out += s.to_text();
    out += '\n';
  }
  return out;
}

namespace {

std::uint64_t parse_number(const std::string& s, std::size_t& pos) {
  if (pos >= s.size() || !isdigit(static_cast<unsigned char>(s[pos])))
    fail(errc::parse_error, "expected a number in sequence text: " + s);
  std::uint64_t v = 0;
  while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
    ++pos;
  }
  return v;
}

void skip_spaces(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && s[pos] == ' ') ++pos;
}

}  // namespace

GSequence parse_sequence_text(const Group& group, const std::string& line) {
  std::vector<GSequence::Entry> entries;
  std::size_t pos = 0;
  skip_spaces(line, pos);
  while (pos < line.size()) {
    if (line[pos] != '(') fail(errc::parse_error, "expected '(' in sequence text: " + line);
    ++pos;
    std::vector<std::uint64_t> coords;
    if (pos < line.size() && line[pos] == ')') {
      ++pos;  // rank-0 element "()"
    } else {
      while (true) {
        coords.push_back(parse_number(line, pos));
        if (pos < line.size() && line[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < line.size() && line[pos] == ')') {
          ++pos;
          break;
        }
        fail(errc::parse_error, "expected ',' or ')' in sequence text: " + line);
      }
    }
    std::uint64_t mult = 1;
    if (pos < line.size() && line[pos] == '^') {
      ++pos;
      mult = parse_number(line, pos);
      if (mult == 0) fail(errc::parse_error, "zero multiplicity in sequence text: " + line);
    }
    entries.push_back({group.index_of(group.element(std::move(coords))), mult});
    skip_spaces(line, pos);
  }
  return GSequence::from_entries(group, std::move(entries));
}

SequenceFile parse_sequence_file(const std::string& text) {
  SequenceFile file;
  std::istringstream in(text);
  std::string line;
  bool have_group = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# group:", 0) == 0) {
      std::size_t start = 8;
      while (start < line.size() && line[start] == ' ') ++start;
      file.group = parse_group(line.substr(start));
      have_group = true;
      continue;
    }
    if (!line.empty() && line[0] == '#') continue;
    if (!have_group) {
      if (line.empty()) continue;
      fail(errc::parse_error, "sequence file is missing the '# group:' header");
    }
    file.sequences.push_back(parse_sequence_text(file.group, line));
  }
  if (!have_group) fail(errc::parse_error, "sequence file is missing the '# group:' header");
  return file;
}

}  // namespace zsum
