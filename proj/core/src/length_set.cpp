#include "zsum/length_set.hpp"

#include <algorithm>

namespace zsum {

LengthSet LengthSet::all() {
  LengthSet s;
  s.kind_ = Kind::all;
  s.lo_ = 1;
  return s;
}

LengthSet LengthSet::interval(std::uint64_t j, std::uint64_t n) {
  if (j < 1 || j > n) fail(errc::bad_window, "interval [" + std::to_string(j) + "," + std::to_string(n) + "] needs 1 <= j <= n");
  LengthSet s;
  s.kind_ = Kind::interval;
  s.lo_ = j;
  s.hi_ = n;
  return s;
}

LengthSet LengthSet::interval_plus_n(std::uint64_t j, std::uint64_t n) {
  if (j < 1 || j > n) fail(errc::bad_window, "interval [" + std::to_string(j) + "," + std::to_string(n) + "]+N needs 1 <= j <= n");
  LengthSet s;
  s.kind_ = Kind::interval_plus_n;
  s.lo_ = j;
  s.hi_ = n;
  return s;
}

LengthSet LengthSet::singleton(std::uint64_t n) {
  if (n < 1) fail(errc::bad_window, "singleton length must be positive");
  LengthSet s;
  s.kind_ = Kind::singleton;
  s.lo_ = s.hi_ = n;
  return s;
}

LengthSet LengthSet::explicit_set(std::set<std::uint64_t> values) {
  if (values.empty()) fail(errc::bad_window, "explicit length set must be nonempty");
  if (*values.begin() < 1) fail(errc::bad_window, "lengths must be positive");
  LengthSet s;
  s.kind_ = Kind::explicit_set;
  s.lo_ = *values.begin();
  s.hi_ = *values.rbegin();
  s.values_ = std::move(values);
  return s;
}

bool LengthSet::contains(std::uint64_t k) const {
  if (k < 1) return false;
  switch (kind_) {
    case Kind::all: return true;
    case Kind::interval: return lo_ <= k && k <= hi_;
    case Kind::interval_plus_n: return k >= lo_;
    case Kind::singleton: return k == lo_;
    case Kind::explicit_set: return values_.count(k) > 0;
  }
  return false;
}

std::optional<std::uint64_t> LengthSet::max_value() const {
  if (kind_ == Kind::all || kind_ == Kind::interval_plus_n) return std::nullopt;
  return hi_;
}

std::uint64_t LengthSet::min_value() const { return lo_; }

bool LengthSet::is_finite() const { return max_value().has_value(); }

std::optional<std::uint64_t> LengthSet::upward_cutoff() const {
  if (kind_ == Kind::all) return 1;
  if (kind_ == Kind::interval_plus_n) return lo_;
  return std::nullopt;
}

std::string LengthSet::describe() const {
  switch (kind_) {
    case Kind::all: return "N";
    case Kind::interval: return "[" + std::to_string(lo_) + "," + std::to_string(hi_) + "]";
    case Kind::interval_plus_n: return "[" + std::to_string(lo_) + "," + std::to_string(hi_) + "]+N";
    case Kind::singleton: return "{" + std::to_string(lo_) + "}";
    case Kind::explicit_set: {
      std::string s = "{";
      bool first = true;
      for (std::uint64_t v : values_) {
        if (!first) s += ',';
        s += std::to_string(v);
        first = false;
      }
      return s + "}";
    }
  }
  return "?";
}

LengthSet LengthSet::parse(const std::string& text) {
  auto parse_num = [&](std::size_t& pos) {
    std::uint64_t v = 0;
    const std::size_t start = pos;
    while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos])))
      v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
    if (pos == start) fail(errc::parse_error, "bad length set: " + text);
    return v;
  };
  if (text == "N") return all();
  if (!text.empty() && text.front() == '[') {
    std::size_t pos = 1;
    const std::uint64_t j = parse_num(pos);
    if (pos >= text.size() || text[pos] != ',') fail(errc::parse_error, "bad length set: " + text);
    ++pos;
    const std::uint64_t n = parse_num(pos);
    if (text.compare(pos, std::string::npos, "]") == 0) return interval(j, n);
    if (text.compare(pos, std::string::npos, "]+N") == 0) return interval_plus_n(j, n);
    fail(errc::parse_error, "bad length set: " + text);
  }
  if (!text.empty() && text.front() == '{' && text.back() == '}') {
    std::set<std::uint64_t> values;
    std::size_t pos = 1;
    while (pos < text.size() - 1) {
      values.insert(parse_num(pos));
      if (pos < text.size() - 1) {
        if (text[pos] != ',') fail(errc::parse_error, "bad length set: " + text);
        ++pos;
        if (pos >= text.size() - 1) fail(errc::parse_error, "bad length set: " + text);
      }
    }
    if (values.size() == 1) return singleton(*values.begin());
    return explicit_set(std::move(values));
  }
  fail(errc::parse_error, "bad length set: " + text);
}

}  // namespace zsum
