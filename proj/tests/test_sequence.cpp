#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "zsum/rng.hpp"
#include "zsum/sequence.hpp"

using namespace zsum;

namespace {

const Group& c33() {
  static const Group g = make_group({3, 3});
  return g;
}

}  // namespace

TEST_CASE("entries are merged and sorted") {
  const GSequence x = GSequence::from_entries(c33(), {{4, 1}, {1, 2}, {4, 2}});
  REQUIRE(x.entries().size() == 2);
  CHECK(x.entries()[0] == GSequence::Entry{1, 2});
  CHECK(x.entries()[1] == GSequence::Entry{4, 3});
  CHECK(x.length() == 5);
  CHECK(x.multiplicity(4) == 3);
  CHECK(x.multiplicity(0) == 0);
}

TEST_CASE("construction routes agree") {
  const GSequence a = GSequence::from_indices(c33(), {3, 1, 1, 3});
  const GSequence b = GSequence::from_entries(c33(), {{1, 2}, {3, 2}});
  const GSequence c = GSequence::from_elements(
      c33(), {c33().element_at(3), c33().element_at(1), c33().element_at(1),
              c33().element_at(3)});
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("index bounds are validated") {
  CHECK_THROWS_AS(GSequence::from_indices(c33(), {9}), error);
}

TEST_CASE("sum") {
  CHECK(c33().is_zero(GSequence(c33()).sum()));
  const GSequence x = GSequence::from_elements(
      c33(), {c33().element({1, 0}), c33().element({1, 0}), c33().element({1, 2})});
  CHECK(x.sum() == c33().element({0, 2}));
  const GSequence triple = GSequence::from_elements(
      c33(), {c33().element({1, 2}), c33().element({1, 2}), c33().element({1, 2})});
  CHECK(c33().is_zero(triple.sum()));
}

TEST_CASE("divides, remove, concat, flatten") {
  const GSequence x = GSequence::from_indices(c33(), {1, 1, 2, 5});
  const GSequence sub = GSequence::from_indices(c33(), {1, 5});
  CHECK(sub.divides(x));
  CHECK_FALSE(x.divides(sub));
  CHECK(GSequence(c33()).divides(x));

  const GSequence rest = x.remove(sub);
  CHECK(rest == GSequence::from_indices(c33(), {1, 2}));
  CHECK(rest.concat(sub) == x);
  CHECK_THROWS_AS(sub.remove(x), error);

  CHECK(x.flatten() == std::vector<std::uint64_t>{1, 1, 2, 5});
}

TEST_CASE("cross-group operations are rejected") {
  const Group other = make_group({9});
  const GSequence x = GSequence::from_indices(c33(), {1});
  const GSequence y = GSequence::from_indices(other, {1});
  CHECK_THROWS_AS(x.concat(y), error);
  CHECK_THROWS_AS(x.divides(y), error);
  try {
    x.concat(y);
  } catch (const error& e) {
    CHECK(e.code() == errc::group_mismatch);
  }
}

TEST_CASE("text form") {
  CHECK(GSequence(c33()).to_text() == "");
  const GSequence x = GSequence::from_entries(c33(), {{1, 3}, {8, 1}});
  CHECK(x.to_text() == "(1,0)^3 (2,2)");
  CHECK(parse_sequence_text(c33(), x.to_text()) == x);
  CHECK(parse_sequence_text(c33(), "") == GSequence(c33()));
  CHECK(parse_sequence_text(c33(), "(0,1) (0,1) (0,1)") ==
        GSequence::from_entries(c33(), {{3, 3}}));
}

TEST_CASE("sequence text failures") {
  CHECK_THROWS_AS(parse_sequence_text(c33(), "(1,0"), error);
  CHECK_THROWS_AS(parse_sequence_text(c33(), "(1)"), error);
  CHECK_THROWS_AS(parse_sequence_text(c33(), "(1,0)^0"), error);
  CHECK_THROWS_AS(parse_sequence_text(c33(), "(3,0)"), error);
  CHECK_THROWS_AS(parse_sequence_text(c33(), "1,0"), error);
}

TEST_CASE("sequence file round-trip") {
  const std::vector<GSequence> seqs = {
      GSequence::from_entries(c33(), {{3, 3}, {8, 1}}),
      GSequence(c33()),
      GSequence::from_indices(c33(), {1, 2, 4}),
  };
  const std::string text = format_sequence_file(c33(), seqs);
  const SequenceFile back = parse_sequence_file(text);
  CHECK(back.group == c33());
  REQUIRE(back.sequences.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back.sequences[i] == seqs[i]);
}

TEST_CASE("sequence file failures") {
  CHECK_THROWS_AS(parse_sequence_file("(1,0)\n"), error);
  CHECK_THROWS_AS(parse_sequence_file("# group: C3*C3\n(9,9)\n"), error);
  CHECK_THROWS_AS(parse_sequence_file(""), error);
}

TEST_CASE("uniform sampling is deterministic and honors length") {
  Rng r1(42), r2(42), r3(7);
  const GSequence a = sample_uniform(c33(), 10, r1);
  const GSequence b = sample_uniform(c33(), 10, r2);
  const GSequence c = sample_uniform(c33(), 10, r3);
  CHECK(a == b);
  CHECK(a.length() == 10);
  CHECK(c.length() == 10);
  CHECK(a != c);
}

TEST_CASE("multiset counting") {
  CHECK(multiset_count(9, 7) == 6435);   // C(15,7)
  CHECK(multiset_count(9, 8) == 12870);  // C(16,8)
  CHECK(multiset_count(3, 0) == 1);
  CHECK(multiset_count(1, 5) == 1);
  CHECK(multiset_count(1000, 1000) == ~std::uint64_t{0});  // saturates
}

TEST_CASE("multiset enumeration is complete, canonical, and capped") {
  const Group g = make_group({3});
  MultisetEnumerator en(g, 2);
  CHECK(en.total() == 6);
  GSequence x(g);
  std::set<std::string> seen;
  std::vector<std::uint64_t> prev;
  while (en.next(x)) {
    CHECK(x.length() == 2);
    const std::vector<std::uint64_t> w = en.word();
    CHECK(std::is_sorted(w.begin(), w.end()));
    if (!prev.empty()) CHECK(prev < w);
    prev = w;
    seen.insert(x.to_text());
  }
  CHECK(seen.size() == 6);

  CHECK_THROWS_AS(MultisetEnumerator(c33(), 7, 100), error);
  try {
    MultisetEnumerator big(c33(), 7, 100);
  } catch (const error& e) {
    CHECK(e.code() == errc::cap_exceeded);
  }
}
