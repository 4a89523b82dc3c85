#include <doctest.h>

#include "zsum/length_set.hpp"

using namespace zsum;

TEST_CASE("length set kinds and membership") {
  const LengthSet all = LengthSet::all();
  CHECK(all.contains(1));
  CHECK(all.contains(1000));
  CHECK(all.min_value() == 1);
  CHECK_FALSE(all.is_finite());
  CHECK_FALSE(all.max_value().has_value());
  CHECK(all.upward_cutoff() == 1);

  const LengthSet iv = LengthSet::interval(2, 5);
  CHECK_FALSE(iv.contains(1));
  CHECK(iv.contains(2));
  CHECK(iv.contains(5));
  CHECK_FALSE(iv.contains(6));
  CHECK(iv.min_value() == 2);
  CHECK(iv.max_value() == 5);
  CHECK(iv.is_finite());
  CHECK_FALSE(iv.upward_cutoff().has_value());

  const LengthSet up = LengthSet::interval_plus_n(3, 9);
  CHECK_FALSE(up.contains(2));
  CHECK(up.contains(3));
  CHECK(up.contains(9));
  CHECK(up.contains(10));
  CHECK(up.contains(100));
  CHECK_FALSE(up.is_finite());
  CHECK(up.upward_cutoff() == 3);

  const LengthSet one = LengthSet::singleton(4);
  CHECK(one.contains(4));
  CHECK_FALSE(one.contains(3));
  CHECK(one.min_value() == 4);
  CHECK(one.max_value() == 4);

  const LengthSet some = LengthSet::explicit_set({2, 5, 7});
  CHECK(some.contains(2));
  CHECK(some.contains(5));
  CHECK(some.contains(7));
  CHECK_FALSE(some.contains(6));
  CHECK(some.min_value() == 2);
  CHECK(some.max_value() == 7);
  CHECK_FALSE(some.upward_cutoff().has_value());
}

TEST_CASE("length set validation") {
  CHECK_THROWS_AS(LengthSet::interval(0, 3), error);
  CHECK_THROWS_AS(LengthSet::interval(4, 3), error);
  CHECK_THROWS_AS(LengthSet::interval_plus_n(0, 3), error);
  CHECK_THROWS_AS(LengthSet::singleton(0), error);
  CHECK_THROWS_AS(LengthSet::explicit_set({}), error);
  CHECK_THROWS_AS(LengthSet::explicit_set({0, 2}), error);
  try {
    LengthSet::interval(4, 3);
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_window);
  }
}

TEST_CASE("describe and parse round-trip") {
  const LengthSet sets[] = {
      LengthSet::all(),
      LengthSet::interval(1, 3),
      LengthSet::interval(2, 9),
      LengthSet::interval_plus_n(2, 3),
      LengthSet::singleton(3),
      LengthSet::explicit_set({2, 5, 7}),
  };
  const char* expected[] = {"N", "[1,3]", "[2,9]", "[2,3]+N", "{3}", "{2,5,7}"};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(sets[i].describe() == expected[i]);
    CHECK(LengthSet::parse(expected[i]) == sets[i]);
  }
}

TEST_CASE("parse failures") {
  for (const char* bad : {"", "M", "[1,3", "[1;3]", "{}", "{1,}", "[0,3]", "N+1", "[2,3]+M"}) {
    CHECK_THROWS_AS(LengthSet::parse(bad), error);
  }
}
