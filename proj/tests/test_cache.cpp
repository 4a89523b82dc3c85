#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include "zsum/cache.hpp"
#include "zsum/search.hpp"

using namespace zsum;

namespace {

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected a zsum::error");
  return errc::parse_error;
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const std::size_t at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("round-trip is byte stable") {
  InvariantCache cache;
  cache.put(compute_davenport(make_group({3, 3})));
  cache.put(compute_eta(make_group({3, 3})));
  cache.put(compute_egz(make_group({2, 4})));
  const std::string once = cache.to_json();
  const InvariantCache back = InvariantCache::from_json(once);
  CHECK(back.size() == 3);
  CHECK(back.to_json() == once);
}

TEST_CASE("missing file loads empty, save and load round-trip") {
  const std::string path = "/tmp/zsum_cache_test.json";
  std::remove(path.c_str());
  const InvariantCache missing = InvariantCache::load(path);
  CHECK(missing.empty());

  InvariantCache cache;
  cache.put(compute_davenport(make_group({3, 3})));
  cache.save(path);
  const InvariantCache loaded = InvariantCache::load(path);
  CHECK(loaded.size() == 1);
  CHECK(loaded.to_json() == cache.to_json());
  std::remove(path.c_str());
}

TEST_CASE("lookup and replacement") {
  InvariantCache cache;
  const InvariantResult d = compute_davenport(make_group({3, 3}));
  cache.put(d);
  CHECK(cache.find("C3*C3", "D") != nullptr);
  CHECK(cache.find("C3*C3", "D")->value == 5);
  CHECK(cache.find("C3*C3", "eta") == nullptr);
  CHECK(cache.find("C9", "D") == nullptr);

  InvariantResult newer = d;
  newer.stats.nodes = 12345;
  cache.put(newer);
  CHECK(cache.size() == 1);
  CHECK(cache.find("C3*C3", "D")->stats.nodes == 12345);

  cache.put(compute_eta(make_group({3, 3})));
  cache.put(compute_davenport(make_group({9})));
  const std::vector<const InvariantResult*> all = cache.list();
  REQUIRE(all.size() == 3);
  CHECK(all[0]->group.name() == "C3*C3");  // key order: group, then invariant
  CHECK(all[1]->group.name() == "C3*C3");
  CHECK(all[2]->group.name() == "C9");
}

TEST_CASE("results without values or witnesses survive") {
  SearchOptions opts;
  opts.cap = 9;
  InvariantCache cache;
  cache.put(compute_s_L(make_group({3}), LengthSet::singleton(1), opts));  // no value
  InvariantResult bare = compute_davenport(make_group({3}));
  bare.witness.reset();
  cache.put(bare);
  const InvariantCache back = InvariantCache::from_json(cache.to_json());
  CHECK(back.size() == 2);
  CHECK_FALSE(back.find("C3", "s_L:{1}")->value.has_value());
  CHECK(back.find("C3", "s_L:{1}")->witness.has_value());
  CHECK_FALSE(back.find("C3", "D")->witness.has_value());
  CHECK(back.to_json() == cache.to_json());
}

TEST_CASE("tampering fails loudly") {
  InvariantCache cache;
  cache.put(compute_davenport(make_group({3, 3})));
  const std::string good = cache.to_json();

  SUBCASE("witness edited") {
    const std::string bad = replace_once(good, "(1,0)^2", "(1,0)^3");
    CHECK(code_of([&] { InvariantCache::from_json(bad); }) == errc::cache_corrupt);
  }
  SUBCASE("value edited") {
    const std::string bad = replace_once(good, "\"value\": 5", "\"value\": 6");
    CHECK(code_of([&] { InvariantCache::from_json(bad); }) == errc::cache_corrupt);
  }
  SUBCASE("wrong schema") {
    const std::string bad = replace_once(good, "\"schema\": 1", "\"schema\": 2");
    CHECK(code_of([&] { InvariantCache::from_json(bad); }) == errc::cache_corrupt);
  }
  SUBCASE("not json at all") {
    CHECK(code_of([] { InvariantCache::from_json("not json"); }) == errc::cache_corrupt);
  }
  SUBCASE("load verifies too") {
    const std::string path = "/tmp/zsum_cache_tamper.json";
    std::ofstream(path) << replace_once(good, "\"value\": 5", "\"value\": 7");
    CHECK(code_of([&] { InvariantCache::load(path); }) == errc::cache_corrupt);
    std::remove(path.c_str());
  }
}
