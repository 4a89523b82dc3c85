#include "zsum/cache.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zsum/errors.hpp"

namespace zsum {
namespace {

using Json = nlohmann::ordered_json;

Json result_to_json(const InvariantResult& r) {
  Json e;
  e["group"] = r.group.name();
  e["invariant"] = r.invariant;
  e["lengths"] = r.lengths.describe();
  if (r.value)
    e["value"] = *r.value;
  else
    e["value"] = nullptr;
  e["cap"] = r.cap;
  e["exhaustive"] = r.exhaustive;
  if (r.witness)
    e["witness"] = r.witness->to_text();
  else
    e["witness"] = nullptr;
  e["stats"] = Json{{"nodes", r.stats.nodes},
                    {"extensions", r.stats.extensions},
                    {"wall_seconds", r.stats.wall_seconds}};
  return e;
}

InvariantResult result_from_json(const Json& e) {
  InvariantResult r;
  r.group = parse_group(e.at("group").get<std::string>());
  r.invariant = e.at("invariant").get<std::string>();
  r.lengths = LengthSet::parse(e.at("lengths").get<std::string>());
  if (!e.at("value").is_null()) r.value = e.at("value").get<std::uint64_t>();
  r.cap = e.at("cap").get<std::uint64_t>();
  r.exhaustive = e.at("exhaustive").get<bool>();
  if (!e.at("witness").is_null())
    r.witness = parse_sequence_text(r.group, e.at("witness").get<std::string>());
  const Json& st = e.at("stats");
  r.stats.nodes = st.at("nodes").get<std::uint64_t>();
  r.stats.extensions = st.at("extensions").get<std::uint64_t>();
  r.stats.wall_seconds = st.at("wall_seconds").get<double>();
  return r;
}

}  // namespace

InvariantCache InvariantCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return InvariantCache{};
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

InvariantCache InvariantCache::from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    fail(errc::cache_corrupt, std::string("unparsable cache: ") + ex.what());
  }
  InvariantCache cache;
  try {
    if (doc.at("schema").get<int>() != 1)
      fail(errc::cache_corrupt, "unsupported cache schema");
    for (const Json& e : doc.at("entries")) {
      InvariantResult r = result_from_json(e);
      if (r.witness && !verify_witness(r))
        fail(errc::cache_corrupt, "witness fails verification for " + r.group.name() + " / " +
                                      r.invariant);
      cache.put(std::move(r));
    }
  } catch (const nlohmann::json::exception& ex) {
    fail(errc::cache_corrupt, std::string("malformed cache entry: ") + ex.what());
  }
  return cache;
}

void InvariantCache::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(errc::cache_corrupt, "cannot open " + path + " for writing");
  out << to_json() << '\n';
}

std::string InvariantCache::to_json() const {
  Json doc;
  doc["schema"] = 1;
  doc["entries"] = Json::array();
  for (const auto& kv : entries_) doc["entries"].push_back(result_to_json(kv.second));
  return doc.dump(2);
}

void InvariantCache::put(InvariantResult result) {
  std::pair<std::string, std::string> key{result.group.name(), result.invariant};
  entries_.insert_or_assign(std::move(key), std::move(result));
}

const InvariantResult* InvariantCache::find(const std::string& group_name,
                                            const std::string& invariant) const {
  auto it = entries_.find({group_name, invariant});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const InvariantResult*> InvariantCache::list() const {
  std::vector<const InvariantResult*> out;
  out.reserve(entries_.size());
  for (const auto& kv : entries_) out.push_back(&kv.second);
  return out;
}

}  // namespace zsum
