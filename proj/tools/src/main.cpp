#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zsum/bounds.hpp"
#include "zsum/cache.hpp"
#include "zsum/congruence.hpp"
#include "zsum/errors.hpp"
#include "zsum/group.hpp"
#include "zsum/profile.hpp"
#include "zsum/search.hpp"
#include "zsum/sequence.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace zsum;

enum class OutputStyle { human, json, csv };

struct GlobalOpts {
  OutputStyle style = OutputStyle::human;
  std::string cache_path;  // empty = no cache
};

void emit(const GlobalOpts& g, const Json& doc, const std::vector<std::string>& csv_lines,
          const std::string& human) {
  if (g.style == OutputStyle::json) {
    std::cout << doc.dump(2) << '\n';
  } else if (g.style == OutputStyle::csv) {
    for (const std::string& line : csv_lines) std::cout << line << '\n';
  } else {
    std::cout << human;
  }
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

PGroupSpec spec_of(const std::string& text) {
  const Group g = parse_group(text);
  const std::optional<std::uint64_t> p = g.p_group_prime();
  if (!p) fail(errc::not_a_p_group, g.name() + " is not a p-group");
  std::vector<std::uint32_t> exps;
  for (std::uint64_t f : g.factors()) {
    std::uint32_t e = 0;
    for (std::uint64_t v = f; v > 1; v /= *p) ++e;
    exps.push_back(e);
  }
  return PGroupSpec::make(*p, std::move(exps));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_group_info(const GlobalOpts& g, const std::string& spec) {
  const Group grp = parse_group(spec);
  Json doc;
  doc["schema"] = 1;
  doc["command"] = "group-info";
  doc["group"] = grp.name();
  doc["factors"] = grp.factors();
  doc["rank"] = grp.rank();
  doc["order"] = grp.order();
  doc["exponent"] = grp.exponent();
  const std::optional<std::uint64_t> p = grp.p_group_prime();
  doc["p"] = p ? Json(*p) : Json(nullptr);
  if (p) {
    const PGroupSpec ps = spec_of(spec);
    doc["p_group_spec"] = ps.name();
    doc["davenport"] = davenport_formula(ps);
  } else {
    doc["p_group_spec"] = nullptr;
    doc["davenport"] = nullptr;
  }

  std::string human = "group " + grp.name() + "\n  rank " + std::to_string(grp.rank()) +
                      ", order " + std::to_string(grp.order()) + ", exponent " +
                      std::to_string(grp.exponent()) + "\n";
  if (p)
    human += "  p-group: p=" + std::to_string(*p) +
             ", D=" + std::to_string(doc["davenport"].get<std::uint64_t>()) + "\n";

  std::vector<std::string> csv = {"group,rank,order,exponent,p,davenport"};
  csv.push_back(grp.name() + "," + std::to_string(grp.rank()) + "," +
                std::to_string(grp.order()) + "," + std::to_string(grp.exponent()) + "," +
                (p ? std::to_string(*p) : "") + "," +
                (p ? std::to_string(doc["davenport"].get<std::uint64_t>()) : ""));
  emit(g, doc, csv, human);
  return 0;
}

int run_group_classify(const GlobalOpts& g, const std::string& spec) {
  const PGroupSpec ps = spec_of(spec);
  const Classification c = classify_rank_two_like(ps);
  Json doc;
  doc["schema"] = 1;
  doc["command"] = "group-classify";
  doc["group"] = ps.to_group().name();
  doc["p_group_spec"] = ps.name();
  doc["davenport"] = c.davenport;
  doc["exponent"] = c.exponent;
  doc["deficiency"] = c.deficiency;
  doc["rank_two_like"] = c.rank_two_like;
  doc["largest_pk"] = c.largest_pk ? Json(*c.largest_pk) : Json(nullptr);
  doc["exact_value"] = c.exact_value;

  std::string human = "group " + ps.to_group().name() + " (" + ps.name() + ")\n  D=" +
                      std::to_string(c.davenport) + ", exp=" + std::to_string(c.exponent) +
                      ", c=" + std::to_string(c.deficiency) + "\n  rank-two-like: " +
                      (c.rank_two_like ? "yes" : "no");
  if (c.largest_pk) human += ", largest p^k=" + std::to_string(*c.largest_pk);
  human += c.exact_value ? ", deficiency is a prime power\n" : "\n";

  std::vector<std::string> csv = {"group,davenport,exponent,deficiency,rank_two_like,largest_pk,exact_value"};
  csv.push_back(ps.to_group().name() + "," + std::to_string(c.davenport) + "," +
                std::to_string(c.exponent) + "," + std::to_string(c.deficiency) + "," +
                (c.rank_two_like ? "true" : "false") + "," +
                (c.largest_pk ? std::to_string(*c.largest_pk) : "") + "," +
                (c.exact_value ? "true" : "false"));
  emit(g, doc, csv, human);
  return 0;
}

struct CountArgs {
  std::string file;
  std::string mode = "exact";
  std::uint64_t modulus = 0;
  std::string lengths;
  std::uint64_t budget = 1'000'000'000;
};

int run_count(const GlobalOpts& g, const CountArgs& args) {
  const SequenceFile sf = parse_sequence_file(read_file(args.file));
  ProfileOptions opts;
  opts.budget = args.budget;
  if (args.mode == "modular") {
    opts.mode = CountMode::modular;
    opts.modulus = args.modulus;
  } else if (args.mode != "exact") {
    fail(errc::parse_error, "mode must be exact or modular");
  }
  std::optional<LengthSet> lengths;
  if (!args.lengths.empty()) lengths = LengthSet::parse(args.lengths);

  Json doc;
  doc["schema"] = 1;
  doc["command"] = "count";
  doc["group"] = sf.group.name();
  doc["mode"] = args.mode;
  if (args.mode == "modular") doc["modulus"] = args.modulus;
  doc["profiles"] = Json::array();

  std::string human = "group " + sf.group.name() + "\n";
  std::vector<std::string> csv = {"sequence,k,count"};

  for (std::size_t idx = 0; idx < sf.sequences.size(); ++idx) {
    const GSequence& x = sf.sequences[idx];
    const ZeroSumProfile pr = profile(x, opts);
    Json entry;
    entry["sequence"] = x.to_text();
    entry["length"] = x.length();
    entry["mode"] = args.mode;
    Json counts = Json::array();
    for (std::uint64_t k = 0; k <= x.length(); ++k) {
      if (opts.mode == CountMode::exact)
        counts.push_back(pr.exact[k].str());
      else
        counts.push_back(pr.residues[k]);
      csv.push_back(std::to_string(idx) + "," + std::to_string(k) + "," +
                    (opts.mode == CountMode::exact ? pr.exact[k].str()
                                                   : std::to_string(pr.residues[k])));
    }
    entry["counts"] = std::move(counts);
    if (lengths) entry["has_zero_sum_in"] = has_zero_sum_with_length_in(x, *lengths);
    doc["profiles"].push_back(std::move(entry));

    human += "  #" + std::to_string(idx) + " length " + std::to_string(x.length()) + ": N_k = ";
    for (std::uint64_t k = 0; k <= x.length(); ++k) {
      if (k) human += " ";
      human += opts.mode == CountMode::exact ? pr.exact[k].str() : std::to_string(pr.residues[k]);
    }
    human += "\n";
  }
  emit(g, doc, csv, human);
  return 0;
}

struct InvariantArgs {
  std::string kind;
  std::string group;
  std::uint64_t j = 0;
  std::string lengths;
  std::uint64_t cap = 0;
  std::uint64_t budget = 100'000'000;
  unsigned threads = 0;
  std::string mode = "exhaustive";
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  std::string witness_out;
  bool refresh = false;
};

Json result_json(const InvariantResult& r, bool cached) {
  Json doc;
  doc["schema"] = 1;
  doc["command"] = "invariant";
  doc["group"] = r.group.name();
  doc["invariant"] = r.invariant;
  doc["lengths"] = r.lengths.describe();
  doc["value"] = r.value ? Json(*r.value) : Json(nullptr);
  doc["cap"] = r.cap;
  doc["exhaustive"] = r.exhaustive;
  doc["witness"] = r.witness ? Json(r.witness->to_text()) : Json(nullptr);
  doc["stats"] = Json{{"nodes", r.stats.nodes}, {"extensions", r.stats.extensions}};
  doc["cached"] = cached;
  return doc;
}

int run_invariant(const GlobalOpts& g, const InvariantArgs& args) {
  const Group grp = parse_group(args.group);
  SearchOptions opts;
  opts.cap = args.cap;
  opts.node_budget = args.budget;
  opts.threads = args.threads;
  opts.samples = args.samples;
  opts.seed = args.seed;
  if (args.mode == "sampled")
    opts.mode = SearchMode::sampled;
  else if (args.mode != "exhaustive")
    fail(errc::parse_error, "mode must be exhaustive or sampled");

  std::string descriptor;
  if (args.kind == "D") descriptor = "D";
  else if (args.kind == "eta") descriptor = "eta";
  else if (args.kind == "s") descriptor = "s";
  else if (args.kind == "s_interval") descriptor = "s_interval:j=" + std::to_string(args.j);
  else if (args.kind == "s_interval_plus_N")
    descriptor = "s_interval_plus_N:j=" + std::to_string(args.j);
  else if (args.kind == "s_L") descriptor = "s_L:" + LengthSet::parse(args.lengths).describe();
  else fail(errc::parse_error, "unknown invariant kind " + args.kind);

  InvariantCache cache;
  const bool use_cache = !g.cache_path.empty();
  if (use_cache) cache = InvariantCache::load(g.cache_path);

  InvariantResult result;
  bool cached = false;
  const InvariantResult* hit =
      use_cache && !args.refresh ? cache.find(grp.name(), descriptor) : nullptr;
  if (hit && hit->exhaustive) {
    result = *hit;
    cached = true;
  } else {
    std::cerr << "searching " << descriptor << " over " << grp.name() << " (cap "
              << (args.cap ? args.cap : default_cap(grp)) << ")\n";
    if (args.kind == "D") result = compute_davenport(grp, opts);
    else if (args.kind == "eta") result = compute_eta(grp, opts);
    else if (args.kind == "s") result = compute_egz(grp, opts);
    else if (args.kind == "s_interval") result = compute_s_interval(grp, args.j, opts);
    else if (args.kind == "s_interval_plus_N")
      result = compute_s_interval_plus_N(grp, args.j, opts);
    else result = compute_s_L(grp, LengthSet::parse(args.lengths), opts);
    std::cerr << "done in " << result.stats.wall_seconds << "s, " << result.stats.nodes
              << " nodes\n";
    if (use_cache) {
      cache.put(result);
      cache.save(g.cache_path);
    }
  }

  if (!args.witness_out.empty() && result.witness) {
    std::ofstream out(args.witness_out);
    if (!out) fail(errc::parse_error, "cannot open " + args.witness_out + " for writing");
    out << format_sequence_file(grp, {*result.witness});
  }

  const Json doc = result_json(result, cached);
  std::string human = descriptor + "(" + grp.name() + ")";
  if (result.value)
    human += " = " + std::to_string(*result.value);
  else
    human += " > " + std::to_string(result.cap) + " (cap reached)";
  human += result.exhaustive ? " [exhaustive]" : " [sampled]";
  if (cached) human += " [cached]";
  human += "\n";
  if (result.witness) human += "  witness: " + result.witness->to_text() + "\n";

  std::vector<std::string> csv = {"group,invariant,value,cap,exhaustive,nodes,extensions"};
  csv.push_back(grp.name() + "," + descriptor + "," +
                (result.value ? std::to_string(*result.value) : "") + "," +
                std::to_string(result.cap) + "," + (result.exhaustive ? "true" : "false") + "," +
                std::to_string(result.stats.nodes) + "," +
                std::to_string(result.stats.extensions));
  emit(g, doc, csv, human);
  return 0;
}

struct CongruenceArgs {
  std::string id;
  std::string group;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  std::uint64_t rejection_cap = 100'000;
  double exact_fraction = 0.01;
  unsigned threads = 1;
  bool list = false;
};

int run_congruence(const GlobalOpts& g, const CongruenceArgs& args) {
  if (args.list) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = "congruence-list";
    doc["identities"] = fuzz_identities();
    std::string human;
    std::vector<std::string> csv = {"identity"};
    for (const std::string& id : fuzz_identities()) {
      human += id + "\n";
      csv.push_back(id);
    }
    emit(g, doc, csv, human);
    return 0;
  }

  const Group grp = parse_group(args.group);
  FuzzOptions opts;
  opts.trials = args.trials;
  opts.seed = args.seed;
  opts.rejection_cap = args.rejection_cap;
  opts.exact_fraction = args.exact_fraction;
  opts.threads = args.threads;
  const CongruenceReport rep = fuzz_identity(args.id, grp, opts);

  Json doc;
  doc["schema"] = 1;
  doc["command"] = "congruence";
  doc["identity"] = rep.identity;
  doc["group"] = rep.group;
  doc["seed"] = args.seed;
  doc["trials_requested"] = rep.trials_requested;
  doc["trials_run"] = rep.trials_run;
  doc["skips"] = rep.skips;
  doc["violations"] = Json::array();
  for (const Violation& v : rep.violations)
    doc["violations"].push_back(Json{{"trial", v.trial}, {"input", v.input}, {"residue", v.residue}});
  doc["pass"] = rep.pass;
  doc["status"] = rep.status;

  std::string human = rep.identity + " on " + rep.group + ": " +
                      (rep.pass ? "pass" : "FAIL") + " (" + std::to_string(rep.trials_run) +
                      " trials, " + std::to_string(rep.skips) + " skips, " +
                      std::to_string(rep.violations.size()) + " violations, status " + rep.status +
                      ")\n";
  for (const Violation& v : rep.violations)
    human += "  trial " + std::to_string(v.trial) + ": residue " + std::to_string(v.residue) +
             " for " + v.input + "\n";

  std::vector<std::string> csv = {"identity,group,trials_run,skips,violations,pass,status"};
  csv.push_back(rep.identity + "," + rep.group + "," + std::to_string(rep.trials_run) + "," +
                std::to_string(rep.skips) + "," + std::to_string(rep.violations.size()) + "," +
                (rep.pass ? "true" : "false") + "," + rep.status);
  emit(g, doc, csv, human);
  return rep.pass ? 0 : 1;
}

struct BoundsArgs {
  std::string pgroup;
  std::uint64_t a = 1;
  std::uint64_t j = 0;
  bool validate = false;
};

int run_bounds(const GlobalOpts& g, const BoundsArgs& args) {
  const PGroupSpec h = spec_of(args.pgroup);
  const std::optional<std::uint64_t> j =
      args.j ? std::optional<std::uint64_t>(args.j) : std::nullopt;
  const BoundReport rep = bound_report(h, args.a, j);

  Json doc;
  doc["schema"] = 1;
  doc["command"] = "bounds";
  doc["group"] = rep.group;
  doc["h"] = rep.h.name();
  doc["a"] = rep.a;
  doc["j"] = j ? Json(*j) : Json(nullptr);
  doc["consistent"] = rep.consistent;
  doc["invariants"] = Json::array();
  std::string human = "bounds for " + rep.group + " = " + rep.h.to_group().name() + " + C_" +
                      std::to_string(rep.a) + (rep.consistent ? "" : "  [INCONSISTENT]") + "\n";
  std::vector<std::string> csv = {"invariant,kind,value,rule,detail"};
  for (const InvariantBounds& ib : rep.invariants) {
    Json inv;
    inv["invariant"] = ib.invariant;
    const std::optional<std::uint64_t> lo = ib.best_lower();
    const std::optional<std::uint64_t> hi = ib.best_upper();
    const std::optional<std::uint64_t> ex = ib.exact_value();
    inv["best_lower"] = lo ? Json(*lo) : Json(nullptr);
    inv["best_upper"] = hi ? Json(*hi) : Json(nullptr);
    inv["exact"] = ex ? Json(*ex) : Json(nullptr);
    inv["entries"] = Json::array();
    human += "  " + ib.invariant + ": ";
    if (ex) human += "= " + std::to_string(*ex);
    else
      human += "[" + (lo ? std::to_string(*lo) : "?") + ", " + (hi ? std::to_string(*hi) : "?") +
               "]";
    human += "\n";
    for (const BoundEntry& e : ib.entries) {
      inv["entries"].push_back(Json{{"kind", bound_kind_name(e.kind)},
                                    {"value", e.value},
                                    {"rule", e.rule},
                                    {"detail", e.detail}});
      human += "    " + std::string(bound_kind_name(e.kind)) + " " + std::to_string(e.value) +
               "  (" + e.rule + ": " + e.detail + ")\n";
      csv.push_back(ib.invariant + "," + bound_kind_name(e.kind) + "," + std::to_string(e.value) +
                    "," + e.rule + "," + csv_escape(e.detail));
    }
    doc["invariants"].push_back(std::move(inv));
  }

  bool ok = rep.consistent;
  if (args.validate) {
    if (g.cache_path.empty()) fail(errc::parse_error, "--validate needs --cache or ZEROSUM_CACHE");
    const InvariantCache cache = InvariantCache::load(g.cache_path);
    const ConsistencyResult cv = cross_validate(rep, cache);
    doc["validation"] = Json::array();
    human += "  validation:\n";
    for (const ConsistencyItem& item : cv.items) {
      doc["validation"].push_back(
          Json{{"invariant", item.invariant}, {"status", item.status}, {"detail", item.detail}});
      human += "    " + item.invariant + ": " + item.status + " (" + item.detail + ")\n";
    }
    ok = ok && cv.pass;
  }
  emit(g, doc, csv, human);
  return ok ? 0 : 1;
}

int run_cache_list(const GlobalOpts& g) {
  if (g.cache_path.empty()) fail(errc::parse_error, "cache list needs --cache or ZEROSUM_CACHE");
  const InvariantCache cache = InvariantCache::load(g.cache_path);
  Json doc;
  doc["schema"] = 1;
  doc["command"] = "cache-list";
  doc["path"] = g.cache_path;
  doc["entries"] = Json::array();
  std::string human = "cache " + g.cache_path + " (" + std::to_string(cache.size()) + " entries)\n";
  std::vector<std::string> csv = {"group,invariant,value,cap,exhaustive,witness"};
  for (const InvariantResult* r : cache.list()) {
    doc["entries"].push_back(Json{{"group", r->group.name()},
                                  {"invariant", r->invariant},
                                  {"value", r->value ? Json(*r->value) : Json(nullptr)},
                                  {"cap", r->cap},
                                  {"exhaustive", r->exhaustive},
                                  {"witness", r->witness.has_value()}});
    human += "  " + r->group.name() + " " + r->invariant + " = " +
             (r->value ? std::to_string(*r->value) : "> " + std::to_string(r->cap)) +
             (r->exhaustive ? "" : " (sampled)") + (r->witness ? " +witness" : "") + "\n";
    csv.push_back(r->group.name() + "," + r->invariant + "," +
                  (r->value ? std::to_string(*r->value) : "") + "," + std::to_string(r->cap) +
                  "," + (r->exhaustive ? "true" : "false") + "," +
                  (r->witness ? "true" : "false"));
  }
  emit(g, doc, csv, human);
  return 0;
}

int run_cache_verify(const GlobalOpts& g) {
  if (g.cache_path.empty()) fail(errc::parse_error, "cache verify needs --cache or ZEROSUM_CACHE");
  // load() itself re-verifies every witness and throws errc::cache_corrupt.
  const InvariantCache cache = InvariantCache::load(g.cache_path);
  Json doc;
  doc["schema"] = 1;
  doc["command"] = "cache-verify";
  doc["path"] = g.cache_path;
  doc["entries"] = Json::array();
  bool ok = true;
  std::string human;
  std::vector<std::string> csv = {"group,invariant,status"};
  for (const InvariantResult* r : cache.list()) {
    const bool good = !r->witness || verify_witness(*r);
    ok = ok && good;
    const std::string status = !r->witness ? "no-witness" : (good ? "verified" : "FAILED");
    doc["entries"].push_back(
        Json{{"group", r->group.name()}, {"invariant", r->invariant}, {"status", status}});
    human += "  " + r->group.name() + " " + r->invariant + ": " + status + "\n";
    csv.push_back(r->group.name() + "," + r->invariant + "," + status);
  }
  doc["pass"] = ok;
  human = "cache " + g.cache_path + ": " + (ok ? "all witnesses verified" : "FAILURES") + "\n" +
          human;
  emit(g, doc, csv, human);
  return ok ? 0 : 1;
}

bool usage_error(errc code) {
  switch (code) {
    case errc::cap_exceeded:
    case errc::budget_exceeded:
    case errc::cache_corrupt:
      return false;
    default:
      return true;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-sum invariants of finite abelian groups"};
  app.require_subcommand(1);

  GlobalOpts g;
  bool json_flag = false, csv_flag = false;
  app.add_flag("--json", json_flag, "machine-readable JSON on stdout");
  app.add_flag("--csv", csv_flag, "flat CSV projection of the JSON");
  if (const char* env = std::getenv("ZEROSUM_CACHE")) g.cache_path = env;
  app.add_option("--cache", g.cache_path, "invariant cache file (env ZEROSUM_CACHE)");

  std::string group_spec;
  CLI::App* cmd_group = app.add_subcommand("group", "group inspection");
  cmd_group->require_subcommand(1);
  CLI::App* cmd_info = cmd_group->add_subcommand("info", "parse and describe a group");
  cmd_info->add_option("spec", group_spec, "group spec, e.g. C3*C9 or p=3;a=1,2")->required();
  CLI::App* cmd_classify =
      cmd_group->add_subcommand("classify", "rank-two-like classification of a p-group");
  cmd_classify->add_option("spec", group_spec, "p-group spec")->required();

  CountArgs count_args;
  CLI::App* cmd_count = app.add_subcommand("count", "zero-sum profile of sequences in a file");
  cmd_count->add_option("--file", count_args.file, "sequence file")->required();
  cmd_count->add_option("--mode", count_args.mode, "exact or modular (default exact)");
  cmd_count->add_option("--modulus", count_args.modulus, "modulus for modular mode");
  cmd_count->add_option("--lengths", count_args.lengths, "also test for zero-sums in this set");
  cmd_count->add_option("--budget", count_args.budget, "work budget");

  InvariantArgs inv_args;
  CLI::App* cmd_inv = app.add_subcommand("invariant", "compute an s_L invariant by search");
  cmd_inv->add_option("--kind", inv_args.kind,
                      "D, eta, s, s_interval, s_interval_plus_N, or s_L")
      ->required();
  cmd_inv->add_option("--group", inv_args.group, "group spec")->required();
  cmd_inv->add_option("--j", inv_args.j, "interval start for s_interval kinds");
  cmd_inv->add_option("--lengths", inv_args.lengths, "length set for kind s_L, e.g. [2,3] or {4}");
  cmd_inv->add_option("--cap", inv_args.cap, "search ceiling (default 4*exp+2*|G|)");
  cmd_inv->add_option("--budget", inv_args.budget, "extension budget");
  cmd_inv->add_option("--threads", inv_args.threads, "worker threads (0 = hardware)");
  cmd_inv->add_option("--mode", inv_args.mode, "exhaustive or sampled");
  cmd_inv->add_option("--samples", inv_args.samples, "samples per length in sampled mode");
  cmd_inv->add_option("--seed", inv_args.seed, "rng seed in sampled mode");
  cmd_inv->add_option("--witness-out", inv_args.witness_out, "write witness as a sequence file");
  cmd_inv->add_flag("--refresh", inv_args.refresh, "recompute even on cache hit");

  CongruenceArgs cong_args;
  CLI::App* cmd_cong = app.add_subcommand("congruence", "fuzz a congruence identity");
  cmd_cong->add_option("--id", cong_args.id, "identity id (see --list)");
  cmd_cong->add_option("--group", cong_args.group, "group spec");
  cmd_cong->add_option("--trials", cong_args.trials, "number of trials");
  cmd_cong->add_option("--seed", cong_args.seed, "rng seed");
  cmd_cong->add_option("--rejection-cap", cong_args.rejection_cap,
                       "sampling attempts per premise-conditioned trial");
  cmd_cong->add_option("--exact-fraction", cong_args.exact_fraction,
                       "share of trials recomputed with exact counts");
  cmd_cong->add_option("--threads", cong_args.threads, "worker threads");
  cmd_cong->add_flag("--list", cong_args.list, "list identity ids");

  BoundsArgs bounds_args;
  CLI::App* cmd_bounds = app.add_subcommand("bounds", "theorem-driven bound report");
  cmd_bounds->add_option("--pgroup", bounds_args.pgroup, "p-group part H")->required();
  cmd_bounds->add_option("--a", bounds_args.a, "coprime cyclic factor order (default 1)");
  cmd_bounds->add_option("--j", bounds_args.j, "also bound s_interval at this j");
  cmd_bounds->add_flag("--validate", bounds_args.validate, "cross-check against the cache");

  CLI::App* cmd_cache = app.add_subcommand("cache", "invariant cache maintenance");
  cmd_cache->require_subcommand(1);
  CLI::App* cmd_cache_list = cmd_cache->add_subcommand("list", "list cached results");
  CLI::App* cmd_cache_verify = cmd_cache->add_subcommand("verify", "re-verify cached witnesses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e);
    app.exit(e);
    return 2;
  }
  if (json_flag && csv_flag) {
    std::cerr << "--json and --csv are mutually exclusive\n";
    return 2;
  }
  if (json_flag) g.style = OutputStyle::json;
  if (csv_flag) g.style = OutputStyle::csv;

  try {
    if (cmd_info->parsed()) return run_group_info(g, group_spec);
    if (cmd_classify->parsed()) return run_group_classify(g, group_spec);
    if (cmd_count->parsed()) return run_count(g, count_args);
    if (cmd_inv->parsed()) return run_invariant(g, inv_args);
    if (cmd_cong->parsed()) {
      if (!cong_args.list && (cong_args.id.empty() || cong_args.group.empty())) {
        std::cerr << "congruence needs --id and --group (or --list)\n";
        return 2;
      }
      return run_congruence(g, cong_args);
    }
    if (cmd_bounds->parsed()) return run_bounds(g, bounds_args);
    if (cmd_cache_list->parsed()) return run_cache_list(g);
    if (cmd_cache_verify->parsed()) return run_cache_verify(g);
  } catch (const zsum::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
