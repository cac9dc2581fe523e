// ibiskit command line: permutation-group analysis around irredundant bases.
//
// Group specs:   catalog:NAME | file:PATH
// Action specs:  natural | subsets:K | cosets:file:PATH
// Subgroup specs (t2/t3/coset-action): catalog:NAME | file:PATH | stab:P
//
// Exit codes: 0 decided/constructed, 2 undecided (budget or fruitless random
// search), 1 usage or input errors.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ibiskit/action.hpp"
#include "ibiskit/catalog.hpp"
#include "ibiskit/errors.hpp"
#include "ibiskit/group.hpp"
#include "ibiskit/ibis.hpp"

using nlohmann::json;
using namespace ibiskit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUndecided = 2;

struct CommonOpts {
  std::string group_spec;
  std::string action_spec = "natural";
  std::string catalog_dir;
  std::uint64_t seed = 0;
  std::uint64_t node_budget = 100'000'000;
  std::uint64_t index_cap = 1'000'000;
  unsigned threads = 1;
  bool json_out = false;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_action = true) {
  cmd->add_option("group", o.group_spec,
                  "group spec: catalog:NAME or file:PATH")->required();
  if (with_action)
    cmd->add_option("--action", o.action_spec,
                    "natural | subsets:K | cosets:file:PATH");
  cmd->add_option("--catalog-dir", o.catalog_dir,
                  "catalog directory (else $IBISKIT_CATALOG_DIR)");
  cmd->add_option("--seed", o.seed, "64-bit seed for randomized searches");
  cmd->add_option("--node-budget", o.node_budget,
                  "search-tree node budget (default 1e8)");
  cmd->add_option("--index-cap", o.index_cap,
                  "cap on induced-action degree (default 1e6)");
  cmd->add_option("--threads", o.threads,
                  "worker threads for the representative search");
  cmd->add_flag("--json", o.json_out, "machine-readable output, no timings");
  cmd->add_option("--out", o.out_path, "also write the result to this file");
}

Group resolve_group(const std::string& spec, const std::string& catalog_dir) {
  if (spec.rfind("catalog:", 0) == 0)
    return load_catalog(spec.substr(8), catalog_dir);
  if (spec.rfind("file:", 0) == 0) return load_group_file(spec.substr(5));
  throw Error("bad group spec '" + spec + "' (want catalog:NAME or file:PATH)");
}

Group resolve_subgroup(const std::string& spec, const Group& parent,
                       const std::string& catalog_dir) {
  if (spec.rfind("stab:", 0) == 0) {
    const long long p = std::stoll(spec.substr(5));
    if (p < 1 || p > static_cast<long long>(parent.degree()))
      throw Error("stab: point out of range");
    return parent.point_stabilizer(static_cast<Point>(p - 1));
  }
  Group sub = resolve_group(spec, catalog_dir);
  if (!sub.is_subgroup_of(parent))
    throw NotASubgroupError("'" + spec + "' is not a subgroup of the group");
  return sub;
}

struct Resolved {
  Group analyzed = Group::trivial(1);
  std::optional<ActionMap> action;
  std::string descriptor;
};

Resolved resolve(const CommonOpts& o) {
  Group source = resolve_group(o.group_spec, o.catalog_dir);
  Resolved r;
  r.descriptor = o.group_spec + "|" + o.action_spec;
  if (o.action_spec == "natural") {
    r.analyzed = std::move(source);
    return r;
  }
  if (o.action_spec.rfind("subsets:", 0) == 0) {
    const long long k = std::stoll(o.action_spec.substr(8));
    if (k < 1) throw Error("subsets: size must be >= 1");
    r.action = subset_action(source, static_cast<Point>(k), o.index_cap);
    r.analyzed = r.action->image_group();
    return r;
  }
  if (o.action_spec.rfind("cosets:file:", 0) == 0) {
    Group sub = load_group_file(o.action_spec.substr(12));
    r.action = coset_action(source, sub, o.index_cap);
    r.analyzed = r.action->image_group();
    return r;
  }
  throw Error("bad action spec '" + o.action_spec +
              "' (want natural, subsets:K or cosets:file:PATH)");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start).count();
  }
};

void maybe_write(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) return;
  std::ofstream f(o.out_path);
  if (!f) throw Error("cannot write " + o.out_path);
  f << text;
}

int emit_certificate(const CommonOpts& o, const IbisCertificate& cert,
                     const Timer& timer) {
  const std::string text = certificate_to_json(cert);
  maybe_write(o, text);
  if (o.json_out) {
    std::cout << text;
  } else {
    std::cout << "group      " << cert.group_descriptor << "\n"
              << "degree     " << cert.degree << "\n"
              << "order      " << order_to_string(cert.order) << "\n"
              << "b          " << cert.base_size << "\n"
              << "decision   " << to_string(cert.decision) << "\n"
              << "method     " << to_string(cert.method) << "\n"
              << "seed       " << cert.seed << "\n";
    if (cert.witness) {
      std::cout << "witness    points";
      for (Point p : cert.witness->points) std::cout << ' ' << (p + 1);
      std::cout << "\n           orders";
      for (GroupOrder v : cert.witness->stab_orders)
        std::cout << ' ' << order_to_string(v);
      std::cout << "\n";
    }
    for (std::size_t i = 0; i < cert.t2_conjugators.size(); ++i)
      std::cout << "conjugator " << cert.t2_conjugators[i] << "\n";
    std::cout << "nodes      " << cert.stats.nodes << "\n"
              << "reps       " << cert.stats.reps_examined << "\n"
              << "time       " << timer.seconds() << "s\n";
  }
  return cert.decision == Decision::kUndecided ? kExitUndecided : kExitOk;
}

// ---------------------------------------------------------------- commands

int cmd_order(const CommonOpts& o) {
  Timer timer;
  Resolved r = resolve(o);
  if (o.json_out) {
    json j{{"group", r.descriptor},
           {"degree", r.analyzed.degree()},
           {"order", static_cast<std::uint64_t>(r.analyzed.order())}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "group  " << r.descriptor << "\n"
              << "degree " << r.analyzed.degree() << "\n"
              << "order  " << order_to_string(r.analyzed.order()) << "\n"
              << "time   " << timer.seconds() << "s\n";
  }
  return kExitOk;
}

int cmd_base_size(const CommonOpts& o) {
  Timer timer;
  Resolved r = resolve(o);
  std::uint64_t nodes = 0;
  const std::uint32_t b = base_size(r.analyzed, o.node_budget, &nodes);
  if (o.json_out) {
    json j{{"group", r.descriptor},
           {"degree", r.analyzed.degree()},
           {"order", static_cast<std::uint64_t>(r.analyzed.order())},
           {"b", b},
           {"nodes", nodes}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "group  " << r.descriptor << "\nb      " << b << "\nnodes  "
              << nodes << "\ntime   " << timer.seconds() << "s\n";
  }
  return kExitOk;
}

int cmd_is_ibis(const CommonOpts& o) {
  Timer timer;
  Resolved r = resolve(o);
  IbisCertificate cert =
      is_ibis(r.analyzed, {o.node_budget, o.threads}, r.descriptor);
  return emit_certificate(o, cert, timer);
}

int cmd_enumerate(const CommonOpts& o, std::uint32_t length,
                  const std::string& mode_name, std::uint64_t limit) {
  Timer timer;
  Resolved r = resolve(o);
  const EnumerationMode mode = mode_name == "all"
                                   ? EnumerationMode::kAll
                                   : EnumerationMode::kRepresentatives;
  std::uint32_t len = length ? length : base_size(r.analyzed, o.node_budget);
  json tuples = json::array();
  EnumerationResult res = enumerate_irredundant_tuples(
      r.analyzed, len, mode, o.node_budget,
      [&](const IrredundantTuple& t) {
        json jt;
        jt["points"] = json::array();
        for (Point p : t.points) jt["points"].push_back(p + 1);
        jt["stab_orders"] = json::array();
        for (GroupOrder v : t.stab_orders)
          jt["stab_orders"].push_back(static_cast<std::uint64_t>(v));
        tuples.push_back(std::move(jt));
        return limit == 0 || tuples.size() < limit;
      });
  json j{{"group", r.descriptor}, {"length", len},
         {"mode", mode_name},     {"count", res.emitted},
         {"nodes", res.nodes},    {"completed", res.completed},
         {"tuples", tuples}};
  const std::string text = j.dump(2) + "\n";
  maybe_write(o, text);
  if (o.json_out) {
    std::cout << text;
  } else {
    std::cout << "group " << r.descriptor << ", length " << len << ", mode "
              << mode_name << "\n";
    for (const auto& jt : tuples) {
      std::cout << "  (";
      for (std::size_t i = 0; i < jt["points"].size(); ++i)
        std::cout << (i ? " " : "") << jt["points"][i].get<std::uint64_t>();
      std::cout << ") orders";
      for (const auto& v : jt["stab_orders"])
        std::cout << ' ' << v.get<std::uint64_t>();
      std::cout << "\n";
    }
    std::cout << "count " << res.emitted << (res.completed ? "" : " (partial)")
              << ", nodes " << res.nodes << ", time " << timer.seconds()
              << "s\n";
  }
  return res.completed ? kExitOk : kExitUndecided;
}

int cmd_matroid_check(const CommonOpts& o) {
  Timer timer;
  Resolved r = resolve(o);
  BaseMatroid m = extract_matroid(r.analyzed, o.node_budget);
  ExchangeReport ex = verify_base_exchange(m);
  json j{{"group", r.descriptor},
         {"ground_degree", m.ground_degree},
         {"base_count", m.bases.size()},
         {"uniform_size", m.uniform_size()},
         {"exchange_ok", ex.ok}};
  if (!ex.ok) {
    auto one_based = [](const std::vector<Point>& v) {
      json a = json::array();
      for (Point p : v) a.push_back(p + 1);
      return a;
    };
    j["size_mismatch"] = ex.size_mismatch;
    j["base_a"] = one_based(ex.base_a);
    j["base_b"] = one_based(ex.base_b);
    if (ex.element) j["element"] = *ex.element + 1;
  }
  const std::string text = j.dump(2) + "\n";
  maybe_write(o, text);
  if (o.json_out) {
    std::cout << text;
  } else {
    std::cout << "group      " << r.descriptor << "\n"
              << "bases      " << m.bases.size() << "\n"
              << "uniform    " << (m.uniform_size() ? "yes" : "no") << "\n"
              << "exchange   " << (ex.ok ? "holds" : "fails") << "\n"
              << "time       " << timer.seconds() << "s\n";
    if (!ex.ok && ex.size_mismatch) std::cout << "reason     size mismatch\n";
  }
  return kExitOk;
}

int cmd_reorder_check(const CommonOpts& o, const std::string& points_text,
                      bool scan) {
  Timer timer;
  Resolved r = resolve(o);
  json j{{"group", r.descriptor}};
  bool invariant;
  if (scan) {
    UniversalReorderReport rep =
        check_all_reorderings(r.analyzed, o.node_budget);
    invariant = rep.invariant;
    j["scan"] = true;
    j["bases_checked"] = rep.bases_checked;
    j["invariant"] = rep.invariant;
    if (!rep.invariant) {
      json pts = json::array();
      for (Point p : rep.failing_base->points) pts.push_back(p + 1);
      j["failing_base"] = pts;
      j["failing_order"] = rep.failing_order;
    }
  } else {
    std::vector<Point> points;
    std::string token;
    std::istringstream is(points_text);
    while (std::getline(is, token, ',')) {
      const long long v = std::stoll(token);
      if (v < 1 || v > static_cast<long long>(r.analyzed.degree()))
        throw Error("reorder-check: point out of range: " + token);
      points.push_back(static_cast<Point>(v - 1));
    }
    IrredundantTuple t{points, stabilizer_order_chain(r.analyzed, points)};
    ReorderReport rep = check_reorder_invariance(r.analyzed, t, o.node_budget);
    invariant = rep.invariant;
    j["invariant"] = rep.invariant;
    if (!rep.invariant) j["failing_order"] = rep.failing_order;
  }
  const std::string text = j.dump(2) + "\n";
  maybe_write(o, text);
  if (o.json_out)
    std::cout << text;
  else
    std::cout << "invariant " << (invariant ? "yes" : "no") << ", time "
              << timer.seconds() << "s\n";
  return kExitOk;
}

int cmd_primitivity(const CommonOpts& o) {
  Timer timer;
  Resolved r = resolve(o);
  PrimitivityReport rep = primitivity(r.analyzed);
  json j{{"group", r.descriptor}};
  std::string kind;
  switch (rep.kind) {
    case Primitivity::kPrimitive: kind = "primitive"; break;
    case Primitivity::kImprimitive: kind = "imprimitive"; break;
    case Primitivity::kIntransitive: kind = "intransitive"; break;
  }
  j["result"] = kind;
  if (rep.block) {
    json b = json::array();
    for (Point p : rep.block->members) b.push_back(p + 1);
    j["block"] = b;
  }
  const std::string text = j.dump(2) + "\n";
  maybe_write(o, text);
  if (o.json_out)
    std::cout << text;
  else {
    std::cout << kind;
    if (rep.block) std::cout << " block=" << format_point_set(*rep.block);
    std::cout << ", time " << timer.seconds() << "s\n";
  }
  return kExitOk;
}

int cmd_coset_action(const CommonOpts& o, const std::string& subgroup_spec,
                     const std::string& out_prefix) {
  Timer timer;
  Group g = resolve_group(o.group_spec, o.catalog_dir);
  Group h = resolve_subgroup(subgroup_spec, g, o.catalog_dir);
  ActionMap action = coset_action(g, h, o.index_cap);
  export_action(action, out_prefix + ".grp", out_prefix + ".labels");
  json j{{"group", o.group_spec},
         {"subgroup", subgroup_spec},
         {"degree", action.target_degree},
         {"faithful", is_faithful(action)},
         {"group_file", out_prefix + ".grp"},
         {"labels_file", out_prefix + ".labels"}};
  if (o.json_out)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << "degree " << action.target_degree << ", faithful "
              << (is_faithful(action) ? "yes" : "no") << ", wrote "
              << out_prefix << ".grp/.labels, time " << timer.seconds()
              << "s\n";
  return kExitOk;
}

int cmd_t1(const CommonOpts& o, std::uint32_t target, std::uint64_t max_iters,
           std::uint32_t known_b) {
  Timer timer;
  Resolved r = resolve(o);
  const std::uint32_t b =
      known_b ? known_b : base_size(r.analyzed, o.node_budget);
  const std::uint32_t goal = target ? target : b;
  std::optional<IrredundantTuple> found =
      t1_random_search(r.analyzed, goal, o.seed, max_iters);
  if (!found) {
    IbisCertificate cert =
        make_undecided_certificate(r.analyzed, Method::kT1, b, o.seed,
                                   r.descriptor);
    std::cerr << "t1: no witness found in " << max_iters << " draws\n";
    return emit_certificate(o, cert, timer);
  }
  IbisCertificate cert =
      make_t1_certificate(r.analyzed, b, *found, o.seed, r.descriptor);
  if (cert.witness->points.size() == b) {
    std::cerr << "t1: found tuple extends to a base of length b; no "
                 "conclusion\n";
    IbisCertificate undecided = make_undecided_certificate(
        r.analyzed, Method::kT1, b, o.seed, r.descriptor);
    return emit_certificate(o, undecided, timer);
  }
  return emit_certificate(o, cert, timer);
}

int cmd_t2(const CommonOpts& o, const std::string& subgroup_spec,
           std::uint32_t length, std::uint64_t max_iters,
           std::uint64_t intersect_budget) {
  Timer timer;
  if (o.action_spec != "natural")
    throw Error("t2 works on the group itself; drop --action");
  Group g = resolve_group(o.group_spec, o.catalog_dir);
  Group h = resolve_subgroup(subgroup_spec, g, o.catalog_dir);
  std::optional<ConjugateChain> chain =
      t2_conjugate_chain(g, h, length, o.seed, max_iters, intersect_budget);
  const std::string descriptor =
      o.group_spec + "|cosets-of:" + subgroup_spec;
  if (!chain) {
    IbisCertificate cert = make_undecided_certificate(g, Method::kT2, length,
                                                      o.seed, descriptor);
    std::cerr << "t2: no descending chain found in " << max_iters
              << " draws\n";
    return emit_certificate(o, cert, timer);
  }
  IbisCertificate cert = make_t2_certificate(g, *chain, length, o.seed,
                                             descriptor, subgroup_spec);
  return emit_certificate(o, cert, timer);
}

int cmd_t3(const CommonOpts& o, const std::string& restrict_spec,
           std::uint32_t target, std::uint64_t max_iters,
           std::uint32_t known_b) {
  Timer timer;
  Resolved r = resolve(o);
  Group source = resolve_group(o.group_spec, o.catalog_dir);
  Group k_source = resolve_subgroup(restrict_spec, source, o.catalog_dir);
  Group restriction = Group::trivial(r.analyzed.degree());
  if (r.action) {
    std::vector<Perm> images;
    images.reserve(k_source.generators().size());
    for (const Perm& gen : k_source.generators())
      images.push_back(act_on_points(*r.action, gen));
    restriction = Group(r.analyzed.degree(), std::move(images));
  } else {
    restriction = k_source;
  }
  const std::uint32_t b =
      known_b ? known_b : base_size(r.analyzed, o.node_budget);
  const std::uint32_t goal = target ? target : b;
  std::optional<RestrictedTuple> found =
      t3_restricted_search(r.analyzed, restriction, goal, o.seed, max_iters);
  if (!found) {
    IbisCertificate cert = make_undecided_certificate(r.analyzed, Method::kT3,
                                                      b, o.seed, r.descriptor);
    std::cerr << "t3: no witness found in " << max_iters << " draws\n";
    return emit_certificate(o, cert, timer);
  }
  IbisCertificate cert =
      make_t3_certificate(r.analyzed, b, *found, o.seed, r.descriptor);
  return emit_certificate(o, cert, timer);
}

int cmd_reproduce_theorem(const CommonOpts& o, bool with_large_controls) {
  Timer timer;
  struct Row {
    std::string name;
    std::string action;
    Decision expected;
    std::uint32_t expected_b;  // 0 = no exact value asserted
  };
  std::vector<Row> rows = {
      {"M11", "natural", Decision::kIbis, 4},
      {"M12", "natural", Decision::kIbis, 5},
      {"M22", "natural", Decision::kIbis, 5},
      {"M23", "natural", Decision::kIbis, 6},
      {"M24", "natural", Decision::kIbis, 7},
      {"M11", "subsets:2", Decision::kNotIbis, 0},
      {"M12", "subsets:2", Decision::kNotIbis, 0},
  };
  if (with_large_controls)
    rows.push_back({"M24", "subsets:2", Decision::kNotIbis, 0});

  const std::vector<std::string> excluded = {"Ly", "J4", "Th", "M", "B"};
  json jrows = json::array();
  bool all_pass = true;
  if (!o.json_out)
    std::cout << "group  action     degree  order      b  decision  expected  "
                 "verdict\n";
  for (const Row& row : rows) {
    CommonOpts sub = o;
    sub.group_spec = "catalog:" + row.name;
    sub.action_spec = row.action;
    Resolved r = resolve(sub);
    IbisCertificate cert =
        is_ibis(r.analyzed, {o.node_budget, o.threads}, r.descriptor);
    bool pass = cert.decision == row.expected &&
                (row.expected_b == 0 || cert.base_size == row.expected_b);
    all_pass = all_pass && pass;
    json jr{{"group", row.name},
            {"action", row.action},
            {"degree", cert.degree},
            {"order", static_cast<std::uint64_t>(cert.order)},
            {"b", cert.base_size},
            {"decision", to_string(cert.decision)},
            {"expected_decision", to_string(row.expected)},
            {"pass", pass}};
    if (row.expected_b) jr["expected_b"] = row.expected_b;
    jrows.push_back(std::move(jr));
    if (!o.json_out) {
      std::string expect = to_string(row.expected);
      if (row.expected_b) expect += " b=" + std::to_string(row.expected_b);
      std::cout << row.name << "  " << row.action << "  " << cert.degree
                << "  " << order_to_string(cert.order) << "  "
                << cert.base_size << "  " << to_string(cert.decision) << "  "
                << expect << "  " << (pass ? "PASS" : "FAIL") << "\n";
    }
  }
  json j{{"rows", jrows}, {"all_pass", all_pass}, {"excluded", excluded},
         {"exclusion_note",
          "The coset actions with socle Ly, J4, Th, M or B are out of scope "
          "at this scale: deciding them needs huge matrix representations "
          "and external subgroup data, far beyond desk-size permutation "
          "computations."}};
  const std::string text = j.dump(2) + "\n";
  maybe_write(o, text);
  if (o.json_out) {
    std::cout << text;
  } else {
    std::cout << "excluded cases: Ly, J4, Th, M, B (need huge matrix "
                 "representations and external subgroup data; not "
                 "reproducible at desk scale)\n"
              << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << ", time "
              << timer.seconds() << "s\n";
  }
  return all_pass ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ibiskit: irredundant-base and IBIS analysis for permutation groups"};
  app.require_subcommand(1);

  CommonOpts order_o, bsize_o, ibis_o, enum_o, matroid_o, reorder_o, prim_o,
      coset_o, t1_o, t2_o, t3_o, thm_o;

  add_common(app.add_subcommand("order", "group order"), order_o);
  add_common(app.add_subcommand("base-size", "minimum base size b(G)"), bsize_o);
  add_common(app.add_subcommand("is-ibis",
                                "decide whether all irredundant bases have "
                                "equal size; emits a certificate"),
             ibis_o);

  std::uint32_t enum_length = 0;
  std::string enum_mode = "reps";
  std::uint64_t enum_limit = 0;
  auto* enum_cmd = app.add_subcommand("enumerate-bases",
                                      "list irredundant tuples of a given length");
  add_common(enum_cmd, enum_o);
  enum_cmd->add_option("--length", enum_length, "tuple length (default b(G))");
  enum_cmd->add_option("--mode", enum_mode, "reps | all");
  enum_cmd->add_option("--limit", enum_limit, "stop after this many tuples");

  add_common(app.add_subcommand("matroid-check",
                                "collect base sets and verify the exchange axiom"),
             matroid_o);

  std::string reorder_points;
  bool reorder_scan = false;
  auto* reorder_cmd = app.add_subcommand("reorder-check",
                                         "reorder-invariance of irredundant bases");
  add_common(reorder_cmd, reorder_o);
  reorder_cmd->add_option("--points", reorder_points,
                          "comma-separated 1-based base points");
  reorder_cmd->add_flag("--scan", reorder_scan,
                        "scan every base instead of checking one tuple");

  add_common(app.add_subcommand("primitivity", "block-system test"), prim_o);

  std::string coset_subgroup, coset_prefix = "action";
  auto* coset_cmd = app.add_subcommand("coset-action",
                                       "build and export the action on cosets");
  add_common(coset_cmd, coset_o, /*with_action=*/false);
  coset_cmd->add_option("--subgroup", coset_subgroup,
                        "catalog:NAME | file:PATH | stab:P")->required();
  coset_cmd->add_option("--out-prefix", coset_prefix,
                        "write PREFIX.grp and PREFIX.labels");

  std::uint32_t t1_target = 0, t1_known_b = 0;
  std::uint64_t t1_iters = 100'000;
  auto* t1_cmd = app.add_subcommand("t1",
                                    "random search for a stuck partial base");
  add_common(t1_cmd, t1_o);
  t1_cmd->add_option("--target", t1_target, "tuple length (default b(G))");
  t1_cmd->add_option("--max-iters", t1_iters, "random draws before giving up");
  t1_cmd->add_option("--known-base-size", t1_known_b,
                     "externally known b(G); skips computing it");

  std::string t2_subgroup;
  std::uint32_t t2_length = 0;
  std::uint64_t t2_iters = 2'000, t2_budget = 1'000'000;
  auto* t2_cmd = app.add_subcommand(
      "t2", "descending chain of conjugate-subgroup intersections");
  add_common(t2_cmd, t2_o);
  t2_cmd->add_option("--subgroup", t2_subgroup,
                     "catalog:NAME | file:PATH | stab:P")->required();
  t2_cmd->add_option("--length", t2_length,
                     "chain length (the known base size of the coset action)")
      ->required();
  t2_cmd->add_option("--max-iters", t2_iters, "random draws before giving up");
  t2_cmd->add_option("--intersect-budget", t2_budget,
                     "node budget per subgroup intersection");

  std::string t3_restrict;
  std::uint32_t t3_target = 0, t3_known_b = 0;
  std::uint64_t t3_iters = 100'000;
  auto* t3_cmd = app.add_subcommand(
      "t3", "search restricted to a subgroup acting on the same points");
  add_common(t3_cmd, t3_o);
  t3_cmd->add_option("--restrict-to", t3_restrict,
                     "subgroup of the source group: catalog:NAME | file:PATH "
                     "| stab:P")->required();
  t3_cmd->add_option("--target", t3_target,
                     "find a restricted base longer than this (default b(G))");
  t3_cmd->add_option("--max-iters", t3_iters, "random draws before giving up");
  t3_cmd->add_option("--known-base-size", t3_known_b,
                     "externally known b(G); skips computing it");

  bool thm_large = false;
  auto* thm_cmd = app.add_subcommand(
      "reproduce-theorem",
      "IBIS classification for the Mathieu natural actions, with controls");
  add_common(thm_cmd, thm_o, /*with_action=*/false);
  thm_cmd->get_option("group")->required(false);
  thm_cmd->add_flag("--with-large-controls", thm_large,
                    "also run the degree-276 pairs action of M24");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("order")) return cmd_order(order_o);
    if (app.got_subcommand("base-size")) return cmd_base_size(bsize_o);
    if (app.got_subcommand("is-ibis")) return cmd_is_ibis(ibis_o);
    if (app.got_subcommand("enumerate-bases"))
      return cmd_enumerate(enum_o, enum_length, enum_mode, enum_limit);
    if (app.got_subcommand("matroid-check")) return cmd_matroid_check(matroid_o);
    if (app.got_subcommand("reorder-check"))
      return cmd_reorder_check(reorder_o, reorder_points, reorder_scan);
    if (app.got_subcommand("primitivity")) return cmd_primitivity(prim_o);
    if (app.got_subcommand("coset-action"))
      return cmd_coset_action(coset_o, coset_subgroup, coset_prefix);
    if (app.got_subcommand("t1"))
      return cmd_t1(t1_o, t1_target, t1_iters, t1_known_b);
    if (app.got_subcommand("t2"))
      return cmd_t2(t2_o, t2_subgroup, t2_length, t2_iters, t2_budget);
    if (app.got_subcommand("t3"))
      return cmd_t3(t3_o, t3_restrict, t3_target, t3_iters, t3_known_b);
    if (app.got_subcommand("reproduce-theorem"))
      return cmd_reproduce_theorem(thm_o, thm_large);
  } catch (const BudgetExhaustedError& e) {
    std::cerr << "UNDECIDED: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
