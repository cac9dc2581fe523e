#include "ibiskit/ibis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "ibiskit/errors.hpp"
#include "ibiskit/rng.hpp"

namespace ibiskit {

bool IrredundantTuple::strictly_decreasing() const {
  if (stab_orders.size() != points.size() + 1) return false;
  for (std::size_t i = 0; i + 1 < stab_orders.size(); ++i)
    if (stab_orders[i + 1] >= stab_orders[i]) return false;
  return true;
}

bool IrredundantTuple::is_full_base() const {
  return strictly_decreasing() && stab_orders.back() == 1;
}

std::vector<GroupOrder> stabilizer_order_chain(const Group& g,
                                               std::span<const Point> points) {
  std::vector<GroupOrder> orders{g.order()};
  Group s = g;
  for (Point p : points) {
    s = s.point_stabilizer(p);
    orders.push_back(s.order());
  }
  return orders;
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::kIbis: return "IBIS";
    case Decision::kNotIbis: return "NOT_IBIS";
    case Decision::kUndecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kExhaustive: return "EXHAUSTIVE";
    case Method::kT1: return "T1";
    case Method::kT2: return "T2";
    case Method::kT3: return "T3";
  }
  return "EXHAUSTIVE";
}

void IbisCertificate::validate() const {
  switch (decision) {
    case Decision::kIbis:
      if (method != Method::kExhaustive)
        throw Error("certificate: IBIS may only be claimed by the exhaustive method");
      if (witness)
        throw Error("certificate: IBIS certificates carry no witness");
      break;
    case Decision::kNotIbis: {
      if (!witness) throw Error("certificate: NOT_IBIS requires a witness");
      if (method == Method::kT2) {
        if (t2_conjugators.empty())
          throw Error("certificate: T2 requires conjugating elements");
        if (!witness->points.empty() ||
            witness->stab_orders.size() != t2_conjugators.size() + 1)
          throw Error("certificate: T2 witness shape mismatch");
        for (std::size_t i = 0; i + 1 < witness->stab_orders.size(); ++i)
          if (witness->stab_orders[i + 1] >= witness->stab_orders[i])
            throw Error("certificate: T2 order chain does not descend");
        if (witness->stab_orders.back() <= 1)
          throw Error("certificate: T2 final intersection must be nontrivial");
      } else {
        if (!witness->strictly_decreasing())
          throw Error("certificate: witness chain does not strictly descend");
        const bool full_other_length =
            witness->is_full_base() && witness->points.size() != base_size;
        const bool partial_at_b = witness->points.size() == base_size &&
                                  witness->stab_orders.back() > 1;
        if (!full_other_length && !partial_at_b)
          throw Error("certificate: witness neither a full base of other "
                      "length nor a stuck length-b tuple");
      }
      break;
    }
    case Decision::kUndecided:
      if (witness) throw Error("certificate: UNDECIDED carries no witness");
      break;
  }
}

bool BaseMatroid::uniform_size() const {
  for (const auto& b : bases)
    if (b.size() != bases.front().size()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Shared search helpers

namespace {

Point least_moved_point(const Group& s) {
  for (Point p = 0; p < s.degree(); ++p)
    for (const Perm& g : s.generators())
      if (!g.fixes(p)) return p;
  return s.degree();
}

bool moves_point(const Group& s, Point p) {
  for (const Perm& g : s.generators())
    if (!g.fixes(p)) return true;
  return false;
}

// Least point of every orbit of size >= 2, ascending: the canonical branch
// representatives of one extension level.
std::vector<Point> representative_candidates(const Group& s) {
  std::vector<Point> out;
  for (const PointSet& orb : s.orbits())
    if (orb.size() >= 2) out.push_back(orb.members.front());
  return out;
}

std::vector<Point> all_candidates(const Group& s) {
  std::vector<Point> out;
  for (Point p = 0; p < s.degree(); ++p)
    if (moves_point(s, p)) out.push_back(p);
  return out;
}

IrredundantTuple extend_to_full_base(IrredundantTuple t, Group s) {
  while (!s.is_trivial()) {
    const Point p = least_moved_point(s);
    s = s.point_stabilizer(p);
    t.points.push_back(p);
    t.stab_orders.push_back(s.order());
  }
  return t;
}

// Fewest further points that could possibly shrink |s| to 1: base length
// grows by at least ceil(log_degree |s|).
std::uint32_t log_lower_bound(GroupOrder order, Point degree) {
  std::uint32_t k = 0;
  GroupOrder acc = 1;
  while (acc < order) {
    acc = checked_mul(acc, static_cast<GroupOrder>(degree));
    ++k;
  }
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// base_size

namespace {

struct BaseSizeSearch {
  Point degree;
  std::uint64_t budget;
  std::uint64_t* nodes;
  std::uint32_t best;

  void rec(const Group& s, std::uint32_t depth) {
    if (*nodes >= budget)
      throw BudgetExhaustedError("base_size node budget exhausted");
    ++*nodes;
    if (s.is_trivial()) {
      best = std::min(best, depth);
      return;
    }
    if (depth + log_lower_bound(s.order(), degree) >= best) return;
    for (Point p : representative_candidates(s)) rec(s.point_stabilizer(p), depth + 1);
  }
};

}  // namespace

std::uint32_t base_size(const Group& g, std::uint64_t node_budget,
                        std::uint64_t* nodes_used) {
  std::uint64_t local = 0;
  std::uint64_t* nodes = nodes_used ? nodes_used : &local;
  if (g.order() == 1) return 0;

  // Deterministic greedy base gives the initial upper bound.
  std::uint32_t greedy = 0;
  for (Group s = g; !s.is_trivial(); ++greedy)
    s = s.point_stabilizer(least_moved_point(s));

  BaseSizeSearch search{g.degree(), node_budget, nodes, greedy};
  search.rec(g, 0);
  return search.best;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

struct TupleEnumerator {
  std::uint32_t length;
  EnumerationMode mode;
  std::uint64_t budget;
  const std::function<bool(const IrredundantTuple&)>& visit;
  EnumerationResult result;
  bool stopped = false;

  void rec(const Group& s, IrredundantTuple& t, std::uint32_t depth) {
    if (stopped) return;
    if (result.nodes >= budget) {
      result.completed = false;
      stopped = true;
      return;
    }
    ++result.nodes;
    if (depth == length) {
      ++result.emitted;
      if (!visit(t)) stopped = true;
      return;
    }
    const std::vector<Point> candidates = mode == EnumerationMode::kRepresentatives
                                              ? representative_candidates(s)
                                              : all_candidates(s);
    for (Point p : candidates) {
      Group child = s.point_stabilizer(p);
      t.points.push_back(p);
      t.stab_orders.push_back(child.order());
      rec(child, t, depth + 1);
      t.points.pop_back();
      t.stab_orders.pop_back();
      if (stopped) return;
    }
  }
};

}  // namespace

EnumerationResult enumerate_irredundant_tuples(
    const Group& g, std::uint32_t length, EnumerationMode mode,
    std::uint64_t node_budget,
    const std::function<bool(const IrredundantTuple&)>& visit) {
  if (length == 0) throw Error("enumerate_irredundant_tuples: length must be >= 1");
  TupleEnumerator en{length, mode, node_budget, visit, {}, false};
  IrredundantTuple t;
  t.stab_orders = {g.order()};
  en.rec(g, t, 0);
  return en.result;
}

// ---------------------------------------------------------------------------
// is_ibis

namespace {

struct BranchResult {
  std::uint64_t nodes = 0;
  std::uint64_t reps = 0;
  std::optional<IrredundantTuple> witness;
  bool exhausted = false;
};

struct BranchSearch {
  std::uint32_t target_depth;
  std::uint64_t cap;
  BranchResult out;
  bool stopped = false;

  void rec(const Group& s, IrredundantTuple& t, std::uint32_t depth) {
    if (stopped) return;
    if (out.nodes >= cap) {
      out.exhausted = true;
      stopped = true;
      return;
    }
    ++out.nodes;
    if (depth == target_depth) {
      ++out.reps;
      if (t.stab_orders.back() > 1) {
        out.witness = extend_to_full_base(t, s);
        stopped = true;
      }
      return;
    }
    for (Point p : representative_candidates(s)) {
      Group child = s.point_stabilizer(p);
      t.points.push_back(p);
      t.stab_orders.push_back(child.order());
      rec(child, t, depth + 1);
      t.points.pop_back();
      t.stab_orders.pop_back();
      if (stopped) return;
    }
  }
};

struct BranchTask {
  Point point;
  Group stabilizer;
  GroupOrder stabilizer_order;
};

BranchResult explore_branch(const BranchTask& task,
                            const std::vector<Point>& prefix_points,
                            const std::vector<GroupOrder>& prefix_orders,
                            std::uint32_t target_depth, std::uint64_t cap) {
  BranchSearch search{target_depth, cap, {}, false};
  IrredundantTuple t;
  t.points = prefix_points;
  t.points.push_back(task.point);
  t.stab_orders = prefix_orders;
  t.stab_orders.push_back(task.stabilizer_order);
  search.rec(task.stabilizer, t, static_cast<std::uint32_t>(t.points.size()));
  return search.out;
}

}  // namespace

IbisCertificate is_ibis(const Group& g, const SearchLimits& limits,
                        const std::string& descriptor) {
  IbisCertificate cert;
  cert.group_descriptor = descriptor;
  cert.degree = g.degree();
  cert.order = g.order();
  cert.method = Method::kExhaustive;
  cert.decision = Decision::kUndecided;

  if (cert.order == 1) {  // vacuously IBIS, base size 0
    cert.decision = Decision::kIbis;
    cert.validate();
    return cert;
  }

  std::uint64_t nodes = 0;
  auto undecided = [&]() {
    cert.decision = Decision::kUndecided;
    cert.stats.nodes = limits.node_budget;
    cert.witness.reset();
    cert.validate();
    return cert;
  };

  try {
    cert.base_size = base_size(g, limits.node_budget, &nodes);
  } catch (const BudgetExhaustedError&) {
    cert.base_size = 0;
    return undecided();
  }
  const std::uint32_t b = cert.base_size;
  std::uint64_t remaining = limits.node_budget - nodes;

  // Descend through forced (single-candidate) levels, then fan out.
  std::vector<Point> prefix_points;
  std::vector<GroupOrder> prefix_orders{cert.order};
  Group stab = g;
  auto consume_one = [&]() {
    if (remaining == 0) return false;
    --remaining;
    ++nodes;
    return true;
  };
  if (!consume_one()) return undecided();
  std::vector<Point> candidates;
  while (prefix_points.size() < b) {
    candidates = representative_candidates(stab);
    if (candidates.size() != 1) break;
    Group child = stab.point_stabilizer(candidates[0]);
    prefix_points.push_back(candidates[0]);
    prefix_orders.push_back(child.order());
    stab = std::move(child);
    if (!consume_one()) return undecided();
  }

  if (prefix_points.size() == b) {  // a single representative tuple exists
    cert.stats.nodes = nodes;
    cert.stats.reps_examined = 1;
    if (prefix_orders.back() > 1) {
      cert.decision = Decision::kNotIbis;
      cert.witness = extend_to_full_base({prefix_points, prefix_orders}, stab);
    } else {
      cert.decision = Decision::kIbis;
    }
    cert.validate();
    return cert;
  }

  std::vector<BranchTask> tasks;
  tasks.reserve(candidates.size());
  for (Point p : candidates) {
    Group child = stab.point_stabilizer(p);
    GroupOrder child_order = child.order();
    tasks.push_back({p, std::move(child), child_order});
  }

  const unsigned threads = std::max(1u, limits.threads);
  std::vector<BranchResult> results(tasks.size());
  std::size_t at = 0;
  while (at < tasks.size()) {
    const std::size_t wave_end = std::min(at + threads, tasks.size());
    const std::uint64_t optimistic_cap = remaining;
    if (wave_end - at == 1 || threads == 1) {
      for (std::size_t j = at; j < wave_end; ++j)
        results[j] = explore_branch(tasks[j], prefix_points, prefix_orders, b,
                                    optimistic_cap);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t j = at; j < wave_end; ++j)
        pool.emplace_back([&, j] {
          results[j] = explore_branch(tasks[j], prefix_points, prefix_orders, b,
                                      optimistic_cap);
        });
      for (auto& th : pool) th.join();
    }
    for (std::size_t j = at; j < wave_end; ++j) {
      BranchResult res = results[j];
      // Replay with the exact remaining budget when the optimistic run used
      // more than this branch is actually allowed; keeps the certificate
      // byte-identical to a sequential run.
      if (res.exhausted || res.nodes > remaining)
        res = explore_branch(tasks[j], prefix_points, prefix_orders, b, remaining);
      if (res.exhausted) return undecided();
      remaining -= res.nodes;
      nodes += res.nodes;
      cert.stats.reps_examined += res.reps;
      if (res.witness) {
        cert.decision = Decision::kNotIbis;
        cert.witness = std::move(res.witness);
        cert.stats.nodes = nodes;
        cert.validate();
        return cert;
      }
    }
    at = wave_end;
  }

  cert.decision = Decision::kIbis;
  cert.stats.nodes = nodes;
  cert.validate();
  return cert;
}

// ---------------------------------------------------------------------------
// reorder invariance

ReorderReport check_reorder_invariance(const Group& g,
                                       const IrredundantTuple& tuple,
                                       std::uint64_t budget) {
  const auto recomputed = stabilizer_order_chain(g, tuple.points);
  IrredundantTuple checked{tuple.points, recomputed};
  if (!checked.is_full_base())
    throw Error("check_reorder_invariance: tuple is not a full irredundant base");

  const std::uint32_t t = static_cast<std::uint32_t>(tuple.points.size());
  std::uint64_t factorial = 1;
  for (std::uint32_t i = 2; i <= t; ++i) {
    factorial *= i;
    if (factorial > budget)
      throw BudgetExhaustedError("check_reorder_invariance: t! exceeds budget");
  }

  // Stabilizer order depends only on the set of points fixed so far:
  // memoize per subset to share work across the t! orderings.
  std::map<std::uint32_t, Group> stab_of;
  stab_of.emplace(0u, g);
  std::function<const Group&(std::uint32_t)> stab = [&](std::uint32_t mask) -> const Group& {
    auto it = stab_of.find(mask);
    if (it != stab_of.end()) return it->second;
    const std::uint32_t low = mask & (mask - 1);  // drop lowest set bit
    const std::uint32_t bit_index =
        static_cast<std::uint32_t>(__builtin_ctz(mask ^ low));
    Group s = stab(low).point_stabilizer(tuple.points[bit_index]);
    return stab_of.emplace(mask, std::move(s)).first->second;
  };

  std::vector<std::uint32_t> order(t);
  for (std::uint32_t i = 0; i < t; ++i) order[i] = i;
  do {
    std::uint32_t mask = 0;
    GroupOrder prev = g.order();
    for (std::uint32_t idx : order) {
      mask |= 1u << idx;
      const GroupOrder next = stab(mask).order();
      if (next >= prev) return {false, order};
      prev = next;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {true, {}};
}

// ---------------------------------------------------------------------------
// matroid and universal reorder invariance

namespace {

// Visits every full irredundant base in all-orderings mode. The visitor may
// return false to stop.
void for_each_full_base(
    const Group& g, std::uint64_t node_budget, const char* who,
    const std::function<bool(const std::vector<Point>&,
                             const std::vector<GroupOrder>&)>& visit) {
  std::uint64_t nodes = 0;
  bool stopped = false;
  std::vector<Point> pts;
  std::vector<GroupOrder> orders{g.order()};
  std::function<void(const Group&)> rec = [&](const Group& s) {
    if (stopped) return;
    if (nodes >= node_budget)
      throw BudgetExhaustedError(std::string(who) + ": node budget exhausted");
    ++nodes;
    if (s.is_trivial()) {
      if (!visit(pts, orders)) stopped = true;
      return;
    }
    for (Point p : all_candidates(s)) {
      Group child = s.point_stabilizer(p);
      pts.push_back(p);
      orders.push_back(child.order());
      rec(child);
      pts.pop_back();
      orders.pop_back();
      if (stopped) return;
    }
  };
  rec(g);
}

}  // namespace

BaseMatroid extract_matroid(const Group& g, std::uint64_t node_budget) {
  BaseMatroid m;
  m.ground_degree = g.degree();
  std::set<std::vector<Point>> family;
  for_each_full_base(g, node_budget, "extract_matroid",
                     [&](const std::vector<Point>& pts,
                         const std::vector<GroupOrder>&) {
                       std::vector<Point> sorted = pts;
                       std::sort(sorted.begin(), sorted.end());
                       family.insert(std::move(sorted));
                       return true;
                     });
  m.bases.assign(family.begin(), family.end());
  return m;
}

UniversalReorderReport check_all_reorderings(const Group& g,
                                             std::uint64_t node_budget,
                                             std::uint64_t per_base_budget) {
  UniversalReorderReport report;
  std::set<std::vector<Point>> seen;
  for_each_full_base(
      g, node_budget, "check_all_reorderings",
      [&](const std::vector<Point>& pts, const std::vector<GroupOrder>& orders) {
        std::vector<Point> sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        if (!seen.insert(std::move(sorted)).second) return true;
        ++report.bases_checked;
        IrredundantTuple tuple{pts, orders};
        ReorderReport rr = check_reorder_invariance(g, tuple, per_base_budget);
        if (!rr.invariant) {
          report.invariant = false;
          report.failing_base = std::move(tuple);
          report.failing_order = std::move(rr.failing_order);
          return false;
        }
        return true;
      });
  return report;
}

ExchangeReport verify_base_exchange(const BaseMatroid& m) {
  ExchangeReport report;
  if (m.bases.empty()) return report;
  for (const auto& b : m.bases) {
    if (b.size() != m.bases.front().size()) {
      report.ok = false;
      report.size_mismatch = true;
      report.base_a = m.bases.front();
      report.base_b = b;
      return report;
    }
  }
  std::set<std::vector<Point>> family(m.bases.begin(), m.bases.end());
  for (const auto& ba : m.bases) {
    for (const auto& bb : m.bases) {
      for (Point x : ba) {
        if (std::binary_search(bb.begin(), bb.end(), x)) continue;
        bool exchanged = false;
        for (Point y : bb) {
          if (std::binary_search(ba.begin(), ba.end(), y)) continue;
          std::vector<Point> swapped;
          swapped.reserve(ba.size());
          for (Point z : ba)
            if (z != x) swapped.push_back(z);
          swapped.push_back(y);
          std::sort(swapped.begin(), swapped.end());
          if (family.count(swapped)) {
            exchanged = true;
            break;
          }
        }
        if (!exchanged) {
          report.ok = false;
          report.base_a = ba;
          report.base_b = bb;
          report.element = x;
          return report;
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// refutation techniques

std::optional<IrredundantTuple> t1_random_search(const Group& g,
                                                 std::uint32_t target_length,
                                                 std::uint64_t seed,
                                                 std::uint64_t max_iters) {
  if (target_length == 0)
    throw Error("t1_random_search: target length must be >= 1");
  if (g.order() == 1) return std::nullopt;

  SplitMix64 rng(seed);
  Group s = g;
  IrredundantTuple t;
  t.stab_orders = {g.order()};
  auto reset = [&] {
    s = g;
    t.points.clear();
    t.stab_orders = {g.order()};
  };
  for (std::uint64_t draws = 0; draws < max_iters; ++draws) {
    const Point p = static_cast<Point>(rng.below(g.degree()));
    if (!moves_point(s, p)) continue;  // would not shrink the stabilizer
    s = s.point_stabilizer(p);
    t.points.push_back(p);
    t.stab_orders.push_back(s.order());
    if (t.points.size() == target_length) {
      if (!s.is_trivial()) return t;
      reset();
    } else if (s.is_trivial()) {
      reset();  // dead end: a full base shorter than the target
    }
  }
  return std::nullopt;
}

namespace {
// Consecutive rejected draws before T2 abandons its partial chain.
constexpr std::uint32_t kT2RestartAfter = 64;
}  // namespace

std::optional<ConjugateChain> t2_conjugate_chain(
    const Group& g, const Group& subgroup, std::uint32_t chain_length,
    std::uint64_t seed, std::uint64_t max_iters,
    std::uint64_t intersect_budget) {
  if (subgroup.degree() != g.degree())
    throw DegreeMismatchError("t2_conjugate_chain: degree mismatch");
  if (!subgroup.is_subgroup_of(g))
    throw NotASubgroupError("t2_conjugate_chain: not a subgroup");
  if (chain_length == 0) {
    if (subgroup.order() > 1) return ConjugateChain{{}, {g.order()}};
    return std::nullopt;
  }

  SplitMix64 rng(seed);
  ConjugateChain chain;
  chain.orders = {g.order()};
  Group meet = Group::trivial(g.degree());
  std::uint32_t rejects = 0;
  auto reset = [&] {
    chain.conjugators.clear();
    chain.orders = {g.order()};
    rejects = 0;
  };
  for (std::uint64_t draws = 0; draws < max_iters; ++draws) {
    Perm x = g.random_element(rng);
    bool distinct = true;
    for (const Perm& prev : chain.conjugators)
      if (subgroup.contains(compose(x, prev.inverse()))) {
        distinct = false;  // same coset: subgroup * x == subgroup * prev
        break;
      }
    if (distinct) {
      Group conj = subgroup.conjugated_by(x);
      Group next = chain.conjugators.empty()
                       ? std::move(conj)
                       : intersect(meet, conj, intersect_budget);
      const GroupOrder next_order = next.order();
      if (next_order < chain.orders.back() && next_order > 1) {
        chain.conjugators.push_back(std::move(x));
        chain.orders.push_back(next_order);
        meet = std::move(next);
        rejects = 0;
        if (chain.conjugators.size() == chain_length) return chain;
        continue;
      }
    }
    if (++rejects >= kT2RestartAfter) reset();
  }
  return std::nullopt;
}

std::optional<RestrictedTuple> t3_restricted_search(
    const Group& g, const Group& restriction, std::uint32_t target_length,
    std::uint64_t seed, std::uint64_t max_iters) {
  if (restriction.degree() != g.degree())
    throw DegreeMismatchError("t3_restricted_search: degree mismatch");
  if (!restriction.is_subgroup_of(g))
    throw NotASubgroupError("t3_restricted_search: not a subgroup");
  if (restriction.order() == 1) return std::nullopt;

  SplitMix64 rng(seed);
  Group s = restriction;
  RestrictedTuple t;
  t.subgroup_orders = {restriction.order()};
  auto reset = [&] {
    s = restriction;
    t.points.clear();
    t.subgroup_orders = {restriction.order()};
  };
  for (std::uint64_t draws = 0; draws < max_iters; ++draws) {
    const Point p = static_cast<Point>(rng.below(g.degree()));
    if (!moves_point(s, p)) continue;
    s = s.point_stabilizer(p);
    t.points.push_back(p);
    t.subgroup_orders.push_back(s.order());
    if (s.is_trivial()) {
      if (t.points.size() > target_length) {
        // The same chain strictly descends in the ambient group, since each
        // witness element of the restriction lies in it; recompute and check
        // before handing the tuple out.
        t.group_orders = stabilizer_order_chain(g, t.points);
        IrredundantTuple ambient{t.points, t.group_orders};
        if (!ambient.strictly_decreasing())
          throw Error("t3_restricted_search: ambient chain failed to descend");
        return t;
      }
      reset();
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

LemmaB2Report lemma_b2_spotcheck(const Group& g, const SearchLimits& limits,
                                 const std::string& descriptor) {
  LemmaB2Report report;
  try {
    report.base_size = base_size(g, limits.node_budget);
  } catch (const BudgetExhaustedError&) {
    report.outcome = LemmaB2Outcome::kUndecided;
    report.note = "base size computation exhausted its budget";
    return report;
  }
  if (report.base_size != 2) {
    report.outcome = LemmaB2Outcome::kNotApplicable;
    report.note = "lemma not applicable: base size is " +
                  std::to_string(report.base_size) + ", not 2";
    return report;
  }
  report.certificate = is_ibis(g, limits, descriptor);
  switch (report.certificate->decision) {
    case Decision::kNotIbis:
      report.outcome = LemmaB2Outcome::kPredictionConfirmed;
      report.note = "base size 2 and not IBIS: matches the prediction under "
                    "the caller's almost-simple, non-abelian-socle hypothesis";
      break;
    case Decision::kIbis:
      report.outcome = LemmaB2Outcome::kHypothesisNotMet;
      report.note = "IBIS with base size 2: the group cannot be almost simple "
                    "with non-abelian socle, so the hypothesis fails";
      break;
    case Decision::kUndecided:
      report.outcome = LemmaB2Outcome::kUndecided;
      report.note = "IBIS decision exhausted its budget";
      break;
  }
  return report;
}

// ---------------------------------------------------------------------------
// certificate helpers

bool replay_witness(const Group& g, const IbisCertificate& cert) {
  if (!cert.witness || cert.method == Method::kT2) return false;
  const auto recomputed = stabilizer_order_chain(g, cert.witness->points);
  if (recomputed != cert.witness->stab_orders) return false;
  IrredundantTuple check{cert.witness->points, recomputed};
  return check.strictly_decreasing();
}

bool replay_t2_certificate(const Group& g, const Group& subgroup,
                           const IbisCertificate& cert,
                           std::uint64_t intersect_budget) {
  if (cert.method != Method::kT2 || !cert.witness) return false;
  std::vector<Perm> xs;
  xs.reserve(cert.t2_conjugators.size());
  for (const std::string& text : cert.t2_conjugators)
    xs.push_back(parse_cycles(text, g.degree()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (subgroup.contains(compose(xs[i], xs[j].inverse())))
        return false;  // cosets not distinct
  std::vector<GroupOrder> orders{g.order()};
  Group meet = Group::trivial(g.degree());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Group conj = subgroup.conjugated_by(xs[i]);
    Group next = i == 0 ? std::move(conj) : intersect(meet, conj, intersect_budget);
    orders.push_back(next.order());
    meet = std::move(next);
  }
  if (orders != cert.witness->stab_orders) return false;
  for (std::size_t i = 0; i + 1 < orders.size(); ++i)
    if (orders[i + 1] >= orders[i]) return false;
  return orders.back() > 1;
}

namespace {

IbisCertificate certificate_shell(const Group& g, Method method,
                                  std::uint32_t known_base_size,
                                  std::uint64_t seed,
                                  const std::string& descriptor) {
  IbisCertificate cert;
  cert.group_descriptor = descriptor;
  cert.degree = g.degree();
  cert.order = g.order();
  cert.base_size = known_base_size;
  cert.method = method;
  cert.seed = seed;
  return cert;
}

}  // namespace

IbisCertificate make_t1_certificate(const Group& g, std::uint32_t known_base_size,
                                    const IrredundantTuple& partial,
                                    std::uint64_t seed,
                                    const std::string& descriptor) {
  IbisCertificate cert = certificate_shell(g, Method::kT1, known_base_size,
                                           seed, descriptor);
  cert.decision = Decision::kNotIbis;
  cert.witness = extend_to_full_base(partial, g.tuple_stabilizer(partial.points));
  cert.validate();
  return cert;
}

IbisCertificate make_t2_certificate(const Group& g, const ConjugateChain& chain,
                                    std::uint32_t known_base_size,
                                    std::uint64_t seed,
                                    const std::string& descriptor,
                                    const std::string& subgroup_descriptor) {
  IbisCertificate cert = certificate_shell(g, Method::kT2, known_base_size,
                                           seed, descriptor);
  cert.decision = Decision::kNotIbis;
  cert.witness = IrredundantTuple{{}, chain.orders};
  for (const Perm& x : chain.conjugators)
    cert.t2_conjugators.push_back(format_cycles(x));
  cert.t2_subgroup = subgroup_descriptor;
  cert.validate();
  return cert;
}

IbisCertificate make_t3_certificate(const Group& g, std::uint32_t known_base_size,
                                    const RestrictedTuple& tuple,
                                    std::uint64_t seed,
                                    const std::string& descriptor) {
  IbisCertificate cert = certificate_shell(g, Method::kT3, known_base_size,
                                           seed, descriptor);
  cert.decision = Decision::kNotIbis;
  cert.witness = extend_to_full_base({tuple.points, tuple.group_orders},
                                     g.tuple_stabilizer(tuple.points));
  cert.validate();
  return cert;
}

IbisCertificate make_undecided_certificate(const Group& g, Method method,
                                           std::uint32_t known_base_size,
                                           std::uint64_t seed,
                                           const std::string& descriptor) {
  IbisCertificate cert = certificate_shell(g, method, known_base_size, seed,
                                           descriptor);
  cert.decision = Decision::kUndecided;
  cert.validate();
  return cert;
}

}  // namespace ibiskit
