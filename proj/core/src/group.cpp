#include "ibiskit/group.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>
#include <utility>

#include "ibiskit/errors.hpp"

namespace ibiskit {

std::string order_to_string(GroupOrder value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<unsigned>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

GroupOrder order_from_string(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer");
  GroupOrder value = 0;
  for (char c : text) {
    if (c < '0' || c > '9')
      throw ParseError(std::string("bad digit '") + c + "' in integer");
    GroupOrder next = value * 10 + static_cast<unsigned>(c - '0');
    if (next / 10 != value) throw OverflowError("integer overflow");
    value = next;
  }
  return value;
}

GroupOrder checked_mul(GroupOrder a, GroupOrder b) {
  if (a == 0 || b == 0) return 0;
  GroupOrder r = a * b;
  if (r / a != b) throw OverflowError("group order overflow");
  return r;
}

// ---------------------------------------------------------------------------
// StabilizerChain

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> out;
  out.reserve(levels_.size());
  for (const Level& level : levels_) out.push_back(level.beta);
  return out;
}

GroupOrder StabilizerChain::order() const {
  GroupOrder result = 1;
  for (const Level& level : levels_)
    result = checked_mul(result, static_cast<GroupOrder>(level.orbit.size()));
  return result;
}

Perm StabilizerChain::transversal(std::size_t level, Point to) const {
  const Level& lev = levels_[level];
  if (to >= degree_ || !lev.in_orbit(to))
    throw PointOutOfRangeError("transversal: point not in basic orbit");
  std::vector<std::int32_t> path;  // generator labels, child-most first
  Point x = to;
  while (lev.via_gen[x] >= 0) {
    path.push_back(lev.via_gen[x]);
    x = lev.parent[x];
  }
  Perm t = lev.explicits[static_cast<std::size_t>(lev.expl[x])];
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    t = compose(t, lev.gens[static_cast<std::size_t>(*it)]);
  return t;
}

Perm StabilizerChain::with_inverse_transversal(std::size_t level, Point from,
                                               Perm g) const {
  const Level& lev = levels_[level];
  Point x = from;
  while (lev.via_gen[x] >= 0) {
    g = compose(g, lev.gen_invs[static_cast<std::size_t>(lev.via_gen[x])]);
    x = lev.parent[x];
  }
  if (lev.expl[x] != 0)
    g = compose(g, lev.explicit_invs[static_cast<std::size_t>(lev.expl[x])]);
  return g;
}

Perm StabilizerChain::sift(Perm g, std::size_t from, std::size_t* stuck) const {
  if (g.degree() != degree_)
    throw DegreeMismatchError("sift: permutation degree does not match chain");
  for (std::size_t i = from; i < levels_.size(); ++i) {
    Point delta = g.apply(levels_[i].beta);
    if (!levels_[i].in_orbit(delta)) {
      if (stuck) *stuck = i;
      return g;
    }
    g = with_inverse_transversal(i, delta, std::move(g));
  }
  if (stuck) *stuck = levels_.size();
  return g;
}

bool StabilizerChain::contains(const Perm& g) const {
  return sift(g).is_identity();
}

Perm StabilizerChain::random_element(SplitMix64& rng) const {
  Perm g(degree_);
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const Level& lev = levels_[i];
    Point delta = lev.orbit[rng.below(lev.orbit.size())];
    g = compose(g, transversal(i, delta));
  }
  return g;
}

void StabilizerChain::verify() const {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Level& lev = levels_[i];
    if (lev.orbit.empty() || lev.orbit[0] != lev.beta)
      throw Error("chain verify: orbit does not start at its base point");
    for (const Perm& gen : lev.gens)
      for (std::size_t j = 0; j < i; ++j)
        if (!gen.fixes(levels_[j].beta))
          throw Error("chain verify: level generator moves an earlier base point");
    for (Point delta : lev.orbit) {
      if (transversal(i, delta).apply(lev.beta) != delta)
        throw Error("chain verify: transversal misses its target");
      for (const Perm& gen : lev.gens) {
        Perm u = compose(transversal(i, delta), gen);
        Point gamma = u.apply(lev.beta);
        if (!lev.in_orbit(gamma))
          throw Error("chain verify: basic orbit not closed");
        u = with_inverse_transversal(i, gamma, std::move(u));
        if (!sift(std::move(u), i + 1).is_identity())
          throw Error("chain verify: a Schreier generator does not sift away");
      }
    }
  }
}

StabilizerChain StabilizerChain::suffix(std::size_t levels_to_drop) const {
  StabilizerChain out;
  out.degree_ = degree_;
  out.opts_ = opts_;
  if (levels_to_drop < levels_.size())
    out.levels_.assign(levels_.begin() +
                           static_cast<std::ptrdiff_t>(levels_to_drop),
                       levels_.end());
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic Schreier-Sims

class ChainBuilder {
 public:
  ChainBuilder(Point degree, std::span<const Point> preferred,
               StabilizerChain::Options opts)
      : degree_(degree), opts_(opts) {
    for (Point p : preferred) {
      if (p >= degree) throw PointOutOfRangeError("preferred base point out of range");
      if (std::find(base_.begin(), base_.end(), p) != base_.end()) continue;
      base_.push_back(p);
      append_level(p);
    }
  }

  void add_input(const Perm& g) {
    if (g.degree() != degree_)
      throw DegreeMismatchError("generator degree does not match group degree");
    if (!g.is_identity()) distribute(g);
  }

  void run() {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      const std::size_t li = static_cast<std::size_t>(i);
      bool restarted = false;
      for (std::size_t oi = 0; oi < levels_[li].orbit.size() && !restarted; ++oi) {
        for (std::size_t gi = 0; gi < levels_[li].gens.size() && !restarted; ++gi) {
          const Point delta = levels_[li].orbit[oi];
          Perm u = compose(transversal(li, delta), levels_[li].gens[gi]);
          const Point gamma = u.apply(levels_[li].beta);
          u = with_inverse_transversal(li, gamma, std::move(u));
          if (u.is_identity()) continue;
          std::size_t stuck = 0;
          Perm residue = sift(std::move(u), li + 1, &stuck);
          if (!residue.is_identity()) {
            std::size_t deepest = distribute(residue);
            i = static_cast<std::ptrdiff_t>(std::max(deepest, stuck));
            restarted = true;
          }
        }
      }
      if (!restarted) --i;
    }
  }

  StabilizerChain finish() {
    StabilizerChain chain;
    chain.degree_ = degree_;
    chain.opts_ = opts_;
    for (auto& level : levels_)
      if (level.orbit.size() > 1) chain.levels_.push_back(std::move(level));
    return chain;
  }

 private:
  using Level = StabilizerChain::Level;

  void append_level(Point beta) {
    Level level;
    level.beta = beta;
    level.via_gen.assign(degree_, -1);
    level.parent.assign(degree_, 0);
    level.expl.assign(degree_, -1);
    level.depth.assign(degree_, 0);
    level.orbit = {beta};
    level.via_gen[beta] = -2;
    level.expl[beta] = 0;
    level.explicits = {Perm(degree_)};
    level.explicit_invs = {Perm(degree_)};
    levels_.push_back(std::move(level));
    gensets_.emplace_back();
  }

  // Adds h to every level whose base-point prefix it fixes, creating a new
  // level when it fixes the whole base. Returns the deepest level touched.
  std::size_t distribute(const Perm& h) {
    std::size_t deepest = levels_.size();
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (!h.fixes(levels_[i].beta)) {
        deepest = i;
        break;
      }
    }
    if (deepest == levels_.size()) append_level(h.smallest_moved());
    for (std::size_t i = 0; i <= deepest; ++i) {
      if (gensets_[i].insert(h).second) {
        levels_[i].gens.push_back(h);
        levels_[i].gen_invs.push_back(h.inverse());
        rebuild_orbit(i);
      }
    }
    return deepest;
  }

  void rebuild_orbit(std::size_t li) {
    Level& lev = levels_[li];
    std::fill(lev.via_gen.begin(), lev.via_gen.end(), -1);
    std::fill(lev.expl.begin(), lev.expl.end(), -1);
    std::fill(lev.depth.begin(), lev.depth.end(), 0);
    lev.orbit = {lev.beta};
    lev.via_gen[lev.beta] = -2;
    lev.expl[lev.beta] = 0;
    lev.explicits = {Perm(degree_)};
    lev.explicit_invs = {Perm(degree_)};
    for (std::size_t at = 0; at < lev.orbit.size(); ++at) {
      const Point from = lev.orbit[at];
      for (std::size_t gi = 0; gi < lev.gens.size(); ++gi) {
        const Point to = lev.gens[gi].apply(from);
        if (lev.via_gen[to] != -1) continue;
        const std::uint16_t d = static_cast<std::uint16_t>(lev.depth[from] + 1);
        if (d > opts_.schreier_depth_cap) {
          // Path compression: store the full transversal element.
          Perm t = compose(transversal(li, from), lev.gens[gi]);
          lev.explicit_invs.push_back(t.inverse());
          lev.explicits.push_back(std::move(t));
          lev.via_gen[to] = -2;
          lev.expl[to] = static_cast<std::int32_t>(lev.explicits.size() - 1);
          lev.depth[to] = 0;
        } else {
          lev.via_gen[to] = static_cast<std::int32_t>(gi);
          lev.parent[to] = from;
          lev.depth[to] = d;
        }
        lev.orbit.push_back(to);
      }
    }
  }

  // Thin wrappers over the chain algorithms, operating on the growing data.
  Perm transversal(std::size_t li, Point to) const {
    const Level& lev = levels_[li];
    std::vector<std::int32_t> path;
    Point x = to;
    while (lev.via_gen[x] >= 0) {
      path.push_back(lev.via_gen[x]);
      x = lev.parent[x];
    }
    Perm t = lev.explicits[static_cast<std::size_t>(lev.expl[x])];
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      t = compose(t, lev.gens[static_cast<std::size_t>(*it)]);
    return t;
  }

  Perm with_inverse_transversal(std::size_t li, Point from, Perm g) const {
    const Level& lev = levels_[li];
    Point x = from;
    while (lev.via_gen[x] >= 0) {
      g = compose(g, lev.gen_invs[static_cast<std::size_t>(lev.via_gen[x])]);
      x = lev.parent[x];
    }
    if (lev.expl[x] != 0)
      g = compose(g, lev.explicit_invs[static_cast<std::size_t>(lev.expl[x])]);
    return g;
  }

  Perm sift(Perm g, std::size_t from, std::size_t* stuck) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      Point delta = g.apply(levels_[i].beta);
      if (!levels_[i].in_orbit(delta)) {
        if (stuck) *stuck = i;
        return g;
      }
      g = with_inverse_transversal(i, delta, std::move(g));
    }
    if (stuck) *stuck = levels_.size();
    return g;
  }

  Point degree_;
  StabilizerChain::Options opts_;
  std::vector<Point> base_;
  std::vector<Level> levels_;
  std::vector<std::unordered_set<Perm, PermHash>> gensets_;
};

StabilizerChain build_chain(Point degree, std::vector<Perm> gens,
                            std::span<const Point> preferred_base,
                            StabilizerChain::Options opts) {
  if (degree == 0) throw Error("group degree must be positive");
  ChainBuilder builder(degree, preferred_base, opts);
  for (const Perm& g : gens) builder.add_input(g);
  builder.run();
  return builder.finish();
}

// ---------------------------------------------------------------------------
// Orbit

Orbit::Orbit(Point degree, std::vector<Perm> gens, Point start)
    : degree_(degree), start_(start), gens_(std::move(gens)) {
  if (start >= degree) throw PointOutOfRangeError("orbit: point out of range");
  parent_gen_.assign(degree, -1);
  parent_.assign(degree, 0);
  points_ = {start};
  parent_gen_[start] = -2;
  for (std::size_t at = 0; at < points_.size(); ++at) {
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      Point to = gens_[gi].apply(points_[at]);
      if (parent_gen_[to] != -1) continue;
      parent_gen_[to] = static_cast<std::int32_t>(gi);
      parent_[to] = points_[at];
      points_.push_back(to);
    }
  }
}

PointSet Orbit::as_point_set() const {
  PointSet s;
  s.degree = degree_;
  s.members = points_;
  std::sort(s.members.begin(), s.members.end());
  return s;
}

Perm Orbit::transversal_to(Point to) const {
  if (to >= degree_ || !contains(to))
    throw PointOutOfRangeError("transversal_to: point not in orbit");
  std::vector<std::int32_t> path;
  Point x = to;
  while (parent_gen_[x] >= 0) {
    path.push_back(parent_gen_[x]);
    x = parent_[x];
  }
  Perm t(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    t = compose(t, gens_[static_cast<std::size_t>(*it)]);
  return t;
}

// ---------------------------------------------------------------------------
// Group

Group::Group(Point degree, std::vector<Perm> generators)
    : degree_(degree), cache_(std::make_shared<ChainCache>()) {
  if (degree == 0) throw Error("group degree must be positive");
  for (Perm& g : generators) {
    if (g.degree() != degree)
      throw DegreeMismatchError("generator degree " + std::to_string(g.degree()) +
                                " does not match group degree " +
                                std::to_string(degree));
    if (!g.is_identity()) gens_.push_back(std::move(g));
  }
}

Group::Group(Point degree, std::vector<Perm> gens,
             std::shared_ptr<const StabilizerChain> chain)
    : Group(degree, std::move(gens)) {
  cache_->chain = std::move(chain);
}

const StabilizerChain& Group::chain() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->chain)
    cache_->chain = std::make_shared<const StabilizerChain>(
        build_chain(degree_, gens_));
  return *cache_->chain;
}

StabilizerChain Group::chain_with_base(std::span<const Point> preferred) const {
  std::vector<Perm> seed = gens_;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->chain && !cache_->chain->levels().empty())
      seed = cache_->chain->levels()[0].gens;
  }
  return build_chain(degree_, std::move(seed), preferred);
}

bool Group::contains(const Perm& p) const {
  if (p.degree() != degree_)
    throw DegreeMismatchError("contains: degree mismatch");
  return chain().contains(p);
}

PointSet Group::orbit(Point p) const {
  return orbit_with_transversal(p).as_point_set();
}

Orbit Group::orbit_with_transversal(Point p) const {
  return Orbit(degree_, gens_, p);
}

std::vector<PointSet> Group::orbits() const {
  std::vector<PointSet> result;
  std::vector<bool> seen(degree_, false);
  for (Point p = 0; p < degree_; ++p) {
    if (seen[p]) continue;
    PointSet orb = orbit(p);
    for (Point q : orb.members) seen[q] = true;
    result.push_back(std::move(orb));
  }
  return result;
}

PointSet Group::fixed_points() const {
  PointSet s;
  s.degree = degree_;
  for (Point p = 0; p < degree_; ++p) {
    bool fixed = true;
    for (const Perm& g : gens_)
      if (!g.fixes(p)) {
        fixed = false;
        break;
      }
    if (fixed) s.members.push_back(p);
  }
  return s;
}

Group Group::point_stabilizer(Point p) const {
  if (p >= degree_)
    throw PointOutOfRangeError("point_stabilizer: point " +
                               std::to_string(p + 1) + " out of range");
  bool moved = false;
  for (const Perm& g : gens_)
    if (!g.fixes(p)) {
      moved = true;
      break;
    }
  if (!moved) return *this;

  std::shared_ptr<const StabilizerChain> whole;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->chain && !cache_->chain->levels().empty() &&
        cache_->chain->levels()[0].beta == p)
      whole = cache_->chain;
  }
  if (!whole) {
    const Point pref[1] = {p};
    whole = std::make_shared<const StabilizerChain>(chain_with_base(pref));
  }
  if (whole->levels().size() <= 1) return Group::trivial(degree_);
  auto sub = std::make_shared<const StabilizerChain>(whole->suffix(1));
  return Group(degree_, whole->levels()[1].gens, std::move(sub));
}

Group Group::tuple_stabilizer(std::span<const Point> points) const {
  Group current = *this;
  for (Point p : points) current = current.point_stabilizer(p);
  return current;
}

Perm Group::random_element(SplitMix64& rng) const {
  return chain().random_element(rng);
}

bool Group::is_subgroup_of(const Group& super) const {
  if (degree_ != super.degree())
    throw DegreeMismatchError("is_subgroup_of: degree mismatch");
  for (const Perm& g : gens_)
    if (!super.contains(g)) return false;
  return true;
}

Group Group::conjugated_by(const Perm& x) const {
  std::vector<Perm> gens;
  gens.reserve(gens_.size());
  for (const Perm& g : gens_) gens.push_back(conjugate(g, x));
  return Group(degree_, std::move(gens));
}

// ---------------------------------------------------------------------------
// Intersection

namespace {

struct IntersectSearch {
  const StabilizerChain& chain_a;
  const StabilizerChain& chain_b;
  const std::vector<int>& b_level_of;  // per a-level: b-level index or -1
  const std::vector<Point>& base_a;
  Point degree;
  std::uint64_t budget;
  std::vector<Perm> found;
  Group known;

  IntersectSearch(const StabilizerChain& ca, const StabilizerChain& cb,
                  const std::vector<int>& bl, const std::vector<Point>& ba,
                  Point deg, std::uint64_t nb)
      : chain_a(ca), chain_b(cb), b_level_of(bl), base_a(ba), degree(deg),
        budget(nb), known(Group::trivial(deg)) {}

  void dfs(std::size_t level, const Perm& u, const Perm& v, const Perm& v_inv) {
    if (budget == 0)
      throw BudgetExhaustedError("intersection node budget exhausted");
    --budget;
    if (level == chain_a.levels().size()) {
      if (!u.is_identity() && chain_b.contains(u) && !known.contains(u)) {
        found.push_back(u);
        known = Group(degree, found);
      }
      return;
    }
    const auto& lev = chain_a.levels()[level];
    std::vector<Point> candidates = lev.orbit;
    std::sort(candidates.begin(), candidates.end());
    for (Point delta : candidates) {
      const Point gamma = u.apply(delta);
      Perm next_v = v;
      Perm next_v_inv = v_inv;
      const int bl = b_level_of[level];
      if (bl >= 0) {
        const Point eps = v_inv.apply(gamma);
        if (!chain_b.levels()[static_cast<std::size_t>(bl)].in_orbit(eps))
          continue;
        Perm t = chain_b.transversal(static_cast<std::size_t>(bl), eps);
        next_v = compose(t, v);
        next_v_inv = compose(v_inv, t.inverse());
      } else {
        // This base point of A is fixed by the relevant level group of B:
        // its image under any feasible element of B is forced.
        if (v.apply(base_a[level]) != gamma) continue;
      }
      Perm next_u = compose(chain_a.transversal(level, delta), u);
      dfs(level + 1, next_u, next_v, next_v_inv);
    }
  }
};

}  // namespace

Group intersect(const Group& a, const Group& b, std::uint64_t node_budget) {
  if (a.degree() != b.degree())
    throw DegreeMismatchError("intersect: degree mismatch");
  if (a.is_trivial() || b.is_trivial()) return Group::trivial(a.degree());
  if (a.is_subgroup_of(b)) return a;
  if (b.is_subgroup_of(a)) return b;

  // Ordering A's base through points moved by B makes the B-side orbit
  // pruning bite as early as possible.
  std::vector<Point> preferred;
  {
    PointSet fixed_by_b = b.fixed_points();
    for (Point p = 0; p < a.degree(); ++p)
      if (!fixed_by_b.contains(p)) preferred.push_back(p);
  }
  StabilizerChain chain_a = a.chain_with_base(preferred);
  std::vector<Point> base_a = chain_a.base();
  StabilizerChain chain_b = b.chain_with_base(base_a);

  std::vector<int> b_level_of(base_a.size(), -1);
  {
    std::vector<Point> base_b = chain_b.base();
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < base_a.size(); ++i)
      if (cursor < base_b.size() && base_b[cursor] == base_a[i])
        b_level_of[i] = static_cast<int>(cursor++);
  }

  IntersectSearch search(chain_a, chain_b, b_level_of, base_a, a.degree(),
                         node_budget);
  Perm id(a.degree());
  search.dfs(0, id, id, id);
  return search.known;
}

}  // namespace ibiskit
