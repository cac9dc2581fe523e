#ifndef IBISKIT_GROUP_HPP
#define IBISKIT_GROUP_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "ibiskit/perm.hpp"
#include "ibiskit/rng.hpp"

namespace ibiskit {

class SplitMix64;

// Group orders. 128 bits covers every permutation group of degree <= 33;
// arithmetic that would overflow throws OverflowError instead of wrapping.
using GroupOrder = unsigned __int128;

std::string order_to_string(GroupOrder value);
GroupOrder order_from_string(std::string_view text);
GroupOrder checked_mul(GroupOrder a, GroupOrder b);

// One basic orbit with its transversal, stored as a Schreier vector
// (parent point + generator label per orbit point). Walks longer than the
// depth cap are collapsed into explicitly stored permutations.
class StabilizerChain {
 public:
  struct Options {
    std::uint16_t schreier_depth_cap = 32;
  };

  struct Level {
    Point beta = 0;
    std::vector<Perm> gens;        // strong generators of this level's group
    std::vector<Perm> gen_invs;    // aligned inverses
    std::vector<Point> orbit;      // BFS discovery order; orbit[0] == beta

    // Per-point arrays of size degree. via_gen[p] is the generator index
    // used to reach p from parent[p]; -1 marks points outside the orbit,
    // -2 marks anchor points whose full transversal element is stored in
    // explicits[expl[p]].
    std::vector<std::int32_t> via_gen;
    std::vector<Point> parent;
    std::vector<std::int32_t> expl;
    std::vector<std::uint16_t> depth;
    std::vector<Perm> explicits;
    std::vector<Perm> explicit_invs;

    bool in_orbit(Point p) const { return via_gen[p] != -1; }
  };

  Point degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::vector<Point> base() const;
  GroupOrder order() const;

  // Transversal element t with base-point-of-level ^ t == to.
  Perm transversal(std::size_t level, Point to) const;

  // Residue of sifting g through levels [from, end). `stuck` (if non-null)
  // receives the level where sifting stopped, or levels().size() on success.
  Perm sift(Perm g, std::size_t from = 0, std::size_t* stuck = nullptr) const;

  bool contains(const Perm& g) const;

  // Uniform over the group: one uniform transversal element per level.
  Perm random_element(SplitMix64& rng) const;

  // Rechecks that every Schreier generator of every level sifts to the
  // identity (the defining closure property). Throws Error on failure.
  void verify() const;

  // The chain of the pointwise stabilizer of the first `levels_to_drop`
  // base points: this data structure is self-similar.
  StabilizerChain suffix(std::size_t levels_to_drop) const;

 private:
  friend class ChainBuilder;
  Point degree_ = 1;
  std::vector<Level> levels_;
  Options opts_;

  Perm with_inverse_transversal(std::size_t level, Point from, Perm g) const;
};

// Deterministic Schreier-Sims. Points of `preferred_base` are used as the
// leading base points, in order, skipping any that end up fixed at their
// level; further base points default to the smallest moved point. The
// returned chain always satisfies verify().
StabilizerChain build_chain(Point degree, std::vector<Perm> gens,
                            std::span<const Point> preferred_base = {},
                            StabilizerChain::Options opts = {});

// Orbit of a point with its transversal available on demand.
class Orbit {
 public:
  Orbit(Point degree, std::vector<Perm> gens, Point start);

  const std::vector<Point>& points() const { return points_; }  // BFS order
  bool contains(Point p) const { return parent_gen_[p] != -1; }
  PointSet as_point_set() const;

  // t with start ^ t == to; `to` must lie in the orbit.
  Perm transversal_to(Point to) const;

 private:
  Point degree_;
  Point start_;
  std::vector<Perm> gens_;
  std::vector<Point> points_;
  std::vector<std::int32_t> parent_gen_;
  std::vector<Point> parent_;
};

// A finitely generated permutation group: degree, generators, and a lazily
// built stabilizer chain shared across copies. Immutable once constructed;
// concurrent read-only queries are safe, the first chain build is locked.
class Group {
 public:
  // Identity generators are filtered out; an empty (or all-identity)
  // generating set yields the trivial group of that degree.
  Group(Point degree, std::vector<Perm> generators);

  static Group trivial(Point degree) { return Group(degree, {}); }

  Point degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  const StabilizerChain& chain() const;
  // Fresh chain built with the given leading base points.
  StabilizerChain chain_with_base(std::span<const Point> preferred) const;

  GroupOrder order() const { return chain().order(); }
  bool is_trivial() const { return gens_.empty(); }

  bool contains(const Perm& p) const;

  PointSet orbit(Point p) const;
  Orbit orbit_with_transversal(Point p) const;
  // All orbits, sorted by least point (including fixed points as singletons).
  std::vector<PointSet> orbits() const;
  PointSet fixed_points() const;

  Group point_stabilizer(Point p) const;
  Group tuple_stabilizer(std::span<const Point> points) const;

  Perm random_element(SplitMix64& rng) const;

  // True iff every generator of this group lies in `super`.
  bool is_subgroup_of(const Group& super) const;

  // Generators conjugated elementwise: the subgroup this^x.
  Group conjugated_by(const Perm& x) const;

 private:
  struct ChainCache {
    std::mutex mu;
    std::shared_ptr<const StabilizerChain> chain;
  };

  Group(Point degree, std::vector<Perm> gens,
        std::shared_ptr<const StabilizerChain> chain);

  Point degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<ChainCache> cache_;
};

// Exact intersection of two groups of equal degree, by depth-first search
// over A's stabilizer chain with feasibility pruning against B's chain
// (rebased onto A's base). The budget caps visited search-tree nodes;
// running out raises BudgetExhaustedError (never a wrong result).
Group intersect(const Group& a, const Group& b,
                std::uint64_t node_budget = 1'000'000);

}  // namespace ibiskit

#endif
