#ifndef IBISKIT_IBIS_HPP
#define IBISKIT_IBIS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ibiskit/group.hpp"

namespace ibiskit {

// An ordered tuple of pairwise distinct points together with the stabilizer
// order chain |G|, |G_{p1}|, |G_{p1,p2}|, ... (length points+1). The tuple
// is irredundant iff the chain is strictly decreasing: each point is moved
// by the stabilizer of its predecessors. It is a full irredundant base iff
// additionally the last entry is 1.
struct IrredundantTuple {
  std::vector<Point> points;
  std::vector<GroupOrder> stab_orders;

  bool strictly_decreasing() const;
  bool is_full_base() const;
};

// Stabilizer order chain of an arbitrary point tuple, recomputed from
// scratch; this is what replaying a witness means.
std::vector<GroupOrder> stabilizer_order_chain(const Group& g,
                                               std::span<const Point> points);

enum class Decision { kIbis, kNotIbis, kUndecided };
enum class Method { kExhaustive, kT1, kT2, kT3 };

std::string to_string(Decision d);
std::string to_string(Method m);

struct SearchStats {
  std::uint64_t nodes = 0;           // search-tree nodes visited
  std::uint64_t reps_examined = 0;   // full-length tuples examined
};

// Decision plus a replayable witness.
//  - NOT_IBIS: `witness` is a full irredundant base of length != base_size
//    (searches that found a partial length-b tuple with nontrivial
//    stabilizer extend it to a full base before emission), or, for the T2
//    technique, an order chain with the conjugating elements recorded in
//    `t2_conjugators` instead of points.
//  - IBIS: only the exhaustive method may claim it; stats summarize the
//    enumeration.
//  - UNDECIDED: a budget ran out, or a randomized search found nothing
//    (absence of a witness proves nothing).
struct IbisCertificate {
  std::string group_descriptor;
  Point degree = 1;
  GroupOrder order = 1;
  std::uint32_t base_size = 0;
  Decision decision = Decision::kUndecided;
  Method method = Method::kExhaustive;
  std::uint64_t seed = 0;  // meaningful for T1/T2/T3 only
  std::optional<IrredundantTuple> witness;
  SearchStats stats;
  std::vector<std::string> t2_conjugators;  // cycle notation, T2 only
  std::string t2_subgroup;                  // descriptor of the conjugated subgroup

  // Enforces the structural invariants above; throws Error on violation.
  void validate() const;
};

// All bases collected from full irredundant bases, as point sets.
struct BaseMatroid {
  Point ground_degree = 1;
  std::vector<std::vector<Point>> bases;  // each sorted; family sorted, unique

  bool uniform_size() const;
};

struct SearchLimits {
  std::uint64_t node_budget = 100'000'000;
  unsigned threads = 1;
};

// Minimum base size b(G), by depth-first search over irredundant extensions:
// candidates are restricted to least points of the current stabilizer's
// orbits (excluding fixed points), branches are cut once they cannot beat
// the best length found. The trivial group has base size 0 by convention.
std::uint32_t base_size(const Group& g,
                        std::uint64_t node_budget = 100'000'000,
                        std::uint64_t* nodes_used = nullptr);

enum class EnumerationMode { kRepresentatives, kAll };

struct EnumerationResult {
  std::uint64_t emitted = 0;
  std::uint64_t nodes = 0;
  bool completed = true;  // false when the budget ran out (partial progress)
};

// Emits irredundant tuples of the given length. In representatives mode one
// tuple per orbit of the group on irredundant tuples is produced: at every
// level the search extends only by the least point of each orbit of the
// current stabilizer, orbits visited in increasing least-point order (this
// canonical choice makes enumeration deterministic and certificates
// reproducible). In all mode every irredundant tuple is produced. The
// visitor may return false to stop early.
EnumerationResult enumerate_irredundant_tuples(
    const Group& g, std::uint32_t length, EnumerationMode mode,
    std::uint64_t node_budget,
    const std::function<bool(const IrredundantTuple&)>& visit);

// Decides whether every irredundant base of g has the same size.
//
// Criterion: with b = base_size(g), the group fails to be IBIS exactly when
// some irredundant b-tuple has a nontrivial pointwise stabilizer. (A longer
// irredundant base restricts to such a tuple as its length-b prefix;
// conversely such a tuple extends, by repeatedly appending the least moved
// point, to an irredundant base of length > b.) The enumeration runs over
// orbit representatives only, which is sound because stabilizer orders are
// constant on orbits.
//
// threads > 1 fans the representative search out over top-level branches;
// the resulting certificate is identical to the sequential one.
IbisCertificate is_ibis(const Group& g, const SearchLimits& limits = {},
                        const std::string& descriptor = "");

struct ReorderReport {
  bool invariant = true;
  // Indices into the tuple (a permutation of 0..t-1) witnessing a reordering
  // that is not irredundant, when invariant is false.
  std::vector<std::uint32_t> failing_order;
};

// Checks that every reordering of a full irredundant base is again
// irredundant. Requires t! <= budget; throws BudgetExhaustedError otherwise.
ReorderReport check_reorder_invariance(const Group& g,
                                       const IrredundantTuple& tuple,
                                       std::uint64_t budget = 1'000'000);

struct UniversalReorderReport {
  bool invariant = true;
  std::optional<IrredundantTuple> failing_base;
  std::vector<std::uint32_t> failing_order;
  std::uint64_t bases_checked = 0;  // distinct base sets examined
};

// Checks reorder invariance over every full irredundant base of g (one
// ordered representative per underlying point set). Small degrees only.
UniversalReorderReport check_all_reorderings(
    const Group& g, std::uint64_t node_budget = 100'000'000,
    std::uint64_t per_base_budget = 1'000'000);

// Collects the point sets underlying all full irredundant bases (all-mode
// enumeration; intended for small degrees).
BaseMatroid extract_matroid(const Group& g,
                            std::uint64_t node_budget = 100'000'000);

struct ExchangeReport {
  bool ok = true;
  bool size_mismatch = false;
  // On failure: the offending pair of bases and, unless sizes mismatched,
  // the element of base_a that admits no exchange.
  std::vector<Point> base_a, base_b;
  std::optional<Point> element;
};

// Verifies the matroid base-exchange axiom over the collected family.
ExchangeReport verify_base_exchange(const BaseMatroid& m);

// (T1) Seeded random search for a partial irredundant tuple of the given
// length whose final stabilizer is nontrivial -- a non-IBIS witness seed
// when the length equals the base size. Draws uniform random points,
// keeping a point iff it strictly decreases the stabilizer order, and
// restarts on dead ends. Returns nothing after max_iters draws; absence
// proves nothing.
std::optional<IrredundantTuple> t1_random_search(const Group& g,
                                                 std::uint32_t target_length,
                                                 std::uint64_t seed,
                                                 std::uint64_t max_iters);

struct ConjugateChain {
  std::vector<Perm> conjugators;       // x_1 .. x_k
  std::vector<GroupOrder> orders;      // |G|, |H^{x1}|, |H^{x1} ^ H^{x2}|, ...
};

// (T2) Seeded random search for conjugates of `subgroup` whose successive
// intersections H^{x1}, H^{x1} n H^{x2}, ... strictly descend and stay
// nontrivial, with all cosets subgroup*x_i pairwise distinct. Such a chain
// certifies a partial irredundant base of size chain_length in the coset
// action of g on `subgroup` without constructing that action (the
// stabilizer of the coset Hx is the conjugate H^x).
std::optional<ConjugateChain> t2_conjugate_chain(
    const Group& g, const Group& subgroup, std::uint32_t chain_length,
    std::uint64_t seed, std::uint64_t max_iters,
    std::uint64_t intersect_budget = 1'000'000);

struct RestrictedTuple {
  std::vector<Point> points;
  std::vector<GroupOrder> group_orders;       // chain in g (re-verified)
  std::vector<GroupOrder> subgroup_orders;    // chain in the restriction
};

// (T3) Runs the T1 procedure with stabilizers computed inside a subgroup K
// acting on the same points, looking for a full K-irredundant base longer
// than target_length. Since K <= g, each step's witness element lies in g
// too, so the tuple is g-irredundant as well; the g-chain is recomputed and
// checked to strictly descend before the result is returned.
std::optional<RestrictedTuple> t3_restricted_search(
    const Group& g, const Group& restriction, std::uint32_t target_length,
    std::uint64_t seed, std::uint64_t max_iters);

enum class LemmaB2Outcome {
  kNotApplicable,        // base size != 2
  kPredictionConfirmed,  // base size 2 and exhaustively NOT_IBIS
  kHypothesisNotMet,     // base size 2 but IBIS: the group cannot be almost
                         // simple with non-abelian socle
  kUndecided,
};

struct LemmaB2Report {
  std::uint32_t base_size = 0;
  LemmaB2Outcome outcome = LemmaB2Outcome::kNotApplicable;
  std::optional<IbisCertificate> certificate;
  std::string note;
};

// Spot check of the known fact that no IBIS group with non-abelian socle has
// base size 2. The caller asserts almost-simplicity out of band; no socle is
// computed here.
LemmaB2Report lemma_b2_spotcheck(const Group& g,
                                 const SearchLimits& limits = {},
                                 const std::string& descriptor = "");

// Replays a certificate's witness: recomputes the stabilizer chain from the
// recorded points and compares. T2 certificates are replayed from their
// conjugators via replay_t2_certificate instead.
bool replay_witness(const Group& g, const IbisCertificate& cert);
bool replay_t2_certificate(const Group& g, const Group& subgroup,
                           const IbisCertificate& cert,
                           std::uint64_t intersect_budget = 1'000'000);

// Certificate constructors used by the CLI and tests.
IbisCertificate make_t1_certificate(const Group& g, std::uint32_t known_base_size,
                                    const IrredundantTuple& partial,
                                    std::uint64_t seed,
                                    const std::string& descriptor);
IbisCertificate make_t2_certificate(const Group& g, const ConjugateChain& chain,
                                    std::uint32_t known_base_size,
                                    std::uint64_t seed,
                                    const std::string& descriptor,
                                    const std::string& subgroup_descriptor);
IbisCertificate make_t3_certificate(const Group& g, std::uint32_t known_base_size,
                                    const RestrictedTuple& tuple,
                                    std::uint64_t seed,
                                    const std::string& descriptor);
IbisCertificate make_undecided_certificate(const Group& g, Method method,
                                           std::uint32_t known_base_size,
                                           std::uint64_t seed,
                                           const std::string& descriptor);

}  // namespace ibiskit

#endif
