#ifndef IBISKIT_ACTION_HPP
#define IBISKIT_ACTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ibiskit/group.hpp"

namespace ibiskit {

// A permutation action of a source group on a fresh point set, given by the
// images of the source generators (aligned index by index). `labels`
// describes what each target point stands for.
struct ActionMap {
  enum class LabelKind { kNone, kCosetRep, kSubset };

  Group source;
  Point target_degree = 1;
  std::vector<Perm> generator_images;
  LabelKind label_kind = LabelKind::kNone;
  std::vector<std::string> labels;  // one per target point, may be empty

  // Construction context, kept so arbitrary source elements (not just the
  // generators) can be pushed through the action.
  Point subset_size = 0;                  // subset actions
  std::optional<Group> coset_subgroup;    // coset actions

  Group image_group() const { return Group(target_degree, generator_images); }
};

// Image of an arbitrary element of the source group under the action. Used
// to carry subgroups along: the image of K <= G is generated by the images
// of K's generators.
Perm act_on_points(const ActionMap& action, const Perm& source_element);

inline constexpr std::uint64_t kDefaultIndexCap = 1'000'000;

// Action of `group` on the right cosets of `subgroup` by right
// multiplication. Point 0 is the trivial coset; labels carry the first coset
// representative reached by breadth-first closure from the identity (in
// cycle notation). Cosets are identified through a canonical minimal-image
// representative computed with the subgroup's chain.
//
// Throws NotASubgroupError, or CapExceededError when the index exceeds the cap.
ActionMap coset_action(const Group& group, const Group& subgroup,
                       std::uint64_t index_cap = kDefaultIndexCap);

// Action on k-subsets of {0..n-1}, ordered colexicographically. Labels are
// the subsets as 1-based text. Throws CapExceededError when C(n,k) > cap.
ActionMap subset_action(const Group& group, Point subset_size,
                        std::uint64_t point_cap = kDefaultIndexCap);

// Rank of a sorted k-subset in colex order, and its inverse.
std::uint64_t colex_rank(const std::vector<Point>& sorted_subset);
std::vector<Point> colex_unrank(std::uint64_t rank, Point subset_size);

bool is_transitive(const Group& g);

enum class Primitivity { kPrimitive, kImprimitive, kIntransitive };

struct PrimitivityReport {
  Primitivity kind = Primitivity::kPrimitive;
  // A nontrivial block when imprimitive.
  std::optional<PointSet> block;
};

// Minimal-block test: for a transitive group, the finest congruence fusing
// {beta, gamma} is computed for one gamma per point-stabilizer orbit; the
// group is primitive iff every such block is the whole point set.
// Intransitive input is reported as a distinct outcome, not an error.
PrimitivityReport primitivity(const Group& g);

// Kernel triviality, decided by comparing source and image orders.
bool is_faithful(const ActionMap& action);

// Writes the image in group-file format plus a sidecar label table
// ("point<TAB>label" per line, 1-based points) next to it.
void export_action(const ActionMap& action, const std::string& group_path,
                   const std::string& labels_path);

}  // namespace ibiskit

#endif
