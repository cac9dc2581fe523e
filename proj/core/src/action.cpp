#include "ibiskit/action.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "ibiskit/catalog.hpp"
#include "ibiskit/errors.hpp"

namespace ibiskit {

namespace {

struct ImageVectorHash {
  std::size_t operator()(const std::vector<Point>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (Point p : v) {
      h ^= p;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

// Lexicographically least element of the coset subgroup*x, computed greedily
// down the subgroup's chain (built on the full ascending preferred base, so
// base points appear in increasing order and all other images are forced).
Perm minimal_coset_rep(const StabilizerChain& sub_chain, Perm x) {
  for (std::size_t li = 0; li < sub_chain.levels().size(); ++li) {
    const auto& level = sub_chain.levels()[li];
    Point best_delta = level.beta;
    Point best_image = x.apply(level.beta);
    for (Point delta : level.orbit) {
      const Point image = x.apply(delta);
      if (image < best_image) {
        best_image = image;
        best_delta = delta;
      }
    }
    x = compose(sub_chain.transversal(li, best_delta), x);
  }
  return x;
}

}  // namespace

namespace {

std::vector<Point> ascending_points(Point n) {
  std::vector<Point> all(n);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

}  // namespace

ActionMap coset_action(const Group& group, const Group& subgroup,
                       std::uint64_t index_cap) {
  if (group.degree() != subgroup.degree())
    throw DegreeMismatchError("coset_action: degree mismatch");
  if (!subgroup.is_subgroup_of(group))
    throw NotASubgroupError("coset_action: not a subgroup of the acting group");
  const GroupOrder index = group.order() / subgroup.order();
  if (index > index_cap)
    throw CapExceededError("coset_action: index " + order_to_string(index) +
                           " exceeds cap " + std::to_string(index_cap));

  const StabilizerChain sub_chain =
      subgroup.chain_with_base(ascending_points(group.degree()));

  const Point target_degree = static_cast<Point>(index);
  std::unordered_map<std::vector<Point>, Point, ImageVectorHash> point_of;
  std::vector<Perm> reps;  // first representative reached in BFS order

  const Perm id(group.degree());
  point_of.emplace(minimal_coset_rep(sub_chain, id).images(), 0);
  reps.push_back(id);

  const auto& gens = group.generators();
  std::vector<std::vector<Point>> images(gens.size());
  for (auto& img : images) img.reserve(target_degree);

  for (Point at = 0; at < reps.size(); ++at) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      Perm moved = compose(reps[at], gens[gi]);
      std::vector<Point> key = minimal_coset_rep(sub_chain, moved).images();
      auto [it, inserted] = point_of.emplace(std::move(key),
                                             static_cast<Point>(reps.size()));
      if (inserted) reps.push_back(std::move(moved));
      if (images[gi].size() <= at) images[gi].resize(at + 1);
      images[gi][at] = it->second;
    }
  }
  if (reps.size() != target_degree)
    throw Error("coset_action: enumeration produced " +
                std::to_string(reps.size()) + " cosets, expected " +
                order_to_string(index));

  ActionMap action{group, target_degree, {}, ActionMap::LabelKind::kCosetRep,
                   {}, 0, subgroup};
  for (auto& img : images) {
    img.resize(target_degree);
    action.generator_images.emplace_back(std::move(img));
  }
  action.labels.reserve(target_degree);
  for (const Perm& rep : reps) action.labels.push_back(format_cycles(rep));
  return action;
}

// ---------------------------------------------------------------------------
// k-subset action in colexicographic order

namespace {

// binomials[a][i] = C(a, i), saturated just above `cap`.
std::vector<std::vector<std::uint64_t>> binomial_table(Point n, Point k,
                                                       std::uint64_t cap) {
  std::vector<std::vector<std::uint64_t>> table(
      n + 1, std::vector<std::uint64_t>(k + 1, 0));
  const std::uint64_t roof = cap == ~0ULL ? cap : cap + 1;
  for (Point a = 0; a <= n; ++a) {
    table[a][0] = 1;
    for (Point i = 1; i <= k && i <= a; ++i) {
      std::uint64_t v = table[a - 1][i - 1] +
                        (i <= a - 1 ? table[a - 1][i] : 0);
      table[a][i] = std::min(v, roof);
    }
  }
  return table;
}

}  // namespace

namespace {

std::uint64_t binom_u64(Point a, Point k) {
  if (k > a) return 0;
  const Point kk = std::min<Point>(k, a - k);
  unsigned __int128 r = 1;
  for (Point i = 1; i <= kk; ++i) {
    r = r * (a - kk + i) / i;
    if (r > ~0ULL) return ~0ULL;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t colex_rank(const std::vector<Point>& sorted_subset) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < sorted_subset.size(); ++i)
    rank += binom_u64(sorted_subset[i], static_cast<Point>(i + 1));
  return rank;
}

std::vector<Point> colex_unrank(std::uint64_t rank, Point subset_size) {
  std::vector<Point> out(subset_size);
  for (Point i = subset_size; i >= 1; --i) {
    // largest a with C(a, i) <= remaining rank
    Point a;
    std::uint64_t c;
    if (rank == 0) {
      a = i - 1;
      c = 0;
    } else {
      a = i;
      c = 1;
      while (true) {
        const unsigned __int128 next =
            static_cast<unsigned __int128>(c) * (a + 1) / (a + 1 - i);
        if (next > rank) break;
        c = static_cast<std::uint64_t>(next);
        ++a;
      }
    }
    out[i - 1] = a;
    rank -= c;
  }
  return out;
}

ActionMap subset_action(const Group& group, Point subset_size,
                        std::uint64_t point_cap) {
  const Point n = group.degree();
  if (subset_size == 0 || subset_size > n)
    throw PointOutOfRangeError("subset_action: subset size must be in 1..degree");
  auto table = binomial_table(n, subset_size, point_cap);
  const std::uint64_t count = table[n][subset_size];
  if (count > point_cap)
    throw CapExceededError("subset_action: C(" + std::to_string(n) + "," +
                           std::to_string(subset_size) + ") exceeds cap " +
                           std::to_string(point_cap));

  const Point target_degree = static_cast<Point>(count);
  auto rank_of = [&](const std::vector<Point>& sorted) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) r += table[sorted[i]][i + 1];
    return static_cast<Point>(r);
  };
  auto unrank = [&](Point rank) {
    std::vector<Point> subset(subset_size);
    std::uint64_t r = rank;
    for (Point i = subset_size; i >= 1; --i) {
      Point a = i - 1;
      while (a + 1 <= n && table[a + 1][i] <= r) ++a;
      subset[i - 1] = a;
      r -= table[a][i];
    }
    return subset;
  };

  ActionMap action{group, target_degree, {}, ActionMap::LabelKind::kSubset,
                   {}, subset_size, std::nullopt};
  std::vector<std::vector<Point>> subsets(target_degree);
  action.labels.reserve(target_degree);
  for (Point r = 0; r < target_degree; ++r) {
    subsets[r] = unrank(r);
    PointSet s{n, subsets[r]};
    action.labels.push_back(format_point_set(s));
  }
  for (const Perm& gen : group.generators()) {
    std::vector<Point> img(target_degree);
    std::vector<Point> moved(subset_size);
    for (Point r = 0; r < target_degree; ++r) {
      for (Point i = 0; i < subset_size; ++i) moved[i] = gen.apply(subsets[r][i]);
      std::sort(moved.begin(), moved.end());
      img[r] = rank_of(moved);
    }
    action.generator_images.emplace_back(std::move(img));
  }
  return action;
}

// ---------------------------------------------------------------------------

Perm act_on_points(const ActionMap& action, const Perm& source_element) {
  if (source_element.degree() != action.source.degree())
    throw DegreeMismatchError("act_on_points: element degree mismatch");
  switch (action.label_kind) {
    case ActionMap::LabelKind::kSubset: {
      const Point n = action.source.degree();
      const Point k = action.subset_size;
      auto table = binomial_table(n, k, ~0ULL >> 1);
      std::vector<Point> img(action.target_degree);
      std::vector<Point> subset, moved(k);
      for (Point r = 0; r < action.target_degree; ++r) {
        subset = colex_unrank(r, k);
        for (Point i = 0; i < k; ++i) moved[i] = source_element.apply(subset[i]);
        std::sort(moved.begin(), moved.end());
        std::uint64_t rank = 0;
        for (std::size_t i = 0; i < moved.size(); ++i)
          rank += table[moved[i]][i + 1];
        img[r] = static_cast<Point>(rank);
      }
      return Perm(std::move(img));
    }
    case ActionMap::LabelKind::kCosetRep: {
      if (!action.coset_subgroup)
        throw Error("act_on_points: coset action lacks its subgroup context");
      const Group& subgroup = *action.coset_subgroup;
      const StabilizerChain sub_chain =
          subgroup.chain_with_base(ascending_points(subgroup.degree()));
      std::unordered_map<std::vector<Point>, Point, ImageVectorHash> point_of;
      std::vector<Perm> reps;
      reps.reserve(action.target_degree);
      for (Point p = 0; p < action.target_degree; ++p) {
        Perm rep = parse_cycles(action.labels[p], subgroup.degree());
        point_of.emplace(minimal_coset_rep(sub_chain, rep).images(), p);
        reps.push_back(std::move(rep));
      }
      std::vector<Point> img(action.target_degree);
      for (Point p = 0; p < action.target_degree; ++p) {
        const auto key =
            minimal_coset_rep(sub_chain, compose(reps[p], source_element)).images();
        const auto it = point_of.find(key);
        if (it == point_of.end())
          throw Error("act_on_points: element does not permute the cosets "
                      "(not in the acting group?)");
        img[p] = it->second;
      }
      return Perm(std::move(img));
    }
    case ActionMap::LabelKind::kNone:
      break;
  }
  throw Error("act_on_points: action carries no construction context");
}

bool is_transitive(const Group& g) {
  return g.orbit(0).size() == g.degree();
}

namespace {

class BlockFusion {
 public:
  explicit BlockFusion(Point n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  Point find(Point x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(Point a, Point b, std::deque<Point>& queue) {
    Point ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent_[rb] = ra;
    queue.push_back(rb);
    return true;
  }

 private:
  std::vector<Point> parent_;
};

// Finest G-congruence fusing {a, b}; returns the block containing a.
PointSet minimal_block(const Group& g, Point a, Point b) {
  BlockFusion fusion(g.degree());
  std::deque<Point> queue;
  fusion.unite(a, b, queue);
  while (!queue.empty()) {
    Point absorbed = queue.front();
    queue.pop_front();
    Point rep = fusion.find(absorbed);
    for (const Perm& gen : g.generators())
      fusion.unite(gen.apply(rep), gen.apply(absorbed), queue);
  }
  PointSet block;
  block.degree = g.degree();
  Point root = fusion.find(a);
  for (Point x = 0; x < g.degree(); ++x)
    if (fusion.find(x) == root) block.members.push_back(x);
  return block;
}

}  // namespace

PrimitivityReport primitivity(const Group& g) {
  if (!is_transitive(g)) return {Primitivity::kIntransitive, std::nullopt};
  const Point n = g.degree();
  if (n <= 2) return {Primitivity::kPrimitive, std::nullopt};

  const Point beta = 0;
  Group stab = g.point_stabilizer(beta);
  for (const PointSet& orb : stab.orbits()) {
    const Point gamma = orb.members.front();
    if (gamma == beta) continue;
    PointSet block = minimal_block(g, beta, gamma);
    if (block.size() < n) return {Primitivity::kImprimitive, std::move(block)};
  }
  return {Primitivity::kPrimitive, std::nullopt};
}

bool is_faithful(const ActionMap& action) {
  return action.source.order() == action.image_group().order();
}

void export_action(const ActionMap& action, const std::string& group_path,
                   const std::string& labels_path) {
  save_group_file(action.image_group(), group_path);
  std::ofstream out(labels_path);
  if (!out) throw Error("cannot write " + labels_path);
  out << "# point\tlabel\n";
  for (Point p = 0; p < action.target_degree; ++p) {
    out << (p + 1) << '\t'
        << (p < action.labels.size() ? action.labels[p] : "") << '\n';
  }
}

}  // namespace ibiskit
