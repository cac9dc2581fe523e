#ifndef IBISKIT_PERM_HPP
#define IBISKIT_PERM_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ibiskit {

// Points are 0-based in memory and in the whole C++ API. All *text* forms
// (cycle notation, group files, labels, certificates, CLI output) are
// 1-based; the conversion happens exactly where text is parsed or printed.
using Point = std::uint32_t;

// A permutation of {0..n-1}, stored as its image table.
//
// Composition convention, fixed once for the entire toolkit:
// compose(a, b) applies a first, then b, i.e. compose(a, b).apply(x) ==
// b.apply(a.apply(x)). Exponent-style identities such as conjugation read
// left to right under this convention.
class Perm {
 public:
  // Identity on `degree` points; degree must be >= 1.
  explicit Perm(Point degree);

  // From an image table; throws Error if the table is not a bijection.
  explicit Perm(std::vector<Point> images);

  Point degree() const { return static_cast<Point>(images_.size()); }
  Point apply(Point p) const { return images_[p]; }
  bool fixes(Point p) const { return images_[p] == p; }
  bool is_identity() const;

  // Smallest point moved, or degree() if the permutation is the identity.
  Point smallest_moved() const;

  Perm inverse() const;

  const std::vector<Point>& images() const { return images_; }

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> images_;
};

// Applies a first, then b. Degrees must match.
Perm compose(const Perm& a, const Perm& b);

// x^-1 * p * x, equivalently compose(x.inverse(), compose(p, x)).
Perm conjugate(const Perm& p, const Perm& x);

// Parses whitespace-tolerant disjoint-cycle notation with 1-based points,
// e.g. "(1 2 3)(4 5)" or "(1,2,3)". "" and "()" denote the identity.
// Throws ParseError naming the offending token on duplicate points,
// points exceeding the degree, or malformed parentheses.
Perm parse_cycles(std::string_view text, Point degree);

// Emits disjoint cycles with 1-based points: least point first within each
// cycle, cycles sorted by least point, fixed points omitted, identity "()".
// parse_cycles(format_cycles(p), p.degree()) == p.
std::string format_cycles(const Perm& p);

// Cycle lengths >= 2, sorted ascending. Equal for conjugate permutations.
std::vector<Point> cycle_type(const Perm& p);

struct PermHash {
  std::size_t operator()(const Perm& p) const;
};

// A subset of {0..n-1} together with the ambient degree.
struct PointSet {
  Point degree = 0;
  std::vector<Point> members;  // sorted ascending, no duplicates

  bool contains(Point p) const;
  std::size_t size() const { return members.size(); }
  friend bool operator==(const PointSet&, const PointSet&) = default;
};

// "{1,3,7}" with 1-based points.
std::string format_point_set(const PointSet& s);

}  // namespace ibiskit

#endif
