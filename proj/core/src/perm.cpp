#include "ibiskit/perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "ibiskit/errors.hpp"

namespace ibiskit {

Perm::Perm(Point degree) : images_(degree) {
  if (degree == 0) throw Error("permutation degree must be positive");
  for (Point i = 0; i < degree; ++i) images_[i] = i;
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.empty()) throw Error("permutation degree must be positive");
  std::vector<bool> seen(images_.size(), false);
  for (Point img : images_) {
    if (img >= images_.size() || seen[img])
      throw Error("image table is not a bijection");
    seen[img] = true;
  }
}

bool Perm::is_identity() const {
  for (Point i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Point Perm::smallest_moved() const {
  for (Point i = 0; i < degree(); ++i)
    if (images_[i] != i) return i;
  return degree();
}

Perm Perm::inverse() const {
  std::vector<Point> inv(images_.size());
  for (Point i = 0; i < degree(); ++i) inv[images_[i]] = i;
  Perm result(1);
  result.images_ = std::move(inv);
  return result;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree())
    throw DegreeMismatchError("compose: degree " + std::to_string(a.degree()) +
                              " vs " + std::to_string(b.degree()));
  std::vector<Point> img(a.degree());
  const auto& ai = a.images();
  const auto& bi = b.images();
  for (Point i = 0; i < a.degree(); ++i) img[i] = bi[ai[i]];
  return Perm(std::move(img));
}

Perm conjugate(const Perm& p, const Perm& x) {
  if (p.degree() != x.degree())
    throw DegreeMismatchError("conjugate: degree " +
                              std::to_string(p.degree()) + " vs " +
                              std::to_string(x.degree()));
  // x^-1 p x without forming intermediates: i ^ (x^-1 p x) maps x(i) to x(p(i)).
  std::vector<Point> img(p.degree());
  const auto& pi = p.images();
  const auto& xi = x.images();
  for (Point i = 0; i < p.degree(); ++i) img[xi[i]] = xi[pi[i]];
  return Perm(std::move(img));
}

namespace {

bool is_sep(char c) { return c == ' ' || c == ',' || c == '\t'; }

}  // namespace

Perm parse_cycles(std::string_view text, Point degree) {
  if (degree == 0) throw ParseError("degree must be positive");
  std::vector<Point> img(degree);
  for (Point i = 0; i < degree; ++i) img[i] = i;
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (is_sep(text[pos]) || text[pos] == '\r')) ++pos;
  };

  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw ParseError(std::string("expected '(' but found '") + text[pos] +
                       "'");
    ++pos;
    std::vector<Point> cycle;
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw ParseError(std::string("expected a point but found '") +
                         text[pos] + "'");
      std::uint64_t value = 0;
      const char* begin = text.data() + pos;
      const char* end = text.data() + text.size();
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc())
        throw ParseError("malformed point near '" +
                         std::string(text.substr(pos, 8)) + "'");
      pos = static_cast<std::size_t>(ptr - text.data());
      if (value == 0) throw ParseError("points are 1-based; found 0");
      if (value > degree)
        throw ParseError("point " + std::to_string(value) +
                         " exceeds degree " + std::to_string(degree));
      Point p = static_cast<Point>(value - 1);
      if (used[p])
        throw ParseError("duplicate point " + std::to_string(value));
      used[p] = true;
      cycle.push_back(p);
      skip_ws();
    }
    if (pos == text.size()) throw ParseError("missing ')'");
    ++pos;  // consume ')'
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
      img[cycle[i]] = cycle[i + 1];
    if (cycle.size() > 1) img[cycle.back()] = cycle.front();
    skip_ws();
  }
  return Perm(std::move(img));
}

std::string format_cycles(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (Point start = 0; start < p.degree(); ++start) {
    if (seen[start] || p.fixes(start)) continue;
    out.push_back('(');
    Point x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out.push_back(' ');
      out += std::to_string(x + 1);
      first = false;
      x = p.apply(x);
    }
    out.push_back(')');
  }
  if (out.empty()) return "()";
  return out;
}

std::vector<Point> cycle_type(const Perm& p) {
  std::vector<Point> lengths;
  std::vector<bool> seen(p.degree(), false);
  for (Point start = 0; start < p.degree(); ++start) {
    if (seen[start] || p.fixes(start)) continue;
    Point len = 0;
    Point x = start;
    while (!seen[x]) {
      seen[x] = true;
      ++len;
      x = p.apply(x);
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::size_t PermHash::operator()(const Perm& p) const {
  std::size_t h = 1469598103934665603ULL;
  for (Point img : p.images()) {
    h ^= img;
    h *= 1099511628211ULL;
  }
  return h;
}

bool PointSet::contains(Point p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

std::string format_point_set(const PointSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(s.members[i] + 1);
  }
  out.push_back('}');
  return out;
}

}  // namespace ibiskit
