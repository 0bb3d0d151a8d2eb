#pragma once

// Exact planar incidence geometry over arbitrary-precision integers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gbg {

using Integer = boost::multiprecision::cpp_int;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Point {
  Integer x;
  Integer y;

  friend bool operator==(const Point&, const Point&) = default;
  friend bool operator<(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

// Canonical name of the line a*x + b*y + c = 0: gcd(|a|,|b|,|c|) = 1 and the
// first nonzero of (a, b) is positive. Ordered lexicographically on (a, b, c).
struct LineKey {
  Integer a;
  Integer b;
  Integer c;

  friend bool operator==(const LineKey&, const LineKey&) = default;
  friend bool operator<(const LineKey& l, const LineKey& r) {
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    return l.c < r.c;
  }

  bool contains(const Point& p) const { return a * p.x + b * p.y + c == 0; }
  std::string to_string() const;
};

LineKey line_key(const Point& p, const Point& q);

// Determinant of (q - p, r - p).
Integer orientation(const Point& p, const Point& q, const Point& r);
bool collinear(const Point& p, const Point& q, const Point& r);

struct Line {
  LineKey key;
  std::vector<std::size_t> points;  // sorted, size >= 2
};

// All connecting lines of a point set. Lines are stored sorted by key, so a
// line's index order is the lexicographic LineKey order.
class IncidenceStructure {
 public:
  IncidenceStructure(std::vector<Point> points, std::vector<Line> lines);

  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Line>& lines() const { return lines_; }
  const Line& line(std::size_t index) const { return lines_[index]; }

  std::optional<std::size_t> find(const LineKey& key) const;
  const std::vector<std::size_t>& lines_through(std::size_t point) const {
    return point_to_lines_[point];
  }
  // Index of the unique line through two distinct points.
  std::size_t line_between(std::size_t p, std::size_t q) const {
    return pair_line_[p * points_.size() + q];
  }

  friend bool operator==(const IncidenceStructure& l, const IncidenceStructure& r) {
    if (l.points_ != r.points_ || l.lines_.size() != r.lines_.size()) return false;
    for (std::size_t i = 0; i < l.lines_.size(); ++i) {
      if (l.lines_[i].key != r.lines_[i].key || l.lines_[i].points != r.lines_[i].points) return false;
    }
    return true;
  }

 private:
  std::vector<Point> points_;
  std::vector<Line> lines_;
  std::vector<std::vector<std::size_t>> point_to_lines_;
  std::vector<std::uint32_t> pair_line_;
};

// Pair keys are computed in an OpenMP loop, then grouped in key order; the
// result is bit-identical to connecting_lines_serial.
IncidenceStructure connecting_lines(const std::vector<Point>& points);
IncidenceStructure connecting_lines_serial(const std::vector<Point>& points);

// Throws InputError naming the first repeated point.
void require_distinct(const std::vector<Point>& points);

// A subset of the point indices of a board. Most queries below come in a
// whole-board form and a subset form, since the solvers recurse on subsets.
class PointSubset {
 public:
  PointSubset() = default;
  PointSubset(std::size_t board_size, std::vector<std::size_t> members);
  static PointSubset all(std::size_t board_size);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t board_size() const { return mask_.size(); }
  bool contains(std::size_t p) const { return p < mask_.size() && mask_[p]; }
  const std::vector<std::size_t>& members() const { return members_; }

  PointSubset without(const std::vector<std::size_t>& removed) const;

 private:
  std::vector<std::size_t> members_;
  std::vector<char> mask_;
};

// A connecting line of a subset: an original line with >= 2 members in it.
struct SubsetLine {
  std::size_t line;
  std::vector<std::size_t> points;
};

std::vector<SubsetLine> subset_lines(const IncidenceStructure& is, const PointSubset& subset);
std::size_t count_on_line(const IncidenceStructure& is, std::size_t line, const PointSubset& subset);
bool is_collinear(const IncidenceStructure& is, const PointSubset& subset);
// For a collinear subset with >= 2 points, the line carrying it.
std::optional<std::size_t> carrier_line(const IncidenceStructure& is, const PointSubset& subset);

struct TkProfile {
  std::size_t n = 0;
  std::map<std::size_t, std::size_t> t;  // k -> number of lines with exactly k points

  std::size_t count(std::size_t k) const {
    auto it = t.find(k);
    return it == t.end() ? 0 : it->second;
  }
  friend bool operator==(const TkProfile&, const TkProfile&) = default;
};

// Throws InvariantError when sum_k C(k,2) t_k != C(n,2).
TkProfile incidence_profile(const IncidenceStructure& is);
TkProfile incidence_profile(const IncidenceStructure& is, const PointSubset& subset);

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t component_size(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

struct SpanningTree {
  std::size_t root = npos;
  std::vector<std::size_t> order;   // breadth-first order, root first
  std::vector<std::size_t> parent;  // indexed by board point; npos outside the tree
  std::vector<std::size_t> depth;   // indexed by board point
};

struct Component {
  std::vector<std::size_t> vertices;  // sorted
  SpanningTree tree;                  // rooted at the lowest index
};

// Vertices are board indices; only members of the subset participate.
struct OrdinaryLineGraph {
  PointSubset vertices;
  std::vector<std::vector<std::size_t>> adjacency;  // indexed by board point, sorted
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (u < v), sorted
  std::vector<Component> components;                       // ordered by lowest vertex
  std::vector<std::size_t> component_of;                   // board point -> component index

  // Largest component; ties go to the one with the lowest vertex.
  const Component& largest_component() const;
};

OrdinaryLineGraph ordinary_line_graph(const IncidenceStructure& is);
OrdinaryLineGraph ordinary_line_graph(const IncidenceStructure& is, const PointSubset& subset);

// BFS tree of `component` rooted at `root`, visiting neighbours in index order.
SpanningTree spanning_tree(const OrdinaryLineGraph& graph, const std::vector<std::size_t>& component,
                           std::size_t root);

// Line with the most points; ties go to the smallest key. Returns a line index.
std::size_t max_incidence_line(const IncidenceStructure& is);
std::optional<std::size_t> max_incidence_line(const IncidenceStructure& is, const PointSubset& subset);

// Keys of all lines with more than `threshold` points, sorted.
std::vector<LineKey> heavy_lines(const IncidenceStructure& is, std::size_t threshold);
std::vector<std::size_t> heavy_lines(const IncidenceStructure& is, const PointSubset& subset,
                                     std::size_t threshold);

struct InequalityCheck {
  bool hypothesis = false;
  bool satisfied = false;
  std::string detail;

  bool violated() const { return hypothesis && !satisfied; }
};

struct InequalityReport {
  InequalityCheck erdos_purdy;  // max(t2, t3) >= n - 1 when n >= 25 and t_n = 0
  InequalityCheck hirzebruch;   // t2 + 3/4 t3 >= n + sum_{k>=5} (2k-9) t_k when t_n = t_{n-1} = t_{n-2} = 0

  bool geometry_bug() const { return erdos_purdy.violated() || hirzebruch.violated(); }
};

InequalityReport check_incidence_inequalities(const TkProfile& profile);

// Decimal rendering for Integer values in messages and text formats.
std::string to_string(const Integer& v);

}  // namespace gbg
