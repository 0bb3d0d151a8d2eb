#include "gbg/geometry.hpp"

#include "gbg/errors.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace gbg {

std::string to_string(const Integer& v) { return v.str(); }

std::string LineKey::to_string() const {
  return "(" + gbg::to_string(a) + "," + gbg::to_string(b) + "," + gbg::to_string(c) + ")";
}

LineKey line_key(const Point& p, const Point& q) {
  if (p == q) {
    throw InputError("line_key: identical points (" + to_string(p.x) + "," + to_string(p.y) + ")");
  }
  Integer a = q.y - p.y;
  Integer b = p.x - q.x;
  Integer c = -(a * p.x + b * p.y);
  Integer g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(a), abs(b)), abs(c));
  a /= g;
  b /= g;
  c /= g;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
    c = -c;
  }
  return {std::move(a), std::move(b), std::move(c)};
}

Integer orientation(const Point& p, const Point& q, const Point& r) {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

bool collinear(const Point& p, const Point& q, const Point& r) { return orientation(p, q, r) == 0; }

void require_distinct(const std::vector<Point>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return points[i] < points[j] || (points[i] == points[j] && i < j);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points[order[k]] == points[order[k - 1]]) {
      const auto& p = points[order[k]];
      throw InputError("duplicate point (" + to_string(p.x) + "," + to_string(p.y) + ") at indices " +
                       std::to_string(order[k - 1]) + " and " + std::to_string(order[k]));
    }
  }
}

IncidenceStructure::IncidenceStructure(std::vector<Point> points, std::vector<Line> lines)
    : points_(std::move(points)), lines_(std::move(lines)) {
  const std::size_t n = points_.size();
  point_to_lines_.assign(n, {});
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  pair_line_.assign(n * n, unset);
  for (std::size_t li = 0; li < lines_.size(); ++li) {
    const auto& pts = lines_[li].points;
    if (pts.size() < 2) throw InvariantError("connecting line with fewer than two points");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      point_to_lines_[pts[i]].push_back(li);
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        auto& slot = pair_line_[pts[i] * n + pts[j]];
        if (slot != unset) throw InvariantError("point pair lies on two stored lines");
        slot = static_cast<std::uint32_t>(li);
        pair_line_[pts[j] * n + pts[i]] = slot;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pair_line_[i * n + j] == unset) throw InvariantError("point pair not covered by any line");
    }
  }
}

std::optional<std::size_t> IncidenceStructure::find(const LineKey& key) const {
  auto it = std::lower_bound(lines_.begin(), lines_.end(), key,
                             [](const Line& l, const LineKey& k) { return l.key < k; });
  if (it == lines_.end() || !(it->key == key)) return std::nullopt;
  return static_cast<std::size_t>(it - lines_.begin());
}

namespace {

void require_board_size(const std::vector<Point>& points) {
  if (points.size() < 2) throw InputError("a board needs at least two points");
  if (points.size() > std::numeric_limits<std::uint32_t>::max() / 2) throw InputError("point set too large");
}

std::size_t pair_offset(std::size_t n, std::size_t i, std::size_t j) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace

IncidenceStructure connecting_lines(const std::vector<Point>& points) {
  require_board_size(points);
  require_distinct(points);
  const std::size_t n = points.size();
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<LineKey> keys(pairs);

  const auto rows = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i + 1; j < n; ++j) keys[pair_offset(n, i, j)] = line_key(points[i], points[j]);
  }

  std::vector<std::size_t> order(pairs);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (keys[l] < keys[r]) return true;
    if (keys[r] < keys[l]) return false;
    return l < r;
  });

  // Pair index -> (i, j) without division: rebuild a lookup once.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_points(pairs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pair_points[pair_offset(n, i, j)] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
    }
  }

  std::vector<Line> lines;
  for (std::size_t k = 0; k < pairs;) {
    std::size_t end = k + 1;
    while (end < pairs && keys[order[end]] == keys[order[k]]) ++end;
    Line line{keys[order[k]], {}};
    for (std::size_t m = k; m < end; ++m) {
      line.points.push_back(pair_points[order[m]].first);
      line.points.push_back(pair_points[order[m]].second);
    }
    std::sort(line.points.begin(), line.points.end());
    line.points.erase(std::unique(line.points.begin(), line.points.end()), line.points.end());
    lines.push_back(std::move(line));
    k = end;
  }
  return IncidenceStructure(points, std::move(lines));
}

IncidenceStructure connecting_lines_serial(const std::vector<Point>& points) {
  require_board_size(points);
  require_distinct(points);
  std::map<LineKey, std::set<std::size_t>> grouped;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      auto& members = grouped[line_key(points[i], points[j])];
      members.insert(i);
      members.insert(j);
    }
  }
  std::vector<Line> lines;
  lines.reserve(grouped.size());
  for (auto& [key, members] : grouped) lines.push_back({key, {members.begin(), members.end()}});
  return IncidenceStructure(points, std::move(lines));
}

PointSubset::PointSubset(std::size_t board_size, std::vector<std::size_t> members)
    : members_(std::move(members)), mask_(board_size, 0) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (auto p : members_) {
    if (p >= board_size) throw InputError("point index " + std::to_string(p) + " outside the board");
    mask_[p] = 1;
  }
}

PointSubset PointSubset::all(std::size_t board_size) {
  std::vector<std::size_t> members(board_size);
  std::iota(members.begin(), members.end(), std::size_t{0});
  return PointSubset(board_size, std::move(members));
}

PointSubset PointSubset::without(const std::vector<std::size_t>& removed) const {
  std::vector<char> drop(mask_.size(), 0);
  for (auto p : removed) {
    if (p < drop.size()) drop[p] = 1;
  }
  std::vector<std::size_t> kept;
  kept.reserve(members_.size());
  for (auto p : members_) {
    if (!drop[p]) kept.push_back(p);
  }
  return PointSubset(mask_.size(), std::move(kept));
}

std::vector<SubsetLine> subset_lines(const IncidenceStructure& is, const PointSubset& subset) {
  std::vector<SubsetLine> out;
  const bool whole = subset.size() == is.size();
  for (std::size_t li = 0; li < is.lines().size(); ++li) {
    const auto& pts = is.line(li).points;
    if (whole) {
      out.push_back({li, pts});
      continue;
    }
    SubsetLine sl{li, {}};
    for (auto p : pts) {
      if (subset.contains(p)) sl.points.push_back(p);
    }
    if (sl.points.size() >= 2) out.push_back(std::move(sl));
  }
  return out;
}

std::size_t count_on_line(const IncidenceStructure& is, std::size_t line, const PointSubset& subset) {
  std::size_t k = 0;
  for (auto p : is.line(line).points) k += subset.contains(p) ? 1 : 0;
  return k;
}

std::optional<std::size_t> carrier_line(const IncidenceStructure& is, const PointSubset& subset) {
  if (subset.size() < 2) return std::nullopt;
  const auto& m = subset.members();
  const std::size_t line = is.line_between(m[0], m[1]);
  for (std::size_t k = 2; k < m.size(); ++k) {
    if (is.line_between(m[0], m[k]) != line) return std::nullopt;
  }
  return line;
}

bool is_collinear(const IncidenceStructure& is, const PointSubset& subset) {
  return subset.size() <= 2 || carrier_line(is, subset).has_value();
}

namespace {

std::size_t choose2(std::size_t k) { return k * (k - 1) / 2; }

TkProfile checked_profile(std::size_t n, std::map<std::size_t, std::size_t> t) {
  std::size_t pairs = 0;
  for (auto [k, count] : t) pairs += choose2(k) * count;
  if (pairs != choose2(n)) {
    throw InvariantError("pair-counting identity failed: sum C(k,2) t_k = " + std::to_string(pairs) +
                         " but C(n,2) = " + std::to_string(choose2(n)));
  }
  return {n, std::move(t)};
}

}  // namespace

TkProfile incidence_profile(const IncidenceStructure& is) {
  std::map<std::size_t, std::size_t> t;
  for (const auto& line : is.lines()) ++t[line.points.size()];
  return checked_profile(is.size(), std::move(t));
}

TkProfile incidence_profile(const IncidenceStructure& is, const PointSubset& subset) {
  std::map<std::size_t, std::size_t> t;
  for (const auto& sl : subset_lines(is, subset)) ++t[sl.points.size()];
  return checked_profile(subset.size(), std::move(t));
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

const Component& OrdinaryLineGraph::largest_component() const {
  if (components.empty()) throw PreconditionError("ordinary line graph has no vertices");
  const Component* best = &components.front();
  for (const auto& c : components) {
    if (c.vertices.size() > best->vertices.size()) best = &c;
  }
  return *best;
}

SpanningTree spanning_tree(const OrdinaryLineGraph& graph, const std::vector<std::size_t>& component,
                           std::size_t root) {
  const std::size_t n = graph.adjacency.size();
  std::vector<char> in_component(n, 0);
  for (auto v : component) in_component[v] = 1;
  if (root >= n || !in_component[root]) throw PreconditionError("tree root is not in the component");

  SpanningTree tree;
  tree.root = root;
  tree.parent.assign(n, npos);
  tree.depth.assign(n, npos);
  tree.depth[root] = 0;
  std::queue<std::size_t> frontier;
  frontier.push(root);
  while (!frontier.empty()) {
    const auto v = frontier.front();
    frontier.pop();
    tree.order.push_back(v);
    for (auto w : graph.adjacency[v]) {
      if (!in_component[w] || tree.depth[w] != npos) continue;
      tree.parent[w] = v;
      tree.depth[w] = tree.depth[v] + 1;
      frontier.push(w);
    }
  }
  if (tree.order.size() != component.size()) {
    throw PreconditionError("vertex set is not connected in the ordinary line graph");
  }
  return tree;
}

OrdinaryLineGraph ordinary_line_graph(const IncidenceStructure& is) {
  return ordinary_line_graph(is, PointSubset::all(is.size()));
}

OrdinaryLineGraph ordinary_line_graph(const IncidenceStructure& is, const PointSubset& subset) {
  const std::size_t n = is.size();
  OrdinaryLineGraph g;
  g.vertices = subset;
  g.adjacency.assign(n, {});
  g.component_of.assign(n, npos);
  UnionFind uf(n);
  for (const auto& sl : subset_lines(is, subset)) {
    if (sl.points.size() != 2) continue;
    const auto u = sl.points[0];
    const auto v = sl.points[1];
    g.edges.emplace_back(u, v);
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
    uf.unite(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());

  std::map<std::size_t, std::size_t> root_to_component;
  for (auto v : subset.members()) {
    const auto r = uf.find(v);
    auto [it, inserted] = root_to_component.try_emplace(r, g.components.size());
    if (inserted) g.components.push_back({});
    g.components[it->second].vertices.push_back(v);
    g.component_of[v] = it->second;
  }
  for (auto& c : g.components) c.tree = spanning_tree(g, c.vertices, c.vertices.front());
  return g;
}

std::size_t max_incidence_line(const IncidenceStructure& is) {
  std::size_t best = 0;
  for (std::size_t li = 1; li < is.lines().size(); ++li) {
    if (is.line(li).points.size() > is.line(best).points.size()) best = li;
  }
  return best;
}

std::optional<std::size_t> max_incidence_line(const IncidenceStructure& is, const PointSubset& subset) {
  std::optional<std::size_t> best;
  std::size_t best_count = 0;
  for (const auto& sl : subset_lines(is, subset)) {
    if (sl.points.size() > best_count) {
      best = sl.line;
      best_count = sl.points.size();
    }
  }
  return best;
}

std::vector<LineKey> heavy_lines(const IncidenceStructure& is, std::size_t threshold) {
  if (threshold < 2) throw PreconditionError("heavy_lines threshold must be at least 2");
  std::vector<LineKey> out;
  for (const auto& line : is.lines()) {
    if (line.points.size() > threshold) out.push_back(line.key);
  }
  return out;
}

std::vector<std::size_t> heavy_lines(const IncidenceStructure& is, const PointSubset& subset,
                                     std::size_t threshold) {
  if (threshold < 2) throw PreconditionError("heavy_lines threshold must be at least 2");
  std::vector<std::size_t> out;
  for (const auto& sl : subset_lines(is, subset)) {
    if (sl.points.size() > threshold) out.push_back(sl.line);
  }
  return out;
}

InequalityReport check_incidence_inequalities(const TkProfile& profile) {
  InequalityReport report;
  const auto n = static_cast<long long>(profile.n);
  const auto t2 = static_cast<long long>(profile.count(2));
  const auto t3 = static_cast<long long>(profile.count(3));
  auto t = [&](long long k) { return k < 2 ? 0LL : static_cast<long long>(profile.count(static_cast<std::size_t>(k))); };

  auto& ep = report.erdos_purdy;
  ep.hypothesis = n >= 25 && t(n) == 0;
  if (ep.hypothesis) {
    ep.satisfied = std::max(t2, t3) >= n - 1;
    ep.detail = "max(t2,t3) = " + std::to_string(std::max(t2, t3)) + " vs n-1 = " + std::to_string(n - 1);
  } else {
    ep.detail = "not applicable";
  }

  auto& hz = report.hirzebruch;
  hz.hypothesis = n >= 3 && t(n) == 0 && t(n - 1) == 0 && t(n - 2) == 0;
  if (hz.hypothesis) {
    long long rhs = n;
    for (auto [k, count] : profile.t) {
      if (k >= 5) rhs += (2 * static_cast<long long>(k) - 9) * static_cast<long long>(count);
    }
    // Scaled by 4 to stay in integers.
    const long long lhs4 = 4 * t2 + 3 * t3;
    hz.satisfied = lhs4 >= 4 * rhs;
    hz.detail = "t2 + 3/4 t3 = " + std::to_string(lhs4 / 4) + (lhs4 % 4 ? "." + std::to_string(lhs4 % 4 * 25) : "") +
                " vs " + std::to_string(rhs);
  } else {
    hz.detail = "not applicable";
  }
  return report;
}

}  // namespace gbg
