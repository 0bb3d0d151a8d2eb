#include "gbg/solvers.hpp"

#include "gbg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gbg {

namespace {

// Per-line member counts of a subset, for O(1) "is this line ordinary here".
class SubsetView {
 public:
  SubsetView(const IncidenceStructure& is, const PointSubset& subset) : is_(is), subset_(subset) {
    counts_.assign(is.lines().size(), 0);
    for (auto p : subset.members()) {
      for (auto li : is.lines_through(p)) ++counts_[li];
    }
  }

  std::size_t on(std::size_t line) const { return counts_[line]; }
  std::size_t line(std::size_t u, std::size_t v) const { return is_.line_between(u, v); }
  bool ordinary(std::size_t u, std::size_t v) const { return counts_[line(u, v)] == 2; }
  const PointSubset& subset() const { return subset_; }

  // Largest line of the subset; ties go to the smallest key.
  std::pair<std::size_t, std::size_t> max_line() const {
    std::size_t best = npos;
    std::size_t best_count = 0;
    for (std::size_t li = 0; li < counts_.size(); ++li) {
      if (counts_[li] > best_count) {
        best = li;
        best_count = counts_[li];
      }
    }
    return {best, best_count};
  }

  std::optional<std::size_t> first_line_with(std::size_t k) const {
    for (std::size_t li = 0; li < counts_.size(); ++li) {
      if (counts_[li] == k) return li;
    }
    return std::nullopt;
  }

  std::vector<std::size_t> members_on(std::size_t line) const {
    std::vector<std::size_t> out;
    for (auto p : is_.line(line).points) {
      if (subset_.contains(p)) out.push_back(p);
    }
    return out;
  }

  std::vector<std::size_t> members_off(std::size_t line) const {
    std::vector<std::size_t> out;
    for (auto p : subset_.members()) {
      if (!on_line(line, p)) out.push_back(p);
    }
    return out;
  }

  bool on_line(std::size_t line, std::size_t p) const {
    const auto& pts = is_.line(line).points;
    return std::binary_search(pts.begin(), pts.end(), p);
  }

 private:
  const IncidenceStructure& is_;
  const PointSubset& subset_;
  std::vector<std::size_t> counts_;
};

long subset_sum(const Configuration& c, const PointSubset& s) {
  long sum = 0;
  for (auto p : s.members()) sum += c.weight(p);
  return sum;
}

long subset_sum(const Configuration& c, const std::vector<std::size_t>& pts) {
  long sum = 0;
  for (auto p : pts) sum += c.weight(p);
  return sum;
}

std::vector<std::size_t> negatives(const Configuration& c, const std::vector<std::size_t>& pts) {
  std::vector<std::size_t> out;
  for (auto p : pts) {
    if (c.weight(p) < 0) out.push_back(p);
  }
  return out;
}

void require_noncollinear(const IncidenceStructure& is, const PointSubset& s, const char* who) {
  if (is_collinear(is, s)) {
    throw PreconditionError(std::string(who) + ": point set is collinear (" + std::to_string(s.size()) + " points)");
  }
}

// Solver state: the full-board configuration plus the strategy trace.
struct Work {
  Configuration config;
  std::vector<TraceStep> trace;

  const IncidenceStructure& is() const { return config.incidence(); }
  void note(std::string rule, std::vector<std::size_t> pts) { trace.push_back({std::move(rule), std::move(pts)}); }
};

SolverOutcome finish(const Configuration& start, Work&& work, BoundKind kind) {
  SolverOutcome out;
  out.certificate.initial_weights = start.weights();
  out.certificate.switches = work.config.switch_log_keys();
  out.final_discrepancy = work.config.discrepancy();
  out.certificate.claimed_discrepancy = out.final_discrepancy;
  out.certificate.claimed_bound_kind = kind;
  out.trace = std::move(work.trace);
  return out;
}

// ---------------------------------------------------------------------------
// Elementary steps

void procedure_n_in(Configuration& c, const PointSubset& s) {
  const auto lines = subset_lines(c.incidence(), s);
  for (bool switched = true; switched;) {
    switched = false;
    for (const auto& sl : lines) {
      if (subset_sum(c, sl.points) < 0) {
        c.apply_switch(sl.line);
        switched = true;
        break;
      }
    }
  }
}

void tree_switch_in(Configuration& c, const PointSubset& active, const SpanningTree& tree) {
  const SubsetView view(c.incidence(), active);
  std::size_t max_depth = 0;
  for (auto v : tree.order) {
    if (!active.contains(v)) throw PreconditionError("tree vertex outside the active set");
    if (v != tree.root && !view.ordinary(v, tree.parent[v])) {
      throw InvariantError("tree edge (" + std::to_string(v) + "," + std::to_string(tree.parent[v]) +
                           ") is not an ordinary line of the active set");
    }
    max_depth = std::max(max_depth, tree.depth[v]);
  }
  for (std::size_t depth = max_depth; depth >= 1; --depth) {
    for (auto v : tree.order) {
      if (tree.depth[v] == depth && c.weight(v) < 0) c.apply_switch(view.line(v, tree.parent[v]));
    }
  }
}

void reduction_in(Configuration& c, const PointSubset& active, const Triple& t, ReductionCase which) {
  const std::vector<std::size_t> tri{t.shared, t.first, t.second};
  for (auto p : tri) {
    if (!active.contains(p)) throw PreconditionError("reduction triple point outside the active set");
  }
  if (t.shared == t.first || t.shared == t.second || t.first == t.second) {
    throw PreconditionError("reduction triple has repeated points");
  }
  const auto& is = c.incidence();
  if (is_collinear(is, active.without(tri))) throw PreconditionError("reduction: remaining set is collinear");
  const SubsetView view(is, active);

  if (which == ReductionCase::collinear_triple) {
    const auto line = view.line(t.shared, t.first);
    if (view.line(t.shared, t.second) != line || view.on(line) != 3) {
      throw PreconditionError("reduction (collinear triple): points do not span a 3-point line");
    }
    if (subset_sum(c, tri) < 0) c.apply_switch(line);
  } else {
    const auto l1 = view.line(t.shared, t.first);
    const auto l2 = view.line(t.shared, t.second);
    if (view.on(l1) != 2 || view.on(l2) != 2) {
      throw PreconditionError("reduction (ordinary pair): lines through the shared point are not ordinary");
    }
    if (c.weight(t.shared) + c.weight(t.first) < 0) c.apply_switch(l1);
    if (c.weight(t.shared) + c.weight(t.second) < 0) c.apply_switch(l2);
    if (c.weight(t.shared) > 0 && c.weight(t.first) < 0 && c.weight(t.second) < 0) {
      c.apply_switch(l1);
      c.apply_switch(l2);
    }
  }
  if (subset_sum(c, tri) < 1) throw InvariantError("reduction left the triple with negative weight");
}

// Flip every -1 of a collinear set `r` through lines from `center`, which
// lies off the line carrying r. Only the target point of r is touched.
void sweep_positive(Configuration& c, const std::vector<std::size_t>& r, std::size_t center) {
  for (auto y : r) {
    if (c.weight(y) < 0) c.apply_switch(c.incidence().line_between(center, y));
  }
}

// A point of `candidates` off the line carrying `r` (any point when |r| <= 1).
std::size_t sweep_center(const IncidenceStructure& is, const PointSubset& r,
                         const std::vector<std::size_t>& candidates) {
  const auto carrier = carrier_line(is, r);
  for (auto x : candidates) {
    if (!carrier) return x;
    const auto& pts = is.line(*carrier).points;
    if (!std::binary_search(pts.begin(), pts.end(), x)) return x;
  }
  throw InvariantError("no sweep center off the collinear remainder");
}

// Shortest switch sequence maximizing the subset's weight, by breadth-first
// search over its at most 2^6 sign patterns.
void exhaustive_small(Configuration& c, const PointSubset& s) {
  const auto& pts = s.members();
  if (pts.size() > 8) throw InvariantError("exhaustive search on a large subset");
  const auto lines = subset_lines(c.incidence(), s);
  auto local = [&](std::size_t p) { return static_cast<unsigned>(std::find(pts.begin(), pts.end(), p) - pts.begin()); };
  std::vector<unsigned> masks;
  for (const auto& sl : lines) {
    unsigned m = 0;
    for (auto p : sl.points) m |= 1U << local(p);
    masks.push_back(m);
  }
  unsigned start = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (c.weight(pts[i]) < 0) start |= 1U << i;
  }
  const std::size_t states = std::size_t{1} << pts.size();
  std::vector<std::size_t> via(states, npos);
  std::vector<unsigned> from(states, 0);
  std::vector<unsigned> queue{start};
  via[start] = lines.size();
  unsigned best = start;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto st = queue[head];
    if (std::popcount(st) < std::popcount(best)) best = st;
    for (std::size_t k = 0; k < masks.size(); ++k) {
      const auto nx = st ^ masks[k];
      if (via[nx] != npos) continue;
      via[nx] = k;
      from[nx] = st;
      queue.push_back(nx);
    }
  }
  std::vector<std::size_t> path;
  for (auto st = best; st != start; st = from[st]) path.push_back(lines[via[st]].line);
  for (auto it = path.rbegin(); it != path.rend(); ++it) c.apply_switch(*it);
}

// ---------------------------------------------------------------------------
// Small boards (3 to 6 points)

void double_or_single_switch(Configuration& c, const SubsetView& view, std::size_t line, std::size_t off_point) {
  const auto neg = negatives(c, view.members_on(line));
  if (neg.size() >= 2) {
    c.apply_switch(view.line(off_point, neg[0]));
    c.apply_switch(view.line(off_point, neg[1]));
  } else if (neg.size() == 1) {
    c.apply_switch(view.line(off_point, neg[0]));
  }
}

void basis_in(Work& w, const PointSubset& s) {
  auto& c = w.config;
  const auto& is = w.is();
  const std::size_t m = s.size();
  if (m < 3 || m > 6) throw PreconditionError("basis: size " + std::to_string(m) + " outside [3, 6]");
  require_noncollinear(is, s, "basis");
  const SubsetView view(is, s);
  const auto [line, count] = view.max_line();

  if (m <= 5 || count == 5) {
    procedure_n_in(c, s);
    std::string rule = "basis-" + std::to_string(m);
    if (count == m - 1 && m >= 4) {
      // Every point of the long line joins the off point by an ordinary line.
      const auto off = view.members_off(line);
      double_or_single_switch(c, view, line, off.front());
      rule += "-pencil";
    }
    w.note(rule, s.members());
    const long need = m <= 5 ? static_cast<long>(m) - 2 : 4;
    if (subset_sum(c, s) < need) throw InvariantError("basis bound missed on " + std::to_string(m) + " points");
    return;
  }

  // m == 6
  if (count == 4) {
    const auto on = view.members_on(line);
    std::optional<Triple> triple;
    for (auto center : view.members_off(line)) {
      std::vector<std::size_t> partners;
      for (auto x : on) {
        if (view.ordinary(center, x)) partners.push_back(x);
      }
      if (partners.size() >= 2) {
        triple = Triple{center, partners[0], partners[1]};
        break;
      }
    }
    if (triple) {
      const std::vector<std::size_t> t{triple->shared, triple->first, triple->second};
      const auto rest = s.without(t);
      if (!is_collinear(is, rest)) {
        basis_in(w, rest);
        reduction_in(c, s, *triple, ReductionCase::ordinary_pair);
        w.note("basis-6-four-line-reduction", t);
        if (subset_sum(c, s) < 2) throw InvariantError("basis bound missed on 6 points");
        return;
      }
    }
    exhaustive_small(c, s);
    w.note("basis-6-exhaustive", s.members());
  } else if (count == 3) {
    const auto t = view.members_on(line);
    const auto rest = s.without(t);
    if (!is_collinear(is, rest)) {
      basis_in(w, rest);
      reduction_in(c, s, {t[0], t[1], t[2]}, ReductionCase::collinear_triple);
      w.note("basis-6-triple-reduction", t);
    } else {
      procedure_n_in(c, s);
      const auto neg = negatives(c, s.members());
      if (neg.size() >= 2 && view.ordinary(neg[0], neg[1])) c.apply_switch(view.line(neg[0], neg[1]));
      w.note("basis-6-triple-n", s.members());
    }
  } else {
    procedure_n_in(c, s);
    w.note("basis-6-general", s.members());
  }
  if (subset_sum(c, s) < 2) throw InvariantError("basis bound missed on 6 points");
}

// ---------------------------------------------------------------------------
// n/3 induction

struct ReductionFrame {
  PointSubset active;
  Triple triple;
  ReductionCase which;
  std::string rule;
};

// Long-line case with n-3 or n-2 points on the line: an off point p and two
// line points q, r joined to p by ordinary lines, leaving a noncollinear rest.
std::optional<Triple> long_line_triple(const IncidenceStructure& is, const SubsetView& view, std::size_t line) {
  const auto on = view.members_on(line);
  for (auto p : view.members_off(line)) {
    for (std::size_t i = 0; i < on.size(); ++i) {
      if (!view.ordinary(p, on[i])) continue;
      for (std::size_t j = i + 1; j < on.size(); ++j) {
        if (!view.ordinary(p, on[j])) continue;
        if (!is_collinear(is, view.subset().without({p, on[i], on[j]}))) return Triple{p, on[i], on[j]};
      }
    }
  }
  return std::nullopt;
}

void third_in(Work& w, const PointSubset& start) {
  auto& c = w.config;
  const auto& is = w.is();
  require_noncollinear(is, start, "solve_third");
  std::vector<ReductionFrame> frames;
  PointSubset s = start;

  auto push_long_line = [&](const SubsetView& view, std::size_t line) {
    auto t = long_line_triple(is, view, line);
    if (!t) throw InvariantError("long line: no ordinary pair with a noncollinear remainder");
    frames.push_back({s, *t, ReductionCase::ordinary_pair, "long-line-reduction"});
    s = s.without({t->shared, t->first, t->second});
  };

  for (;;) {
    const std::size_t m = s.size();
    if (m <= 6) {
      basis_in(w, s);
      break;
    }
    const SubsetView view(is, s);
    const auto [line, count] = view.max_line();
    if (count + 3 >= m) {
      if (count == m - 1) {
        const auto off = view.members_off(line);
        sweep_positive(c, view.members_on(line), off.front());
        w.note("long-line-pencil", s.members());
        break;
      }
      push_long_line(view, line);
      continue;
    }
    if (auto triple_line = view.first_line_with(3)) {
      const auto t = view.members_on(*triple_line);
      const auto rest = s.without(t);
      if (is_collinear(is, rest)) {
        push_long_line(view, line);
        continue;
      }
      frames.push_back({s, {t[0], t[1], t[2]}, ReductionCase::collinear_triple, "triple-line-reduction"});
      s = rest;
      continue;
    }
    // No 3-point line: at least n ordinary lines, so two of them share a point.
    std::optional<Triple> pair;
    for (auto p : s.members()) {
      std::vector<std::size_t> partners;
      for (auto q : s.members()) {
        if (q != p && view.ordinary(p, q)) partners.push_back(q);
        if (partners.size() == 2) break;
      }
      if (partners.size() == 2) {
        pair = Triple{p, partners[0], partners[1]};
        break;
      }
    }
    if (!pair) throw InvariantError("no two ordinary lines share a point although t3 = 0");
    const auto rest = s.without({pair->shared, pair->first, pair->second});
    if (is_collinear(is, rest)) {
      push_long_line(view, line);
      continue;
    }
    frames.push_back({s, *pair, ReductionCase::ordinary_pair, "ordinary-pair-reduction"});
    s = rest;
  }

  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    reduction_in(c, it->active, it->triple, it->which);
    w.note(it->rule, {it->triple.shared, it->triple.first, it->triple.second});
  }
}

// ---------------------------------------------------------------------------
// Component peeling with at most one heavy line

std::size_t root_off_heavy(const SubsetView& view, const std::vector<std::size_t>& component,
                           const std::vector<std::size_t>& heavy) {
  for (auto v : component) {
    if (heavy.empty() || !view.on_line(heavy.front(), v)) return v;
  }
  throw InvariantError("component lies entirely on the heavy line");
}

void claim_in(Work& w, const PointSubset& start) {
  auto& c = w.config;
  const auto& is = w.is();
  require_noncollinear(is, start, "solve_claim_cubic");
  if (heavy_lines(is, start, 3).size() > 1) {
    throw PreconditionError("solve_claim_cubic: more than one line carries more than three points");
  }

  struct Frame {
    PointSubset active;
    OrdinaryLineGraph graph;
    std::vector<std::size_t> component;
    std::size_t root;
  };
  std::vector<Frame> frames;
  PointSubset s = start;
  for (;;) {
    auto graph = ordinary_line_graph(is, s);
    const auto component = graph.largest_component().vertices;
    const SubsetView view(is, s);
    const auto root = root_off_heavy(view, component, heavy_lines(is, s, 3));
    if (component.size() == s.size()) {
      tree_switch_in(c, s, spanning_tree(graph, component, root));
      w.note("claim-component", component);
      break;
    }
    const auto rest = s.without(component);
    frames.push_back({s, std::move(graph), component, root});
    if (is_collinear(is, rest)) {
      sweep_positive(c, rest.members(), sweep_center(is, rest, component));
      w.note("claim-sweep", rest.members());
      break;
    }
    s = rest;
  }

  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    tree_switch_in(c, it->active, spanning_tree(it->graph, it->component, it->root));
    std::string rule = "claim-component";
    const auto neg = negatives(c, it->active.members());
    if (neg.size() == 2) {
      if (neg[0] != it->root && neg[1] != it->root) throw InvariantError("claim: two -1 weights away from the root");
      const auto other = neg[0] == it->root ? neg[1] : neg[0];
      const SubsetView view(is, it->active);
      const auto line = view.line(it->root, other);
      if (view.on(line) > 3) throw InvariantError("claim: pair line through the root is heavy");
      c.apply_switch(line);
      rule += "+pair";
    } else if (neg.size() > 2) {
      throw InvariantError("claim: more than two -1 weights after the component switch");
    }
    w.note(rule, it->component);
  }
  if (negatives(c, start.members()).size() > 1) throw InvariantError("claim: more than one -1 weight remains");
}

// ---------------------------------------------------------------------------
// Balancing

void balance_in(Work& w, const PointSubset& start) {
  auto& c = w.config;
  const auto& is = w.is();
  require_noncollinear(is, start, "balance");

  struct Frame {
    PointSubset active;
    std::size_t p;
    std::size_t q;
    std::size_t line;
  };
  std::vector<Frame> frames;
  PointSubset s = start;
  for (;;) {
    const SubsetView view(is, s);
    auto line = view.first_line_with(2);
    if (!line) throw InvariantError("balance: noncollinear set without an ordinary line");
    const auto pq = view.members_on(*line);
    frames.push_back({s, pq[0], pq[1], *line});
    const auto rest = s.without(pq);
    if (is_collinear(is, rest)) {
      const auto& r = rest.members();
      const auto center = sweep_center(is, rest, pq);
      long sum = subset_sum(c, r);
      for (auto y : r) {
        if (sum < 0 && c.weight(y) < 0) {
          c.apply_switch(is.line_between(center, y));
          sum += 2;
        } else if (sum > 1 && c.weight(y) > 0) {
          c.apply_switch(is.line_between(center, y));
          sum -= 2;
        }
      }
      w.note("balance-sweep", r);
      break;
    }
    s = rest;
  }
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    const long omega = subset_sum(c, it->active) - c.weight(it->p) - c.weight(it->q);
    const long pair = c.weight(it->p) + c.weight(it->q);
    if ((pair > 0 && omega > 0) || (pair < 0 && omega < 0)) c.apply_switch(it->line);
    w.note("balance-pair", {it->p, it->q});
    const long total = subset_sum(c, it->active);
    if (total < -2 || total > 2) throw InvariantError("balance: level total left [-2, 2]");
  }
}

// ---------------------------------------------------------------------------
// Near-perfect peeling driver

PeelReport near_perfect_in(Work& w, const PointSubset& start, const NearPerfectParams& params) {
  auto& c = w.config;
  const auto& is = w.is();
  require_noncollinear(is, start, "solve_near_perfect");

  struct Frame {
    PointSubset active;
    OrdinaryLineGraph graph;
    std::vector<std::size_t> component;
  };
  std::vector<Frame> frames;
  PeelReport report;
  report.exhausted = true;

  auto at_most_one_negative = [&](const PointSubset& s) { return negatives(c, s.members()).size() <= 1; };

  PointSubset s = start;
  for (;;) {
    auto graph = ordinary_line_graph(is, s);
    const auto component = graph.largest_component().vertices;
    if (component.size() == s.size()) {
      tree_switch_in(c, s, spanning_tree(graph, component, component.front()));
      w.note("peel", component);
      ++report.peeled_components;
      if (!at_most_one_negative(s)) report.exhausted = false;
      break;
    }
    if (s.size() >= params.small_cutoff && component.size() >= params.component_threshold) {
      const auto rest = s.without(component);
      frames.push_back({s, std::move(graph), component});
      if (is_collinear(is, rest)) {
        sweep_positive(c, rest.members(), sweep_center(is, rest, component));
        w.note("peel-sweep", rest.members());
        break;
      }
      s = rest;
      continue;
    }
    if (heavy_lines(is, s, 3).size() <= 1) {
      claim_in(w, s);
      w.trace.back().rule += " (fallback)";
      if (!at_most_one_negative(s)) report.exhausted = false;
    } else {
      third_in(w, s);
      report.exhausted = false;
    }
    break;
  }

  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    const auto& comp = it->component;
    const SubsetView view(is, it->active);
    std::size_t root = comp.front();
    std::optional<std::size_t> partner;
    if (negatives(c, comp).size() % 2 == 1) {
      // The root ends at -1; place it where a short line reaches another -1.
      std::vector<char> in_comp(is.size(), 0);
      for (auto v : comp) in_comp[v] = 1;
      for (auto v : negatives(c, it->active.members())) {
        if (in_comp[v]) continue;
        for (auto u : comp) {
          if (view.on(view.line(u, v)) <= 3) {
            root = u;
            partner = v;
            break;
          }
        }
        if (partner) break;
      }
    }
    tree_switch_in(c, it->active, spanning_tree(it->graph, comp, root));
    std::string rule = "peel";
    if (partner && c.weight(root) < 0 && c.weight(*partner) < 0) {
      c.apply_switch(view.line(root, *partner));
      rule += "+pair";
    }
    w.note(rule, comp);
    ++report.peeled_components;
    if (!at_most_one_negative(it->active)) report.exhausted = false;
  }
  return report;
}

PointSubset whole(const Configuration& c) { return PointSubset::all(c.size()); }

bool all_positive(const Configuration& c, const PointSubset& s) {
  return std::all_of(s.members().begin(), s.members().end(), [&](std::size_t p) { return c.weight(p) > 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API

NearPerfectParams NearPerfectParams::for_epsilon(double epsilon) {
  NearPerfectParams p;
  p.epsilon = epsilon;
  p.component_threshold = static_cast<std::size_t>(std::ceil(2.0 / epsilon));
  p.component_threshold = std::max<std::size_t>(p.component_threshold, 2);
  p.small_cutoff = 2 * p.component_threshold + 2;
  p.validate();
  return p;
}

void NearPerfectParams::validate() const {
  if (component_threshold < 2) throw PreconditionError("near-perfect: K must be at least 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("near-perfect: epsilon must lie in (0, 1)");
  if (small_cutoff < 2 * component_threshold + 2) throw PreconditionError("near-perfect: n_epsilon must be >= 2K + 2");
}

Configuration procedure_n(Configuration config, const std::optional<PointSubset>& restrict_to) {
  procedure_n_in(config, restrict_to ? *restrict_to : whole(config));
  return config;
}

Configuration tree_switch(Configuration config, const PointSubset& active, const SpanningTree& tree) {
  tree_switch_in(config, active, tree);
  return config;
}

Configuration reduction_step(Configuration config, const PointSubset& active, const Triple& triple,
                             ReductionCase which) {
  reduction_in(config, active, triple, which);
  return config;
}

SolverOutcome solve_general_position(const Configuration& config) {
  const auto& is = config.incidence();
  for (const auto& line : is.lines()) {
    if (line.points.size() > 2) {
      throw PreconditionError("solve_general_position: line " + line.key.to_string() + " carries " +
                              std::to_string(line.points.size()) + " points");
    }
  }
  Work w{config.restarted(), {}};
  procedure_n_in(w.config, whole(config));
  w.note("procedure-n", whole(config).members());
  return finish(config, std::move(w), BoundKind::n_minus_2);
}

SolverOutcome solve_basis(const Configuration& config) { return solve_basis(config, whole(config)); }

SolverOutcome solve_basis(const Configuration& config, const PointSubset& active) {
  Work w{config.restarted(), {}};
  basis_in(w, active);
  return finish(config, std::move(w), active.size() <= 5 ? BoundKind::n_minus_2 : BoundKind::third);
}

SolverOutcome solve_long_line(const Configuration& config) { return solve_long_line(config, whole(config)); }

SolverOutcome solve_long_line(const Configuration& config, const PointSubset& active) {
  const auto& is = config.incidence();
  require_noncollinear(is, active, "solve_long_line");
  if (active.size() < 7) throw PreconditionError("solve_long_line: needs at least 7 points");
  const SubsetView view(is, active);
  if (view.max_line().second + 3 < active.size()) {
    throw PreconditionError("solve_long_line: no line carries n-3 points");
  }
  Work w{config.restarted(), {}};
  third_in(w, active);
  const bool pencil = view.max_line().second + 1 == active.size();
  return finish(config, std::move(w), pencil ? BoundKind::n_minus_2 : BoundKind::third);
}

SolverOutcome solve_third(const Configuration& config) { return solve_third(config, whole(config)); }

SolverOutcome solve_third(const Configuration& config, const PointSubset& active) {
  const auto& is = config.incidence();
  if (active.size() < 3) throw PreconditionError("solve_third: needs at least 3 points");
  require_noncollinear(is, active, "solve_third");
  Work w{config.restarted(), {}};
  if (all_positive(config, active)) {
    w.note("all-positive", active.members());
  } else {
    third_in(w, active);
  }
  return finish(config, std::move(w), BoundKind::third);
}

SolverOutcome solve_claim_cubic(const Configuration& config) { return solve_claim_cubic(config, whole(config)); }

SolverOutcome solve_claim_cubic(const Configuration& config, const PointSubset& active) {
  Work w{config.restarted(), {}};
  claim_in(w, active);
  return finish(config, std::move(w), BoundKind::n_minus_2);
}

SolverOutcome solve_near_perfect(const Configuration& config, const NearPerfectParams& params) {
  params.validate();
  Work w{config.restarted(), {}};
  const auto report = near_perfect_in(w, whole(config), params);
  if (3 * w.config.discrepancy() < static_cast<long>(config.size())) {
    // Only reachable with K = 2, where a peeled pair may contribute 0.
    auto out = solve_third(config);
    out.trace.insert(out.trace.begin(), TraceStep{"near-perfect-below-third", {}});
    out.peel = PeelReport{report.peeled_components, false};
    return out;
  }
  auto out = finish(config, std::move(w), report.exhausted ? BoundKind::near_perfect : BoundKind::third);
  out.peel = report;
  return out;
}

SolverOutcome balance(const Configuration& config) {
  Work w{config.restarted(), {}};
  balance_in(w, whole(config));
  return finish(config, std::move(w), BoundKind::balance);
}

SolverKind parse_solver(std::string_view name) {
  if (name == "third") return SolverKind::third;
  if (name == "gp") return SolverKind::general_position;
  if (name == "cubic") return SolverKind::cubic;
  if (name == "near-perfect" || name == "auto") return SolverKind::near_perfect;
  if (name == "balance") return SolverKind::balance;
  throw InputError("unknown solver '" + std::string(name) + "' (third, gp, cubic, near-perfect, balance, auto)");
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::third: return "third";
    case SolverKind::general_position: return "gp";
    case SolverKind::cubic: return "cubic";
    case SolverKind::near_perfect: return "near-perfect";
    case SolverKind::balance: return "balance";
  }
  return "?";
}

SolverOutcome run_solver(SolverKind kind, const Configuration& config, const NearPerfectParams& params) {
  switch (kind) {
    case SolverKind::third: return solve_third(config);
    case SolverKind::general_position: return solve_general_position(config);
    case SolverKind::cubic: return solve_claim_cubic(config);
    case SolverKind::near_perfect: return solve_near_perfect(config, params);
    case SolverKind::balance: return balance(config);
  }
  throw InvariantError("unhandled solver kind");
}

}  // namespace gbg
