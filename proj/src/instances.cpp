#include "gbg/instances.hpp"

#include "gbg/errors.hpp"
#include "gbg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace gbg {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::near_pencil: return "near_pencil";
    case GeneratorKind::grid: return "grid";
    case GeneratorKind::random_gp: return "random_gp";
    case GeneratorKind::cubic: return "cubic";
    case GeneratorKind::circle_plus_line: return "circle_plus_line";
    case GeneratorKind::collinear_plus_k: return "collinear_plus_k";
  }
  return "?";
}

std::string to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::all_minus: return "all_minus";
    case WeightMode::all_plus: return "all_plus";
    case WeightMode::random: return "random";
    case WeightMode::worst_case_search: return "worst_case_search";
  }
  return "?";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  for (auto k : {GeneratorKind::near_pencil, GeneratorKind::grid, GeneratorKind::random_gp, GeneratorKind::cubic,
                 GeneratorKind::circle_plus_line, GeneratorKind::collinear_plus_k}) {
    if (text == to_string(k)) return k;
  }
  throw InputError("unknown generator kind '" + std::string(text) + "'");
}

WeightMode parse_weight_mode(std::string_view text) {
  for (auto m : {WeightMode::all_minus, WeightMode::all_plus, WeightMode::random, WeightMode::worst_case_search}) {
    if (text == to_string(m)) return m;
  }
  throw InputError("unknown weight mode '" + std::string(text) + "'");
}

namespace {

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InputError("generator spec: '" + key + "' needs a non-negative integer, got '" + value + "'");
  }
  try {
    return std::stoull(value);
  } catch (const std::out_of_range&) {
    throw InputError("generator spec: '" + key + "' out of range");
  }
}

}  // namespace

GeneratorSpec parse_generator_spec(std::string_view text) {
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  GeneratorSpec spec;
  for (std::string tok; in >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw InputError("generator spec: expected key=value, got '" + tok + "'");
    const auto key = tok.substr(0, eq);
    const auto value = tok.substr(eq + 1);
    if (key == "kind") {
      spec.kind = parse_generator_kind(value);
    } else if (key == "weights") {
      spec.weights = parse_weight_mode(value);
    } else if (key == "n") {
      spec.n = parse_count(key, value);
    } else if (key == "rows") {
      spec.rows = parse_count(key, value);
    } else if (key == "cols") {
      spec.cols = parse_count(key, value);
    } else if (key == "k") {
      spec.k = parse_count(key, value);
    } else if (key == "seed") {
      spec.seed = parse_count(key, value);
    } else if (key == "cap") {
      spec.cap = parse_count(key, value);
    } else if (key == "box") {
      spec.box = parse_count(key, value);
    } else {
      throw InputError("generator spec: unknown key '" + key + "'");
    }
  }
  return spec;
}

std::string to_string(const GeneratorSpec& spec) {
  std::ostringstream out;
  out << "kind=" << to_string(spec.kind);
  if (spec.kind == GeneratorKind::grid) {
    out << " rows=" << spec.rows << " cols=" << spec.cols;
  } else {
    out << " n=" << spec.n;
  }
  if (spec.kind == GeneratorKind::collinear_plus_k) out << " k=" << spec.k;
  if (spec.box != 0) out << " box=" << spec.box;
  out << " seed=" << spec.seed << " weights=" << to_string(spec.weights);
  return out.str();
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw InputError("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const auto x = rng();
    if (x < limit) return x % bound;
  }
}

Weights random_weights(std::size_t n, std::mt19937_64& rng) {
  Weights w(n);
  for (auto& x : w) x = (rng() >> 63) ? -1 : 1;
  return w;
}

namespace {

constexpr std::size_t max_attempts_per_point = 10000;

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("infeasible generator spec: " + what);
}

std::vector<Point> near_pencil(std::size_t n) {
  require(n >= 3, "near_pencil needs n >= 3");
  std::vector<Point> pts;
  for (std::size_t i = 0; i + 1 < n; ++i) pts.push_back({Integer(i), Integer(0)});
  pts.push_back({Integer(0), Integer(1)});
  return pts;
}

std::vector<Point> grid(std::size_t rows, std::size_t cols) {
  require(rows >= 2 && cols >= 2, "grid needs at least 2 rows and 2 columns");
  std::vector<Point> pts;
  for (std::size_t y = 0; y < rows; ++y) {
    for (std::size_t x = 0; x < cols; ++x) pts.push_back({Integer(x), Integer(y)});
  }
  return pts;
}

std::vector<Point> cubic(std::size_t n) {
  require(n >= 3, "cubic needs n >= 3");
  std::vector<Point> pts;
  // Three points on y = x^3 are collinear iff their x sum to zero, so the
  // symmetric window is shifted for n = 3.
  const long first = -static_cast<long>((n - 2) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer x = first + static_cast<long>(i);
    pts.push_back({x, x * x * x});
  }
  return pts;
}

std::vector<Point> random_general_position(std::size_t n, std::size_t box, std::mt19937_64& rng) {
  require(n >= 3, "random_gp needs n >= 3");
  if (box == 0) box = std::max<std::size_t>(16, 4 * n * n);
  std::vector<Point> pts;
  while (pts.size() < n) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < max_attempts_per_point && !placed; ++attempt) {
      Point cand{Integer(uniform_below(rng, box)), Integer(uniform_below(rng, box))};
      bool ok = std::find(pts.begin(), pts.end(), cand) == pts.end();
      for (std::size_t i = 0; ok && i < pts.size(); ++i) {
        for (std::size_t j = i + 1; ok && j < pts.size(); ++j) ok = !collinear(pts[i], pts[j], cand);
      }
      if (ok) {
        pts.push_back(std::move(cand));
        placed = true;
      }
    }
    require(placed, "no point in general position found in a " + std::to_string(box) + "x" + std::to_string(box) +
                        " box after " + std::to_string(max_attempts_per_point) + " attempts");
  }
  return pts;
}

std::vector<Point> collinear_plus(std::size_t n, std::size_t k, std::size_t box, std::mt19937_64& rng) {
  require(n >= 2 && k <= n && n - k >= 1, "collinear_plus_k needs 1 <= n - k");
  if (box == 0) box = std::max<std::size_t>(8, 2 * n);
  std::vector<Point> pts;
  for (std::size_t i = 0; i + k < n; ++i) pts.push_back({Integer(i), Integer(0)});
  for (std::size_t j = 0; j < k; ++j) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < max_attempts_per_point && !placed; ++attempt) {
      Point cand{Integer(uniform_below(rng, box)), Integer(1 + uniform_below(rng, box))};
      if (std::find(pts.begin(), pts.end(), cand) == pts.end()) {
        pts.push_back(std::move(cand));
        placed = true;
      }
    }
    require(placed, "no free off-line position in the box");
  }
  return pts;
}

// Exact rational x-coordinate, denominator positive and reduced.
struct Fraction {
  Integer num;
  Integer den;

  friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
};

Fraction make_fraction(Integer num, Integer den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Integer g = boost::multiprecision::gcd(abs(num), den);
  return {num / g, den / g};
}

// Lattice points of a circle plus the points of an exterior line hit by the
// most chords, so that many lines carry exactly three points.
std::vector<Point> circle_plus_line(std::size_t n, std::mt19937_64& rng) {
  require(n >= 4, "circle_plus_line needs n >= 4");
  constexpr long radius = 1105;  // 5 * 13 * 17: 108 lattice points
  std::vector<Point> circle;
  for (long x = -radius; x <= radius; ++x) {
    const long yy = radius * radius - x * x;
    auto y = static_cast<long>(std::llround(std::sqrt(static_cast<double>(yy))));
    while (y * y > yy) --y;
    while ((y + 1) * (y + 1) <= yy) ++y;
    if (y * y != yy) continue;
    circle.push_back({Integer(x), Integer(y)});
    if (y != 0) circle.push_back({Integer(x), Integer(-y)});
  }
  const std::size_t k = std::max<std::size_t>(1, n / 3);
  const std::size_t m = n - k;
  require(m <= circle.size(), "circle_plus_line supports at most " + std::to_string(circle.size()) + " circle points");

  for (std::size_t i = 0; i < m; ++i) std::swap(circle[i], circle[i + uniform_below(rng, circle.size() - i)]);
  circle.resize(m);
  std::sort(circle.begin(), circle.end());

  const Integer line_y = 3 * radius;
  std::map<Fraction, std::size_t> hits;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto& p = circle[i];
      const auto& q = circle[j];
      if (p.y == q.y) continue;
      ++hits[make_fraction(p.x * (q.y - p.y) + (line_y - p.y) * (q.x - p.x), q.y - p.y)];
    }
  }
  std::vector<std::pair<std::size_t, Fraction>> ranked;
  for (auto& [x, count] : hits) ranked.emplace_back(count, x);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  require(ranked.size() >= k, "not enough chord intersections for the line points");
  ranked.resize(k);

  Integer scale = 1;
  for (const auto& [count, x] : ranked) scale = boost::multiprecision::lcm(scale, x.den);
  std::vector<Point> pts;
  for (const auto& p : circle) pts.push_back({p.x * scale, p.y * scale});
  for (const auto& [count, x] : ranked) pts.push_back({x.num * (scale / x.den), line_y * scale});
  return pts;
}

}  // namespace

std::vector<Point> generate_points(const GeneratorSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case GeneratorKind::near_pencil: return near_pencil(spec.n);
    case GeneratorKind::grid: return grid(spec.rows, spec.cols);
    case GeneratorKind::random_gp: return random_general_position(spec.n, spec.box, rng);
    case GeneratorKind::cubic: return cubic(spec.n);
    case GeneratorKind::circle_plus_line: return circle_plus_line(spec.n, rng);
    case GeneratorKind::collinear_plus_k: return collinear_plus(spec.n, spec.k, spec.box, rng);
  }
  throw InputError("unhandled generator kind");
}

Instance generate(const GeneratorSpec& spec) {
  Instance inst;
  inst.points = generate_points(spec);
  const std::size_t n = inst.points.size();
  switch (spec.weights) {
    case WeightMode::all_minus: inst.weights.assign(n, -1); break;
    case WeightMode::all_plus: inst.weights.assign(n, 1); break;
    case WeightMode::random: {
      std::mt19937_64 rng(spec.seed ^ 0x9E3779B97F4A7C15ULL);
      inst.weights = random_weights(n, rng);
      break;
    }
    case WeightMode::worst_case_search: {
      if (n > spec.cap) {
        throw CapExceededError("worst_case_search: n=" + std::to_string(n) + " exceeds cap " + std::to_string(spec.cap));
      }
      const auto is = connecting_lines(inst.points);
      inst.weights = exact_F_board(switch_code(is), {spec.cap}).worst_weights;
      break;
    }
  }
  return inst;
}

}  // namespace gbg
