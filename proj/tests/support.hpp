#pragma once

// Independent reference computations for the tests. Nothing here calls
// line_key, connecting_lines or the switch code: lines are found by grouping
// pairs with the orientation predicate, optima by walking the state graph.

#include "gbg/board.hpp"
#include "gbg/geometry.hpp"
#include "gbg/instances.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace testing_support {

using gbg::Point;

inline std::vector<Point> pts(std::initializer_list<std::pair<long, long>> xy) {
  std::vector<Point> out;
  for (auto [x, y] : xy) out.push_back({gbg::Integer(x), gbg::Integer(y)});
  return out;
}

inline std::vector<Point> triangle() { return pts({{0, 0}, {1, 0}, {0, 1}}); }
inline std::vector<Point> near_pencil(std::size_t n) {
  std::vector<Point> out;
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back({gbg::Integer(i), gbg::Integer(0)});
  out.push_back({gbg::Integer(0), gbg::Integer(1)});
  return out;
}
inline std::vector<Point> grid(std::size_t rows, std::size_t cols) {
  std::vector<Point> out;
  for (std::size_t y = 0; y < rows; ++y)
    for (std::size_t x = 0; x < cols; ++x) out.push_back({gbg::Integer(x), gbg::Integer(y)});
  return out;
}

// Each connecting line as the sorted set of its point indices, found by
// testing every third point against every pair.
inline std::set<std::vector<std::size_t>> brute_lines(const std::vector<Point>& p) {
  std::set<std::vector<std::size_t>> lines;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      std::vector<std::size_t> on{i, j};
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k == i || k == j) continue;
        const auto det = (p[j].x - p[i].x) * (p[k].y - p[i].y) - (p[j].y - p[i].y) * (p[k].x - p[i].x);
        if (det == 0) on.push_back(k);
      }
      std::sort(on.begin(), on.end());
      lines.insert(on);
    }
  }
  return lines;
}

inline std::map<std::size_t, std::size_t> brute_profile(const std::vector<Point>& p) {
  std::map<std::size_t, std::size_t> t;
  for (const auto& l : brute_lines(p)) ++t[l.size()];
  return t;
}

inline std::uint64_t off_mask(const gbg::Weights& w) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] < 0) m |= std::uint64_t{1} << i;
  return m;
}

struct BruteOptimum {
  std::size_t reachable = 0;
  long best = 0;
};

// Depth-first closure of the off-mask under all line switches.
inline BruteOptimum brute_optimum(const std::vector<Point>& p, const gbg::Weights& w0) {
  std::vector<std::uint64_t> masks;
  for (const auto& l : brute_lines(p)) {
    std::uint64_t m = 0;
    for (auto i : l) m |= std::uint64_t{1} << i;
    masks.push_back(m);
  }
  std::set<std::uint64_t> seen{off_mask(w0)};
  std::vector<std::uint64_t> stack{off_mask(w0)};
  std::size_t best_off = p.size();
  while (!stack.empty()) {
    const auto s = stack.back();
    stack.pop_back();
    best_off = std::min<std::size_t>(best_off, static_cast<std::size_t>(__builtin_popcountll(s)));
    for (auto m : masks) {
      if (seen.insert(s ^ m).second) stack.push_back(s ^ m);
    }
  }
  return {seen.size(), static_cast<long>(p.size()) - 2 * static_cast<long>(best_off)};
}

// Rank over GF(2) of the line indicator vectors, by plain elimination.
inline std::size_t brute_rank(const std::vector<Point>& p) {
  std::vector<std::uint64_t> rows;
  for (const auto& l : brute_lines(p)) {
    std::uint64_t m = 0;
    for (auto i : l) m |= std::uint64_t{1} << i;
    for (auto r : rows) m = std::min(m, m ^ r);
    if (m != 0) {
      rows.push_back(m);
      std::sort(rows.rbegin(), rows.rend());
    }
  }
  return rows.size();
}

inline gbg::Weights weights_from_mask(std::size_t n, std::uint64_t off) {
  gbg::Weights w(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    if ((off >> i) & 1) w[i] = -1;
  return w;
}

// A mixed corpus covering every generator class over a range of sizes.
inline std::vector<gbg::GeneratorSpec> corpus_specs(std::size_t n_min, std::size_t n_max, std::size_t per_class,
                                                    std::uint64_t seed) {
  using gbg::GeneratorKind;
  std::mt19937_64 rng(seed);
  std::vector<gbg::GeneratorSpec> specs;
  const GeneratorKind kinds[] = {GeneratorKind::near_pencil,      GeneratorKind::grid,
                                 GeneratorKind::random_gp,        GeneratorKind::cubic,
                                 GeneratorKind::circle_plus_line, GeneratorKind::collinear_plus_k};
  for (auto kind : kinds) {
    for (std::size_t i = 0; i < per_class; ++i) {
      gbg::GeneratorSpec s;
      s.kind = kind;
      s.seed = rng();
      s.n = n_min + gbg::uniform_below(rng, n_max - n_min + 1);
      if (kind == GeneratorKind::near_pencil || kind == GeneratorKind::cubic) s.n = std::max<std::size_t>(s.n, 3);
      if (kind == GeneratorKind::circle_plus_line) s.n = std::max<std::size_t>(s.n, 4);
      if (kind == GeneratorKind::grid) {
        // rows * cols within [n_min, n_max], both >= 2
        do {
          s.rows = 2 + gbg::uniform_below(rng, 7);
          s.cols = 2 + gbg::uniform_below(rng, 7);
        } while (s.rows * s.cols < std::max<std::size_t>(n_min, 4) || s.rows * s.cols > n_max);
      }
      if (kind == GeneratorKind::collinear_plus_k) {
        s.n = std::max<std::size_t>(s.n, 3);
        s.k = 1 + gbg::uniform_below(rng, std::max<std::size_t>(1, s.n / 2));
      }
      s.weights = gbg::WeightMode::random;
      specs.push_back(s);
    }
  }
  return specs;
}

}  // namespace testing_support
