#include "support.hpp"

#include "gbg/errors.hpp"
#include "gbg/oracle.hpp"

#include <doctest.h>

using namespace gbg;
using namespace testing_support;

namespace {

SwitchCode code_of(const std::vector<Point>& p) { return switch_code(connecting_lines(p)); }

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, std::uint64_t box) {
  n = std::min<std::size_t>(n, box * box);
  std::vector<Point> out;
  while (out.size() < n) {
    Point p{Integer(uniform_below(rng, box)), Integer(uniform_below(rng, box))};
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

// Replays the witness and returns the discrepancy it reaches.
long replay(const IncidenceStructure& is, const Weights& w0, const std::vector<std::size_t>& lines) {
  Weights w = w0;
  for (auto li : lines)
    for (auto p : is.line(li).points) w[p] = -w[p];
  return weight_sum(w);
}

}  // namespace

TEST_CASE("switch code ranks") {
  const auto tri = code_of(triangle());
  CHECK(tri.rank() == 2);
  // code = even-weight vectors of length 3
  for (BitVector v = 0; v < 8; ++v) CHECK(tri.contains(v) == (__builtin_popcountll(v) % 2 == 0));

  CHECK(code_of(near_pencil(4)).rank() == 4);
  const auto np5 = code_of(near_pencil(5));
  CHECK(np5.rank() == 4);
  for (BitVector v = 0; v < 32; ++v) CHECK(np5.contains(v) == (__builtin_popcountll(v) % 2 == 0));
}

TEST_CASE("basis is in reduced row-echelon form and spans every line") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto is = connecting_lines(random_points(rng, 3 + uniform_below(rng, 20), 6));
    const auto code = switch_code(is);
    REQUIRE(code.basis().size() == code.pivots().size());
    for (std::size_t i = 0; i < code.rank(); ++i) {
      // pivot bit set in its own row only; rows ordered by pivot
      for (std::size_t j = 0; j < code.rank(); ++j)
        CHECK((((code.basis()[j] >> code.pivots()[i]) & 1) == 1) == (i == j));
      if (i > 0) CHECK(code.pivots()[i - 1] < code.pivots()[i]);
    }
    for (auto v : code.line_vectors()) CHECK(code.contains(v));
    CHECK(code.syndrome_bits() == is.size() - code.rank());
    // express() recovers a codeword from original lines
    const auto c = code.combine(rng() & ((std::uint64_t{1} << code.rank()) - 1));
    BitVector sum = 0;
    for (auto li : code.express(c)) sum ^= code.line_vectors()[li];
    CHECK(sum == c);
  }
}

TEST_CASE("syndromes index the cosets") {
  const auto code = code_of(grid(3, 3));
  std::set<std::uint64_t> seen;
  for (BitVector v = 0; v < (BitVector{1} << 9); ++v) {
    const auto s = code.syndrome(v);
    CHECK(s < (std::uint64_t{1} << code.syndrome_bits()));
    CHECK(code.syndrome(v ^ code.line_vectors()[v % code.line_vectors().size()]) == s);
    seen.insert(s);
  }
  CHECK(seen.size() == (std::size_t{1} << code.syndrome_bits()));
}

TEST_CASE("exact_F examples") {
  CHECK(exact_F(code_of(triangle()), {1, -1, 1}).value == 1);
  const auto np4 = code_of(near_pencil(4));
  for (std::uint64_t m = 0; m < 16; ++m) CHECK(exact_F(np4, weights_from_mask(4, m)).value == 4);
  CHECK(exact_F(code_of(near_pencil(5)), {1, 1, -1, 1, 1}).value == 3);
  CHECK(exact_F(code_of(near_pencil(5)), {-1, 1, -1, 1, 1}).value == 5);
}

TEST_CASE("exact_F_board examples") {
  CHECK(exact_F_board(code_of(near_pencil(5))).value == 3);
  const auto np4 = exact_F_board(code_of(near_pencil(4)));
  CHECK(np4.value == 4);
  CHECK(np4.covering_radius == 0);
  const auto tri = exact_F_board(code_of(triangle()));
  CHECK(tri.value == 1);
  CHECK(tri.covering_radius == 1);
}

TEST_CASE("near-pencil values up to n = 11") {
  for (std::size_t n = 4; n <= 11; ++n) {
    const auto v = exact_F_board(code_of(near_pencil(n))).value;
    CHECK(v == static_cast<long>(n % 2 ? n - 2 : n));
  }
}

TEST_CASE("reachable_bfs examples") {
  const auto tri = reachable_bfs(connecting_lines(triangle()), {1, -1, 1});
  CHECK(tri.reachable == 4);
  CHECK(tri.max_discrepancy == 1);
  CHECK(reachable_bfs(connecting_lines(near_pencil(4)), {-1, -1, -1, -1}).reachable == 16);
  CHECK_THROWS_AS(reachable_bfs(connecting_lines(grid(4, 5)), Weights(20, 1)), CapExceededError);
}

TEST_CASE("cross-oracle agreement on 10^2 random boards x 10 weightings") {
  std::mt19937_64 rng(41);
  for (int board = 0; board < 100; ++board) {
    const auto p = random_points(rng, 3 + uniform_below(rng, 10), 3 + uniform_below(rng, 5));
    const auto is = connecting_lines(p);
    if (is.lines().size() == 1) continue;
    const auto code = switch_code(is);
    for (int k = 0; k < 10; ++k) {
      const auto w0 = random_weights(p.size(), rng);
      const auto exact = exact_F(code, w0);
      const auto bfs = reachable_bfs(is, w0);
      const auto brute = brute_optimum(p, w0);
      CHECK(bfs.max_discrepancy == exact.value);
      CHECK(brute.best == exact.value);
      CHECK(bfs.reachable == (std::size_t{1} << code.rank()));
      CHECK(brute.reachable == bfs.reachable);
      CHECK(((exact.value - static_cast<long>(p.size())) % 2) == 0);
      CHECK(replay(is, w0, exact.witness) == exact.value);
    }
  }
}

TEST_CASE("board optimum is the minimum over all initial weights") {
  std::mt19937_64 rng(43);
  for (int board = 0; board < 30; ++board) {
    const auto p = random_points(rng, 3 + uniform_below(rng, 8), 4);
    const auto is = connecting_lines(p);
    const auto code = switch_code(is);
    const auto fb = exact_F_board(code);
    long lowest = static_cast<long>(p.size());
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.size()); ++m) {
      const auto v = exact_F(code, weights_from_mask(p.size(), m)).value;
      CHECK(fb.value <= v);
      lowest = std::min(lowest, v);
    }
    CHECK(lowest == fb.value);
    CHECK(code.rank() == brute_rank(p));
    CHECK(exact_F(code, fb.worst_weights).value == fb.value);
  }
}

TEST_CASE("both enumeration strategies give the same optimum") {
  // near-pencils have tiny rank (sweep), grids have small co-rank (table)
  std::mt19937_64 rng(47);
  for (auto p : {near_pencil(12), grid(3, 4), grid(4, 4), random_points(rng, 14, 5)}) {
    const auto is = connecting_lines(p);
    const auto code = switch_code(is);
    const auto table = leader_table(code);
    for (int k = 0; k < 50; ++k) {
      const auto w0 = random_weights(p.size(), rng);
      const auto off = off_vector(w0);
      const auto sweep = codeword_sweep(code, off);
      const long by_sweep = static_cast<long>(p.size()) - 2 * static_cast<long>(sweep.weight);
      const long by_table = static_cast<long>(p.size()) - 2 * static_cast<long>(table.distance[code.syndrome(off)]);
      CHECK(by_sweep == by_table);
      CHECK(by_sweep == exact_F(code, w0).value);
      CHECK(__builtin_popcountll(table.leader(code, code.syndrome(off))) == table.distance[code.syndrome(off)]);
      CHECK(code.syndrome(table.leader(code, code.syndrome(off))) == code.syndrome(off));
    }
  }
}

TEST_CASE("parallel kernels match the serial references") {
  std::mt19937_64 rng(53);
  for (auto p : {near_pencil(20), random_points(rng, 18, 7), grid(4, 5), grid(3, 6), random_points(rng, 22, 6)}) {
    const auto is = connecting_lines(p);
    const auto code = switch_code(is);
    if (code.rank() <= 22) {
      for (int k = 0; k < 5; ++k) {
        const auto off = off_vector(random_weights(p.size(), rng));
        CHECK(codeword_sweep(code, off) == codeword_sweep_serial(code, off));
      }
    }
    if (code.syndrome_bits() <= 22) {
      const auto par = leader_table(code);
      const auto ser = leader_table_serial(code);
      CHECK(par.distance == ser.distance);
      CHECK(par.covering_radius() == ser.covering_radius());
      for (std::uint64_t s = 0; s < par.distance.size(); s += 7) {
        CHECK(__builtin_popcountll(par.leader(code, s)) == par.distance[s]);
        CHECK(code.syndrome(par.leader(code, s)) == s);
      }
    }
  }
}

TEST_CASE("caps") {
  const auto big = connecting_lines(grid(5, 6));
  CHECK_THROWS_AS(exact_F(switch_code(big), Weights(30, 1)), CapExceededError);
  CHECK_THROWS_AS(exact_F_board(switch_code(big)), CapExceededError);
  std::vector<Point> many;
  for (int i = 0; i < 65; ++i) many.push_back({Integer(i), Integer(i * i)});
  CHECK_THROWS_AS(switch_code(connecting_lines(many)), CapExceededError);
}

TEST_CASE("5x5 grid: every weighting can be switched to all lights on") {
  const auto is = connecting_lines(grid(5, 5));
  const auto code = switch_code(is);
  const OracleOptions wide{25};
  CHECK(exact_F(code, Weights(25, 1), wide).value == 25);
  const auto board = exact_F_board(code, wide);
  CHECK(code.rank() == 25);
  CHECK(brute_rank(grid(5, 5)) == 25);
  CHECK(board.covering_radius == 0);
  CHECK(board.value == 25);
}
