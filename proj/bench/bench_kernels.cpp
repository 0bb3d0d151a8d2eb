// Serial reference vs OpenMP kernel timings.

#include "gbg/instances.hpp"
#include "gbg/oracle.hpp"
#include "gbg/solvers.hpp"

#include <benchmark/benchmark.h>

namespace {

std::vector<gbg::Point> grid_points(std::size_t side) {
  gbg::GeneratorSpec s;
  s.kind = gbg::GeneratorKind::grid;
  s.rows = s.cols = side;
  return gbg::generate_points(s);
}

void BM_ConnectingLinesSerial(benchmark::State& state) {
  const auto pts = grid_points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gbg::connecting_lines_serial(pts));
  state.SetLabel("n=" + std::to_string(pts.size()));
}

void BM_ConnectingLinesParallel(benchmark::State& state) {
  const auto pts = grid_points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gbg::connecting_lines(pts));
  state.SetLabel("n=" + std::to_string(pts.size()));
}

// The sweep enumerates 2^rank codewords; general-position sets have rank
// close to n.
gbg::SwitchCode sweep_code(std::size_t n) {
  gbg::GeneratorSpec s;
  s.kind = gbg::GeneratorKind::random_gp;
  s.n = n;
  s.seed = 1;
  return gbg::switch_code(gbg::connecting_lines(gbg::generate_points(s)));
}

void BM_CodewordSweepSerial(benchmark::State& state) {
  const auto code = sweep_code(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gbg::codeword_sweep_serial(code, 0x5555555555ULL & ((1ULL << code.length()) - 1)));
}

void BM_CodewordSweepParallel(benchmark::State& state) {
  const auto code = sweep_code(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gbg::codeword_sweep(code, 0x5555555555ULL & ((1ULL << code.length()) - 1)));
}

// Point-set codes have co-rank 0 or 1 in every case we have sampled; odd
// near-pencils give the one-bit syndrome, so this times the table overhead.
gbg::SwitchCode table_code(std::size_t n) {
  gbg::GeneratorSpec s;
  s.kind = gbg::GeneratorKind::near_pencil;
  s.n = n;
  return gbg::switch_code(gbg::connecting_lines(gbg::generate_points(s)));
}

void BM_LeaderTableSerial(benchmark::State& state) {
  const auto code = table_code(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gbg::leader_table_serial(code));
  state.SetLabel("syndrome_bits=" + std::to_string(code.syndrome_bits()));
}

void BM_LeaderTableParallel(benchmark::State& state) {
  const auto code = table_code(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gbg::leader_table(code));
  state.SetLabel("syndrome_bits=" + std::to_string(code.syndrome_bits()));
}

void BM_SolveThird(benchmark::State& state) {
  gbg::GeneratorSpec s;
  s.kind = gbg::GeneratorKind::circle_plus_line;
  s.n = static_cast<std::size_t>(state.range(0));
  const auto inst = gbg::generate(s);
  const auto board = gbg::new_board(inst.points, inst.weights);
  for (auto _ : state) benchmark::DoNotOptimize(gbg::solve_third(board));
}

}  // namespace

BENCHMARK(BM_ConnectingLinesSerial)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConnectingLinesParallel)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CodewordSweepSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CodewordSweepParallel)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeaderTableSerial)->Arg(21)->Arg(63)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeaderTableParallel)->Arg(21)->Arg(63)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveThird)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
