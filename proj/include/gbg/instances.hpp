#pragma once

// Deterministic instance generators for the structural classes the solvers
// are exercised on. Text parsing lives with the shared format in board.hpp.

#include "gbg/board.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace gbg {

enum class GeneratorKind { near_pencil, grid, random_gp, cubic, circle_plus_line, collinear_plus_k };
enum class WeightMode { all_minus, all_plus, random, worst_case_search };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::near_pencil;
  std::size_t n = 5;          // near_pencil, random_gp, cubic, circle_plus_line, collinear_plus_k
  std::size_t rows = 3;       // grid
  std::size_t cols = 3;       // grid
  std::size_t k = 1;          // collinear_plus_k: points off the line
  std::uint64_t seed = 0;
  WeightMode weights = WeightMode::random;
  std::size_t cap = 24;       // worst_case_search oracle cap
  std::size_t box = 0;        // random_gp / collinear_plus_k coordinate range; 0 picks one from n
};

std::string to_string(GeneratorKind kind);
std::string to_string(WeightMode mode);
GeneratorKind parse_generator_kind(std::string_view text);
WeightMode parse_weight_mode(std::string_view text);

// "kind=grid rows=3 cols=3 seed=7 weights=random"; unknown keys are errors.
GeneratorSpec parse_generator_spec(std::string_view text);
std::string to_string(const GeneratorSpec& spec);

// Deterministic in its argument. Throws InputError for infeasible specs.
Instance generate(const GeneratorSpec& spec);
std::vector<Point> generate_points(const GeneratorSpec& spec);

// Uniform value in [0, bound) from a 64-bit engine, independent of the
// standard library's distribution implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
Weights random_weights(std::size_t n, std::mt19937_64& rng);

}  // namespace gbg
