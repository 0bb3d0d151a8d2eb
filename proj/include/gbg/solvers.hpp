#pragma once

// Constructive switching strategies. Every solver is a pure function of the
// configuration's current weights; it returns a replayable certificate.
//
// Solvers recurse on subsets of the original board. A switch chosen on a
// subset is applied to the whole geometric line, so it may touch points
// outside the subset; those points belong to enclosing levels, which are
// fixed afterwards with switches that never touch the already-solved inner
// subset.

#include "gbg/board.hpp"
#include "gbg/geometry.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gbg {

struct TraceStep {
  std::string rule;                  // which construction fired
  std::vector<std::size_t> points;   // points it settled (the steps partition the board)
};

struct PeelReport {
  std::size_t peeled_components = 0;
  bool exhausted = false;  // every level ended with at most one -1 and no n/3 fallback was needed
};

struct SolverOutcome {
  SwitchCertificate certificate;
  long final_discrepancy = 0;
  std::vector<TraceStep> trace;
  std::optional<PeelReport> peel;
};

struct NearPerfectParams {
  std::size_t component_threshold = 4;  // K: peel components with at least this many points
  double epsilon = 0.5;                 // target slack; K defaults to ceil(2 / epsilon)
  std::size_t small_cutoff = 10;        // n_epsilon: below this size use the fallback solver

  static NearPerfectParams for_epsilon(double epsilon);
  void validate() const;
};

enum class ReductionCase { collinear_triple, ordinary_pair };

// Points {shared, first, second}. For ordinary_pair the two lines are
// (shared, first) and (shared, second).
struct Triple {
  std::size_t shared;
  std::size_t first;
  std::size_t second;
};

// Repeatedly switches the negative connecting line (of the subset, when given)
// with the smallest key until none is negative.
Configuration procedure_n(Configuration config, const std::optional<PointSubset>& restrict_to = std::nullopt);

// Sets every vertex of the tree except the root to +1 using tree-edge
// switches, deepest level first. Every edge must be an ordinary line of
// `active`; otherwise throws InvariantError.
Configuration tree_switch(Configuration config, const PointSubset& active, const SpanningTree& tree);

// Makes the triple's weight sum >= 1 after the subset without it has been
// solved, with at most two switches that avoid the rest of `active`.
Configuration reduction_step(Configuration config, const PointSubset& active, const Triple& triple,
                             ReductionCase which);

SolverOutcome solve_general_position(const Configuration& config);
SolverOutcome solve_basis(const Configuration& config);
SolverOutcome solve_long_line(const Configuration& config);
SolverOutcome solve_third(const Configuration& config);
SolverOutcome solve_claim_cubic(const Configuration& config);
SolverOutcome solve_near_perfect(const Configuration& config, const NearPerfectParams& params = {});
SolverOutcome balance(const Configuration& config);

// Subset forms used by the recursive drivers; the outcome's certificate and
// final discrepancy still refer to the whole board.
SolverOutcome solve_basis(const Configuration& config, const PointSubset& active);
SolverOutcome solve_long_line(const Configuration& config, const PointSubset& active);
SolverOutcome solve_third(const Configuration& config, const PointSubset& active);
SolverOutcome solve_claim_cubic(const Configuration& config, const PointSubset& active);

// "third", "gp", "cubic", "near-perfect", "balance", "auto".
enum class SolverKind { third, general_position, cubic, near_perfect, balance };
SolverKind parse_solver(std::string_view name);
std::string to_string(SolverKind kind);
SolverOutcome run_solver(SolverKind kind, const Configuration& config, const NearPerfectParams& params = {});

}  // namespace gbg
