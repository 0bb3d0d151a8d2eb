#pragma once

// Exact optima through the GF(2) code spanned by line indicator vectors.
//
// A switch sequence acts on the "off" vector (1 where the weight is -1) by
// adding a codeword, so the reachable configurations from w0 form the coset
// off(w0) + C. Hence F(P, w0) = n - 2 * (minimum weight in that coset) and
// F(P) = n - 2 * (covering radius of C).

#include "gbg/board.hpp"
#include "gbg/geometry.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <vector>

namespace gbg {

using BitVector = std::uint64_t;
inline constexpr std::size_t max_code_length = 64;

struct OracleOptions {
  std::size_t cap = 24;  // limit on n and on the enumeration exponent
};

class SwitchCode {
 public:
  SwitchCode(std::size_t length, std::vector<BitVector> line_vectors);

  std::size_t length() const { return length_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<BitVector>& basis() const { return basis_; }  // reduced row-echelon form
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<BitVector>& line_vectors() const { return line_vectors_; }

  // Coset representative with zeros on every pivot column.
  BitVector reduce(BitVector v) const;
  bool contains(BitVector v) const { return reduce(v) == 0; }

  // Packs the free (non-pivot) columns of reduce(v); a bijection between
  // cosets and [0, 2^(n - rank)).
  std::uint64_t syndrome(BitVector v) const;
  std::size_t syndrome_bits() const { return free_columns_.size(); }

  // Original line indices whose indicator vectors sum to `codeword`.
  std::vector<std::size_t> express(BitVector codeword) const;
  // Codeword for a subset of basis rows given as a bit mask.
  BitVector combine(std::uint64_t rows) const;

 private:
  std::size_t length_;
  std::vector<BitVector> line_vectors_;
  std::vector<BitVector> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<boost::dynamic_bitset<>> basis_lines_;
  std::vector<std::size_t> free_columns_;
};

// Throws CapExceededError for boards with more than 64 points.
SwitchCode switch_code(const IncidenceStructure& is);

BitVector off_vector(const Weights& w);

// Minimum of popcount(off ^ c) over all codewords c, with the lexicographically
// smallest (weight, gray-code combination) winner. The OpenMP and serial
// versions return identical results.
struct SweepResult {
  std::size_t weight = 0;
  std::uint64_t combination = 0;  // basis rows used

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};
SweepResult codeword_sweep(const SwitchCode& code, BitVector off);
SweepResult codeword_sweep_serial(const SwitchCode& code, BitVector off);

// Coset-leader weight for every syndrome, as breadth-first distance from the
// zero syndrome using unit vectors as generators. `via` records the point
// whose unit vector reached each syndrome. The parallel version expands
// level by level in pull form; distances match the serial queue exactly,
// though `via` may pick a different (equally short) path.
struct LeaderTable {
  std::vector<std::uint8_t> distance;
  std::vector<std::uint8_t> via;

  std::size_t covering_radius() const;
  // Minimum-weight vector of the coset with the given syndrome.
  BitVector leader(const SwitchCode& code, std::uint64_t syndrome) const;
};
LeaderTable leader_table(const SwitchCode& code);
LeaderTable leader_table_serial(const SwitchCode& code);

struct OracleResult {
  long value = 0;                   // F(P, w0)
  std::size_t leader_weight = 0;    // number of -1 weights left at the optimum
  std::vector<std::size_t> witness; // line indices reaching the optimum
};

// Throws CapExceededError when n or min(rank, n - rank) exceeds options.cap.
OracleResult exact_F(const SwitchCode& code, const Weights& w0, const OracleOptions& options = {});

struct BoardOracleResult {
  long value = 0;                // F(P)
  std::size_t covering_radius = 0;
  Weights worst_weights;         // an initial assignment attaining F(P)
};

BoardOracleResult exact_F_board(const SwitchCode& code, const OracleOptions& options = {});

// Independent check: breadth-first closure of w0 under single switches.
struct ReachableSummary {
  std::size_t reachable = 0;
  long max_discrepancy = 0;
};

inline constexpr std::size_t reachable_bfs_cap = 16;
ReachableSummary reachable_bfs(const IncidenceStructure& is, const Weights& w0, std::size_t cap = reachable_bfs_cap);

}  // namespace gbg
