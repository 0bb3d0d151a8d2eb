#include "gbg/oracle.hpp"

#include "gbg/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>

namespace gbg {

SwitchCode::SwitchCode(std::size_t length, std::vector<BitVector> line_vectors)
    : length_(length), line_vectors_(std::move(line_vectors)) {
  if (length_ > max_code_length) {
    throw CapExceededError("switch code length " + std::to_string(length_) + " exceeds " +
                           std::to_string(max_code_length) + " bits");
  }
  const std::size_t m = line_vectors_.size();
  std::vector<BitVector> rows = line_vectors_;
  std::vector<boost::dynamic_bitset<>> combos(m, boost::dynamic_bitset<>(m));
  for (std::size_t i = 0; i < m; ++i) combos[i].set(i);

  std::size_t r = 0;
  for (std::size_t col = 0; col < length_ && r < m; ++col) {
    const BitVector bit = BitVector{1} << col;
    std::size_t k = r;
    while (k < m && !(rows[k] & bit)) ++k;
    if (k == m) continue;
    std::swap(rows[r], rows[k]);
    std::swap(combos[r], combos[k]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i != r && (rows[i] & bit)) {
        rows[i] ^= rows[r];
        combos[i] ^= combos[r];
      }
    }
    pivots_.push_back(col);
    ++r;
  }
  for (std::size_t col = 0; col < length_; ++col) {
    if (std::find(pivots_.begin(), pivots_.end(), col) == pivots_.end()) free_columns_.push_back(col);
  }
  rows.resize(r);
  combos.resize(r);
  basis_ = std::move(rows);
  basis_lines_ = std::move(combos);
}

BitVector SwitchCode::reduce(BitVector v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if ((v >> pivots_[i]) & 1U) v ^= basis_[i];
  }
  return v;
}

std::uint64_t SwitchCode::syndrome(BitVector v) const {
  const BitVector r = reduce(v);
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < free_columns_.size(); ++k) s |= ((r >> free_columns_[k]) & 1U) << k;
  return s;
}

BitVector SwitchCode::combine(std::uint64_t rows) const {
  BitVector c = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if ((rows >> i) & 1U) c ^= basis_[i];
  }
  return c;
}

std::vector<std::size_t> SwitchCode::express(BitVector codeword) const {
  if (!contains(codeword)) throw InvariantError("vector is not a codeword of the switch code");
  boost::dynamic_bitset<> acc(line_vectors_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if ((codeword >> pivots_[i]) & 1U) acc ^= basis_lines_[i];
  }
  std::vector<std::size_t> lines;
  for (auto i = acc.find_first(); i != boost::dynamic_bitset<>::npos; i = acc.find_next(i)) lines.push_back(i);
  return lines;
}

SwitchCode switch_code(const IncidenceStructure& is) {
  if (is.size() > max_code_length) {
    throw CapExceededError("board has " + std::to_string(is.size()) + " points; the switch code supports at most " +
                           std::to_string(max_code_length));
  }
  std::vector<BitVector> vectors;
  vectors.reserve(is.lines().size());
  for (const auto& line : is.lines()) {
    BitVector v = 0;
    for (auto p : line.points) v |= BitVector{1} << p;
    vectors.push_back(v);
  }
  return SwitchCode(is.size(), std::move(vectors));
}

BitVector off_vector(const Weights& w) {
  if (w.size() > max_code_length) throw CapExceededError("weight vector longer than 64");
  BitVector off = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == -1) {
      off |= BitVector{1} << i;
    } else if (w[i] != 1) {
      throw InputError("weight at index " + std::to_string(i) + " is not +-1");
    }
  }
  return off;
}

namespace {

bool better(std::size_t w, std::uint64_t comb, const SweepResult& best) {
  return w < best.weight || (w == best.weight && comb < best.combination);
}

void sweep_range(const SwitchCode& code, BitVector off, std::uint64_t begin, std::uint64_t end, SweepResult& best) {
  const auto& basis = code.basis();
  BitVector cw = code.combine(begin ^ (begin >> 1));
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    if (idx != begin) cw ^= basis[static_cast<std::size_t>(std::countr_zero(idx))];
    const auto w = static_cast<std::size_t>(std::popcount(off ^ cw));
    const std::uint64_t gray = idx ^ (idx >> 1);
    if (better(w, gray, best)) best = {w, gray};
  }
}

void require_exponent(std::size_t exponent, const char* what) {
  if (exponent >= 63) throw CapExceededError(std::string(what) + " enumeration of 2^" + std::to_string(exponent));
}

}  // namespace

SweepResult codeword_sweep_serial(const SwitchCode& code, BitVector off) {
  require_exponent(code.rank(), "codeword");
  SweepResult best{static_cast<std::size_t>(std::popcount(off)), 0};
  sweep_range(code, off, 0, std::uint64_t{1} << code.rank(), best);
  return best;
}

SweepResult codeword_sweep(const SwitchCode& code, BitVector off) {
  require_exponent(code.rank(), "codeword");
  const std::uint64_t total = std::uint64_t{1} << code.rank();
  const std::uint64_t chunk = std::max<std::uint64_t>(std::uint64_t{1} << 12, total / 256);
  const auto chunks = static_cast<long long>((total + chunk - 1) / chunk);
  SweepResult best{static_cast<std::size_t>(std::popcount(off)), 0};
#pragma omp parallel
  {
    SweepResult local = best;
#pragma omp for schedule(dynamic)
    for (long long c = 0; c < chunks; ++c) {
      const auto begin = static_cast<std::uint64_t>(c) * chunk;
      sweep_range(code, off, begin, std::min(total, begin + chunk), local);
    }
#pragma omp critical
    {
      if (better(local.weight, local.combination, best)) best = local;
    }
  }
  return best;
}

namespace {

constexpr std::uint8_t unvisited = 0xFF;

std::vector<std::uint64_t> unit_syndromes(const SwitchCode& code) {
  std::vector<std::uint64_t> gens(code.length());
  for (std::size_t i = 0; i < code.length(); ++i) gens[i] = code.syndrome(BitVector{1} << i);
  return gens;
}

}  // namespace

std::size_t LeaderTable::covering_radius() const {
  std::uint8_t r = 0;
  for (auto d : distance) r = std::max(r, d);
  return r;
}

BitVector LeaderTable::leader(const SwitchCode& code, std::uint64_t syndrome) const {
  BitVector e = 0;
  while (syndrome != 0) {
    const auto i = via[syndrome];
    e ^= BitVector{1} << i;
    syndrome ^= code.syndrome(BitVector{1} << i);
  }
  return e;
}

LeaderTable leader_table_serial(const SwitchCode& code) {
  require_exponent(code.syndrome_bits(), "syndrome");
  const std::size_t size = std::size_t{1} << code.syndrome_bits();
  const auto gens = unit_syndromes(code);
  LeaderTable table{std::vector<std::uint8_t>(size, unvisited), std::vector<std::uint8_t>(size, unvisited)};
  std::deque<std::uint64_t> queue{0};
  table.distance[0] = 0;
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto t = s ^ gens[i];
      if (table.distance[t] != unvisited) continue;
      table.distance[t] = static_cast<std::uint8_t>(table.distance[s] + 1);
      table.via[t] = static_cast<std::uint8_t>(i);
      queue.push_back(t);
    }
  }
  return table;
}

LeaderTable leader_table(const SwitchCode& code) {
  require_exponent(code.syndrome_bits(), "syndrome");
  const std::size_t size = std::size_t{1} << code.syndrome_bits();
  const auto gens = unit_syndromes(code);
  LeaderTable table{std::vector<std::uint8_t>(size, unvisited), std::vector<std::uint8_t>(size, unvisited)};
  table.distance[0] = 0;
  const auto count = static_cast<long long>(size);
  for (std::uint8_t level = 0;; ++level) {
    bool grew = false;
#pragma omp parallel for schedule(static) reduction(|| : grew)
    for (long long tt = 0; tt < count; ++tt) {
      const auto t = static_cast<std::size_t>(tt);
      if (std::atomic_ref<std::uint8_t>(table.distance[t]).load(std::memory_order_relaxed) != unvisited) continue;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto src = static_cast<std::size_t>(t ^ gens[i]);
        if (std::atomic_ref<std::uint8_t>(table.distance[src]).load(std::memory_order_relaxed) == level) {
          std::atomic_ref<std::uint8_t>(table.distance[t]).store(static_cast<std::uint8_t>(level + 1),
                                                                  std::memory_order_relaxed);
          table.via[t] = static_cast<std::uint8_t>(i);
          grew = true;
          break;
        }
      }
    }
    if (!grew) break;
  }
  return table;
}

namespace {

void require_cap(const SwitchCode& code, std::size_t exponent, const OracleOptions& options) {
  if (code.length() > options.cap || exponent > options.cap) {
    throw CapExceededError("oracle cap " + std::to_string(options.cap) + " exceeded: n=" +
                           std::to_string(code.length()) + ", rank=" + std::to_string(code.rank()) +
                           ", enumeration exponent=" + std::to_string(exponent));
  }
}

}  // namespace

OracleResult exact_F(const SwitchCode& code, const Weights& w0, const OracleOptions& options) {
  const std::size_t n = code.length();
  const std::size_t d = code.rank();
  require_cap(code, std::min(d, n - d), options);
  if (w0.size() != n) throw InputError("weight vector length does not match the board");
  const BitVector off = off_vector(w0);

  BitVector codeword = 0;
  std::size_t leader_weight = 0;
  if (d <= n - d) {
    const auto best = codeword_sweep(code, off);
    leader_weight = best.weight;
    codeword = code.combine(best.combination);
  } else {
    const auto table = leader_table(code);
    const BitVector leader = table.leader(code, code.syndrome(off));
    leader_weight = static_cast<std::size_t>(std::popcount(leader));
    codeword = off ^ leader;
  }
  OracleResult result;
  result.leader_weight = leader_weight;
  result.value = static_cast<long>(n) - 2 * static_cast<long>(leader_weight);
  result.witness = code.express(codeword);
  return result;
}

BoardOracleResult exact_F_board(const SwitchCode& code, const OracleOptions& options) {
  const std::size_t n = code.length();
  require_cap(code, n - code.rank(), options);
  const auto table = leader_table(code);
  BoardOracleResult result;
  result.covering_radius = table.covering_radius();
  result.value = static_cast<long>(n) - 2 * static_cast<long>(result.covering_radius);
  std::uint64_t worst = 0;
  while (table.distance[worst] != result.covering_radius) ++worst;
  const BitVector e = table.leader(code, worst);
  result.worst_weights.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if ((e >> i) & 1U) result.worst_weights[i] = -1;
  }
  return result;
}

ReachableSummary reachable_bfs(const IncidenceStructure& is, const Weights& w0, std::size_t cap) {
  const std::size_t n = is.size();
  if (n > cap || n > 24) {
    throw CapExceededError("reachable_bfs cap " + std::to_string(std::min<std::size_t>(cap, 24)) +
                           " exceeded: n=" + std::to_string(n));
  }
  if (w0.size() != n) throw InputError("weight vector length does not match the board");
  std::vector<std::uint32_t> masks;
  for (const auto& line : is.lines()) {
    std::uint32_t m = 0;
    for (auto p : line.points) m |= std::uint32_t{1} << p;
    masks.push_back(m);
  }
  const auto start = static_cast<std::uint32_t>(off_vector(w0));
  std::vector<char> seen(std::size_t{1} << n, 0);
  std::deque<std::uint32_t> queue{start};
  seen[start] = 1;
  ReachableSummary out;
  int min_off = std::popcount(start);
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    ++out.reachable;
    min_off = std::min(min_off, std::popcount(s));
    for (auto m : masks) {
      const auto t = s ^ m;
      if (!seen[t]) {
        seen[t] = 1;
        queue.push_back(t);
      }
    }
  }
  out.max_discrepancy = static_cast<long>(n) - 2L * min_off;
  return out;
}

}  // namespace gbg
