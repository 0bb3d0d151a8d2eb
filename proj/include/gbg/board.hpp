#pragma once

// Game state on a fixed point set: weights, switches, certificates.

#include "gbg/geometry.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gbg {

using Weights = std::vector<int>;  // entries are +1 or -1

long weight_sum(const Weights& w);

class Configuration {
 public:
  Configuration(std::shared_ptr<const IncidenceStructure> incidence, Weights weights);

  const IncidenceStructure& incidence() const { return *incidence_; }
  const std::shared_ptr<const IncidenceStructure>& incidence_ptr() const { return incidence_; }
  std::size_t size() const { return weights_.size(); }

  const Weights& weights() const { return weights_; }
  int weight(std::size_t p) const { return weights_[p]; }
  const Weights& initial_weights() const { return initial_; }
  long discrepancy() const { return discrepancy_; }

  // Switch log as line indices into incidence(); keys via switch_log_keys().
  const std::vector<std::size_t>& switch_log() const { return log_; }
  std::vector<LineKey> switch_log_keys() const;

  // Negates every weight on the line. Throws UnknownLineError for a key that
  // is not a connecting line of the board.
  void apply_switch(const LineKey& key);
  void apply_switch(std::size_t line_index);

  // Same board, current weights as the new initial weights, empty log.
  Configuration restarted() const;

  // Replays the log from the initial weights and compares.
  bool replay_consistent() const;

  friend bool operator==(const Configuration& l, const Configuration& r) {
    return l.incidence_ == r.incidence_ && l.weights_ == r.weights_ && l.initial_ == r.initial_ && l.log_ == r.log_;
  }

 private:
  std::shared_ptr<const IncidenceStructure> incidence_;
  Weights initial_;
  Weights weights_;
  std::vector<std::size_t> log_;
  long discrepancy_ = 0;
};

// Throws InputError on a length mismatch, weights other than +-1, or duplicate points.
Configuration new_board(const std::vector<Point>& points, Weights weights);

Configuration switched(Configuration config, const LineKey& line);
inline long discrepancy(const Configuration& config) { return config.discrepancy(); }

enum class BoundKind { third, n_minus_2, near_perfect, balance };

std::string to_string(BoundKind kind);
BoundKind parse_bound_kind(std::string_view text);

// Whether `value` meets the guarantee named by `kind` on an n-point board.
bool meets_bound(BoundKind kind, long value, std::size_t n);

// Smallest integer >= n/3 with the parity of n.
long third_bound(std::size_t n);

struct SwitchCertificate {
  Weights initial_weights;
  std::vector<LineKey> switches;
  long claimed_discrepancy = 0;
  BoundKind claimed_bound_kind = BoundKind::third;
};

inline constexpr std::size_t default_switch_budget_factor = 8;

struct VerifyOptions {
  std::size_t switch_budget_factor = default_switch_budget_factor;
};

struct VerificationFailure {
  enum class Check { malformed, unknown_line, claim_not_met, bound_not_met, budget_exceeded };
  Check check;
  std::optional<std::size_t> index;
  std::string message;
};

struct VerificationResult {
  bool accepted = false;
  long final_discrepancy = 0;
  std::vector<VerificationFailure> failures;
};

VerificationResult verify_certificate(const std::vector<Point>& points, const SwitchCertificate& cert,
                                      const VerifyOptions& options = {});
VerificationResult verify_certificate(std::shared_ptr<const IncidenceStructure> incidence,
                                      const SwitchCertificate& cert, const VerifyOptions& options = {});

// Shared point-set text format: "n", then n lines "x y w"; '#' starts a comment.
struct Instance {
  std::vector<Point> points;
  Weights weights;

  friend bool operator==(const Instance&, const Instance&) = default;
};

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

// "GBG-CERT v1", point-set block, one "a b c" line per switch, "CLAIM <kind> <value>".
struct CertificateFile {
  std::vector<Point> points;
  SwitchCertificate certificate;
};

CertificateFile parse_certificate(std::string_view text);
std::string serialize_certificate(const std::vector<Point>& points, const SwitchCertificate& cert);

}  // namespace gbg
