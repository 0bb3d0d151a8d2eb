#include "gbg/board.hpp"

#include "gbg/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace gbg {

long weight_sum(const Weights& w) {
  long s = 0;
  for (int x : w) s += x;
  return s;
}

namespace {

void require_signs(const Weights& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 1 && w[i] != -1) {
      throw InputError("weight at index " + std::to_string(i) + " is " + std::to_string(w[i]) + ", expected +1 or -1");
    }
  }
}

}  // namespace

Configuration::Configuration(std::shared_ptr<const IncidenceStructure> incidence, Weights weights)
    : incidence_(std::move(incidence)), initial_(std::move(weights)) {
  if (!incidence_) throw InputError("configuration without a board");
  if (initial_.size() != incidence_->size()) {
    throw InputError("weight vector has " + std::to_string(initial_.size()) + " entries for " +
                     std::to_string(incidence_->size()) + " points");
  }
  require_signs(initial_);
  weights_ = initial_;
  discrepancy_ = weight_sum(weights_);
}

std::vector<LineKey> Configuration::switch_log_keys() const {
  std::vector<LineKey> keys;
  keys.reserve(log_.size());
  for (auto li : log_) keys.push_back(incidence_->line(li).key);
  return keys;
}

void Configuration::apply_switch(const LineKey& key) {
  auto index = incidence_->find(key);
  if (!index) throw UnknownLineError("not a connecting line: " + key.to_string());
  apply_switch(*index);
}

void Configuration::apply_switch(std::size_t line_index) {
  if (line_index >= incidence_->lines().size()) {
    throw UnknownLineError("line index " + std::to_string(line_index) + " out of range");
  }
  for (auto p : incidence_->line(line_index).points) {
    weights_[p] = -weights_[p];
    discrepancy_ += 2 * weights_[p];
  }
  log_.push_back(line_index);
}

Configuration Configuration::restarted() const { return Configuration(incidence_, weights_); }

bool Configuration::replay_consistent() const {
  Configuration replay(incidence_, initial_);
  for (auto li : log_) replay.apply_switch(li);
  return replay.weights_ == weights_ && replay.discrepancy_ == discrepancy_ &&
         discrepancy_ == weight_sum(weights_);
}

Configuration new_board(const std::vector<Point>& points, Weights weights) {
  if (points.size() != weights.size()) {
    throw InputError("length mismatch: " + std::to_string(points.size()) + " points, " +
                     std::to_string(weights.size()) + " weights");
  }
  require_signs(weights);
  return Configuration(std::make_shared<const IncidenceStructure>(connecting_lines(points)), std::move(weights));
}

Configuration switched(Configuration config, const LineKey& line) {
  config.apply_switch(line);
  return config;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::third: return "third";
    case BoundKind::n_minus_2: return "n_minus_2";
    case BoundKind::near_perfect: return "near_perfect";
    case BoundKind::balance: return "balance";
  }
  return "?";
}

BoundKind parse_bound_kind(std::string_view text) {
  if (text == "third") return BoundKind::third;
  if (text == "n_minus_2") return BoundKind::n_minus_2;
  if (text == "near_perfect") return BoundKind::near_perfect;
  if (text == "balance") return BoundKind::balance;
  throw InputError("unknown bound kind '" + std::string(text) + "'");
}

long third_bound(std::size_t n) {
  const long nl = static_cast<long>(n);
  long b = (nl + 2) / 3;
  if ((b - nl) % 2 != 0) ++b;
  return b;
}

bool meets_bound(BoundKind kind, long value, std::size_t n) {
  const long nl = static_cast<long>(n);
  switch (kind) {
    case BoundKind::third: return 3 * value >= nl;
    case BoundKind::n_minus_2:
    case BoundKind::near_perfect: return value >= nl - 2;
    case BoundKind::balance: return value >= -2 && value <= 2;
  }
  return false;
}

VerificationResult verify_certificate(const std::vector<Point>& points, const SwitchCertificate& cert,
                                      const VerifyOptions& options) {
  return verify_certificate(std::make_shared<const IncidenceStructure>(connecting_lines(points)), cert, options);
}

VerificationResult verify_certificate(std::shared_ptr<const IncidenceStructure> incidence,
                                      const SwitchCertificate& cert, const VerifyOptions& options) {
  using Check = VerificationFailure::Check;
  VerificationResult result;
  const std::size_t n = incidence->size();
  if (cert.initial_weights.size() != n) {
    result.failures.push_back({Check::malformed, std::nullopt,
                               "initial weights have " + std::to_string(cert.initial_weights.size()) +
                                   " entries for " + std::to_string(n) + " points"});
    return result;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cert.initial_weights[i] != 1 && cert.initial_weights[i] != -1) {
      result.failures.push_back({Check::malformed, i, "initial weight at index " + std::to_string(i) + " is not +-1"});
      return result;
    }
  }

  Configuration replay(incidence, cert.initial_weights);
  bool reported_unknown = false;
  for (std::size_t i = 0; i < cert.switches.size(); ++i) {
    auto li = incidence->find(cert.switches[i]);
    if (!li) {
      if (!reported_unknown) {
        result.failures.push_back({Check::unknown_line, i,
                                   "unknown line at index " + std::to_string(i) + ": " + cert.switches[i].to_string()});
        reported_unknown = true;
      }
      continue;
    }
    replay.apply_switch(*li);
  }
  result.final_discrepancy = replay.discrepancy();

  if (result.final_discrepancy < cert.claimed_discrepancy) {
    result.failures.push_back({Check::claim_not_met, std::nullopt,
                               "claim not met: final " + std::to_string(result.final_discrepancy) + " < claimed " +
                                   std::to_string(cert.claimed_discrepancy)});
  }
  const bool bound_ok = cert.claimed_bound_kind == BoundKind::balance
                            ? meets_bound(BoundKind::balance, result.final_discrepancy, n) &&
                                  meets_bound(BoundKind::balance, cert.claimed_discrepancy, n)
                            : meets_bound(cert.claimed_bound_kind, cert.claimed_discrepancy, n);
  if (!bound_ok) {
    result.failures.push_back({Check::bound_not_met, std::nullopt,
                               "bound not met: claim " + std::to_string(cert.claimed_discrepancy) + " (final " +
                                   std::to_string(result.final_discrepancy) + ") for kind " +
                                   to_string(cert.claimed_bound_kind) + " on n=" + std::to_string(n)});
  }
  const std::size_t budget = options.switch_budget_factor * n;
  if (cert.switches.size() > budget) {
    result.failures.push_back({Check::budget_exceeded, budget,
                               "switch budget exceeded: " + std::to_string(cert.switches.size()) + " > " +
                                   std::to_string(options.switch_budget_factor) + "n = " + std::to_string(budget)});
  }
  result.accepted = result.failures.empty();
  return result;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next non-empty line with comments stripped and whitespace trimmed.
  std::optional<std::string> next() {
    while (pos_ < text_.size()) {
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view raw = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
      while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
      if (!raw.empty()) return std::string(raw);
    }
    return std::nullopt;
  }

  std::size_t line_no() const { return line_no_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

bool is_integer_token(std::string_view tok) {
  if (!tok.empty() && (tok.front() == '-' || tok.front() == '+')) tok.remove_prefix(1);
  if (tok.empty()) return false;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer parse_integer(const LineReader& reader, std::string tok) {
  if (!is_integer_token(tok)) reader.fail("non-integer value '" + tok + "'");
  if (tok.front() == '+') tok.erase(0, 1);
  return Integer(tok);
}

Instance read_point_block(LineReader& reader) {
  auto header = reader.next();
  if (!header) reader.fail("missing point count");
  auto head = tokens(*header);
  if (head.size() != 1 || !is_integer_token(head[0]) || head[0].front() == '-') {
    reader.fail("expected a point count, got '" + *header + "'");
  }
  const auto n = std::stoull(head[0]);
  Instance inst;
  inst.points.reserve(n);
  inst.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto line = reader.next();
    if (!line) reader.fail("expected " + std::to_string(n) + " points, got " + std::to_string(i));
    auto tok = tokens(*line);
    if (tok.size() != 3) reader.fail("malformed point line '" + *line + "'");
    Point p{parse_integer(reader, tok[0]), parse_integer(reader, tok[1])};
    int w = 0;
    if (tok[2] == "1" || tok[2] == "+1") {
      w = 1;
    } else if (tok[2] == "-1") {
      w = -1;
    } else {
      reader.fail("weight must be +1 or -1, got '" + tok[2] + "'");
    }
    inst.points.push_back(std::move(p));
    inst.weights.push_back(w);
  }
  require_distinct(inst.points);
  return inst;
}

void write_point_block(std::ostringstream& out, const std::vector<Point>& points, const Weights& weights) {
  out << points.size() << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << points[i].x << ' ' << points[i].y << ' ' << weights[i] << '\n';
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  LineReader reader(text);
  Instance inst = read_point_block(reader);
  if (auto extra = reader.next()) reader.fail("unexpected trailing content '" + *extra + "'");
  return inst;
}

std::string serialize_instance(const Instance& instance) {
  if (instance.points.size() != instance.weights.size()) throw InputError("length mismatch in instance");
  std::ostringstream out;
  write_point_block(out, instance.points, instance.weights);
  return out.str();
}

CertificateFile parse_certificate(std::string_view text) {
  LineReader reader(text);
  auto magic = reader.next();
  if (!magic || *magic != "GBG-CERT v1") reader.fail("expected header 'GBG-CERT v1'");
  Instance inst = read_point_block(reader);
  CertificateFile file;
  file.points = std::move(inst.points);
  file.certificate.initial_weights = std::move(inst.weights);
  bool claimed = false;
  while (auto line = reader.next()) {
    if (claimed) reader.fail("content after CLAIM line");
    auto tok = tokens(*line);
    if (!tok.empty() && tok[0] == "CLAIM") {
      if (tok.size() != 3 || !is_integer_token(tok[2])) reader.fail("malformed CLAIM line '" + *line + "'");
      file.certificate.claimed_bound_kind = parse_bound_kind(tok[1]);
      file.certificate.claimed_discrepancy = std::stol(tok[2]);
      claimed = true;
      continue;
    }
    if (tok.size() != 3) reader.fail("malformed switch line '" + *line + "'");
    file.certificate.switches.push_back(
        {parse_integer(reader, tok[0]), parse_integer(reader, tok[1]), parse_integer(reader, tok[2])});
  }
  if (!claimed) reader.fail("missing CLAIM line");
  return file;
}

std::string serialize_certificate(const std::vector<Point>& points, const SwitchCertificate& cert) {
  if (points.size() != cert.initial_weights.size()) throw InputError("length mismatch in certificate");
  std::ostringstream out;
  out << "GBG-CERT v1\n";
  write_point_block(out, points, cert.initial_weights);
  for (const auto& key : cert.switches) out << key.a << ' ' << key.b << ' ' << key.c << '\n';
  out << "CLAIM " << to_string(cert.claimed_bound_kind) << ' ' << cert.claimed_discrepancy << '\n';
  return out.str();
}

}  // namespace gbg
