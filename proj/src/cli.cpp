#include "gbg/cli.hpp"

#include "gbg/errors.hpp"
#include "gbg/instances.hpp"
#include "gbg/oracle.hpp"
#include "gbg/service.hpp"
#include "gbg/solvers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace gbg {
namespace {

struct Options {
  std::string in = "-";
  std::string out;
  std::string solver = "auto";
  std::uint64_t seed = 0;
  std::string kind = "near_pencil";
  std::size_t n = 5;
  std::size_t rows = 3;
  std::size_t cols = 3;
  std::size_t k = 1;
  std::size_t box = 0;
  std::string weights = "random";
  std::string spec;
  std::size_t cap = 24;
  int port = 8080;
  std::string host = "127.0.0.1";
  double epsilon = 0.0;
  bool board = false;
  bool trace = false;
  std::string witness;
  std::size_t budget = default_switch_budget_factor;
  std::vector<std::string> kinds;
  std::vector<std::size_t> sizes;
  std::vector<std::string> solvers;
  std::size_t reps = 3;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw InputError("cannot read '" + path + "'");
    buf << file.rdbuf();
  }
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

GeneratorSpec spec_from(const Options& o) {
  if (!o.spec.empty()) return parse_generator_spec(o.spec);
  GeneratorSpec s;
  s.kind = parse_generator_kind(o.kind);
  s.n = o.n;
  s.rows = o.rows;
  s.cols = o.cols;
  s.k = o.k;
  s.box = o.box;
  s.seed = o.seed;
  s.weights = parse_weight_mode(o.weights);
  s.cap = o.cap;
  return s;
}

NearPerfectParams params_from(const Options& o) {
  return o.epsilon > 0.0 ? NearPerfectParams::for_epsilon(o.epsilon) : NearPerfectParams{};
}

int cmd_gen(const Options& o, std::ostream& out) {
  const auto inst = generate(spec_from(o));
  write_output(o.out, "# " + to_string(spec_from(o)) + "\n" + serialize_instance(inst), out);
  return 0;
}

int cmd_solve(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto inst = parse_instance(read_input(o.in, in));
  const auto board = new_board(inst.points, inst.weights);
  const auto outcome = run_solver(parse_solver(o.solver), board, params_from(o));
  const auto check = verify_certificate(board.incidence_ptr(), outcome.certificate, {o.budget});
  if (!check.accepted) {
    throw InvariantError("solver emitted a certificate that does not verify: " + check.failures.front().message);
  }
  if (o.trace) {
    for (const auto& step : outcome.trace) {
      err << "trace " << step.rule << ":";
      for (auto p : step.points) err << ' ' << p;
      err << '\n';
    }
    if (outcome.peel) {
      err << "peel components=" << outcome.peel->peeled_components
          << " exhausted=" << (outcome.peel->exhausted ? "yes" : "no") << '\n';
    }
  }
  std::ostringstream summary;
  summary << "n=" << inst.points.size() << " final=" << outcome.final_discrepancy
          << " switches=" << outcome.certificate.switches.size()
          << " bound=" << to_string(outcome.certificate.claimed_bound_kind) << '\n';
  const auto cert = serialize_certificate(inst.points, outcome.certificate);
  if (o.out.empty() || o.out == "-") {
    out << cert;
    err << summary.str();
  } else {
    write_output(o.out, cert, out);
    out << summary.str();
  }
  return 0;
}

int cmd_oracle(const Options& o, std::istream& in, std::ostream& out) {
  const auto inst = parse_instance(read_input(o.in, in));
  if (inst.points.size() > o.cap) {
    throw CapExceededError("oracle: n=" + std::to_string(inst.points.size()) + " exceeds cap " + std::to_string(o.cap));
  }
  const auto is = connecting_lines(inst.points);
  const auto code = switch_code(is);
  const auto result = exact_F(code, inst.weights, {o.cap});
  out << "F=" << result.value << '\n';
  out << "rank=" << code.rank() << " leader=" << result.leader_weight << '\n';
  if (o.board) {
    const auto board = exact_F_board(code, {o.cap});
    out << "F_board=" << board.value << " covering_radius=" << board.covering_radius << '\n';
  }
  if (!o.witness.empty()) {
    SwitchCertificate cert;
    cert.initial_weights = inst.weights;
    for (auto i : result.witness) cert.switches.push_back(is.line(i).key);
    cert.claimed_discrepancy = result.value;
    cert.claimed_bound_kind = meets_bound(BoundKind::n_minus_2, result.value, inst.points.size()) ? BoundKind::n_minus_2
                                                                                                    : BoundKind::third;
    write_output(o.witness, serialize_certificate(inst.points, cert), out);
  }
  return 0;
}

std::string check_name(VerificationFailure::Check c) {
  switch (c) {
    case VerificationFailure::Check::malformed: return "malformed";
    case VerificationFailure::Check::unknown_line: return "unknown_line";
    case VerificationFailure::Check::claim_not_met: return "claim_not_met";
    case VerificationFailure::Check::bound_not_met: return "bound_not_met";
    case VerificationFailure::Check::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  const auto file = parse_certificate(read_input(o.in, in));
  const auto result = verify_certificate(file.points, file.certificate, {o.budget});
  if (result.accepted) {
    out << "accept final=" << result.final_discrepancy << " switches=" << file.certificate.switches.size() << '\n';
    return 0;
  }
  out << "reject final=" << result.final_discrepancy << '\n';
  for (const auto& f : result.failures) {
    out << "  " << check_name(f.check);
    if (f.index) out << " at " << *f.index;
    out << ": " << f.message << '\n';
  }
  return static_cast<int>(ExitCode::rejected);
}

int cmd_profile(const Options& o, std::istream& in, std::ostream& out) {
  const auto inst = parse_instance(read_input(o.in, in));
  const auto is = connecting_lines(inst.points);
  const auto profile = incidence_profile(is);
  out << "n=" << profile.n << " lines=" << is.lines().size() << '\n';
  out << "k\tt_k\n";
  for (const auto& [k, t] : profile.t) out << k << '\t' << t << '\n';
  const auto graph = ordinary_line_graph(is);
  const auto& largest = graph.largest_component();
  out << "ordinary_edges=" << graph.edges.size() << " components=" << graph.components.size()
      << " largest=" << largest.vertices.size() << '\n';
  const auto report = check_incidence_inequalities(profile);
  auto line = [&](const char* name, const InequalityCheck& c) {
    out << name << " hypothesis=" << (c.hypothesis ? "yes" : "no") << " satisfied=" << (!c.hypothesis ? "n/a" : c.satisfied ? "yes" : "no")
        << " " << c.detail << '\n';
  };
  line("erdos_purdy", report.erdos_purdy);
  line("hirzebruch", report.hirzebruch);
  if (report.geometry_bug()) throw InvariantError("incidence inequality violated; the geometry core is inconsistent");
  return 0;
}

int cmd_bench(const Options& o, std::ostream& out) {
  std::vector<std::string> kinds = o.kinds;
  if (kinds.empty()) kinds = {"near_pencil", "grid", "random_gp", "cubic", "circle_plus_line", "collinear_plus_k"};
  std::vector<std::size_t> sizes = o.sizes;
  if (sizes.empty()) sizes = {10, 20, 40};
  std::vector<std::string> solver_names = o.solvers;
  if (solver_names.empty()) solver_names = {"third", "near-perfect", "balance"};

  struct Job {
    GeneratorSpec spec;
    SolverKind solver;
  };
  std::vector<Job> jobs;
  for (const auto& kind : kinds) {
    for (auto n : sizes) {
      for (std::size_t r = 0; r < o.reps; ++r) {
        GeneratorSpec s;
        s.kind = parse_generator_kind(kind);
        s.n = n;
        s.rows = s.cols = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::sqrt(double(n)))));
        s.k = std::max<std::size_t>(1, n / 4);
        s.seed = o.seed + r;
        s.weights = WeightMode::random;
        for (const auto& name : solver_names) jobs.push_back({s, parse_solver(name)});
      }
    }
  }

  std::vector<std::string> rows(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& job = jobs[j];
    std::ostringstream row;
    std::size_t n = 0;
    std::string result;
    try {
      const auto inst = generate(job.spec);
      n = inst.points.size();
      const auto board = new_board(inst.points, inst.weights);
      const auto start = std::chrono::steady_clock::now();
      const auto outcome = run_solver(job.solver, board);
      const auto micros =
          std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
      const bool ok = verify_certificate(board.incidence_ptr(), outcome.certificate).accepted;
      std::ostringstream r;
      r << outcome.final_discrepancy << '\t' << outcome.certificate.switches.size() << '\t'
        << to_string(outcome.certificate.claimed_bound_kind) << '\t' << (ok ? "yes" : "no") << '\t' << micros;
      result = r.str();
    } catch (const PreconditionError&) {
      result = "-\t-\tprecondition\t-\t-";
    } catch (const InputError&) {
      result = "-\t-\tinfeasible\t-\t-";
    } catch (const std::exception&) {
      result = "-\t-\terror\t-\t-";
    }
    row << to_string(job.spec.kind) << '\t' << n << '\t' << job.spec.seed << '\t' << to_string(job.solver) << '\t'
        << result << '\n';
    rows[j] = row.str();
  }
  out << "kind\tn\tseed\tsolver\tfinal\tswitches\tbound\tverified\tmicros\n";
  for (const auto& r : rows) out << r;
  return 0;
}

int cmd_serve(const Options& o, std::ostream& out) {
  out << "listening on http://" << o.host << ':' << o.port << '\n' << std::flush;
  ServiceOptions options;
  options.oracle_cap = o.cap;
  serve(o.host, o.port, options);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solvers for the geometric switching game", "gbg"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_in = [&](CLI::App* c) { c->add_option("--in", o.in, "input file, '-' for stdin"); };
  auto add_generator = [&](CLI::App* c) {
    c->add_option("--kind", o.kind, "near_pencil, grid, random_gp, cubic, circle_plus_line, collinear_plus_k");
    c->add_option("--n", o.n, "number of points");
    c->add_option("--rows", o.rows, "grid rows");
    c->add_option("--cols", o.cols, "grid columns");
    c->add_option("--k", o.k, "collinear_plus_k: points off the line");
    c->add_option("--box", o.box, "coordinate range for random kinds");
    c->add_option("--weights", o.weights, "all_minus, all_plus, random, worst_case_search");
    c->add_option("--spec", o.spec, "single key=value generator string; overrides the other generator flags");
  };

  auto* gen = app.add_subcommand("gen", "generate an instance");
  add_generator(gen);
  gen->add_option("--seed", o.seed, "random seed")->capture_default_str();
  gen->add_option("--cap", o.cap, "oracle cap for worst_case_search");
  gen->add_option("--out", o.out, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "run a solver and emit a certificate");
  add_in(solve);
  solve->add_option("--out", o.out, "certificate file (default stdout, summary then goes to stderr)");
  solve->add_option("--solver", o.solver, "third, gp, cubic, near-perfect, balance, auto");
  solve->add_option("--epsilon", o.epsilon, "near-perfect slack; sets K = ceil(2 / epsilon)");
  solve->add_option("--budget", o.budget, "switch budget factor C in C*n");
  solve->add_option("--seed", o.seed, "unused by deterministic solvers; accepted for uniformity");
  solve->add_flag("--trace", o.trace, "print solver trace to stderr");

  auto* oracle = app.add_subcommand("oracle", "exact optimum via the switch code");
  add_in(oracle);
  oracle->add_option("--cap", o.cap, "largest n and enumeration exponent");
  oracle->add_flag("--board", o.board, "also compute F over all initial weights");
  oracle->add_option("--witness", o.witness, "write an optimal certificate to this file");

  auto* verify = app.add_subcommand("verify", "replay a certificate");
  add_in(verify);
  verify->add_option("--budget", o.budget, "switch budget factor C in C*n");

  auto* profile = app.add_subcommand("profile", "incidence profile and inequality report");
  add_in(profile);

  auto* bench = app.add_subcommand("bench", "time solvers over a generator sweep");
  bench->add_option("--kind", o.kinds, "generator kinds (repeatable)");
  bench->add_option("--n", o.sizes, "sizes (repeatable)");
  bench->add_option("--solver", o.solvers, "solvers (repeatable)");
  bench->add_option("--reps", o.reps, "seeds per (kind, n)");
  bench->add_option("--seed", o.seed, "first seed");

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP service");
  serve_cmd->add_option("--port", o.port, "TCP port");
  serve_cmd->add_option("--host", o.host, "bind address");
  serve_cmd->add_option("--cap", o.cap, "oracle cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::bad_input);
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (solve->parsed()) return cmd_solve(o, in, out, err);
    if (oracle->parsed()) return cmd_oracle(o, in, out);
    if (verify->parsed()) return cmd_verify(o, in, out);
    if (profile->parsed()) return cmd_profile(o, in, out);
    if (bench->parsed()) return cmd_bench(o, out);
    if (serve_cmd->parsed()) return cmd_serve(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::internal);
  }
  return static_cast<int>(ExitCode::bad_input);
}

}  // namespace gbg
