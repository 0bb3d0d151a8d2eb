#include "gbg/board.hpp"
#include "gbg/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int status = gbg::run_cli(args, in, out, err);
  return {status, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("gbg_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& file) {
  std::ifstream f(file);
  return {std::istreambuf_iterator<char>(f), {}};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("gen, solve and verify chain") {
  TempDir dir;
  const auto inst = dir / "grid.txt";
  const auto cert = dir / "grid.cert";
  auto g = run({"gen", "--kind", "grid", "--rows", "3", "--cols", "3", "--weights", "all_minus", "--out", inst});
  REQUIRE(g.status == 0);
  const auto text = slurp(inst);
  CHECK(text.rfind("# ", 0) == 0);
  CHECK(gbg::parse_instance(text).points.size() == 9);

  auto s = run({"solve", "--in", inst, "--solver", "third", "--out", cert});
  REQUIRE(s.status == 0);
  CHECK(contains(s.out, "n=9"));
  CHECK(contains(s.out, "bound=third"));
  const auto parsed = gbg::parse_certificate(slurp(cert));
  CHECK(parsed.certificate.claimed_discrepancy >= 3);

  auto v = run({"verify", "--in", cert});
  CHECK(v.status == 0);
  CHECK(v.out.rfind("accept final=", 0) == 0);
}

TEST_CASE("solve reads stdin and writes the certificate to stdout") {
  auto s = run({"solve", "--solver", "near-perfect"}, "5\n0 0 -1\n1 0 -1\n2 0 1\n3 0 1\n0 1 -1\n");
  REQUIRE(s.status == 0);
  CHECK(s.out.rfind("GBG-CERT v1", 0) == 0);
  CHECK(contains(s.err, "final="));
  auto v = run({"verify"}, s.out);
  CHECK(v.status == 0);

  auto traced = run({"solve", "--trace", "--solver", "third"}, "4\n0 0 -1\n1 0 -1\n0 1 -1\n1 1 -1\n");
  CHECK(traced.status == 0);
  CHECK(contains(traced.err, "trace "));
}

TEST_CASE("every solver's certificate verifies across generators") {
  for (const char* kind : {"near_pencil", "grid", "random_gp", "cubic", "circle_plus_line", "collinear_plus_k"}) {
    for (const char* solver : {"third", "cubic", "near-perfect", "balance", "auto"}) {
      for (int seed = 0; seed < 3; ++seed) {
        auto g = run({"gen", "--kind", kind, "--n", "14", "--rows", "3", "--cols", "5", "--k", "4", "--seed",
                      std::to_string(seed)});
        REQUIRE(g.status == 0);
        auto s = run({"solve", "--solver", solver}, g.out);
        if (s.status == 2) {
          // only the heavy-line solver may refuse, and only with a precondition message
          CHECK(std::string(solver) == "cubic");
          continue;
        }
        REQUIRE(s.status == 0);
        auto v = run({"verify"}, s.out);
        CHECK(v.status == 0);
      }
    }
  }
}

TEST_CASE("oracle") {
  auto o = run({"oracle"}, "5\n0 0 1\n1 0 1\n2 0 -1\n3 0 1\n0 1 1\n");
  REQUIRE(o.status == 0);
  CHECK(o.out.rfind("F=3\n", 0) == 0);
  CHECK(contains(o.out, "rank=4"));

  auto b = run({"oracle", "--board"}, "4\n0 0 1\n1 0 -1\n2 0 1\n0 1 1\n");
  CHECK(contains(b.out, "F=4"));
  CHECK(contains(b.out, "F_board=4 covering_radius=0"));

  TempDir dir;
  auto w = run({"oracle", "--witness", dir / "w.cert"}, "3\n0 0 -1\n1 0 -1\n0 1 1\n");
  CHECK(w.status == 0);
  CHECK(run({"verify", "--in", dir / "w.cert"}).status == 0);

  auto big = run({"gen", "--kind", "grid", "--rows", "5", "--cols", "6"});
  auto capped = run({"oracle"}, big.out);
  CHECK(capped.status == 3);
  CHECK(run({"oracle", "--cap", "10"}, "12\n0 0 1\n1 0 1\n2 0 1\n3 0 1\n4 0 1\n5 0 1\n6 0 1\n7 0 1\n8 0 1\n9 0 1\n10 0 1\n0 1 1\n")
            .status == 3);
}

TEST_CASE("tampered certificates are rejected") {
  auto g = run({"gen", "--kind", "near_pencil", "--n", "7", "--weights", "all_minus"});
  auto s = run({"solve", "--solver", "third"}, g.out);
  REQUIRE(s.status == 0);
  auto parsed = gbg::parse_certificate(s.out);
  parsed.certificate.claimed_discrepancy += 2;
  auto v = run({"verify"}, gbg::serialize_certificate(parsed.points, parsed.certificate));
  CHECK(v.status == 1);
  CHECK(v.out.rfind("reject final=", 0) == 0);
  CHECK(contains(v.out, "claim not met"));

  auto tight = run({"verify", "--budget", "0"}, s.out);
  if (!parsed.certificate.switches.empty()) CHECK(tight.status == 1);
}

TEST_CASE("bad input and usage errors") {
  CHECK(run({"solve"}, "3\n0 0 1\n0 0 1\n1 1 1\n").status == 2);
  CHECK(run({"solve"}, "not a board").status == 2);
  CHECK(run({"solve", "--in", "/nonexistent/file.txt"}).status == 2);
  CHECK(run({"solve", "--solver", "greedy"}, "3\n0 0 1\n1 0 1\n0 1 1\n").status == 2);
  CHECK(run({"solve"}, "3\n0 0 1\n1 0 1\n2 0 1\n").status == 2);
  CHECK(run({"verify"}, "GBG-CERT v9\n").status == 2);
  CHECK(run({"gen", "--kind", "hexagon"}).status == 2);
  CHECK(run({"gen", "--spec", "kind=random_gp n=10 box=2"}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({}).status == 2);
  auto cap = run({"gen", "--kind", "grid", "--rows", "5", "--cols", "5", "--weights", "worst_case_search", "--cap", "20"});
  CHECK(cap.status == 3);
}

TEST_CASE("profile") {
  auto p = run({"profile"}, run({"gen", "--kind", "grid", "--rows", "3", "--cols", "3"}).out);
  REQUIRE(p.status == 0);
  CHECK(contains(p.out, "n=9 lines=20"));
  CHECK(contains(p.out, "2\t12\n"));
  CHECK(contains(p.out, "3\t8\n"));
  // the centre lies only on 3-point lines, so it is isolated
  CHECK(contains(p.out, "ordinary_edges=12 components=2 largest=8"));
  CHECK(contains(p.out, "erdos_purdy hypothesis="));
  CHECK(contains(p.out, "hirzebruch hypothesis="));

  auto line = run({"profile"}, "3\n0 0 1\n1 0 1\n2 0 1\n");
  CHECK(contains(line.out, "satisfied=n/a"));
}

TEST_CASE("bench") {
  auto b = run({"bench", "--kind", "grid", "--kind", "random_gp", "--n", "9", "--solver", "third", "--reps", "2"});
  REQUIRE(b.status == 0);
  std::istringstream lines(b.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "kind\tn\tseed\tsolver\tfinal\tswitches\tbound\tverified\tmicros");
  int rows = 0;
  for (std::string row; std::getline(lines, row);) {
    ++rows;
    CHECK(contains(row, "\tyes\t"));
  }
  CHECK(rows == 4);
}
