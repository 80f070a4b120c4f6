#include "symred/cli.hpp"
#include "symred/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

using namespace symred;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("symred_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("run on a CNF") {
  TempDir dir;
  const auto cnf = dir / "sample_cnf.cnf";
  write_file(cnf, "p cnf 6 3\n1 2 0\n1 -3 -5 0\n2 -4 -6 0\n");

  auto r = run({cnf, "--prefix-vars", "1,2"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 3);
  CHECK(r.out.rfind("a -1 -2 0\n", 0) == 0);
  CHECK(r.out.find("a 1 2 0\n") != std::string::npos);

  write_file(dir / "p", "3 4 5 6\n");
  auto c = run({cnf, "--prefix", dir / "p", "--output", "count"});
  auto o = run({"oracle", cnf, "--prefix", dir / "p"});
  CHECK(o.code == 0);
  CHECK(o.out.find("orbits " + c.out) == 0);
  CHECK(o.out.find("exact_cover ok") != std::string::npos);

  auto hier = run({cnf, "--prefix", dir / "p", "--workers", "3", "--stack", "hier", "--hier-threshold", "2"});
  CHECK(hier.code == 0);
  CHECK(hier.out == run({cnf, "--prefix", dir / "p"}).out);

  auto ph = run({cnf, "--prefix-vars", "1,2", "--value-mode", "phase", "--output", "count"});
  auto pho = run({"oracle", cnf, "--prefix-vars", "1,2", "--value-mode", "phase"});
  CHECK(pho.out.find("orbits " + ph.out) == 0);

  auto d0 = run({cnf, "--depth", "0"});
  CHECK(d0.out == "a 0\n");

  auto icnf = run({cnf, "--prefix-vars", "1,2", "--output", "icnf"});
  CHECK(icnf.out.rfind("p inccnf\n", 0) == 0);
  CHECK(lines(icnf.out) == 1 + 3 + 3);

  auto sbp = run({cnf, "--prefix-vars", "1,2", "--output", "sbp"});
  CHECK(sbp.out.rfind("p cnf 9 10\n", 0) == 0);

  auto st = run({cnf, "--prefix-vars", "1,2", "--stats", "--stats-file", dir / "stats"});
  CHECK(st.err == "1\t2\n2\t3\n");
  CHECK(read_file(dir / "stats") == st.err);
}

TEST_CASE("generators and auxiliary graphs") {
  TempDir dir;
  auto g = run({"gen", "a000088", "--n", "4", "--out", dir / "a4"});
  CHECK(g.code == 0);
  CHECK(g.out == dir / "a4.cnf\n" + dir / "a4.graph\n" + dir / "a4.prefix\n");
  auto c = run({dir / "a4.cnf", "--graph", dir / "a4.graph", "--prefix", dir / "a4.prefix", "--output", "count"});
  CHECK(c.code == 0);
  CHECK(c.out == "11\n");
  auto w = run({dir / "a4.cnf", "--graph", dir / "a4.graph", "--output", "count", "--workers", "4"});
  CHECK(w.out == "11\n");

  CHECK(run({"gen", "ramsey", "--n", "6", "--k", "3", "--out", dir / "r"}).code == 0);
  CHECK(parse_dimacs(read_file(dir / "r.cnf")).clauses.size() == 40);
  CHECK_FALSE(fs::exists(dir / "r.graph"));
  CHECK(run({"gen", "ccp", "--n", "4", "--s", "3", "--t", "2", "--out", dir / "c"}).code == 0);
  CHECK(run({"gen", "tensor", "--m", "2", "--r", "2", "--ones", "3", "--out", dir / "t"}).code == 0);
  auto t = run({dir / "t.cnf", "--graph", dir / "t.graph", "--prefix", dir / "t.prefix", "--output", "count"});
  CHECK(t.code == 0);

  CHECK(run({"oracle", "--burnside", "5"}).out == "34\n");
}

TEST_CASE("errors") {
  TempDir dir;
  const auto cnf = dir / "f.cnf";
  write_file(cnf, "p cnf 2 1\n1 2 0\n");
  CHECK(run({dir / "missing.cnf"}).code == exit_input_error);
  CHECK(run({cnf, "--bogus"}).code == exit_input_error);
  CHECK(run({cnf, "--hier-threshold", "2"}).code == exit_input_error);
  CHECK(run({cnf, "--depth", "3"}).code == exit_input_error);
  CHECK(run({cnf, "--prefix-vars", "3"}).code == exit_input_error);
  CHECK(run({cnf, "--workers", "0"}).code == exit_input_error);
  CHECK(run({cnf, "--output", "xml"}).code == exit_input_error);
  CHECK(run({}).code == exit_input_error);
  write_file(dir / "bad.cnf", "p cnf 2 1\n1 3 0\n");
  auto bad = run({dir / "bad.cnf"});
  CHECK(bad.code == exit_input_error);
  CHECK(bad.err.find("line 2") != std::string::npos);
  write_file(dir / "g", "p edge 3 0\nv 3\n");
  CHECK(run({cnf, "--graph", dir / "g"}).code == exit_input_error);
  CHECK(run({"--help"}).code == exit_ok);
}
