#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

// TOOL_PATH is injected by the build so the suite drives the real binary.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_tool(const std::string& args, const std::string& tag) {
  const std::string out_path = "cli_" + tag + ".out";
  const std::string cmd = std::string(TOOL_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = raw == -1 ? -1 : WEXITSTATUS(raw);
  res.out = slurp(out_path);
  std::remove(out_path.c_str());
  return res;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("count reports the closed-form layer sizes") {
  const RunResult r =
      run_tool("count --flavor wh --R 1 --delta 1 --L 4 --depth 3 --method closed", "count");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"xi\": [1, 8, 16, 32]"));
  CHECK(contains(r.out, "\"version\": \"1.0.0\""));
  CHECK(contains(r.out, "\"params\": {"));
}

TEST_CASE("count methods agree end to end") {
  const RunResult closed =
      run_tool("count --flavor wav --r 1.4142135623730951 --L 4 --depth 3 --method closed", "c1");
  const RunResult rule =
      run_tool("count --flavor wav --r 1.4142135623730951 --L 4 --depth 3 --method rule", "c2");
  CHECK(closed.exit_code == 0);
  CHECK(rule.exit_code == 0);
  CHECK(contains(closed.out, "\"xi\": [1, 10, 50, 250]"));
  CHECK(contains(rule.out, "\"xi\": [1, 10, 50, 250]"));
}

TEST_CASE("classify names the narrow-filter regime") {
  const RunResult r = run_tool("classify --flavor wh --R 0.3 --delta 1 --L 5", "classify");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"topology_class\": \"single-layer\""));
}

TEST_CASE("bank and run round trip through the saved file") {
  const RunResult bank = run_tool(
      "bank --flavor wh --R 1 --delta 1 --samples 1024 --period 16 --out cli_bank.json", "bank");
  CHECK(bank.exit_code == 0);
  CHECK(contains(bank.out, "\"frame_deviation\""));

  const RunResult run = run_tool(
      "run --bank cli_bank.json --gen gaussian --sigma 0.05 --depth 2 --energy-csv cli_wn.csv",
      "run");
  CHECK(run.exit_code == 0);
  CHECK(contains(run.out, "\"W\": ["));
  CHECK(contains(run.out, "\"capture\""));
  const std::string csv = slurp("cli_wn.csv");
  CHECK(contains(csv, "n,W_n,Phi_n,cumulative_capture"));
  std::remove("cli_bank.json");
  std::remove("cli_wn.csv");
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::string args = "run --bank cli_det.json --gen noise --bandwidth 6 --seed 11 --depth 2";
  const RunResult bank = run_tool(
      "bank --flavor wav --r 2 --samples 1024 --period 16 --out cli_det.json", "det0");
  REQUIRE(bank.exit_code == 0);
  const RunResult a = run_tool(args, "det1");
  const RunResult b = run_tool(args, "det2");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  std::remove("cli_det.json");
}

TEST_CASE("config file fills defaults but loses to explicit flags") {
  {
    std::ofstream cfg("cli_cfg.ini");
    cfg << "# defaults for a counting sweep\n"
        << "flavor=wh\n"
        << "R=1\n"
        << "delta=1\n"
        << "L=4\n"
        << "depth=3\n"
        << "method=closed\n";
  }
  const RunResult from_cfg = run_tool("count --config cli_cfg.ini", "cfg1");
  CHECK(from_cfg.exit_code == 0);
  CHECK(contains(from_cfg.out, "\"xi\": [1, 8, 16, 32]"));
  const RunResult overridden = run_tool("count --config cli_cfg.ini --L 10", "cfg2");
  CHECK(overridden.exit_code == 0);
  CHECK(contains(overridden.out, "\"L\": 10"));
  CHECK(contains(overridden.out, "\"xi\": [1, 20, 40, 80]"));
  std::remove("cli_cfg.ini");
}

TEST_CASE("violated preconditions exit with one") {
  const RunResult bad_flavor = run_tool("count --flavor nope --L 4", "e1");
  CHECK(bad_flavor.exit_code == 1);
  CHECK(contains(bad_flavor.out, "\"error\""));
  const RunResult bad_params = run_tool(
      "bank --flavor wh --R 1 --delta 0.1 --samples 256 --period 8 --out cli_bad.json", "e2");
  CHECK(bad_params.exit_code == 1);
  CHECK(contains(bad_params.out, "\"error\""));
  const RunResult bad_method = run_tool("count --L 4 --method sideways", "e3");
  CHECK(bad_method.exit_code == 1);
}

TEST_CASE("io failures exit with two") {
  const RunResult missing = run_tool("run --bank cli_no_such_bank.json", "io1");
  CHECK(missing.exit_code == 2);
  CHECK(contains(missing.out, "\"error\""));
  const RunResult unwritable = run_tool(
      "bank --flavor wh --R 1 --delta 1 --samples 256 --period 8 --out /no/such/dir/b.json",
      "io2");
  CHECK(unwritable.exit_code == 2);
}

TEST_CASE("figure data contains the reference decay rows") {
  const RunResult r = run_tool("figure --which fig_decay --out cli_fig.csv", "fig");
  CHECK(r.exit_code == 0);
  const std::string csv = slurp("cli_fig.csv");
  CHECK(contains(csv, "R,a1,r,a2"));
  CHECK(contains(csv, "1,1.5,2,1.6666666666666667"));  // a1(delta) and a2(2)
  std::remove("cli_fig.csv");
}

TEST_CASE("width-minimization reports the constant-width optimum") {
  const RunResult r =
      run_tool("minimize-theta --N 3 --delta 1 --L 10 --curve-csv cli_theta.csv", "theta");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"topology_class\": \"constant-width\""));
  const std::string csv = slurp("cli_theta.csv");
  CHECK(contains(csv, "R,Theta,topology_class"));
  CHECK(contains(csv, "constant-width"));
  std::remove("cli_theta.csv");
}

TEST_CASE("design validates a dilation bank from a generator") {
  const RunResult r = run_tool(
      "design --flavor wav --epsilon 0.1 --depth 3 --s 1 --gen gaussian --sigma 0.15 "
      "--samples 1024 --period 64",
      "design");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"r_max\""));
  CHECK(contains(r.out, "\"pass\": true"));
}

TEST_CASE("demodulation report carries carrier and support") {
  const RunResult r = run_tool(
      "demod --flavor wh --R 1 --delta 1 --samples 1024 --period 16 --gen noise --bandwidth 6 "
      "--seed 7 --lambda 3 --nonlinearity squared",
      "demod");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"carrier\": 4"));
  CHECK(contains(r.out, "\"esupp\""));
}

}  // TEST_SUITE
