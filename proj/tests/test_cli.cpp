#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(BIHARM_BIN) + " " + args + " 2>&1";
  std::array<char, 512> buf;
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double csv_field(const std::string& csv, int row, int col) {
  std::istringstream ss(csv);
  std::string line;
  for (int i = 0; i <= row; ++i) REQUIRE(std::getline(ss, line));
  std::istringstream ls(line);
  std::string cell;
  for (int j = 0; j <= col; ++j) REQUIRE(std::getline(ls, cell, ','));
  return std::stod(cell);
}

const fs::path tmp = fs::temp_directory_path();

}  // namespace

TEST_CASE("solve reproduces the first table row") {
  const fs::path csv = tmp / "wg_cli_solve.csv";
  const RunResult r = run("solve --case case1 --n 4 --k 2 --flavor algorithm2 --csv " +
                          csv.string());
  CHECK(r.exit_code == 0);
  const std::string body = slurp(csv);
  CHECK(csv_field(body, 1, 1) == doctest::Approx(2.5683e-01).epsilon(0.02));
  CHECK(csv_field(body, 1, 2) == doctest::Approx(3.3304e-02).epsilon(0.02));
  fs::remove(csv);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("solve --case case1 --n 4 --k 5").exit_code == 2);  // above the degree cap
  CHECK(run("solve --no-such-flag").exit_code == 2);
  CHECK(run("convergence --case case1").exit_code == 2);  // no levels
  CHECK(run("").exit_code == 2);                          // subcommand required
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("quiet mode suppresses tables but keeps files") {
  const fs::path csv = tmp / "wg_cli_quiet.csv";
  const RunResult r =
      run("convergence --case case1 --n 2,4 --quiet --csv " + csv.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  CHECK(fs::exists(csv));
  fs::remove(csv);
}

TEST_CASE("csv output is deterministic for a fixed seed") {
  const fs::path c1 = tmp / "wg_cli_det1.csv";
  const fs::path c2 = tmp / "wg_cli_det2.csv";
  const std::string args = "convergence --case case1 --voronoi 32 --seed 11 --quiet --csv ";
  CHECK(run(args + c1.string()).exit_code == 0);
  CHECK(run(args + c2.string()).exit_code == 0);
  CHECK(slurp(c1) == slurp(c2));
  CHECK(!slurp(c1).empty());
  fs::remove(c1);
  fs::remove(c2);
}

TEST_CASE("mesh-check reports kappa and honors the floor") {
  const RunResult r = run("mesh-check --uniform 8");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("7.0711e-01") != std::string::npos);  // kappa = 1/sqrt(2)

  // sliver cell: thin triangle drives rho_v below the floor
  const fs::path bad = tmp / "wg_cli_sliver.poly";
  {
    std::ofstream out(bad);
    out << "polymesh 2 4 2\n0 0\n1 0\n1 1e-6\n0 1e-6\n3 0 1 2\n3 0 2 3\n";
  }
  CHECK(run("mesh-check --mesh " + bad.string() + " --floor 1e-3").exit_code == 1);
  CHECK(run("mesh-check --mesh " + bad.string()).exit_code == 0);  // floor defaults to 0
  fs::remove(bad);
}

TEST_CASE("mesh save/load through the cli round trips") {
  const fs::path saved = tmp / "wg_cli_saved.poly";
  CHECK(run("mesh-check --voronoi 16 --seed 3 --save " + saved.string()).exit_code == 0);
  const RunResult r = run("solve --case case1 --mesh " + saved.string() + " --quiet");
  CHECK(r.exit_code == 0);
  fs::remove(saved);
}

TEST_CASE("ineq-check constants are level-independent on uniform meshes") {
  const RunResult r = run("ineq-check --trace --uniform 2,4,8 --samples 60 --seed 4");
  CHECK(r.exit_code == 0);
  std::istringstream ss(r.output);
  std::string line;
  double first = 0.0;
  int count = 0;
  while (std::getline(ss, line)) {
    const auto pos = line.find("constant = ");
    if (pos == std::string::npos) continue;
    const double v = std::stod(line.substr(pos + 11));
    if (count == 0)
      first = v;
    else
      CHECK(v == doctest::Approx(first).epsilon(1e-9));
    ++count;
  }
  CHECK(count == 3);
}

TEST_CASE("config file mirrors the flags") {
  const fs::path cfg = tmp / "wg_cli_conf.ini";
  const fs::path csv = tmp / "wg_cli_conf.csv";
  {
    std::ofstream out(cfg);
    out << "[solve]\n";
    out << "case = case1\n";
    out << "n = 4\n";
    out << "k = 2\n";
    out << "flavor = algorithm2\n";
    out << "quiet = true\n";
    out << "csv = " << csv.string() << "\n";
  }
  const RunResult r = run("--config " + cfg.string() + " solve");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(csv));
  CHECK(csv_field(slurp(csv), 1, 1) == doctest::Approx(2.5683e-01).epsilon(0.02));
  fs::remove(cfg);
  fs::remove(csv);
}

TEST_CASE("field export writes a raster csv") {
  const fs::path field = tmp / "wg_cli_field.csv";
  const RunResult r =
      run("solve --case case2 --n 4 --quiet --field " + field.string());
  CHECK(r.exit_code == 0);
  const std::string body = slurp(field);
  CHECK(body.rfind("x,y,u", 0) == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') > 100);
  fs::remove(field);
}

TEST_CASE("solver selection via flags") {
  const RunResult r = run("solve --case case1 --n 4 --solver cg --tol 1e-11 --quiet");
  CHECK(r.exit_code == 0);
  const RunResult bad = run("solve --case case1 --n 4 --solver lu");
  CHECK(bad.exit_code == 2);
}
