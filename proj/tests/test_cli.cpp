#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chemotaxis/cli/run_config.hpp"
#include "chemotaxis/error.hpp"
#include "doctest.h"

using namespace chemotaxis;
using namespace chemotaxis::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("chemotaxis_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> row(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell.empty() ? NAN : std::stod(cell));
  return out;
}

const char* kInlineCase1 = R"(
name: eps0_case1
epsilon: 0
n_cells: 200
t_end: 50
alpha1: {kind: exp_decay, c: 0.3, a: 1, k: 200000}
alpha2: {kind: exp_decay, c: 0.3, a: 1, k: 200000}
initial: paper
figure_times: [0.036, 1.2, 8.4, 49.99]
expect:
  - {kind: converges_to, fields: both, u: 0.3, v: 0.1}
)";

}  // namespace

TEST_SUITE("parse_config") {
  TEST_CASE("preset passthrough") {
    const auto rc = parse_config("scenario: eps07_case1\noutput_dir: out/\n");
    CHECK(rc.scenario == paper_preset("eps07_case1"));
    CHECK(rc.preset == std::optional<std::string>("eps07_case1"));
    CHECK(rc.output_dir == fs::path("out/"));
    CHECK(rc.emit_snapshots);
  }

  TEST_CASE("inline definition reproduces a preset") {
    const auto rc = parse_config(kInlineCase1);
    CHECK(rc.scenario == paper_preset("eps0_case1"));
    CHECK_FALSE(rc.preset.has_value());

    // Dotted keys and nested maps are interchangeable.
    std::string dotted = kInlineCase1;
    dotted.replace(dotted.find("alpha2: {"), std::string("alpha2: {kind: exp_decay, c: 0.3, a: 1, k: 200000}").size(),
                   "alpha2.kind: exp_decay\nalpha2.c: 0.3\nalpha2.a: 1\nalpha2.k: 200000");
    CHECK(parse_config(dotted).scenario == paper_preset("eps0_case1"));
  }

  TEST_CASE("errors name the key") {
    const std::string base = "epsilon: 0.7\nt_end: 1\nalpha1: {kind: constant, c: 0.7}\n"
                             "alpha2: {kind: constant, c: 0.7}\nbeta1: {kind: constant, c: 0.3}\n"
                             "beta2: {kind: constant, c: 0.3}\n";
    CHECK_NOTHROW(parse_config(base + "n_cells: 20\n"));
    CHECK_THROWS_WITH_AS(parse_config(base + "n_cells: 3\n"), doctest::Contains("n_cells >= 4"), ConfigError);
    std::string thin = base;
    thin.replace(thin.find("0.7"), 3, "0.01");
    CHECK_THROWS_WITH_AS(parse_config(thin + "n_cells: 20\n"), doctest::Contains("n_cells: mesh constraint"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(base + "n_cells: 20\ncolour: red\n"), doctest::Contains("colour: unknown key"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(base), doctest::Contains("n_cells: missing"), ConfigError);
    std::string bad_signal = base;
    bad_signal.replace(bad_signal.find("{kind: constant, c: 0.7}"), 24, "{kind: rational_decay, c: 0.7, a: 0}");
    CHECK_THROWS_WITH_AS(parse_config(bad_signal + "n_cells: 20\n"), doctest::Contains("alpha1"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(base + "n_cells: abc\n"), doctest::Contains("n_cells: cannot read"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("scenario: eps07_case1\nepsilon: 0.7\n"), doctest::Contains("scenario"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("scenario: nope\n"), doctest::Contains("scenario: unknown"), ConfigError);
    CHECK_THROWS_AS(parse_config("output_dir: x\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "n_cells: 20\nexpect: [{kind: wobble}]\n"), ConfigError);
  }

  TEST_CASE("shipped configs load") {
    const fs::path dir = CHEMOTAXIS_CONFIG_DIR;
    CHECK(load_config(dir / "eps0_case1_inline.yaml").scenario == paper_preset("eps0_case1"));
    const auto custom = load_config(dir / "custom_sinusoid.yaml");
    CHECK(custom.scenario.cfg.boundary.alpha1.kind == BoundarySignal::Kind::sinusoid);
    CHECK(effective_scenario(custom).samples.size() == 100);  // stride instants coincide with the default grid
    CHECK_THROWS_AS(load_config(dir / "missing.yaml"), ConfigError);
  }

  TEST_CASE("sample_every adds uniform instants") {
    const auto rc = parse_config("scenario: eps0_case1\nsamples: [1.0]\nsample_every: 20\n");
    CHECK(effective_scenario(rc).samples == std::vector<double>{1.0, 20.0, 40.0});
  }
}

TEST_SUITE("execute") {
  TEST_CASE("files and counts") {
    const fs::path dir = scratch_dir("counts");
    RunConfig rc = parse_config("scenario: eps07_case1\nsamples: [0.0005, 0.001, 0.004]\n");
    rc.scenario = with_t_end(rc.scenario, 0.004);
    rc.output_dir = dir;
    std::ostringstream log;
    CHECK(execute(rc, log) == kExpectationFailed);

    const auto series = lines(dir / "series.csv");
    REQUIRE(series.size() == 1 + rc.scenario.samples.size() + 1);
    CHECK(series[0].rfind("t,entropy,lyapunov,", 0) == 0);
    CHECK(row(series[1]).size() == 19);
    CHECK(fs::exists(dir / "verdict.txt"));
    CHECK(slurp(dir / "verdict.txt").find("result: FAIL") != std::string::npos);

    for (const double t : rc.scenario.samples) {
      const auto snap = lines(dir / snapshot_name(t));
      REQUIRE(snap.size() == 2 + 201);
      const double step_time = std::stod(snap[0].substr(4));
      const auto first = row(snap[2]);
      const auto last = row(snap.back());
      CHECK(first[1] == eval_signal(rc.scenario.cfg.boundary.alpha1, step_time));
      CHECK(last[1] == eval_signal(rc.scenario.cfg.boundary.alpha2, step_time));
      CHECK(first[2] == eval_signal(rc.scenario.cfg.boundary.beta1, step_time));
      CHECK(last[0] == 1.0);
    }
  }

  TEST_CASE("unmatched alpha leaves entropy cells empty") {
    const fs::path dir = scratch_dir("unmatched");
    RunConfig rc = parse_config("scenario: eps07_case4\nemit_snapshots: false\n");
    rc.scenario = with_t_end(rc.scenario, 0.001);
    rc.output_dir = dir;
    std::ostringstream log;
    execute(rc, log);
    const auto series = lines(dir / "series.csv");
    CHECK(series[1].find(",,,") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / snapshot_name(0.001)));
  }

  TEST_CASE("outputs are byte-identical across runs") {
    const auto once = [](const std::string& name) {
      const fs::path dir = scratch_dir(name);
      RunConfig rc = parse_config("scenario: eps0_case3\nsample_every: 0.01\n");
      rc.scenario = with_n_cells(with_t_end(rc.scenario, 0.05), 50);
      rc.output_dir = dir;
      std::ostringstream log;
      execute(rc, log);
      return dir;
    };
    const fs::path a = once("bytes_a");
    const fs::path b = once("bytes_b");
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      ++files;
      CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    }
    CHECK(files >= 3);
  }

  TEST_CASE("configuration errors exit with 1") {
    // At eps = 0.7 only N <= 3 violates dx < sqrt(eps/10); smaller eps fails on finer meshes.
    RunConfig rc;
    rc.scenario = paper_preset("eps07_case1");
    rc.scenario.cfg.grid = Grid{3, 1.0 / 3.0, 1.0 / 18.0};
    rc.output_dir = scratch_dir("mesh");
    std::ostringstream log;
    CHECK(execute(rc, log) == kAborted);
    CHECK(log.str().find("n_cells >= 4") != std::string::npos);

    rc.scenario.cfg.params.epsilon = 0.01;
    rc.scenario.cfg.grid = Grid{20, 0.05, 0.00125};
    CHECK(execute(rc, log) == kAborted);
    CHECK(log.str().find("mesh constraint") != std::string::npos);
    CHECK_FALSE(fs::exists(rc.output_dir / "series.csv"));
  }

  TEST_CASE("unwritable output exits with 1") {
    const fs::path blocker = scratch_dir("blocker");
    std::ofstream(blocker) << "file";
    RunConfig rc = parse_config("scenario: eps0_case1\n");
    rc.scenario = with_t_end(rc.scenario, 0.001);
    rc.output_dir = blocker / "sub";
    std::ostringstream log;
    CHECK(execute(rc, log) == kAborted);
    CHECK(log.str().find("I/O failure") != std::string::npos);
    fs::remove(blocker);
  }

  TEST_CASE("reference case-1 run passes" * doctest::timeout(300)) {
    const fs::path dir = scratch_dir("case1");
    RunConfig rc = parse_config("scenario: eps07_case1\n");
    rc.output_dir = dir;
    std::ostringstream log;
    CHECK(execute(rc, log) == kSuccess);
    CHECK(fs::exists(dir / snapshot_name(0.168)));
    CHECK(fs::exists(dir / snapshot_name(49.9)));
    CHECK(slurp(dir / "verdict.txt").find("result: PASS") != std::string::npos);
    CHECK(lines(dir / "series.csv").size() == rc.scenario.samples.size() + 2);
  }

  TEST_CASE("number format") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(snapshot_name(0.168) == "snapshot_0.168000.csv");
  }
}
