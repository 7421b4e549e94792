#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinbath/config.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/experiment.hpp"
#include "spinbath/markov.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace spinbath;
namespace fs = std::filesystem;

namespace {

const char* kTimeseries = R"(model:
  eps1: 2.0
  eps2: 1.1
  K: 1.0
  T1: 0.2
  T2: 0.5
dynamics:
  mode: markov
run:
  type: timeseries
  t_max: 100
  n_points: 11
)";

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "cfg.yaml");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string csv(const Trajectory& tr) {
    std::ostringstream os;
    write_timeseries_csv(os, tr);
    return os.str();
}

std::string sweep_csv(const std::vector<SweepPoint>& pts) {
    std::ostringstream os;
    write_sweep_csv(os, pts);
    return os.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "spinbath_test_experiment";
    fs::create_directories(dir);
    return dir / name;
}

int cli(const std::string& args) {
    const std::string cmd = std::string(SPINBATH_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("a complete time-series config parses") {
    const ExperimentConfig cfg = parse_config(kTimeseries);
    CHECK(cfg.model.eps2 == 1.1);
    CHECK(cfg.model.gamma1 == 1e-3);  // default
    CHECK(cfg.mode == Mode::markov);
    CHECK_FALSE(cfg.is_sweep());
    CHECK(cfg.initial.p2 == 1.0);  // |10> unless given
    const auto grid = std::get<TimeSeries>(cfg.run).grid();
    REQUIRE(grid.size() == 11);
    CHECK(grid.front() == 0.0);
    CHECK(grid[3] == doctest::Approx(30.0));
    CHECK(grid.back() == 100.0);
}

TEST_CASE("empty config lists the required fields") {
    const std::string msg = error_of("");
    CHECK(contains(msg, "model."));
    CHECK(contains(msg, "eps1"));
    CHECK(contains(msg, "run.type"));
}

TEST_CASE("diagnostics carry source, line and field") {
    std::string text = kTimeseries;
    text += "colour: blue\n";
    std::string msg = error_of(text);
    CHECK(contains(msg, "cfg.yaml:13: colour: unknown key"));

    msg = error_of("model: {eps1: 2, eps2: 1.1, K: one, T1: 0.2, T2: 0.5}\nrun: {type: timeseries, t_max: 1, n_points: 2}\n");
    CHECK(contains(msg, "model.K: cannot parse value 'one'"));

    // every problem is reported, not just the first
    msg = error_of("model:\n  eps1: 2\nrun:\n  type: timeseries\n  n_points: 3\n");
    CHECK(contains(msg, "model.eps2: required field missing"));
    CHECK(contains(msg, "model.K: required field missing"));
    CHECK(contains(msg, "run.t_max: required field missing"));

    msg = error_of("model: [1, 2]\nrun: {type: sideways}\n");
    CHECK(contains(msg, "model: must be a mapping"));
    CHECK(contains(msg, "run.type: must be 'timeseries' or 'sweep'"));
}

TEST_CASE("cross-field validation") {
    std::string text = kTimeseries;
    text.replace(text.find("mode: markov"), 12, "mode: postmarkov");
    CHECK(contains(error_of(text), "dynamics.gamma0: required for postmarkov"));

    text = kTimeseries;
    text.replace(text.find("mode: markov"), 12, "mode: quantum");
    CHECK(contains(error_of(text), "unknown mode 'quantum'"));

    text = kTimeseries;
    text += "  grid: log\n";
    CHECK(contains(error_of(text), "run.t_min: required field missing"));

    text = kTimeseries;
    text.replace(text.find("T1: 0.2"), 7, "T1: -0.2");
    CHECK(contains(error_of(text), "T1"));

    text = kTimeseries;
    text.replace(text.find("K: 1.0"), 6, "K: 0.0");
    CHECK_FALSE(error_of(text).empty());

    CHECK_THROWS_AS(load_config("/nonexistent/spinbath.yaml"), ConfigError);
}

TEST_CASE("logarithmic grid") {
    TimeSeries ts;
    ts.logarithmic = true;
    ts.t_min = 0.01;
    ts.t_max = 100.0;
    ts.n_points = 5;
    const auto g = ts.grid();
    CHECK(g[0] == doctest::Approx(0.01));
    CHECK(g[1] == doctest::Approx(0.1));
    CHECK(g[2] == doctest::Approx(1.0));
    CHECK(g[4] == 100.0);
}

TEST_CASE("number formatting is fixed width scientific") {
    CHECK(format_number(0.1) == "1.0000000000000001e-01");
    CHECK(format_number(-0.0) == "0.0000000000000000e+00");
    CHECK(format_number(3000.0) == "3.0000000000000000e+03");
}

TEST_CASE("time-series CSV layout") {
    const Trajectory tr = run_timeseries(parse_config(kTimeseries));
    const std::string out = csv(tr);
    std::istringstream lines(out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,C,rho11,rho22,rho33,rho44,re_rho34_eigen,im_rho34_eigen");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
    }
    CHECK(rows == 11);
    // first row is the initial state |10>: C = 0, eigenbasis populations (0, 0, c^2, s^2)
    const EigenSystem es = eigensystem(parse_config(kTimeseries).model);
    CHECK(tr.concurrence[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tr.rho_eigen[0](2, 2).real() == doctest::Approx(es.cos_half() * es.cos_half()));
}

TEST_CASE("runs are byte-identical across repeats and thread counts") {
    std::string text = kTimeseries;
    text.replace(text.find("mode: markov"), 12, "mode: postmarkov\n  gamma0: 0.1");
    const ExperimentConfig cfg = parse_config(text);
    const std::string a = csv(run_timeseries(cfg, 1));
    const std::string b = csv(run_timeseries(cfg, 1));
    const std::string c = csv(run_timeseries(cfg, 4));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("all three modes agree on a Markovian run") {
    std::string text = kTimeseries;
    ExperimentConfig cfg = parse_config(text);
    const Trajectory markov = run_timeseries(cfg);
    cfg.mode = Mode::oracle;
    const Trajectory oracle = run_timeseries(cfg);
    for (std::size_t i = 0; i < markov.size(); ++i) {
        CHECK((markov.rho_eigen[i].elements() - oracle.rho_eigen[i].elements()).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(std::abs(markov.concurrence[i] - oracle.concurrence[i]) < 1e-7);
    }
}

TEST_CASE("oracle mode with memory matches the post-Markov closed form") {
    std::string text = kTimeseries;
    text.replace(text.find("mode: markov"), 12, "mode: postmarkov\n  gamma0: 0.1");
    ExperimentConfig cfg = parse_config(text);
    const Trajectory pm = run_timeseries(cfg);
    cfg.mode = Mode::oracle;
    const Trajectory oracle = run_timeseries(cfg);
    for (std::size_t i = 0; i < pm.size(); ++i) {
        CHECK((pm.rho_eigen[i].elements() - oracle.rho_eigen[i].elements()).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("sweep ordering, feasibility and single-point delegation") {
    const char* text = R"(model: {eps1: 2.0, eps2: 1.0, K: 1.0}
run:
  type: sweep
  T_M: {min: 0.2, max: 1.0, count: 3}
  dT: {min: -0.6, max: 0.6, count: 4}
)";
    const ExperimentConfig cfg = parse_config(text);
    const auto pts = run_sweep(cfg, 1);
    REQUIRE(pts.size() == 12);
    CHECK(pts[0].T_M == 0.2);
    CHECK(pts[0].dT == -0.6);
    CHECK(pts[1].dT == doctest::Approx(-0.2));
    CHECK(pts[4].T_M == doctest::Approx(0.6));
    // T_M = 0.2, dT = +-0.6 puts one bath below zero
    CHECK_FALSE(pts[0].C_inf.has_value());
    CHECK_FALSE(pts[3].C_inf.has_value());
    CHECK(pts[1].C_inf.has_value());
    CHECK(sweep_csv(pts) == sweep_csv(run_sweep(cfg, 3)));
    CHECK(contains(sweep_csv(pts), "\n2.0000000000000001e-01,-5.9999999999999998e-01,\n"));

    ModelParams p = cfg.model;
    p.T1 = 0.6 + 0.5 * 0.2;
    p.T2 = 0.6 - 0.5 * 0.2;
    ExperimentConfig one = cfg;
    one.run = Sweep{{0.6, 0.6, 1}, {0.2, 0.2, 1}};
    const auto single = run_sweep(one);
    REQUIRE(single.size() == 1);
    CHECK(*single[0].C_inf == MarkovPropagator(p).steady_state_concurrence());
    CHECK(std::abs(steady_concurrence(p, Mode::oracle) - *single[0].C_inf) < 1e-10);
}

TEST_CASE("invalid states are not emitted") {
    Trajectory tr;
    tr.t = {0.0};
    Mat4c m = Mat4c::Identity() * 0.3;  // trace 1.2
    tr.rho_eigen = {DensityMatrix(m, Basis::eigen)};
    tr.rho = {DensityMatrix(m, Basis::computational)};
    tr.concurrence = {0.0};
    std::ostringstream os;
    CHECK_THROWS_AS(write_timeseries_csv(os, tr), InvalidState);
}

TEST_CASE("describe echoes derived quantities") {
    const std::string d = describe(parse_config(kTimeseries));
    CHECK(contains(d, "omega1=0.453414"));
    CHECK(contains(d, "kappa=1.096585"));
    CHECK(contains(d, "steady-state concurrence: 0.195774"));
}

TEST_CASE("CLI exit codes and output") {
    const std::string dir = SPINBATH_CONFIG_DIR;
    const fs::path out1 = scratch("cold_a.csv");
    const fs::path out2 = scratch("cold_b.csv");
    CHECK(cli("run --config " + dir + "/cold_markov.yaml --out " + out1.string() + " --threads 2") == 0);
    CHECK(cli("run --config " + dir + "/cold_markov.yaml --out " + out2.string() + " --threads 1") == 0);
    const std::string a = slurp(out1);
    CHECK(a == slurp(out2));
    CHECK(std::count(a.begin(), a.end(), '\n') == 3002);

    CHECK(cli("validate --config " + dir + "/sweep_detuned.yaml") == 0);
    CHECK(cli("selftest") == 0);

    const fs::path bad = scratch("bad.yaml");
    std::ofstream(bad) << "model: {eps1: 2}\n";
    CHECK(cli("validate --config " + bad.string()) == 1);
    CHECK(cli("run --config " + bad.string()) == 1);
    CHECK(cli("run --config " + dir + "/cold_markov.yaml --mode nonsense") == 1);
    CHECK(cli("frobnicate") == 1);
    CHECK(cli("run --config /nonexistent.yaml") == 1);

    // omega1 <= 0 is a domain error
    const fs::path neg = scratch("neg.yaml");
    std::ofstream(neg) << "model: {eps1: 0.5, eps2: 0.5, K: 0.6, T1: 1, T2: 1}\n"
                          "run: {type: timeseries, t_max: 1, n_points: 2}\n";
    CHECK(cli("run --config " + neg.string()) == 1);

    // a memory-kernel oracle run with an oversized step is a numerical failure
    const fs::path step = scratch("step.yaml");
    std::ofstream(step) << "model: {eps1: 2, eps2: 1.1, K: 1, T1: 0.2, T2: 0.5}\n"
                           "dynamics: {mode: oracle, gamma0: 0.1, oracle_step: 1.0}\n"
                           "run: {type: timeseries, t_max: 10, n_points: 3}\n";
    CHECK(cli("run --config " + step.string()) == 2);
}
