#include "spinbath/experiment.hpp"

#include "spinbath/entanglement.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/markov.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/parallel.hpp"
#include "spinbath/postmarkov.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace spinbath {

namespace {

constexpr double kEmitHermTol = 1e-10;
constexpr double kEmitTraceTol = 1e-9;

std::vector<DensityMatrix> oracle_markov_states(const ExperimentConfig& cfg, const EigenSystem& es,
                                                const DensityMatrix& rho0, std::span<const double> grid) {
    const oracle::Superoperator L = oracle::build_lindbladian(es, cfg.model);
    const double step = cfg.oracle_step.value_or(std::min(0.005, 0.05 / L.operator_norm()));
    std::vector<DensityMatrix> states;
    for (const Mat4c& m : oracle::integrate_markov(L, rho0.elements(), grid, step)) {
        states.emplace_back(m, Basis::eigen);
    }
    return states;
}

// Population and coherence modes from a numerical eigendecomposition of the
// oracle generator, each evolved by the convolution integrator.
std::vector<DensityMatrix> oracle_postmarkov_states(const ExperimentConfig& cfg, const EigenSystem& es,
                                                    const DensityMatrix& rho0, std::span<const double> grid,
                                                    unsigned threads) {
    require_34_coherence_only(rho0, "oracle postmarkov");
    const MemoryKernel kernel(*cfg.gamma0);
    const oracle::Superoperator L = oracle::build_lindbladian(es, cfg.model);

    Eigen::EigenSolver<Mat4d> solver(L.population_generator());
    if (solver.info() != Eigen::Success) throw NumericalFailure("oracle: population generator eigensolver failed");
    const Mat4c right = solver.eigenvectors();
    const Mat4c left = right.inverse();
    Vec4c p0;
    for (int i = 0; i < 4; ++i) p0(i) = rho0(i, i);
    const Vec4c mu0 = left * p0;

    // modes 0..3 are populations, mode 4 is rho_34
    std::vector<std::vector<cplx>> modes(5);
    parallel_for(5, threads, [&](std::size_t k) {
        const cplx lambda = k < 4 ? solver.eigenvalues()(static_cast<int>(k)) : L.coherence_eigenvalue();
        const cplx start = k < 4 ? mu0(static_cast<int>(k)) : rho0(2, 3);
        if (std::abs(lambda) < 1e-13) {
            modes[k].assign(grid.size(), start);
            return;
        }
        const double step = cfg.oracle_step.value_or(oracle::default_mode_step(lambda, kernel));
        modes[k] = oracle::integrate_postmarkov_mode(lambda, kernel, start, grid, step);
    });

    std::vector<DensityMatrix> states;
    states.reserve(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) {
        Vec4c mu;
        for (int k = 0; k < 4; ++k) mu(k) = modes[static_cast<std::size_t>(k)][n];
        const Vec4c p = right * mu;
        Mat4c m = Mat4c::Zero();
        for (int i = 0; i < 4; ++i) m(i, i) = p(i).real();
        m(2, 3) = modes[4][n];
        m(3, 2) = std::conj(m(2, 3));
        states.emplace_back(m, Basis::eigen);
    }
    return states;
}

}  // namespace

Trajectory run_timeseries(const ExperimentConfig& cfg, unsigned threads) {
    cfg.validate();
    const auto* ts = std::get_if<TimeSeries>(&cfg.run);
    if (!ts) throw ConfigError("run_timeseries: configuration describes a sweep");

    const std::vector<double> grid = ts->grid();
    const EigenSystem es = eigensystem(cfg.model);
    const DensityMatrix rho0 = to_eigen(initial_density(cfg.initial), es);

    switch (cfg.mode) {
        case Mode::markov:
            return concurrence_trajectory(MarkovPropagator(es, rates(es, cfg.model)), rho0, grid, threads);
        case Mode::postmarkov:
            return concurrence_trajectory(PostMarkovPropagator(es, rates(es, cfg.model), MemoryKernel(*cfg.gamma0)),
                                          rho0, grid, threads);
        case Mode::oracle: {
            check_time_grid(grid);
            auto states = cfg.gamma0 ? oracle_postmarkov_states(cfg, es, rho0, grid, threads)
                                     : oracle_markov_states(cfg, es, rho0, grid);
            return assemble_trajectory(es, grid, std::move(states), threads);
        }
    }
    throw ConfigError("run_timeseries: unknown mode");
}

double steady_concurrence(const ModelParams& params, Mode mode) {
    const EigenSystem es = eigensystem(params);
    if (mode == Mode::oracle) {
        const oracle::Superoperator L = oracle::build_lindbladian(es, params);
        const DensityMatrix rho_eig(L.null_state(), Basis::eigen);
        return wootters_concurrence(to_computational(rho_eig, es)).value;
    }
    // the memory kernel does not move the fixed point
    return MarkovPropagator(es, rates(es, params)).steady_state_concurrence();
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg, unsigned threads) {
    cfg.validate();
    const auto* sw = std::get_if<Sweep>(&cfg.run);
    if (!sw) throw ConfigError("run_sweep: configuration describes a time series");

    const std::vector<double> tm = sw->T_M.values();
    const std::vector<double> dt = sw->dT.values();
    std::vector<SweepPoint> points(tm.size() * dt.size());
    parallel_for(points.size(), threads, [&](std::size_t k) {
        SweepPoint& pt = points[k];
        pt.T_M = tm[k / dt.size()];
        pt.dT = dt[k % dt.size()];
        ModelParams p = cfg.model;
        p.T1 = pt.T_M + 0.5 * pt.dT;
        p.T2 = pt.T_M - 0.5 * pt.dT;
        if (p.T1 > 0.0 && p.T2 > 0.0) pt.C_inf = steady_concurrence(p, cfg.mode);
    });
    return points;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

void write_timeseries_csv(std::ostream& os, const Trajectory& tr) {
    os << "t,C,rho11,rho22,rho33,rho44,re_rho34_eigen,im_rho34_eigen\n";
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const DensityMatrix& r = tr.rho_eigen[i];
        const double herm = std::max(r.hermiticity_error(), tr.rho[i].hermiticity_error());
        const double trace = r.trace_error();
        if (!(herm < kEmitHermTol) || !(trace < kEmitTraceTol)) {
            std::ostringstream msg;
            msg << "refusing to emit state at t=" << format_number(tr.t[i]) << ": hermiticity error " << herm
                << ", trace error " << trace;
            throw InvalidState(msg.str());
        }
        os << format_number(tr.t[i]) << ',' << format_number(tr.concurrence[i]);
        for (int k = 0; k < 4; ++k) os << ',' << format_number(r(k, k).real());
        os << ',' << format_number(r(2, 3).real()) << ',' << format_number(r(2, 3).imag()) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
    os << "T_M,dT,C_inf\n";
    for (const SweepPoint& p : points) {
        os << format_number(p.T_M) << ',' << format_number(p.dT) << ',';
        if (p.C_inf) os << format_number(*p.C_inf);
        os << '\n';
    }
}

std::string describe(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os.precision(12);
    const ModelParams& m = cfg.model;
    os << "model: eps1=" << m.eps1 << " eps2=" << m.eps2 << " K=" << m.K << " gamma1=" << m.gamma1
       << " gamma2=" << m.gamma2;
    if (!cfg.is_sweep()) os << " T1=" << m.T1 << " T2=" << m.T2;
    os << '\n';
    os << "initial: p0=" << cfg.initial.p0 << " p1=" << cfg.initial.p1 << " p2=" << cfg.initial.p2
       << " p3=" << 1.0 - cfg.initial.p0 - cfg.initial.p1 - cfg.initial.p2 << " c12=" << cfg.initial.c12.real()
       << (cfg.initial.c12.imag() < 0 ? "-" : "+") << std::abs(cfg.initial.c12.imag()) << "i\n";
    os << "mode: " << to_string(cfg.mode);
    if (cfg.gamma0) os << " gamma0=" << *cfg.gamma0;
    os << '\n';
    if (const auto* ts = std::get_if<TimeSeries>(&cfg.run)) {
        os << "run: timeseries t_max=" << ts->t_max << " n_points=" << ts->n_points
           << " grid=" << (ts->logarithmic ? "log" : "linear");
        if (ts->logarithmic) os << " t_min=" << ts->t_min;
        os << '\n';
    } else {
        const auto& sw = std::get<Sweep>(cfg.run);
        os << "run: sweep T_M=[" << sw.T_M.min << ", " << sw.T_M.max << "] x " << sw.T_M.count << ", dT=["
           << sw.dT.min << ", " << sw.dT.max << "] x " << sw.dT.count << '\n';
    }
    os << "output: " << (cfg.output.empty() ? "<stdout>" : cfg.output) << '\n';

    ModelParams probe = m;
    if (cfg.is_sweep()) {
        const auto& sw = std::get<Sweep>(cfg.run);
        probe.T1 = probe.T2 = std::max(sw.T_M.max, 1e-3);
    }
    const EigenSystem es = eigensystem(probe);
    os << "derived: kappa=" << es.kappa << " theta=" << es.theta << " (" << es.theta * 180.0 / std::numbers::pi
       << " deg) omega1=" << es.omega1 << " omega2=" << es.omega2 << '\n';
    const Rates r = rates(es, probe);
    if (cfg.is_sweep()) os << "rates at T1=T2=" << probe.T1 << ":\n";
    else os << "rates:\n";
    os << "  X1+=" << r.x1p << " X1-=" << r.x1m << " X1=" << r.x1 << "  (at omega2)\n";
    os << "  Y2+=" << r.y2p << " Y2-=" << r.y2m << " Y2=" << r.y2 << "  (at omega1)\n";
    if (!cfg.is_sweep()) {
        const MarkovPropagator prop(es, r);
        os << "steady-state concurrence: " << prop.steady_state_concurrence() << '\n';
    }
    return os.str();
}

}  // namespace spinbath
