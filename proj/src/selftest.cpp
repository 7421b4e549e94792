#include "spinbath/selftest.hpp"

#include "spinbath/entanglement.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/markov.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/postmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace spinbath {

namespace {

ModelParams cold_params() { return {2.0, 1.1, 1.0, 1e-3, 1e-3, 0.2, 0.5}; }

std::string fmt(double measured, double tol) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << measured << " (tol " << tol << ")";
    return os.str();
}

CheckResult below(std::string name, double measured, double tol) {
    return {std::move(name), measured < tol, fmt(measured, tol)};
}

DensityMatrix random_family_state(std::mt19937_64& rng, const EigenSystem& es) {
    std::gamma_distribution<double> g(1.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<double, 4> w{};
    for (auto& x : w) x = g(rng);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    InitialState s{w[0] / sum, w[1] / sum, w[2] / sum, {0.0, 0.0}};
    s.c12 = std::polar(std::sqrt(s.p1 * s.p2) * u(rng), 2.0 * std::numbers::pi * u(rng));
    return to_eigen(initial_density(s), es);
}

Mat4c random_local_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    auto haar2 = [&] {
        Eigen::Matrix2cd z;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) z(i, j) = {n(rng), n(rng)};
        Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
        return Eigen::Matrix2cd(qr.householderQ());
    };
    const Eigen::Matrix2cd a = haar2();
    const Eigen::Matrix2cd b = haar2();
    Mat4c u;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return u;
}

}  // namespace

std::vector<CheckResult> run_selftest() {
    std::vector<CheckResult> out;
    auto guarded = [&](const std::string& name, const std::function<CheckResult()>& fn) {
        try {
            out.push_back(fn());
        } catch (const std::exception& e) {
            out.push_back({name, false, std::string("threw: ") + e.what()});
        }
    };

    const ModelParams p1 = cold_params();
    const EigenSystem es = eigensystem(p1);
    const Rates r = rates(es, p1);
    const MarkovPropagator markov(es, r);
    const oracle::Superoperator L = oracle::build_lindbladian(es, p1);

    guarded("eigensystem identities", [&] {
        const double k2 = std::abs(es.kappa * es.kappa - (p1.K * p1.K + 0.25 * es.delta_eps * es.delta_eps));
        const double sum = std::abs(es.omega1 + es.omega2 - (p1.eps1 + p1.eps2));
        const double unit = (es.eigvecs.adjoint() * es.eigvecs - Mat4c::Identity()).cwiseAbs().maxCoeff();
        const double diag =
            (es.eigvecs.adjoint() * system_hamiltonian(p1) * es.eigvecs - es.hamiltonian_eigen()).cwiseAbs().maxCoeff();
        return below("eigensystem identities", std::max({k2, sum, unit, diag}), 1e-12);
    });

    guarded("eigenoperator relation [H,V] = -wV", [&] {
        const Mat4c h = es.hamiltonian_eigen();
        double worst = 0.0;
        for (const auto* v : transition_operators(es).all()) {
            worst = std::max(worst, (h * v->op - v->op * h + v->omega * v->op).cwiseAbs().maxCoeff());
        }
        return below("eigenoperator relation [H,V] = -wV", worst, 1e-12);
    });

    guarded("detailed balance", [&] {
        double worst = 0.0;
        for (double w : {0.1, 0.45, 1.0, 2.6}) {
            for (double T : {0.05, 0.2, 1.0, 5.0}) {
                ModelParams p = p1;
                p.T1 = T;
                const double ratio = spectral_density(1, -w, p) / spectral_density(1, w, p);
                worst = std::max(worst, std::abs(ratio / std::exp(w / T) - 1.0));
            }
        }
        return below("detailed balance", worst, 1e-12);
    });

    guarded("rate forms agree", [&] {
        const Rates m = rates_mixing_form(es, p1);
        const double worst = std::max({std::abs(m.x1p / r.x1p - 1), std::abs(m.x1m / r.x1m - 1),
                                       std::abs(m.y2p / r.y2p - 1), std::abs(m.y2m / r.y2m - 1)});
        return below("rate forms agree", worst, 1e-12);
    });

    guarded("a_ij column-stochastic", [&] {
        double worst = 0.0;
        for (double t : {0.0, 1.0, 50.0, 500.0, 5000.0}) {
            const Mat4d a = markov.a_coefficients(t) / (r.x1 * r.y2);
            worst = std::max(worst, (a.colwise().sum().array() - 1.0).abs().maxCoeff());
            if (a.minCoeff() < 0.0) worst = 1.0;
        }
        return below("a_ij column-stochastic", worst, 1e-12);
    });

    std::mt19937_64 rng(20240611);

    guarded("trace/hermiticity/PSD preserved", [&] {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const DensityMatrix rho0 = random_family_state(rng, es);
            for (double t : {0.5, 30.0, 700.0}) {
                const DensityMatrix rt = markov.propagate(rho0, t);
                worst = std::max({worst, rt.trace_error(), rt.hermiticity_error(), std::max(0.0, -rt.min_eigenvalue())});
            }
        }
        return below("trace/hermiticity/PSD preserved", worst, 1e-10);
    });

    guarded("semigroup law", [&] {
        const DensityMatrix rho0 = random_family_state(rng, es);
        const DensityMatrix two = markov.propagate(markov.propagate(rho0, 37.0), 113.0);
        const DensityMatrix one = markov.propagate(rho0, 150.0);
        return below("semigroup law", (two.elements() - one.elements()).cwiseAbs().maxCoeff(), 1e-10);
    });

    guarded("analytic vs RK4 oracle (t <= 300)", [&] {
        const DensityMatrix rho0 = to_eigen(initial_density({0, 0, 1, {0, 0}}), es);
        std::vector<double> grid;
        for (int k = 1; k <= 30; ++k) grid.push_back(10.0 * k);
        const auto states = oracle::integrate_markov(L, rho0.elements(), grid, 0.004);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, (states[i] - markov.propagate(rho0, grid[i]).elements()).cwiseAbs().maxCoeff());
        }
        return below("analytic vs RK4 oracle (t <= 300)", worst, 1e-6);
    });

    guarded("S J S^-1 equals oracle population generator", [&] {
        const JordanForm jf = jordan_form(r);
        return below("S J S^-1 equals oracle population generator",
                     (jf.generator() - L.population_generator()).cwiseAbs().maxCoeff(), 1e-9);
    });

    guarded("population spectrum {0,-X1,-Y2,-X1-Y2}", [&] {
        Eigen::EigenSolver<Mat4d> s(L.population_generator(), false);
        std::array<double, 4> got{};
        for (int i = 0; i < 4; ++i) got[static_cast<std::size_t>(i)] = s.eigenvalues()(i).real();
        std::array<double, 4> want{0.0, -r.x1, -r.y2, -r.x1 - r.y2};
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
        return below("population spectrum {0,-X1,-Y2,-X1-Y2}", worst, 1e-9);
    });

    guarded("L rho_inf = 0", [&] {
        return below("L rho_inf = 0", L.apply(markov.steady_state_eigen().elements()).cwiseAbs().maxCoeff(), 1e-10);
    });

    guarded("closed-form C_inf equals Wootters (20x20)", [&] {
        double worst = 0.0;
        ModelParams p{2.0, 1.0, 1.0, 1e-3, 1e-3, 1.0, 1.0};
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                const double tm = 0.05 + 0.1 * i;
                const double dt = (-1.8 + 3.6 * j / 19.0) * tm;
                p.T1 = tm + 0.5 * dt;
                p.T2 = tm - 0.5 * dt;
                const MarkovPropagator m(p);
                worst = std::max(worst, std::abs(m.steady_state_concurrence() -
                                                 wootters_concurrence(m.steady_state()).value));
            }
        }
        return below("closed-form C_inf equals Wootters (20x20)", worst, 1e-10);
    });

    guarded("Gibbs steady state at T1 = T2", [&] {
        double worst = 0.0;
        for (double T : {0.1, 0.5, 2.0}) {
            ModelParams p = p1;
            p.T1 = p.T2 = T;
            const MarkovPropagator m(p);
            Eigen::SelfAdjointEigenSolver<Mat4c> hs(system_hamiltonian(p));
            Mat4c gibbs = hs.eigenvectors() *
                          (-hs.eigenvalues().array() / T).exp().matrix().cast<cplx>().asDiagonal() *
                          hs.eigenvectors().adjoint();
            gibbs /= gibbs.trace();
            worst = std::max(worst, (gibbs - m.steady_state().elements()).cwiseAbs().maxCoeff());
        }
        return below("Gibbs steady state at T1 = T2", worst, 1e-10);
    });

    guarded("Werner concurrence {0,0,1/4,1}", [&] {
        Mat4c bell = Mat4c::Zero();
        bell(1, 1) = bell(2, 2) = bell(1, 2) = bell(2, 1) = 0.5;
        double worst = 0.0;
        const std::array<std::pair<double, double>, 4> cases{{{0.0, 0.0}, {1.0 / 3.0, 0.0}, {0.5, 0.25}, {1.0, 1.0}}};
        for (const auto& [pw, want] : cases) {
            const Mat4c w = pw * bell + (1.0 - pw) * 0.25 * Mat4c::Identity();
            worst = std::max(worst, std::abs(wootters_concurrence({w, Basis::computational}).value - want));
        }
        return below("Werner concurrence {0,0,1/4,1}", worst, 1e-10);
    });

    guarded("concurrence local-unitary invariance", [&] {
        double worst = 0.0;
        const DensityMatrix rho = markov.steady_state();
        const double c0 = wootters_concurrence(rho).value;
        // full rank on purpose: at a zero eigenvalue C is only sqrt-continuous,
        // so rounding in u rho u^dagger alone moves it by ~1e-8
        Mat4c bellish = Mat4c::Zero();
        bellish(1, 1) = 0.3;
        bellish(2, 2) = 0.55;
        bellish(1, 2) = bellish(2, 1) = 0.35;
        bellish(0, 0) = 0.1;
        bellish(3, 3) = 0.05;
        const double c1 = wootters_concurrence({bellish, Basis::computational}).value;
        for (int k = 0; k < 20; ++k) {
            const Mat4c u = random_local_unitary(rng);
            worst = std::max(worst, std::abs(wootters_concurrence({u * rho.elements() * u.adjoint(), Basis::computational}).value - c0));
            worst = std::max(worst, std::abs(wootters_concurrence({u * bellish * u.adjoint(), Basis::computational}).value - c1));
        }
        return below("concurrence local-unitary invariance", worst, 1e-10);
    });

    guarded("xi limits", [&] {
        const MemoryKernel k(0.3);
        double worst = std::abs(xi(0.0, k, 17.0) - 1.0);
        worst = std::max(worst, std::abs(xi(-0.3, k, 4.0) - (1.0 + 0.3 * 4.0) * std::exp(-1.2)));
        if (worst > 1e-12) return below("xi limits", worst, 1e-12);
        const cplx lam(-0.02, -2.0);
        const MemoryKernel fast(1e6 * std::abs(lam));
        for (double t : {0.5, 5.0, 50.0}) {
            worst = std::max(worst, std::abs(xi(lam, fast, t) - std::exp(lam * t)) / std::abs(std::exp(lam * t)));
        }
        return below("xi limits", worst, 1e-4);
    });

    guarded("post-Markov modes vs convolution oracle", [&] {
        const MemoryKernel kernel(0.1);
        const PostMarkovPropagator pm(es, r, kernel);
        const cplx s34 = pm.coherence_eigenvalue();
        std::vector<double> short_grid;
        for (int k = 1; k <= 20; ++k) short_grid.push_back(1.0 * k);
        const auto coh = oracle::integrate_postmarkov_mode(s34, kernel, 1.0, short_grid,
                                                           oracle::default_mode_step(s34, kernel));
        double worst = 0.0;
        for (std::size_t i = 0; i < short_grid.size(); ++i) {
            worst = std::max(worst, std::abs(coh[i] - xi(s34, kernel, short_grid[i])));
        }
        std::vector<double> long_grid;
        for (int k = 1; k <= 10; ++k) long_grid.push_back(50.0 * k);
        for (int m = 1; m < 4; ++m) {
            const double lam = pm.jordan().J(m);
            const auto mode = oracle::integrate_postmarkov_mode(lam, kernel, 1.0, long_grid,
                                                                oracle::default_mode_step(lam, kernel));
            for (std::size_t i = 0; i < long_grid.size(); ++i) {
                worst = std::max(worst, std::abs(mode[i] - xi(lam, kernel, long_grid[i])));
            }
        }
        return below("post-Markov modes vs convolution oracle", worst, 1e-6);
    });

    guarded("Markovian limit gamma0 = 1e6", [&] {
        const PostMarkovPropagator pm(es, r, MemoryKernel(1e6));
        const DensityMatrix rho0 = to_eigen(initial_density({0, 0, 1, {0, 0}}), es);
        double worst = 0.0;
        for (double t = 0.0; t <= 3000.0; t += 7.3) {
            worst = std::max(worst, (pm.propagate(rho0, t).elements() - markov.propagate(rho0, t).elements())
                                        .cwiseAbs()
                                        .maxCoeff());
        }
        return below("Markovian limit gamma0 = 1e6", worst, 1e-4);
    });

    return out;
}

}  // namespace spinbath
