#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinbath/errors.hpp"
#include "spinbath/markov.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/postmarkov.hpp"

#include <cmath>
#include <vector>

using namespace spinbath;

TEST_CASE("Lindbladian is trace preserving with a single stationary state") {
    const ModelParams p;
    const EigenSystem es = eigensystem(p);
    const oracle::Superoperator L = oracle::build_lindbladian(es, p);
    CHECK(L.trace_residual() < 1e-16);
    const auto ev = L.spectrum();
    int zeros = 0;
    for (int i = 0; i < 16; ++i) {
        CHECK(ev(i).real() <= 1e-14);
        if (std::abs(ev(i)) < 1e-12) ++zeros;
    }
    CHECK(zeros == 1);
    CHECK(L.operator_norm() > 2.0 * es.kappa);
}

TEST_CASE("secular structure: rho_34 decouples") {
    const ModelParams p;
    const EigenSystem es = eigensystem(p);
    const oracle::Superoperator L = oracle::build_lindbladian(es, p);
    const MarkovPropagator m(p);
    CHECK(L.coherence_leakage() < 1e-15);
    CHECK(std::abs(L.coherence_eigenvalue() - m.coherence_eigenvalue()) < 1e-15);
}

TEST_CASE("population block equals the closed-form generator") {
    const ModelParams p;
    const EigenSystem es = eigensystem(p);
    const Mat4d B = oracle::build_lindbladian(es, p).population_generator();
    const JordanForm jf = jordan_form(rates(es, p));
    CHECK((jf.generator() - B).cwiseAbs().maxCoeff() < 1e-17);
    CHECK(B.colwise().sum().cwiseAbs().maxCoeff() < 1e-18);
}

TEST_CASE("null state matches an independent raw Lindbladian") {
    const ModelParams p;
    const EigenSystem es = eigensystem(p);
    const Mat4c rho_e = oracle::build_lindbladian(es, p).null_state();
    const DensityMatrix rho = to_computational({rho_e, Basis::eigen}, es);
    // numpy: sigma_x couplings, Bohr-frequency decomposition, SVD null vector
    CHECK(rho(0, 0).real() == doctest::Approx(0.745999428).epsilon(1e-8));
    CHECK(rho(1, 1).real() == doctest::Approx(0.178396119).epsilon(1e-8));
    CHECK(rho(2, 2).real() == doctest::Approx(0.0752286552).epsilon(1e-8));
    CHECK(rho(1, 2).real() == doctest::Approx(-0.114630516).epsilon(1e-8));
    CHECK(rho(3, 3).real() == doctest::Approx(3.75797896e-4).epsilon(1e-7));
    CHECK(rho.hermiticity_error() < 1e-15);
    CHECK(rho.trace_error() < 1e-14);
}

TEST_CASE("RK4 agrees with the analytic propagator and converges at fourth order") {
    const ModelParams p;
    const EigenSystem es = eigensystem(p);
    const oracle::Superoperator L = oracle::build_lindbladian(es, p);
    const MarkovPropagator m(p);
    const DensityMatrix rho0 = to_eigen(initial_density(InitialState{}), es);
    const std::vector<double> grid{1.0, 5.0, 20.0};
    auto error = [&](double h) {
        const auto states = oracle::integrate_markov(L, rho0.elements(), grid, h);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, (states[i] - m.propagate(rho0, grid[i]).elements()).cwiseAbs().maxCoeff());
        }
        return worst;
    };
    const double coarse = error(0.03);
    const double fine = error(0.015);
    CHECK(fine < 1e-6);
    CHECK(coarse / fine == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("RK4 step guard and grid checks") {
    const ModelParams p;
    const EigenSystem es = eigensystem(p);
    const oracle::Superoperator L = oracle::build_lindbladian(es, p);
    const Mat4c rho0 = to_eigen(initial_density(InitialState{}), es).elements();
    const std::vector<double> grid{1.0};
    CHECK_THROWS_AS(oracle::integrate_markov(L, rho0, grid, 1.0), StepTooLarge);
    CHECK_THROWS_AS(oracle::integrate_markov(L, rho0, grid, 0.0), DomainError);
    const std::vector<double> backwards{2.0, 1.0};
    CHECK_THROWS_AS(oracle::integrate_markov(L, rho0, backwards, 0.01), DomainError);
    const std::vector<double> negative{-1.0};
    CHECK_THROWS_AS(oracle::integrate_markov(L, rho0, negative, 0.01), DomainError);
}

TEST_CASE("convolution integrator reproduces xi") {
    for (double g0 : {1.0, 0.1, 0.01}) {
        const MemoryKernel kernel(g0);
        for (cplx lam : {cplx(-0.005, 0.0), cplx(-0.003, -2.19), cplx(-g0, 0.0)}) {
            std::vector<double> grid;
            for (int k = 1; k <= 20; ++k) grid.push_back(2.5 * k);
            const auto mu = oracle::integrate_postmarkov_mode(lam, kernel, 1.0, grid,
                                                              oracle::default_mode_step(lam, kernel));
            for (std::size_t i = 0; i < grid.size(); ++i) {
                CHECK(std::abs(mu[i] - xi(lam, kernel, grid[i])) < 1e-7);
            }
        }
    }
}

TEST_CASE("mode integrator is linear in the initial amplitude") {
    const MemoryKernel kernel(0.1);
    const cplx lam(-0.01, -1.0);
    const std::vector<double> grid{3.0, 9.0};
    const double h = oracle::default_mode_step(lam, kernel);
    const auto one = oracle::integrate_postmarkov_mode(lam, kernel, 1.0, grid, h);
    const auto scaled = oracle::integrate_postmarkov_mode(lam, kernel, cplx(0.0, 2.0), grid, h);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(scaled[i] - cplx(0.0, 2.0) * one[i]) < 1e-14);
}

TEST_CASE("mode integrator guards") {
    const MemoryKernel kernel(0.1);
    const std::vector<double> grid{1.0};
    CHECK_THROWS_AS(oracle::integrate_postmarkov_mode(cplx(-1.0, 0.0), kernel, 1.0, grid, 0.5), StepTooLarge);
    CHECK_THROWS_AS(oracle::integrate_postmarkov_mode(cplx(0.1, 0.0), kernel, 1.0, grid, 0.01), DomainError);
    CHECK_THROWS_AS(oracle::integrate_postmarkov_mode(cplx(-0.1, 0.0), kernel, 1.0, grid, -0.01), DomainError);
    CHECK(oracle::default_mode_step(cplx(-0.1, 0.0), kernel) * 0.1 <= 0.1);
}
