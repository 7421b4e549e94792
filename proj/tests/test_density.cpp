#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinbath/density.hpp"
#include "spinbath/errors.hpp"

#include <cmath>

using namespace spinbath;

TEST_CASE("initial density layout") {
    const InitialState init{0.1, 0.2, 0.3, {0.05, -0.1}};
    const DensityMatrix rho = initial_density(init);
    CHECK(rho.basis() == Basis::computational);
    CHECK(rho(0, 0).real() == doctest::Approx(0.1));
    CHECK(rho(1, 1).real() == doctest::Approx(0.2));
    CHECK(rho(2, 2).real() == doctest::Approx(0.3));
    CHECK(rho(3, 3).real() == doctest::Approx(0.4));
    CHECK(rho(1, 2) == cplx(0.05, -0.1));
    CHECK(rho(2, 1) == cplx(0.05, 0.1));
    CHECK(rho(0, 3) == cplx(0.0));
    CHECK_NOTHROW(rho.validate());
}

TEST_CASE("default initial state is spin 1 excited") {
    const DensityMatrix rho = initial_density(InitialState{});
    CHECK(rho(2, 2).real() == 1.0);
    CHECK(rho.trace_error() == 0.0);
}

TEST_CASE("initial state validation") {
    CHECK_THROWS_AS(initial_density({-0.1, 0.5, 0.5, {}}), InvalidState);
    CHECK_THROWS_AS(initial_density({0.5, 0.5, 0.5, {}}), InvalidState);
    // |c12|^2 must not exceed p1 p2
    CHECK_THROWS_AS(initial_density({0.0, 0.5, 0.5, {0.6, 0.0}}), InvalidState);
    CHECK_NOTHROW(initial_density({0.0, 0.5, 0.5, {0.5, 0.0}}));
}

TEST_CASE("state diagnostics") {
    Mat4c m = Mat4c::Zero();
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    DensityMatrix ok(m, Basis::computational);
    CHECK(ok.hermiticity_error() == 0.0);
    CHECK(ok.trace_error() == doctest::Approx(0.0));
    CHECK(ok.min_eigenvalue() == doctest::Approx(0.0));

    Mat4c bad_h = m;
    bad_h(0, 1) = 1e-6;
    CHECK_THROWS_AS(DensityMatrix(bad_h, Basis::computational).validate(), InvalidState);

    Mat4c bad_tr = m;
    bad_tr(3, 3) = 0.6;
    CHECK_THROWS_AS(DensityMatrix(bad_tr, Basis::computational).validate(), InvalidState);

    Mat4c bad_psd = m;
    bad_psd(0, 0) = 1.1;
    bad_psd(3, 3) = -0.1;
    CHECK_THROWS_AS(DensityMatrix(bad_psd, Basis::computational).validate(), InvalidState);

    // within tolerance
    Mat4c slight = m;
    slight(0, 0) = 0.5 + 5e-11;
    slight(3, 3) = 0.5 - 5e-11;
    CHECK_NOTHROW(DensityMatrix(slight, Basis::computational).validate());
}

TEST_CASE("basis tags are enforced") {
    const DensityMatrix rho = initial_density(InitialState{});
    CHECK_NOTHROW(rho.require_basis(Basis::computational, "t"));
    CHECK_THROWS_AS(rho.require_basis(Basis::eigen, "t"), BasisMismatch);
    const EigenSystem es = eigensystem(ModelParams{});
    CHECK_THROWS_AS(to_computational(rho, es), BasisMismatch);
    CHECK_THROWS_AS(to_eigen(to_eigen(rho, es), es), BasisMismatch);
    CHECK(to_string(Basis::eigen) == "eigen");
}

TEST_CASE("basis round trip") {
    const EigenSystem es = eigensystem(ModelParams{});
    const DensityMatrix rho = initial_density({0.1, 0.2, 0.3, {0.1, 0.05}});
    const DensityMatrix e = to_eigen(rho, es);
    CHECK(e.basis() == Basis::eigen);
    const DensityMatrix back = to_computational(e, es);
    CHECK((back.elements() - rho.elements()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("|10> in the eigenbasis lives on the l3/l4 block") {
    const EigenSystem es = eigensystem(ModelParams{});
    const DensityMatrix e = to_eigen(initial_density(InitialState{}), es);
    const double c = es.cos_half(), s = es.sin_half();
    CHECK(e(2, 2).real() == doctest::Approx(c * c));
    CHECK(e(3, 3).real() == doctest::Approx(s * s));
    CHECK(e(2, 3).real() == doctest::Approx(-c * s));
    CHECK(std::abs(e(0, 0)) < 1e-16);
    CHECK(std::abs(e(1, 1)) < 1e-16);
    CHECK(std::abs(e(0, 2)) < 1e-16);
}
