#include "spinbath/density.hpp"

#include "spinbath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace spinbath {

namespace {
constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = -1e-9;
constexpr double kStateTol = 1e-12;
}  // namespace

std::string_view to_string(Basis b) noexcept {
    return b == Basis::computational ? "computational" : "eigen";
}

double DensityMatrix::hermiticity_error() const {
    return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const {
    return std::abs(elements_.trace() - cplx(1.0, 0.0));
}

double DensityMatrix::min_eigenvalue() const {
    const Mat4c herm = 0.5 * (elements_ + elements_.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat4c> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("DensityMatrix: eigenvalue computation failed");
    }
    return solver.eigenvalues()(0);
}

void DensityMatrix::validate() const {
    std::ostringstream why;
    if (const double h = hermiticity_error(); !(h < kHermTol)) why << " hermiticity error " << h << ";";
    if (const double t = trace_error(); !(t < kTraceTol)) why << " trace error " << t << ";";
    if (const double e = min_eigenvalue(); !(e >= kPsdTol)) why << " min eigenvalue " << e << ";";
    const std::string msg = why.str();
    if (!msg.empty()) throw InvalidState("DensityMatrix invalid:" + msg);
}

void DensityMatrix::require_basis(Basis expected, std::string_view who) const {
    if (basis_ != expected) {
        throw BasisMismatch(std::string(who) + ": expected " + std::string(to_string(expected)) +
                            " basis, got " + std::string(to_string(basis_)));
    }
}

void InitialState::validate() const {
    if (!std::isfinite(p0) || !std::isfinite(p1) || !std::isfinite(p2) ||
        !std::isfinite(c12.real()) || !std::isfinite(c12.imag())) {
        throw InvalidState("InitialState: non-finite entry");
    }
    if (p0 < 0.0 || p1 < 0.0 || p2 < 0.0) throw InvalidState("InitialState: populations must be >= 0");
    if (p0 + p1 + p2 > 1.0 + kStateTol) throw InvalidState("InitialState: p0 + p1 + p2 must be <= 1");
    if (std::norm(c12) > p1 * p2 + kStateTol) {
        throw InvalidState("InitialState: |c12|^2 must not exceed p1*p2");
    }
}

DensityMatrix initial_density(const InitialState& init) {
    init.validate();
    Mat4c m = Mat4c::Zero();
    m(0, 0) = init.p0;
    m(1, 1) = init.p1;
    m(2, 2) = init.p2;
    m(3, 3) = std::max(0.0, 1.0 - init.p0 - init.p1 - init.p2);
    m(1, 2) = init.c12;
    m(2, 1) = std::conj(init.c12);
    return {m, Basis::computational};
}

DensityMatrix to_eigen(const DensityMatrix& rho, const EigenSystem& es) {
    rho.require_basis(Basis::computational, "to_eigen");
    return {es.eigvecs.adjoint() * rho.elements() * es.eigvecs, Basis::eigen};
}

DensityMatrix to_computational(const DensityMatrix& rho, const EigenSystem& es) {
    rho.require_basis(Basis::eigen, "to_computational");
    return {es.eigvecs * rho.elements() * es.eigvecs.adjoint(), Basis::computational};
}

}  // namespace spinbath
