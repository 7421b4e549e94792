#include "spinbath/markov.hpp"

#include "spinbath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinbath {

namespace {
constexpr double kCoherenceTol = 1e-12;
}

void require_34_coherence_only(const DensityMatrix& rho, const char* who) {
    rho.require_basis(Basis::eigen, who);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const bool block34 = (i == 2 && j == 3) || (i == 3 && j == 2);
            if (!block34 && std::abs(rho(i, j)) > kCoherenceTol) {
                throw UnsupportedCoherence(std::string(who) + ": coherence at eigenbasis element (" +
                                           std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                           ") is outside the closed-form family; use the oracle");
            }
        }
    }
}

Vec4d steady_state_populations(const Rates& r) {
    Vec4d p;
    p << r.x1p * r.y2p, r.x1m * r.y2m, r.x1m * r.y2p, r.x1p * r.y2m;
    return p / (r.x1 * r.y2);
}

MarkovPropagator::MarkovPropagator(const ModelParams& params)
    : es_(eigensystem(params)), rates_(spinbath::rates(es_, params)) {}

Mat4d MarkovPropagator::a_coefficients(double t) const {
    const Rates& r = rates_;
    const double ex = std::exp(-t * r.x1);
    const double ey = std::exp(-t * r.y2);
    const double gx = 1.0 - ex;  // (1 - e^{-t X1})
    const double gy = 1.0 - ey;

    const double xp_keep = r.x1p + r.x1m * ex;  // (X1+ + X1- e^{-t X1})
    const double xm_keep = r.x1m + r.x1p * ex;
    const double yp_keep = r.y2p + r.y2m * ey;
    const double ym_keep = r.y2m + r.y2p * ey;

    Mat4d a;
    a(0, 0) = xp_keep * yp_keep;
    a(0, 1) = gx * gy * r.x1p * r.y2p;
    a(0, 2) = gx * r.x1p * yp_keep;
    a(0, 3) = xp_keep * gy * r.y2p;

    a(1, 0) = gx * gy * r.x1m * r.y2m;
    a(1, 1) = xm_keep * ym_keep;
    a(1, 2) = xm_keep * gy * r.y2m;
    a(1, 3) = gx * r.x1m * ym_keep;

    a(2, 0) = gx * r.x1m * yp_keep;
    a(2, 1) = xm_keep * gy * r.y2p;
    a(2, 2) = xm_keep * yp_keep;
    a(2, 3) = gx * gy * r.x1m * r.y2p;

    a(3, 0) = xp_keep * gy * r.y2m;
    a(3, 1) = gx * r.x1p * ym_keep;
    a(3, 2) = gx * gy * r.x1p * r.y2m;
    a(3, 3) = xp_keep * ym_keep;
    return a;
}

cplx MarkovPropagator::coherence_eigenvalue() const {
    return {-0.5 * (rates_.x1 + rates_.y2), -2.0 * es_.lambda[2]};
}

DensityMatrix MarkovPropagator::propagate(const DensityMatrix& rho0, double t) const {
    require_34_coherence_only(rho0, "markov_propagate");
    if (!(t >= 0.0)) throw DomainError("markov_propagate: t must be >= 0");
    if (t == 0.0) return rho0;

    Vec4d p0;
    for (int i = 0; i < 4; ++i) p0(i) = rho0(i, i).real();
    const Vec4d p = a_coefficients(t) * p0 / (rates_.x1 * rates_.y2);

    Mat4c out = Mat4c::Zero();
    for (int i = 0; i < 4; ++i) out(i, i) = p(i);
    out(2, 3) = std::exp(coherence_eigenvalue() * t) * rho0(2, 3);
    out(3, 2) = std::conj(out(2, 3));
    return {out, Basis::eigen};
}

DensityMatrix MarkovPropagator::steady_state_eigen() const {
    const Vec4d p = steady_state_populations(rates_);
    Mat4c m = Mat4c::Zero();
    for (int i = 0; i < 4; ++i) m(i, i) = p(i);
    return {m, Basis::eigen};
}

DensityMatrix MarkovPropagator::steady_state() const {
    const Rates& r = rates_;
    const double c = es_.cos_half();
    const double s = es_.sin_half();
    const double norm = r.x1 * r.y2;
    const double p3 = r.x1m * r.y2p;  // |l3> weight
    const double p4 = r.x1p * r.y2m;  // |l4> weight

    Mat4c m = Mat4c::Zero();
    m(0, 0) = r.x1p * r.y2p;          // |00>
    m(1, 1) = s * s * p3 + c * c * p4;  // |01>
    m(2, 2) = c * c * p3 + s * s * p4;  // |10>
    m(1, 2) = c * s * (p3 - p4);
    m(2, 1) = m(1, 2);
    m(3, 3) = r.x1m * r.y2m;          // |11>
    return {m / norm, Basis::computational};
}

double MarkovPropagator::steady_state_concurrence() const {
    const Rates& r = rates_;
    const double coherent = 0.5 * std::sin(es_.theta) * std::abs(r.x1p * r.y2m - r.x1m * r.y2p);
    const double mixed = std::sqrt(r.x1m * r.x1p * r.y2m * r.y2p);
    return 2.0 / (r.x1 * r.y2) * std::max(0.0, coherent - mixed);
}

}  // namespace spinbath
