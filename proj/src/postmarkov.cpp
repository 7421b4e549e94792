#include "spinbath/postmarkov.hpp"

#include "spinbath/errors.hpp"
#include "spinbath/markov.hpp"

#include <algorithm>
#include <cmath>

namespace spinbath {

MemoryKernel::MemoryKernel(double g0) : gamma0(g0) {
    if (!(g0 > 0.0) || !std::isfinite(g0)) throw DomainError("MemoryKernel: gamma0 must be finite and > 0");
}

double MemoryKernel::operator()(double t) const { return gamma0 * std::exp(-gamma0 * t); }

JordanForm jordan_form(const Rates& r) {
    const double yr = r.y2p / r.y2m;  // Y2+/Y2-
    const double xr = r.x1m / r.x1p;  // X1-/X1+

    JordanForm jf;
    jf.S << yr,      yr,  -1.0, -1.0,
            xr,      -1.0, xr,  -1.0,
            xr * yr, -yr, -xr,  1.0,
            1.0,     1.0,  1.0,  1.0;
    jf.J << 0.0, -r.x1, -r.y2, -r.x1 - r.y2;

    if (!jf.S.allFinite()) throw SingularS("jordan_form: S has non-finite entries (a rate vanished)");
    double hadamard = 1.0;
    for (int j = 0; j < 4; ++j) hadamard *= jf.S.col(j).norm();
    const double det = jf.S.determinant();
    if (!(std::abs(det) >= 1e-12 * hadamard)) {
        throw SingularS("jordan_form: S is numerically singular");
    }
    jf.Sinv = jf.S.inverse();

    Eigen::JacobiSVD<Mat4d> svd(jf.S);
    const auto& sv = svd.singularValues();
    jf.condition_number = sv(0) / sv(3);
    return jf;
}

cplx xi(cplx lambda, const MemoryKernel& kernel, double t) {
    const double g0 = kernel.gamma0;
    if (t == 0.0) return 1.0;
    const cplx denom = g0 + lambda;
    if (std::abs(denom) < 1e-8 * std::max(g0, std::abs(lambda))) {
        return (1.0 + g0 * t) * std::exp(-g0 * t);
    }
    return (g0 * std::exp(lambda * t) + lambda * std::exp(-g0 * t)) / denom;
}

PostMarkovPropagator::PostMarkovPropagator(const ModelParams& params, MemoryKernel kernel)
    : PostMarkovPropagator(eigensystem(params), spinbath::rates(eigensystem(params), params), kernel) {}

PostMarkovPropagator::PostMarkovPropagator(const EigenSystem& es, const Rates& r, MemoryKernel kernel)
    : es_(es), rates_(r), kernel_(kernel), jf_(jordan_form(r)) {}

cplx PostMarkovPropagator::coherence_eigenvalue() const {
    return {-0.5 * (rates_.x1 + rates_.y2), -2.0 * es_.lambda[2]};
}

Vec4d PostMarkovPropagator::population_modes(const Vec4d& p0, double t) const {
    Vec4d mu = jf_.Sinv * p0;
    // mode 0 is the steady state: xi(0, t) == 1
    for (int i = 1; i < 4; ++i) mu(i) *= xi(jf_.J(i), kernel_, t).real();
    return mu;
}

DensityMatrix PostMarkovPropagator::propagate(const DensityMatrix& rho0, double t) const {
    require_34_coherence_only(rho0, "postmarkov_propagate");
    if (!(t >= 0.0)) throw DomainError("postmarkov_propagate: t must be >= 0");
    if (t == 0.0) return rho0;

    Vec4d p0;
    for (int i = 0; i < 4; ++i) p0(i) = rho0(i, i).real();
    const Vec4d p = jf_.S * population_modes(p0, t);

    Mat4c out = Mat4c::Zero();
    for (int i = 0; i < 4; ++i) out(i, i) = p(i);
    out(2, 3) = xi(coherence_eigenvalue(), kernel_, t) * rho0(2, 3);
    out(3, 2) = std::conj(out(2, 3));
    return {out, Basis::eigen};
}

}  // namespace spinbath
