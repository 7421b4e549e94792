#include "spinbath/model.hpp"

#include "spinbath/errors.hpp"

#include <cmath>
#include <string>

namespace spinbath {

namespace {

Mat4c projector(int a, int b) {
    Mat4c m = Mat4c::Zero();
    m(a, b) = 1.0;
    return m;
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string("ModelParams: ") + name + " is not finite");
    }
}

}  // namespace

void ModelParams::validate() const {
    require_finite(eps1, "eps1");
    require_finite(eps2, "eps2");
    require_finite(K, "K");
    require_finite(gamma1, "gamma1");
    require_finite(gamma2, "gamma2");
    require_finite(T1, "T1");
    require_finite(T2, "T2");
    if (!(K > 0.0)) throw DomainError("ModelParams: K must be > 0");
    if (!(gamma1 > 0.0)) throw DomainError("ModelParams: gamma1 must be > 0");
    if (!(gamma2 > 0.0)) throw DomainError("ModelParams: gamma2 must be > 0");
    if (!(T1 > 0.0)) throw DomainError("ModelParams: T1 must be > 0");
    if (!(T2 > 0.0)) throw DomainError("ModelParams: T2 must be > 0");
}

double EigenSystem::cos_half() const { return std::cos(0.5 * theta); }
double EigenSystem::sin_half() const { return std::sin(0.5 * theta); }

Mat4c EigenSystem::hamiltonian_eigen() const {
    Mat4c h = Mat4c::Zero();
    for (int i = 0; i < 4; ++i) h(i, i) = lambda[static_cast<std::size_t>(i)];
    return h;
}

Mat4c EigenSystem::hamiltonian_computational() const {
    return eigvecs * hamiltonian_eigen() * eigvecs.adjoint();
}

Mat4c system_hamiltonian(const ModelParams& p) {
    // sigma^z |0> = -|0>, sigma^z |1> = +|1>; index = 2*s1 + s2
    Mat4c h = Mat4c::Zero();
    for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 0; s2 < 2; ++s2) {
            const double z1 = s1 ? 1.0 : -1.0;
            const double z2 = s2 ? 1.0 : -1.0;
            h(2 * s1 + s2, 2 * s1 + s2) = 0.5 * p.eps1 * z1 + 0.5 * p.eps2 * z2;
        }
    }
    // K (s1+ s2- + s1- s2+) couples |01> and |10>
    h(2, 1) = p.K;
    h(1, 2) = p.K;
    return h;
}

EigenSystem eigensystem(const ModelParams& params) {
    params.validate();

    EigenSystem es;
    const double half_sum = 0.5 * (params.eps1 + params.eps2);
    es.delta_eps = params.eps1 - params.eps2;
    es.kappa = std::hypot(params.K, 0.5 * es.delta_eps);
    es.theta = std::atan2(2.0 * params.K, es.delta_eps);
    es.lambda = {-half_sum, half_sum, es.kappa, -es.kappa};
    es.omega1 = half_sum - es.kappa;
    es.omega2 = half_sum + es.kappa;

    if (!(es.omega1 > 0.0)) {
        throw NonPositiveTransitionFrequency(
            "eigensystem: omega_1 = (eps1+eps2)/2 - kappa = " + std::to_string(es.omega1) +
            " <= 0; the model requires kappa < (eps1+eps2)/2");
    }

    const double c = es.cos_half();
    const double s = es.sin_half();
    es.eigvecs = Mat4c::Zero();
    es.eigvecs(0, 0) = 1.0;  // |l1> = |00>
    es.eigvecs(3, 1) = 1.0;  // |l2> = |11>
    es.eigvecs(2, 2) = c;    // |l3> = c|10> + s|01>
    es.eigvecs(1, 2) = s;
    es.eigvecs(2, 3) = -s;   // |l4> = -s|10> + c|01>
    es.eigvecs(1, 3) = c;
    return es;
}

TransitionOperators transition_operators(const EigenSystem& es) {
    const double c = es.cos_half();
    const double s = es.sin_half();
    // eigenbasis indices: l1 -> 0, l2 -> 1, l3 -> 2, l4 -> 3
    const Mat4c down_13 = projector(0, 2);
    const Mat4c down_42 = projector(3, 1);
    const Mat4c down_32 = projector(2, 1);
    const Mat4c down_14 = projector(0, 3);

    TransitionOperators ops;
    ops.V11 = {c * (down_13 + down_42), es.omega2, 1};
    ops.V12 = {s * (down_32 - down_14), es.omega1, 1};
    ops.V21 = {s * (down_13 - down_42), es.omega2, 2};
    ops.V22 = {c * (down_32 + down_14), es.omega1, 2};
    return ops;
}

double planck_occupation(double omega, double T) {
    if (!(omega > 0.0)) throw DomainError("planck_occupation: omega must be > 0");
    if (!(T > 0.0)) throw DomainError("planck_occupation: T must be > 0");
    return 1.0 / std::expm1(omega / T);
}

double spectral_density(int bath, double omega, const ModelParams& params) {
    if (bath != 1 && bath != 2) throw DomainError("spectral_density: bath index must be 1 or 2");
    if (omega == 0.0) throw DomainError("spectral_density: omega must be nonzero");
    const double gamma = bath == 1 ? params.gamma1 : params.gamma2;
    const double T = bath == 1 ? params.T1 : params.T2;
    const double n = planck_occupation(std::abs(omega), T);
    return omega > 0.0 ? gamma * n : gamma * (n + 1.0);
}

Rates rates(const EigenSystem& es, const ModelParams& params) {
    const double c2 = es.cos_half() * es.cos_half();
    const double s2 = es.sin_half() * es.sin_half();
    const double wx = es.omega2;
    const double wy = es.omega1;

    Rates r;
    r.x1m = 2.0 * c2 * spectral_density(1, wx, params) + 2.0 * s2 * spectral_density(2, wx, params);
    r.x1p = 2.0 * c2 * spectral_density(1, -wx, params) + 2.0 * s2 * spectral_density(2, -wx, params);
    r.y2m = 2.0 * s2 * spectral_density(1, wy, params) + 2.0 * c2 * spectral_density(2, wy, params);
    r.y2p = 2.0 * s2 * spectral_density(1, -wy, params) + 2.0 * c2 * spectral_density(2, -wy, params);
    r.x1 = r.x1p + r.x1m;
    r.y2 = r.y2p + r.y2m;
    return r;
}

Rates rates_mixing_form(const EigenSystem& es, const ModelParams& params) {
    const double ratio = es.delta_eps / std::sqrt(4.0 * params.K * params.K + es.delta_eps * es.delta_eps);
    auto sum = [&](double w) { return spectral_density(1, w, params) + spectral_density(2, w, params); };
    auto diff = [&](double w) { return spectral_density(1, w, params) - spectral_density(2, w, params); };
    const double wx = es.omega2;
    const double wy = es.omega1;

    Rates r;
    r.x1m = sum(wx) + ratio * diff(wx);
    r.x1p = sum(-wx) + ratio * diff(-wx);
    r.y2m = sum(wy) - ratio * diff(wy);
    r.y2p = sum(-wy) - ratio * diff(-wy);
    r.x1 = r.x1p + r.x1m;
    r.y2 = r.y2p + r.y2m;
    return r;
}

}  // namespace spinbath
