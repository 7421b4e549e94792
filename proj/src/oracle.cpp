#include "spinbath/oracle.hpp"

#include "spinbath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinbath::oracle {

namespace {

const Mat4c kId = Mat4c::Identity();

// vec(A X B) = (B^T (x) A) vec(X)
Mat16c kron(const Mat4c& a, const Mat4c& b) {
    Mat16c out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    }
    return out;
}

Mat16c left(const Mat4c& a) { return kron(kId, a); }
Mat16c right(const Mat4c& b) { return kron(b.transpose(), kId); }
Mat16c sandwich(const Mat4c& a, const Mat4c& b) { return kron(b.transpose(), a); }

// 2 A rho A^dag - {rho, A^dag A}
Mat16c lindblad_term(const Mat4c& a) {
    const Mat4c ad = a.adjoint();
    const Mat4c ada = ad * a;
    return 2.0 * sandwich(a, ad) - left(ada) - right(ada);
}

void check_grid(std::span<const double> t_grid, const char* who) {
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (!(t_grid[k] >= 0.0) || !std::isfinite(t_grid[k])) {
            throw DomainError(std::string(who) + ": grid times must be finite and >= 0");
        }
        if (k > 0 && !(t_grid[k] > t_grid[k - 1])) {
            throw DomainError(std::string(who) + ": grid must be strictly increasing");
        }
    }
}

struct ModeRun {
    double h{0.0};
    std::vector<cplx> mu;
    std::vector<cplx> dmu;
};

ModeRun trapezoid_mode(cplx lambda, double g0, cplx mu0, double h, std::size_t n_steps) {
    // weights w_j = k(t_j) e^{lambda t_j}; |w_j| decreases monotonically
    const double tail = std::log(1e14) / (g0 - lambda.real());
    const std::size_t m = std::min(n_steps, static_cast<std::size_t>(std::ceil(tail / h)) + 1);
    std::vector<cplx> w(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        w[j] = g0 * std::exp((lambda - g0) * (static_cast<double>(j) * h));
    }

    ModeRun run;
    run.h = h;
    run.mu.resize(n_steps + 1);
    run.dmu.resize(n_steps + 1);
    run.mu[0] = mu0;
    run.dmu[0] = 0.0;

    const cplx implicit = 1.0 - 0.25 * h * h * lambda * w[0];
    cplx z = 0.0;
    for (std::size_t n = 0; n < n_steps; ++n) {
        // known part of Z_{n+1}: interior nodes plus the mu_0 endpoint
        cplx r = 0.0;
        const std::size_t jmax = std::min(n, m);
        const cplx* mu_hist = run.mu.data() + (n + 1);
        for (std::size_t j = 1; j <= jmax; ++j) r += w[j] * *(mu_hist - j);
        if (n + 1 <= m) r += 0.5 * w[n + 1] * mu0;
        r *= h;

        const cplx next = (run.mu[n] + 0.5 * h * lambda * (z + r)) / implicit;
        z = 0.5 * h * w[0] * next + r;
        run.mu[n + 1] = next;
        run.dmu[n + 1] = lambda * z;
    }
    return run;
}

}  // namespace

double Superoperator::trace_residual() const {
    double worst = 0.0;
    for (int col = 0; col < 16; ++col) {
        cplx tr = 0.0;
        for (int i = 0; i < 4; ++i) tr += matrix(vec_index(i, i), col);
        worst = std::max(worst, std::abs(tr));
    }
    return worst;
}

Eigen::Matrix<cplx, 16, 1> Superoperator::spectrum() const {
    Eigen::ComplexEigenSolver<Mat16c> solver(matrix, false);
    if (solver.info() != Eigen::Success) throw NumericalFailure("Superoperator: eigenvalue computation failed");
    return solver.eigenvalues();
}

double Superoperator::operator_norm() const {
    Eigen::JacobiSVD<Mat16c> svd(matrix);
    return svd.singularValues()(0);
}

Mat4d Superoperator::population_generator() const {
    Mat4d b;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) b(i, j) = matrix(vec_index(i, i), vec_index(j, j)).real();
    }
    return b;
}

cplx Superoperator::coherence_eigenvalue() const {
    const int k = vec_index(2, 3);
    return matrix(k, k);
}

double Superoperator::coherence_leakage() const {
    const int k = vec_index(2, 3);
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        if (i == k) continue;
        worst = std::max({worst, std::abs(matrix(i, k)), std::abs(matrix(k, i))});
    }
    return worst;
}

Mat4c Superoperator::null_state() const {
    Eigen::JacobiSVD<Mat16c> svd(matrix, Eigen::ComputeFullV);
    const Vec16c v = svd.matrixV().col(15);
    Mat4c rho = unvectorize(v);
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

Superoperator build_dissipator(const EigenSystem& es, const ModelParams& params) {
    const TransitionOperators ops = transition_operators(es);
    Superoperator d;
    for (const TransitionOperator* v : ops.all()) {
        const double decay = spectral_density(v->bath, -v->omega, params);
        const double excite = spectral_density(v->bath, v->omega, params);
        d.matrix += decay * lindblad_term(v->op) + excite * lindblad_term(v->op.adjoint());
    }
    return d;
}

Superoperator build_lindbladian(const EigenSystem& es, const ModelParams& params) {
    const Mat4c h = es.hamiltonian_eigen();
    Superoperator l = build_dissipator(es, params);
    l.matrix += cplx(0.0, -1.0) * (left(h) - right(h));
    return l;
}

std::vector<Mat4c> integrate_markov(const Superoperator& L, const Mat4c& rho0,
                                    std::span<const double> t_grid, double step) {
    check_grid(t_grid, "integrate_markov");
    if (!(step > 0.0)) throw DomainError("integrate_markov: step must be > 0");
    const double norm = L.operator_norm();
    if (step * norm > 0.1) {
        throw StepTooLarge("integrate_markov: step " + std::to_string(step) + " exceeds 0.1/||L|| = " +
                           std::to_string(0.1 / norm));
    }

    std::vector<Mat4c> out;
    out.reserve(t_grid.size());
    Vec16c y = vectorize(rho0);
    double t = 0.0;
    for (const double target : t_grid) {
        const double span = target - t;
        if (span > 0.0) {
            const auto n = static_cast<long>(std::ceil(span / step));
            const double h = span / static_cast<double>(n);
            for (long s = 0; s < n; ++s) {
                const Vec16c k1 = L.matrix * y;
                const Vec16c k2 = L.matrix * (y + 0.5 * h * k1);
                const Vec16c k3 = L.matrix * (y + 0.5 * h * k2);
                const Vec16c k4 = L.matrix * (y + h * k3);
                y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
        t = target;
        out.push_back(unvectorize(y));
    }
    return out;
}

double default_mode_step(cplx lambda, const MemoryKernel& kernel) {
    return 0.01 / std::max(kernel.gamma0, std::abs(lambda));
}

std::vector<cplx> integrate_postmarkov_mode(cplx lambda, const MemoryKernel& kernel, cplx mu0,
                                            std::span<const double> t_grid, double step) {
    check_grid(t_grid, "integrate_postmarkov_mode");
    const double g0 = kernel.gamma0;
    if (!(step > 0.0)) throw DomainError("integrate_postmarkov_mode: step must be > 0");
    if (step * std::max(g0, std::abs(lambda)) > 0.1) {
        throw StepTooLarge("integrate_postmarkov_mode: step * max(gamma0, |lambda|) exceeds 0.1");
    }
    if (lambda.real() > 0.0) throw DomainError("integrate_postmarkov_mode: Re(lambda) must be <= 0");

    std::vector<cplx> out;
    out.reserve(t_grid.size());
    if (t_grid.empty()) return out;
    const double t_max = t_grid.back();
    if (t_max == 0.0 || lambda == cplx(0.0)) {
        out.assign(t_grid.size(), mu0);
        return out;
    }

    const auto n = static_cast<std::size_t>(std::ceil(t_max / step));
    const double h = t_max / static_cast<double>(n);
    const ModeRun coarse = trapezoid_mode(lambda, g0, mu0, h, n);
    const ModeRun fine = trapezoid_mode(lambda, g0, mu0, 0.5 * h, 2 * n);

    std::vector<cplx> mu(n + 1);
    std::vector<cplx> dmu(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        mu[i] = (4.0 * fine.mu[2 * i] - coarse.mu[i]) / 3.0;
        dmu[i] = (4.0 * fine.dmu[2 * i] - coarse.dmu[i]) / 3.0;
    }

    for (const double t : t_grid) {
        const double x = t / h;
        auto i = static_cast<std::size_t>(std::floor(x));
        if (i >= n) i = n - 1;
        const double u = x - static_cast<double>(i);
        // cubic Hermite basis on [t_i, t_{i+1}]
        const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        const double h10 = u * (1.0 - u) * (1.0 - u);
        const double h01 = u * u * (3.0 - 2.0 * u);
        const double h11 = u * u * (u - 1.0);
        out.push_back(h00 * mu[i] + h10 * h * dmu[i] + h01 * mu[i + 1] + h11 * h * dmu[i + 1]);
    }
    return out;
}

}  // namespace spinbath::oracle
