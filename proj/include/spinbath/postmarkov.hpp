// postmarkov.hpp: post-Markovian dynamics with an exponential memory kernel
//
// The population generator is diagonalized as S J S^{-1} with
// J = diag(0, -X1, -Y2, -X1-Y2). With k(t) = g0 exp(-g0 t) each generator mode
// with eigenvalue l evolves by xi(l, t) = (g0 e^{l t} + l e^{-g0 t}) / (g0 + l)
// instead of e^{l t}; the rho_34 coherence uses its own complex eigenvalue.

#pragma once

#include "spinbath/density.hpp"
#include "spinbath/linalg.hpp"
#include "spinbath/model.hpp"

#include <array>

namespace spinbath {

struct MemoryKernel {
    double gamma0{1.0};

    explicit MemoryKernel(double g0);
    double operator()(double t) const;  // gamma0 exp(-gamma0 t)
};

struct JordanForm {
    Mat4d S;       // columns are right eigenvectors of the population generator
    Mat4d Sinv;    // rows are the left eigenvectors
    Vec4d J;       // (0, -X1, -Y2, -X1 - Y2)
    double condition_number{0.0};

    Mat4d generator() const { return S * J.asDiagonal() * Sinv; }
};

// Throws SingularS when |det S| < 1e-12 times the Hadamard bound of S.
JordanForm jordan_form(const Rates& r);

// Mode function of the exponential kernel. Falls back to the degenerate limit
// (1 + g0 t) e^{-g0 t} when |g0 + l| < 1e-8 max(g0, |l|).
cplx xi(cplx lambda, const MemoryKernel& kernel, double t);

class PostMarkovPropagator {
public:
    PostMarkovPropagator(const ModelParams& params, MemoryKernel kernel);
    PostMarkovPropagator(const EigenSystem& es, const Rates& r, MemoryKernel kernel);

    const EigenSystem& eigen_system() const noexcept { return es_; }
    const Rates& rates() const noexcept { return rates_; }
    const JordanForm& jordan() const noexcept { return jf_; }
    const MemoryKernel& kernel() const noexcept { return kernel_; }

    // -2i lambda_3 - (X1 + Y2)/2, the Markovian eigenvalue of rho_34.
    cplx coherence_eigenvalue() const;

    // Mode amplitudes mu(t) = diag(xi) S^{-1} p(0) for the population sector.
    Vec4d population_modes(const Vec4d& p0, double t) const;

    DensityMatrix propagate(const DensityMatrix& rho0_eigen, double t) const;

private:
    EigenSystem es_;
    Rates rates_;
    MemoryKernel kernel_;
    JordanForm jf_;
};

}  // namespace spinbath
