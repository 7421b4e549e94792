// oracle.hpp: brute-force reference dynamics used to validate the closed forms
//
// The Lindbladian is assembled numerically from the transition operators and
// spectral densities, with no use of the rate formulas, and integrated with
// fixed-step RK4. The memory-kernel modes are integrated in the time domain by
// direct quadrature of the convolution integral.

#pragma once

#include "spinbath/density.hpp"
#include "spinbath/linalg.hpp"
#include "spinbath/model.hpp"
#include "spinbath/postmarkov.hpp"

#include <span>
#include <vector>

namespace spinbath::oracle {

// Acts on column-major vectorized 4x4 matrices, vec(A X B) = (B^T (x) A) vec(X).
struct Superoperator {
    Mat16c matrix{Mat16c::Zero()};

    Mat4c apply(const Mat4c& rho) const { return unvectorize(matrix * vectorize(rho)); }

    // max |Tr(L rho)| coefficient: the trace functional composed with L.
    double trace_residual() const;
    Eigen::Matrix<cplx, 16, 1> spectrum() const;
    double operator_norm() const;

    // Restriction to eigenbasis populations: B(i, j) = d rho_ii / d rho_jj.
    Mat4d population_generator() const;
    // Diagonal entry of L on the rho_34 element.
    cplx coherence_eigenvalue() const;
    // Largest |L| coupling from rho_34 into any other element or vice versa.
    double coherence_leakage() const;

    // Normalized right null vector, as a density matrix in the basis L acts on.
    Mat4c null_state() const;
};

// -i[H_S, .] + L_1 + L_2 in the eigenbasis, with
// L_j(rho) = sum_mu J(-w)(2 V rho V^dag - {rho, V^dag V}) + J(w)(2 V^dag rho V - {rho, V V^dag}).
Superoperator build_lindbladian(const EigenSystem& es, const ModelParams& params);

// Dissipative part only (no Hamiltonian commutator).
Superoperator build_dissipator(const EigenSystem& es, const ModelParams& params);

// Fixed-step classical RK4 for d rho/dt = L rho starting at t = 0. Each grid
// interval is split into equal substeps no larger than `step`.
// StepTooLarge if step > 0.1 / ||L||; DomainError on a bad grid.
std::vector<Mat4c> integrate_markov(const Superoperator& L, const Mat4c& rho0,
                                    std::span<const double> t_grid, double step);

// Solves d mu/dt = lambda * int_0^t k(s) e^{lambda s} mu(t - s) ds, mu(0) = mu0,
// with trapezoid convolution quadrature and an implicit trapezoid outer step,
// Richardson-extrapolated from steps h and h/2. The kernel history is truncated
// once k(s) |e^{lambda s}| < 1e-14 k(0). Values at grid times are taken by cubic
// Hermite interpolation. StepTooLarge if step * max(gamma0, |lambda|) > 0.1.
std::vector<cplx> integrate_postmarkov_mode(cplx lambda, const MemoryKernel& kernel, cplx mu0,
                                            std::span<const double> t_grid, double step);

// Default step for integrate_postmarkov_mode.
double default_mode_step(cplx lambda, const MemoryKernel& kernel);

}  // namespace spinbath::oracle
