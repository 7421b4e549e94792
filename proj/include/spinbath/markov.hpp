// markov.hpp: closed-form Markovian evolution of the two-spin system
//
// Populations in the eigenbasis evolve as rho_ii(t) = a(t) rho_ii(0) / (X1 Y2)
// with the sixteen product-form coefficients a_ij(t); the only coherence the
// solution covers is rho_34, which rotates at 2*lambda_3 and decays at (X1+Y2)/2.

#pragma once

#include "spinbath/density.hpp"
#include "spinbath/linalg.hpp"
#include "spinbath/model.hpp"

namespace spinbath {

// Throws UnsupportedCoherence if an eigenbasis state has coherences outside
// the (3,4) block above 1e-12.
void require_34_coherence_only(const DensityMatrix& rho_eigen, const char* who);

// Steady-state populations in the eigenbasis:
// (X1+ Y2+, X1- Y2-, X1- Y2+, X1+ Y2-) / (X1 Y2).
Vec4d steady_state_populations(const Rates& r);

class MarkovPropagator {
public:
    explicit MarkovPropagator(const ModelParams& params);
    MarkovPropagator(const EigenSystem& es, const Rates& r) : es_(es), rates_(r) {}

    const EigenSystem& eigen_system() const noexcept { return es_; }
    const Rates& rates() const noexcept { return rates_; }

    // Unnormalized a_ij(t); every column sums to X1*Y2.
    Mat4d a_coefficients(double t) const;

    // Complex decay constant of rho_34: -2i lambda_3 - (X1 + Y2)/2.
    cplx coherence_eigenvalue() const;

    DensityMatrix propagate(const DensityMatrix& rho0_eigen, double t) const;

    // rho_inf in the computational basis, assembled entry by entry.
    DensityMatrix steady_state() const;
    DensityMatrix steady_state_eigen() const;

    // Closed form (2/X1Y2) max(0, (sin theta / 2)|X1+Y2- - X1-Y2+| - sqrt(X1-X1+Y2-Y2+)).
    double steady_state_concurrence() const;

private:
    EigenSystem es_;
    Rates rates_;
};

}  // namespace spinbath
