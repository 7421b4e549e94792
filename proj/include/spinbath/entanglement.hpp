// entanglement.hpp: Wootters concurrence of two-qubit states

#pragma once

#include "spinbath/density.hpp"
#include "spinbath/linalg.hpp"

#include <array>

namespace spinbath {

struct ConcurrenceResult {
    double value{0.0};
    std::array<double, 4> sqrt_eigs{};  // descending
    bool clamped{false};                // a slightly negative eigenvalue was set to zero
};

// (sigma_y x sigma_y) rho* (sigma_y x sigma_y) in the computational basis.
Mat4c spin_flip(const DensityMatrix& rho);

// C = max(0, e1 - e2 - e3 - e4), e_i the descending square roots of the
// spectrum of rho * spin_flip(rho), obtained from the Hermitian form
// sqrt(rho) spin_flip(rho) sqrt(rho) as the singular values of
// sqrt(rho) (sigma_y x sigma_y) sqrt(rho)*. Eigenvalues of rho in [-1e-9, 0) are clamped;
// anything more negative throws NumericalFailure.
ConcurrenceResult wootters_concurrence(const DensityMatrix& rho);

}  // namespace spinbath
