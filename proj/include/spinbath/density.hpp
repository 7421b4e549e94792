// density.hpp: basis-tagged two-spin density matrices and the initial-state family

#pragma once

#include "spinbath/linalg.hpp"
#include "spinbath/model.hpp"

#include <string_view>

namespace spinbath {

enum class Basis { computational, eigen };

std::string_view to_string(Basis b) noexcept;

class DensityMatrix {
public:
    DensityMatrix() = default;
    DensityMatrix(const Mat4c& elements, Basis basis) : elements_(elements), basis_(basis) {}

    const Mat4c& elements() const noexcept { return elements_; }
    Basis basis() const noexcept { return basis_; }
    cplx operator()(int row, int col) const { return elements_(row, col); }

    double hermiticity_error() const;   // max |rho - rho^dagger|
    double trace_error() const;         // |Tr rho - 1|
    double min_eigenvalue() const;      // of the Hermitian part

    // Throws InvalidState if the Hermiticity (1e-10), trace (1e-10) or
    // positivity (-1e-9) bounds fail.
    void validate() const;

    // Throws BasisMismatch unless basis() == expected.
    void require_basis(Basis expected, std::string_view who) const;

private:
    Mat4c elements_{Mat4c::Zero()};
    Basis basis_{Basis::computational};
};

// rho(0) = p0|00><00| + p1|01><01| + p2|10><10| + (1-p0-p1-p2)|11><11|
//          + c12|01><10| + c12*|10><01|
struct InitialState {
    double p0{0.0};
    double p1{0.0};
    double p2{1.0};
    cplx c12{0.0, 0.0};

    void validate() const;  // InvalidState on violation
};

DensityMatrix initial_density(const InitialState& init);

DensityMatrix to_eigen(const DensityMatrix& rho, const EigenSystem& es);
DensityMatrix to_computational(const DensityMatrix& rho, const EigenSystem& es);

}  // namespace spinbath
