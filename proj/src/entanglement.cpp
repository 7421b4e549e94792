#include "spinbath/entanglement.hpp"

#include "spinbath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace spinbath {

namespace {

constexpr double kClampTol = 1e-9;

Mat4c sigma_y_sigma_y() {
    Mat4c yy = Mat4c::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

}  // namespace

Mat4c spin_flip(const DensityMatrix& rho) {
    rho.require_basis(Basis::computational, "spin_flip");
    const Mat4c yy = sigma_y_sigma_y();
    return yy * rho.elements().conjugate() * yy;
}

ConcurrenceResult wootters_concurrence(const DensityMatrix& rho) {
    rho.require_basis(Basis::computational, "wootters_concurrence");
    ConcurrenceResult result;

    // Jacobi keeps small eigenvalues of graded (nearly diagonal) states
    // accurate relative to their own size, which the sqrt below depends on.
    const Mat4c herm = 0.5 * (rho.elements() + rho.elements().adjoint());
    Eigen::JacobiSVD<Mat4c> eig(herm, Eigen::ComputeFullU);
    const Mat4c& U = eig.matrixU();
    Vec4d w;
    for (int i = 0; i < 4; ++i) {
        const double sign = (U.col(i).adjoint() * herm * U.col(i))(0, 0).real() < 0.0 ? -1.0 : 1.0;
        w(i) = sign * eig.singularValues()(i);
        if (w(i) < -kClampTol) {
            throw NumericalFailure("wootters_concurrence: rho has eigenvalue " + std::to_string(w(i)));
        }
        if (w(i) < 0.0) {
            result.clamped = true;
            w(i) = 0.0;
        }
    }
    const Mat4c sqrt_rho = U * w.cwiseSqrt().cast<cplx>().asDiagonal() * U.adjoint();

    // sqrt(rho) rho~ sqrt(rho) = A A^dagger with A = sqrt(rho) YY sqrt(rho)*,
    // so the square-rooted spectrum is the singular values of A.
    static const Mat4c yy = sigma_y_sigma_y();
    const Mat4c A = sqrt_rho * yy * sqrt_rho.conjugate();
    Eigen::JacobiSVD<Mat4c> svd(A);
    if (!svd.singularValues().allFinite()) {
        throw NumericalFailure("wootters_concurrence: singular value computation failed");
    }

    std::array<double, 4> e{};
    for (int i = 0; i < 4; ++i) e[static_cast<std::size_t>(i)] = svd.singularValues()(i);
    std::sort(e.begin(), e.end(), std::greater<>());
    result.sqrt_eigs = e;
    result.value = std::clamp(e[0] - e[1] - e[2] - e[3], 0.0, 1.0);
    return result;
}

}  // namespace spinbath
