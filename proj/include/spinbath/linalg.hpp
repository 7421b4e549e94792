// linalg.hpp: fixed-size matrix aliases for the two-spin (4-level) problem

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace spinbath {

using cplx = std::complex<double>;

using Mat4c = Eigen::Matrix<cplx, 4, 4>;
using Mat4d = Eigen::Matrix<double, 4, 4>;
using Vec4c = Eigen::Matrix<cplx, 4, 1>;
using Vec4d = Eigen::Matrix<double, 4, 1>;

// Superoperators act on column-major vectorized 4x4 matrices.
using Mat16c = Eigen::Matrix<cplx, 16, 16>;
using Vec16c = Eigen::Matrix<cplx, 16, 1>;

// Column-major vectorization index of element (row, col).
constexpr int vec_index(int row, int col) noexcept { return row + 4 * col; }

inline Vec16c vectorize(const Mat4c& m) {
    return Eigen::Map<const Vec16c>(m.data());
}

inline Mat4c unvectorize(const Vec16c& v) {
    return Eigen::Map<const Mat4c>(v.data());
}

}  // namespace spinbath
