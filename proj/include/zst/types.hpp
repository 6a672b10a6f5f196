#pragma once

#include <array>
#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace zst {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using Quad = std::array<cplx, 4>;  // (psi1, psi2, psi3, psi4) at one t

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I1{0.0, 1.0};

inline Mat2 sigma1() { Mat2 m; m << 0, 1, 1, 0; return m; }
inline Mat2 sigma3() { Mat2 m; m << 1, 0, 0, -1; return m; }

// entries are numbered m1 m2 / m3 m4
inline cplx det(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// inverse of a unimodular matrix, no division
inline Mat2 unimodular_inverse(const Mat2& m) {
    Mat2 r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
}

inline double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace zst
