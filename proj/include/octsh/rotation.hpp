#pragma once

// The 9x9 rotation operators acting on degree-4 coefficient vectors, built
// from the banded z-rotation and the constant 90-degree x-rotation table, plus
// the matching 3x3 rotations on the sphere domain.
//
// Frozen convention (established once by the rotation-consistency test and
// asserted in the suite ever since):
//   * rz_matrix(g) is the ACTIVE right-handed rotation of the harmonic by
//     angle g about +z; rx90_matrix() is the active rotation by +pi/2 about +x.
//   * Consequently ry_matrix(b) = rx90 * rz(b) * rx90^T rotates actively by
//     -b about +y, and rx_matrix(a) = ry90^T * rz(a) * ry90 by +a about +x.
//   * For all coefficient vectors a, Euler angles e and sphere points p:
//       eval_harmonic(rotate_coeffs(a, e), p) == eval_harmonic(a, p')
//     where p' has direction rotation3_from_euler(e)^T * direction(p).

#include <cmath>
#include <numbers>

#include "octsh/linalg.hpp"
#include "octsh/sh4.hpp"

namespace octsh {

struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Orthogonal 9x9 operator on coefficient vectors (det +1).
struct Rotation9 {
    Mat9 m;

    Vec9 apply(const Vec9& v) const { return m * v; }
    Sh4Coeffs apply(const Sh4Coeffs& a) const { return {m * a.c}; }
    Rotation9 transposed() const { return {m.transposed()}; }

    friend Rotation9 operator*(const Rotation9& a, const Rotation9& b) { return {a.m * b.m}; }

    double orthogonality_error() const {
        return max_abs_diff((m * m.transposed()), Mat9::identity());
    }
};

/// Banded coefficient rotation about z: cos(k*g) diagonal pairs coupling
/// indices (4-k, 4+k) with +-sin(k*g) off the diagonal, central entry 1.
inline Rotation9 rz_matrix(double gamma) {
    Rotation9 r;
    r.m(4, 4) = 1.0;
    for (int k = 1; k <= 4; ++k) {
        const double c = std::cos(k * gamma);
        const double s = std::sin(k * gamma);
        r.m(4 - k, 4 - k) = c;
        r.m(4 - k, 4 + k) = s;
        r.m(4 + k, 4 - k) = -s;
        r.m(4 + k, 4 + k) = c;
    }
    return r;
}

/// The constant 90-degree x-rotation, all entries over a common factor 1/8.
inline const Rotation9& rx90_matrix() {
    static const Rotation9 rx90 = [] {
        const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0), s7 = std::sqrt(7.0);
        const double s14 = std::sqrt(14.0), s35 = std::sqrt(35.0);
        const double t[9][9] = {
            {0, 0, 0, 0, 0, 2 * s14, 0, -2 * s2, 0},
            {0, -6, 0, 2 * s7, 0, 0, 0, 0, 0},
            {0, 0, 0, 0, 0, 2 * s2, 0, 2 * s14, 0},
            {0, 2 * s7, 0, 6, 0, 0, 0, 0, 0},
            {0, 0, 0, 0, 3, 0, 2 * s5, 0, s35},
            {-2 * s14, 0, -2 * s2, 0, 0, 0, 0, 0, 0},
            {0, 0, 0, 0, 2 * s5, 0, 4, 0, -2 * s7},
            {2 * s2, 0, -2 * s14, 0, 0, 0, 0, 0, 0},
            {0, 0, 0, 0, s35, 0, -2 * s7, 0, 1},
        };
        Rotation9 r;
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j) r.m(i, j) = t[i][j] / 8.0;
        return r;
    }();
    return rx90;
}

inline Rotation9 ry_matrix(double beta) {
    const Rotation9& rx90 = rx90_matrix();
    return rx90 * rz_matrix(beta) * rx90.transposed();
}

inline const Rotation9& ry90_matrix() {
    static const Rotation9 ry90 = ry_matrix(std::numbers::pi / 2.0);
    return ry90;
}

inline Rotation9 rx_matrix(double alpha) {
    const Rotation9& ry90 = ry90_matrix();
    return ry90.transposed() * rz_matrix(alpha) * ry90;
}

/// Coefficient action a -> Rx(alpha) * Ry(beta) * Rz(gamma) * a.
inline Sh4Coeffs rotate_coeffs(const Sh4Coeffs& a, const EulerAngles& e) {
    Vec9 v = rz_matrix(e.gamma).apply(a.c);
    v = ry_matrix(e.beta).apply(v);
    v = rx_matrix(e.alpha).apply(v);
    return {v};
}

namespace detail {

inline Mat3 rot3_x(double a) {
    Mat3 m = Mat3::identity();
    const double c = std::cos(a), s = std::sin(a);
    m(1, 1) = c;
    m(1, 2) = -s;
    m(2, 1) = s;
    m(2, 2) = c;
    return m;
}

inline Mat3 rot3_y(double a) {
    Mat3 m = Mat3::identity();
    const double c = std::cos(a), s = std::sin(a);
    m(0, 0) = c;
    m(0, 2) = s;
    m(2, 0) = -s;
    m(2, 2) = c;
    return m;
}

inline Mat3 rot3_z(double a) {
    Mat3 m = Mat3::identity();
    const double c = std::cos(a), s = std::sin(a);
    m(0, 0) = c;
    m(0, 1) = -s;
    m(1, 0) = s;
    m(1, 1) = c;
    return m;
}

}  // namespace detail

/// Sphere-domain counterpart of rotate_coeffs: the 3x3 rotation R such that
/// the rotated harmonic evaluated at p equals the original at R^T p.
inline Mat3 rotation3_from_euler(const EulerAngles& e) {
    return detail::rot3_x(e.alpha) * detail::rot3_y(-e.beta) * detail::rot3_z(e.gamma);
}

}  // namespace octsh
