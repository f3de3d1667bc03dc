#pragma once

// Degree-4 real spherical harmonics: coefficient vectors over the orthonormal
// basis Y_{4,-4} ... Y_{4,4}, pointwise evaluation on the unit sphere, the
// octahedrally symmetric reference harmonic, and grid sampling for plot export.
//
// Basis convention (frozen, see rotation.hpp for the consistency test that
// pins it): index i corresponds to order m = i - 4; sin-type harmonics occupy
// indices 0..3, cos-type indices 5..8, and the closed forms below are the
// standard orthonormal real basis written in Cartesian coordinates on the
// unit sphere.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "octsh/linalg.hpp"

namespace octsh {

/// Coefficients of a degree-4 real spherical harmonic, c[i] <-> Y_{4,i-4}.
struct Sh4Coeffs {
    Vec9 c{};

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    double norm() const { return octsh::norm(c); }

    bool all_finite() const {
        for (double v : c)
            if (!std::isfinite(v)) return false;
        return true;
    }

    friend Sh4Coeffs operator+(const Sh4Coeffs& a, const Sh4Coeffs& b) { return {a.c + b.c}; }
    friend Sh4Coeffs operator-(const Sh4Coeffs& a, const Sh4Coeffs& b) { return {a.c - b.c}; }
    friend Sh4Coeffs operator*(double s, const Sh4Coeffs& a) { return {s * a.c}; }
};

/// Point on the unit sphere, polar angle theta in [0, pi], azimuth phi in [0, 2*pi).
struct SphericalPoint {
    double theta = 0.0;
    double phi = 0.0;

    /// Folds arbitrary finite angles into the canonical ranges.
    static SphericalPoint canonical(double theta, double phi) {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        theta = std::fmod(theta, two_pi);
        if (theta < 0.0) theta += two_pi;
        if (theta > std::numbers::pi) {
            theta = two_pi - theta;
            phi += std::numbers::pi;
        }
        phi = std::fmod(phi, two_pi);
        if (phi < 0.0) phi += two_pi;
        return {theta, phi};
    }

    Vec3 direction() const {
        const double st = std::sin(theta);
        return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
    }

    static SphericalPoint from_direction(const Vec3& v) {
        const double r = norm(v);
        const double theta = std::atan2(std::hypot(v[0], v[1]), v[2]);
        double phi = std::atan2(v[1], v[0]);
        if (phi < 0.0) phi += 2.0 * std::numbers::pi;
        if (r == 0.0) return {0.0, 0.0};
        return {theta, phi};
    }
};

/// The reference octahedral harmonic: sqrt(7/12)*Y_{4,0} + sqrt(5/12)*Y_{4,4}.
inline Sh4Coeffs reference_harmonic() {
    Sh4Coeffs a;
    a.c[4] = std::sqrt(7.0 / 12.0);
    a.c[8] = std::sqrt(5.0 / 12.0);
    return a;
}

/// All nine basis values at a unit direction (x, y, z).
inline Vec9 eval_basis_dir(const Vec3& v) {
    constexpr double pi = std::numbers::pi;
    const double x = v[0], y = v[1], z = v[2];
    const double x2 = x * x, y2 = y * y, z2 = z * z;
    // Normalization constants for the orthonormal real basis.
    static const double k44 = 0.75 * std::sqrt(35.0 / pi);
    static const double k43 = 0.75 * std::sqrt(35.0 / (2.0 * pi));
    static const double k42 = 0.75 * std::sqrt(5.0 / pi);
    static const double k41 = 0.75 * std::sqrt(5.0 / (2.0 * pi));
    static const double k40 = (3.0 / 16.0) * std::sqrt(1.0 / pi);
    static const double k44c = (3.0 / 16.0) * std::sqrt(35.0 / pi);
    return {
        k44 * x * y * (x2 - y2),                          // m = -4
        k43 * y * z * (3.0 * x2 - y2),                    // m = -3
        k42 * x * y * (7.0 * z2 - 1.0),                   // m = -2
        k41 * y * z * (7.0 * z2 - 3.0),                   // m = -1
        k40 * (35.0 * z2 * z2 - 30.0 * z2 + 3.0),         // m =  0
        k41 * x * z * (7.0 * z2 - 3.0),                   // m = +1
        0.5 * k42 * (x2 - y2) * (7.0 * z2 - 1.0),         // m = +2
        k43 * x * z * (x2 - 3.0 * y2),                    // m = +3
        k44c * (x2 * (x2 - 3.0 * y2) - y2 * (3.0 * x2 - y2)),  // m = +4
    };
}

inline Vec9 eval_basis(const SphericalPoint& p) { return eval_basis_dir(p.direction()); }

inline double eval_harmonic(const Sh4Coeffs& a, const SphericalPoint& p) {
    return dot(a.c, eval_basis(p));
}

inline double eval_harmonic_dir(const Sh4Coeffs& a, const Vec3& v) {
    return dot(a.c, eval_basis_dir(v));
}

/// Values of a harmonic on a (theta, phi) grid. Theta includes both poles,
/// phi excludes the 2*pi endpoint.
struct SphereSampleGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::vector<double> values;  // row-major, n_theta rows of n_phi

    double at(int j, int k) const { return values[static_cast<std::size_t>(j * n_phi + k)]; }
    double theta_at(int j) const { return std::numbers::pi * j / (n_theta - 1); }
    double phi_at(int k) const { return 2.0 * std::numbers::pi * k / n_phi; }
};

inline SphereSampleGrid sample_sphere(const Sh4Coeffs& a, int n_theta, int n_phi) {
    if (n_theta < 2 || n_phi < 4)
        throw std::invalid_argument("sample_sphere: need n_theta >= 2 and n_phi >= 4");
    SphereSampleGrid grid;
    grid.n_theta = n_theta;
    grid.n_phi = n_phi;
    grid.values.resize(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
    for (int j = 0; j < n_theta; ++j) {
        for (int k = 0; k < n_phi; ++k) {
            const SphericalPoint p{grid.theta_at(j), grid.phi_at(k)};
            grid.values[static_cast<std::size_t>(j * n_phi + k)] = eval_harmonic(a, p);
        }
    }
    return grid;
}

}  // namespace octsh
