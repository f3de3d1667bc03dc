#pragma once

// Small fixed-size linear algebra used throughout the library.
// Everything is a plain value type over std::array; no heap, no aliasing.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace octsh {

using Vec3 = std::array<double, 3>;
using Vec9 = std::array<double, 9>;

struct Mat3 {
    // row-major
    std::array<double, 9> m{};

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }

    static Mat3 identity() {
        Mat3 out;
        out(0, 0) = out(1, 1) = out(2, 2) = 1.0;
        return out;
    }

    Mat3 transposed() const {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += a(r, k) * b(k, c);
                out(r, c) = s;
            }
        return out;
    }

    friend Vec3 operator*(const Mat3& a, const Vec3& v) {
        Vec3 out{};
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(r)] += a(r, k) * v[static_cast<std::size_t>(k)];
        return out;
    }

    double det() const {
        const Mat3& a = *this;
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    }
};

struct Mat9 {
    // row-major
    std::array<double, 81> m{};

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(9 * r + c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(9 * r + c)]; }

    static Mat9 identity() {
        Mat9 out;
        for (int i = 0; i < 9; ++i) out(i, i) = 1.0;
        return out;
    }

    Mat9 transposed() const {
        Mat9 out;
        for (int r = 0; r < 9; ++r)
            for (int c = 0; c < 9; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend Mat9 operator*(const Mat9& a, const Mat9& b) {
        Mat9 out;
        for (int r = 0; r < 9; ++r)
            for (int k = 0; k < 9; ++k) {
                const double ark = a(r, k);
                if (ark == 0.0) continue;
                for (int c = 0; c < 9; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

    friend Vec9 operator*(const Mat9& a, const Vec9& v) {
        Vec9 out{};
        for (int r = 0; r < 9; ++r) {
            double s = 0.0;
            for (int k = 0; k < 9; ++k) s += a(r, k) * v[static_cast<std::size_t>(k)];
            out[static_cast<std::size_t>(r)] = s;
        }
        return out;
    }
};

inline double dot(const Vec9& a, const Vec9& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 9; ++i) s += a[i] * b[i];
    return s;
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double norm(const Vec9& a) { return std::sqrt(dot(a, a)); }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec9 operator+(const Vec9& a, const Vec9& b) {
    Vec9 out;
    for (std::size_t i = 0; i < 9; ++i) out[i] = a[i] + b[i];
    return out;
}

inline Vec9 operator-(const Vec9& a, const Vec9& b) {
    Vec9 out;
    for (std::size_t i = 0; i < 9; ++i) out[i] = a[i] - b[i];
    return out;
}

inline Vec9 operator*(double s, const Vec9& a) {
    Vec9 out;
    for (std::size_t i = 0; i < 9; ++i) out[i] = s * a[i];
    return out;
}

inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double max_abs_diff(const Mat9& a, const Mat9& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 81; ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
    return worst;
}

}  // namespace octsh
