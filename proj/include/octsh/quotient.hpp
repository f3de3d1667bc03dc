#pragma once

// The quotient SO(3) / (octahedral rotation group): the 24-element group as
// unit quaternions, reduction of rotations into the truncated-cube
// fundamental zone of Rodrigues space, the quotient (misorientation)
// distance, and a search for the closest point of the reference harmonic's
// rotation orbit to an arbitrary coefficient vector.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "octsh/linalg.hpp"
#include "octsh/rotation.hpp"
#include "octsh/sh4.hpp"

namespace octsh {

struct UnitQuaternion {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    static UnitQuaternion from_axis_angle(Vec3 axis, double angle) {
        const double n = octsh::norm(axis);
        if (n == 0.0) throw std::invalid_argument("from_axis_angle: zero axis");
        const double s = std::sin(angle / 2.0) / n;
        return {std::cos(angle / 2.0), s * axis[0], s * axis[1], s * axis[2]};
    }

    UnitQuaternion conjugate() const { return {w, -x, -y, -z}; }

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    UnitQuaternion normalized() const {
        const double n = norm();
        return {w / n, x / n, y / n, z / n};
    }

    /// Sign canonicalization: w >= 0, and if w == 0 the first nonzero of
    /// (x, y, z) is made positive, so q and -q share one representative.
    UnitQuaternion canonical() const {
        double lead = w;
        if (lead == 0.0) lead = (x != 0.0) ? x : (y != 0.0) ? y : z;
        if (lead < 0.0) return {-w, -x, -y, -z};
        return *this;
    }

    /// Rotation angle in [0, pi]; atan2-based so tiny angles keep full
    /// precision (acos loses half the digits near 1).
    double rotation_angle() const {
        return 2.0 * std::atan2(std::sqrt(x * x + y * y + z * z), std::abs(w));
    }

    Mat3 to_matrix() const {
        Mat3 m;
        m(0, 0) = 1 - 2 * (y * y + z * z);
        m(0, 1) = 2 * (x * y - w * z);
        m(0, 2) = 2 * (x * z + w * y);
        m(1, 0) = 2 * (x * y + w * z);
        m(1, 1) = 1 - 2 * (x * x + z * z);
        m(1, 2) = 2 * (y * z - w * x);
        m(2, 0) = 2 * (x * z - w * y);
        m(2, 1) = 2 * (y * z + w * x);
        m(2, 2) = 1 - 2 * (x * x + y * y);
        return m;
    }

    friend UnitQuaternion operator*(const UnitQuaternion& p, const UnitQuaternion& q) {
        return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
                p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
                p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
                p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
    }
};

/// Rodrigues vector tan(theta/2) * axis. Rotations at angle pi have no finite
/// representative; reduced rotations never reach them (max angle ~62.8 deg).
struct RodriguesVector {
    Vec3 r{};
};

inline RodriguesVector rodrigues_from_quaternion(const UnitQuaternion& q_in) {
    const UnitQuaternion q = q_in.canonical();
    if (q.w == 0.0) throw std::domain_error("rodrigues_from_quaternion: angle-pi rotation");
    return {{q.x / q.w, q.y / q.w, q.z / q.w}};
}

inline UnitQuaternion quaternion_from_rodrigues(const RodriguesVector& r) {
    const double t2 = dot(r.r, r.r);
    const double w = 1.0 / std::sqrt(1.0 + t2);
    return {w, w * r.r[0], w * r.r[1], w * r.r[2]};
}

/// The 24 rotations of the cube/octahedron as canonicalized quaternions.
/// Element 0 is the identity.
struct OctahedralGroup {
    std::array<UnitQuaternion, 24> elements;
};

inline const OctahedralGroup& octahedral_group() {
    static const OctahedralGroup group = [] {
        OctahedralGroup g;
        constexpr double pi = std::numbers::pi;
        int n = 0;
        g.elements[n++] = UnitQuaternion{};  // identity
        // 90-degree turns (both senses) and half turns about coordinate axes.
        const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        for (const Vec3& ax : axes)
            for (double ang : {pi / 2, -pi / 2, pi})
                g.elements[n++] = UnitQuaternion::from_axis_angle(ax, ang).canonical();
        // 120-degree turns about the four body diagonals.
        for (double sx : {1.0, -1.0})
            for (double sy : {1.0, -1.0})
                for (double ang : {2 * pi / 3, -2 * pi / 3})
                    g.elements[n++] = UnitQuaternion::from_axis_angle({sx, sy, 1}, ang).canonical();
        // Half turns about the six edge midpoints.
        const Vec3 edges[6] = {{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}};
        for (const Vec3& ax : edges) g.elements[n++] = UnitQuaternion::from_axis_angle(ax, pi).canonical();
        return g;
    }();
    return group;
}

/// Truncated-cube membership: max |r_i| <= sqrt(2) - 1 + tol and
/// |r_1| + |r_2| + |r_3| <= 1 + tol.
inline bool in_fundamental_zone(const RodriguesVector& r, double tol) {
    if (tol < 0.0) throw std::invalid_argument("in_fundamental_zone: tol must be non-negative");
    const double face = std::numbers::sqrt2 - 1.0;
    double mx = 0.0, sum = 0.0;
    for (double v : r.r) {
        mx = std::max(mx, std::abs(v));
        sum += std::abs(v);
    }
    return mx <= face + tol && sum <= 1.0 + tol;
}

struct FzReduction {
    UnitQuaternion q_reduced;
    int symmetry_index = 0;
};

/// Multiplies q by the group element that minimizes the rotation angle of the
/// product; ties break toward the smallest index. The reduced rotation's
/// Rodrigues vector lies in the truncated cube.
inline FzReduction reduce_to_fundamental_zone(const UnitQuaternion& q) {
    const OctahedralGroup& g = octahedral_group();
    int best = 0;
    double best_w = -1.0;
    for (int i = 0; i < 24; ++i) {
        const UnitQuaternion p = q * g.elements[i];
        const double aw = std::abs(p.w);
        if (aw > best_w + 1e-15) {
            best_w = aw;
            best = i;
        }
    }
    return {(q * g.elements[best]).canonical(), best};
}

/// Minimal rotation angle between q1 and q2 modulo the octahedral group, in
/// radians. Symmetric, and invariant to composing either argument with any
/// group element.
inline double quotient_distance(const UnitQuaternion& q1, const UnitQuaternion& q2) {
    const UnitQuaternion rel = q1.conjugate() * q2;
    const OctahedralGroup& g = octahedral_group();
    double best_w = -1.0;
    UnitQuaternion best;
    for (const UnitQuaternion& s : g.elements) {
        const UnitQuaternion p = rel * s;
        if (std::abs(p.w) > best_w) {
            best_w = std::abs(p.w);
            best = p;
        }
    }
    return best.rotation_angle();
}

/// Quaternion of the same rotation rotation3_from_euler(e) produces,
/// composed factor by factor in the same convention.
inline UnitQuaternion quaternion_from_euler(const EulerAngles& e) {
    const UnitQuaternion qx{std::cos(e.alpha / 2), std::sin(e.alpha / 2), 0, 0};
    const UnitQuaternion qy{std::cos(-e.beta / 2), 0, std::sin(-e.beta / 2), 0};
    const UnitQuaternion qz{std::cos(e.gamma / 2), 0, 0, std::sin(e.gamma / 2)};
    return (qx * qy) * qz;
}

/// Euler angles of a 3x3 rotation in the library's composition convention.
/// Within ~1e-9 of gimbal lock (|beta| = pi/2) the alpha/gamma split is
/// noise-dominated, so that branch sets alpha to 0 and lets gamma absorb the
/// degenerate direction; row 1 stays well-conditioned there.
inline EulerAngles euler_from_matrix(const Mat3& m) {
    const double sb = m(0, 2);  // sin(-beta)
    const double cb = std::hypot(m(1, 2), m(2, 2));
    EulerAngles e;
    e.beta = -std::atan2(sb, cb);
    if (cb < 1e-9) {
        e.alpha = 0.0;
        e.gamma = std::atan2(m(1, 0), m(1, 1));
    } else {
        e.alpha = std::atan2(-m(1, 2), m(2, 2));
        e.gamma = std::atan2(-m(0, 1), m(0, 0));
    }
    return e;
}

/// Inverse of quaternion_from_euler up to quaternion sign.
inline EulerAngles euler_from_quaternion(const UnitQuaternion& q) {
    return euler_from_matrix(q.to_matrix());
}

struct NearestResult {
    double distance = 0.0;
    UnitQuaternion q_best;
    int sign = 1;
};

/// Search machinery for the closest point of { +-R(e) a_ref } to a query
/// vector: a seeded coarse grid of uniform random rotations evaluated against
/// both signs, followed by derivative-free coordinate descent on the Euler
/// angles with shrinking steps. The grid is built once per searcher and the
/// searcher is immutable afterwards, so concurrent find() calls are safe.
class NearestSymmetricSearcher {
public:
    explicit NearestSymmetricSearcher(int grid_size = 4096, std::uint64_t seed = 42) {
        if (grid_size < 1) throw std::invalid_argument("NearestSymmetricSearcher: grid_size must be positive");
        std::mt19937_64 rng(seed);
        const Sh4Coeffs ref = reference_harmonic();
        grid_.reserve(static_cast<std::size_t>(grid_size));
        for (int i = 0; i < grid_size; ++i) {
            const UnitQuaternion q = random_quaternion(rng);
            grid_.push_back({q, rotate_coeffs(ref, euler_from_quaternion(q))});
        }
    }

    NearestResult find(const Sh4Coeffs& a, int refine_iters = 120) const {
        if (!a.all_finite()) throw std::invalid_argument("nearest_symmetric: query must be finite");

        // Coarse stage: best grid point over both signs.
        double best_d2 = std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        int best_sign = 1;
        for (std::size_t gi = 0; gi < grid_.size(); ++gi) {
            for (int sign : {1, -1}) {
                double d2 = 0.0;
                for (std::size_t i = 0; i < 9; ++i) {
                    const double diff = a.c[i] - sign * grid_[gi].coeffs.c[i];
                    d2 += diff * diff;
                }
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best_idx = gi;
                    best_sign = sign;
                }
            }
        }

        // Refinement: coordinate descent over incremental Euler offsets with
        // shrinking steps. Each trial composes a single-axis rotation onto
        // the current best orbit point; accepted moves are folded into the
        // anchor, so every step works in a fresh chart around the identity
        // and the search never sits near a gimbal-locked parametrization.
        Sh4Coeffs b = grid_[best_idx].coeffs;
        UnitQuaternion q = grid_[best_idx].quat;
        double fe = best_d2;
        const auto dist2 = [&a, best_sign](const Sh4Coeffs& cand) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < 9; ++i) {
                const double diff = a.c[i] - best_sign * cand.c[i];
                d2 += diff * diff;
            }
            return d2;
        };

        double h = 0.1;
        for (int sweep = 0; sweep < refine_iters && h > 1e-9; ++sweep) {
            bool improved = false;
            for (int axis = 0; axis < 3; ++axis) {
                for (double dir : {1.0, -1.0}) {
                    const double ang = dir * h;
                    const Rotation9 step = axis == 0   ? rx_matrix(ang)
                                           : axis == 1 ? ry_matrix(ang)
                                                       : rz_matrix(ang);
                    const Sh4Coeffs cand = step.apply(b);
                    const double ft = dist2(cand);
                    if (ft < fe) {
                        fe = ft;
                        b = cand;
                        q = axis_step_quaternion(axis, ang) * q;
                        improved = true;
                    }
                }
            }
            if (!improved) h *= 0.5;
        }

        NearestResult out;
        out.distance = std::sqrt(std::max(fe, 0.0));
        out.sign = best_sign;
        out.q_best = reduce_to_fundamental_zone(q).q_reduced;
        return out;
    }

    static UnitQuaternion random_quaternion(std::mt19937_64& rng) {
        // Shoemake's method over raw 53-bit uniforms, so results depend only
        // on the engine (identical across standard libraries).
        const auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        const double u1 = uniform(), u2 = uniform(), u3 = uniform();
        constexpr double two_pi = 2.0 * std::numbers::pi;
        const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
        return UnitQuaternion{a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
                              b * std::sin(two_pi * u3), b * std::cos(two_pi * u3)}
            .canonical();
    }

private:
    struct GridPoint {
        UnitQuaternion quat;
        Sh4Coeffs coeffs;
    };

    /// Quaternion counterpart of the single-axis coefficient rotations
    /// rx_matrix / ry_matrix / rz_matrix (the y operator turns by -ang).
    static UnitQuaternion axis_step_quaternion(int axis, double ang) {
        const double c = std::cos(ang / 2), s = std::sin(ang / 2);
        if (axis == 0) return {c, s, 0, 0};
        if (axis == 1) return {c, 0, -s, 0};
        return {c, 0, 0, s};
    }

    std::vector<GridPoint> grid_;
};

/// One-off convenience wrapper around NearestSymmetricSearcher; builds the
/// default grid on first use and keeps it.
inline NearestResult nearest_symmetric(const Sh4Coeffs& a, int refine_iters = 120) {
    static const NearestSymmetricSearcher searcher;
    return searcher.find(a, refine_iters);
}

}  // namespace octsh
