#pragma once

// Implicit representation of the manifold of normalized octahedrally
// symmetric harmonics: the five symmetric quadric matrices, residuals against
// the defining system { a^T a = 1, a^T S_k a = 0 }, the rotation-invariant
// deviation measure d(a) = sum_k (a^T S_k a)^2, the weighted penalty
//   p(a; w1, w2) = w1 (a^T a - 1)^2 + w2 d(a)
// with its analytic gradient, and a gradient-descent symmetrizer driven by it.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "octsh/linalg.hpp"
#include "octsh/sh4.hpp"

namespace octsh {

/// The five symmetric 9x9 quadric matrices, global factors sqrt(2), sqrt(3),
/// sqrt(3), sqrt(6), sqrt(6).
struct QuadricSet {
    std::array<Mat9, 5> s;
};

namespace detail {

inline Mat9 symmetric_from_upper(std::initializer_list<std::array<double, 3>> entries,
                                 double factor) {
    Mat9 m;
    for (const auto& e : entries) {
        const int i = static_cast<int>(e[0]);
        const int j = static_cast<int>(e[1]);
        m(i, j) = factor * e[2];
        m(j, i) = factor * e[2];
    }
    return m;
}

}  // namespace detail

/// Initialize-once read-only quadric set.
inline const QuadricSet& quadric_matrices() {
    static const QuadricSet q = [] {
        const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
        const double s5 = std::sqrt(5.0), s7 = std::sqrt(7.0);
        QuadricSet q;
        // S1: diagonal.
        {
            const double d[9] = {28, 7, -8, -17, -20, -17, -8, 7, 28};
            for (int i = 0; i < 9; ++i) q.s[0](i, i) = r2 * d[i];
        }
        // S2: couplings of adjacent orders.
        q.s[1] = detail::symmetric_from_upper(
            {{0, 1, 14}, {1, 2, 5 * s7}, {2, 3, 9}, {4, 5, 2 * s5}, {5, 6, 9}, {6, 7, 5 * s7}, {7, 8, 14}},
            r3);
        // S3: cross couplings (i, 7-i) and (i, 9-i).
        q.s[2] = detail::symmetric_from_upper({{0, 7, 14},
                                               {1, 6, 5 * s7},
                                               {1, 8, -14},
                                               {2, 5, 9},
                                               {2, 7, -5 * s7},
                                               {3, 4, 2 * s5},
                                               {3, 6, -9}},
                                              r3);
        q.s[3] = detail::symmetric_from_upper({{0, 2, 2 * s7},
                                               {1, 3, 3 * s7},
                                               {3, 3, 10},
                                               {4, 6, 6 * s5},
                                               {5, 5, -10},
                                               {5, 7, 3 * s7},
                                               {6, 8, 2 * s7}},
                                              r6);
        q.s[4] = detail::symmetric_from_upper({{0, 6, 2 * s7},
                                               {1, 5, 3 * s7},
                                               {2, 4, 6 * s5},
                                               {2, 8, -2 * s7},
                                               {3, 5, -10},
                                               {3, 7, -3 * s7}},
                                              r6);
        return q;
    }();
    return q;
}

/// Residuals of the defining system: norm residual a^T a - 1 and the five
/// quadric values a^T S_k a.
struct ResidualVector {
    double norm_residual = 0.0;
    std::array<double, 5> quadric_residuals{};

    double max_abs() const {
        double worst = std::abs(norm_residual);
        for (double r : quadric_residuals) worst = std::max(worst, std::abs(r));
        return worst;
    }
};

inline ResidualVector residuals(const Sh4Coeffs& a) {
    const QuadricSet& q = quadric_matrices();
    ResidualVector out;
    out.norm_residual = dot(a.c, a.c) - 1.0;
    for (std::size_t k = 0; k < 5; ++k) out.quadric_residuals[k] = dot(a.c, q.s[k] * a.c);
    return out;
}

/// Rotation-invariant deviation from octahedral symmetry.
inline double deviation(const Sh4Coeffs& a) {
    const QuadricSet& q = quadric_matrices();
    double d = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
        const double r = dot(a.c, q.s[k] * a.c);
        d += r * r;
    }
    return d;
}

inline bool is_on_manifold(const Sh4Coeffs& a, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("is_on_manifold: tol must be positive");
    return residuals(a).max_abs() <= tol;
}

/// Knobs for the penalty-descent symmetrizer. The default weights put the
/// deviation term two-plus orders below the scale term; with them the square
/// root of the penalty tracks the distance to the manifold within a small
/// constant factor along the whole descent (equal weights make the deviation
/// term dominate early iterates by a factor of tens and lose that behavior).
struct DescentConfig {
    double w1 = 1.0;
    double w2 = 0.005;
    double initial_step = 0.1;
    int max_iterations = 500;
    double penalty_tolerance = 1e-12;
    double backtracking_factor = 0.5;
    double armijo_constant = 1e-4;

    void validate() const {
        if (!(w1 > 0.0) || !(w2 > 0.0)) throw std::invalid_argument("DescentConfig: weights must be positive");
        if (!(initial_step > 0.0)) throw std::invalid_argument("DescentConfig: initial_step must be positive");
        if (max_iterations <= 0) throw std::invalid_argument("DescentConfig: max_iterations must be positive");
        if (!(penalty_tolerance > 0.0)) throw std::invalid_argument("DescentConfig: penalty_tolerance must be positive");
        if (!(backtracking_factor > 0.0 && backtracking_factor < 1.0))
            throw std::invalid_argument("DescentConfig: backtracking_factor must be in (0,1)");
        if (!(armijo_constant > 0.0 && armijo_constant < 1.0))
            throw std::invalid_argument("DescentConfig: armijo_constant must be in (0,1)");
    }
};

inline double penalty(const Sh4Coeffs& a, const DescentConfig& cfg) {
    cfg.validate();
    const double nr = dot(a.c, a.c) - 1.0;
    return cfg.w1 * nr * nr + cfg.w2 * deviation(a);
}

/// Analytic gradient: 4*w1*(a^T a - 1)*a + 4*w2*sum_k (a^T S_k a) S_k a.
inline Vec9 penalty_gradient(const Sh4Coeffs& a, const DescentConfig& cfg) {
    cfg.validate();
    const QuadricSet& q = quadric_matrices();
    Vec9 g = (4.0 * cfg.w1 * (dot(a.c, a.c) - 1.0)) * a.c;
    for (std::size_t k = 0; k < 5; ++k) {
        const Vec9 sa = q.s[k] * a.c;
        g = g + (4.0 * cfg.w2 * dot(a.c, sa)) * sa;
    }
    return g;
}

enum class DescentStatus {
    converged,        // penalty <= penalty_tolerance reached
    not_converged,    // max_iterations hit (or the line search stalled)
    degenerate_start  // gradient vanishes at a0 while penalty > tolerance
};

/// One accepted iterate; record 0 is the starting point (step_size 0).
struct DescentRecord {
    int index = 0;
    Sh4Coeffs a;
    double penalty = 0.0;
    double sqrt_penalty = 0.0;
    double step_size = 0.0;
    double gradient_norm = 0.0;
    std::optional<double> distance;  // filled by callers that request the quotient oracle
};

struct DescentTrace {
    std::vector<DescentRecord> iterations;
};

struct SymmetrizeResult {
    DescentStatus status = DescentStatus::not_converged;
    DescentTrace trace;

    const Sh4Coeffs& final_coeffs() const { return trace.iterations.back().a; }
    double final_penalty() const { return trace.iterations.back().penalty; }
};

/// Gradient descent with Armijo backtracking line search on the penalty.
/// The trial step is warm-started from the Barzilai-Borwein estimate
/// s.y / y.y of the local inverse curvature (falling back to initial_step),
/// then backtracked until the Armijo condition holds, so accepted penalties
/// decrease strictly.
inline SymmetrizeResult symmetrize(const Sh4Coeffs& a0, const DescentConfig& cfg = {}) {
    cfg.validate();
    if (!a0.all_finite()) throw std::invalid_argument("symmetrize: starting point must be finite");

    SymmetrizeResult result;
    Sh4Coeffs a = a0;
    double p = penalty(a, cfg);
    Vec9 g = penalty_gradient(a, cfg);
    double gn = norm(g);
    result.trace.iterations.push_back({0, a, p, std::sqrt(p), 0.0, gn, std::nullopt});

    if (p <= cfg.penalty_tolerance) {
        result.status = DescentStatus::converged;
        return result;
    }
    if (gn == 0.0) {
        result.status = DescentStatus::degenerate_start;
        return result;
    }

    bool have_prev = false;
    Vec9 prev_a{}, prev_g{};
    result.status = DescentStatus::not_converged;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        double t = cfg.initial_step;
        if (have_prev) {
            const Vec9 s = a.c - prev_a;
            const Vec9 y = g - prev_g;
            const double sy = dot(s, y);
            const double yy = dot(y, y);
            if (sy > 0.0 && yy > 0.0) t = std::clamp(sy / yy, 1e-8, 1e3);
        }

        const double gn2 = gn * gn;
        Sh4Coeffs next;
        double pn = p;
        bool accepted = false;
        while (t > 1e-20) {
            next = {a.c - t * g};
            pn = penalty(next, cfg);
            if (pn <= p - cfg.armijo_constant * t * gn2) {
                accepted = true;
                break;
            }
            t *= cfg.backtracking_factor;
        }
        if (!accepted) break;  // stalled: gradient no longer yields descent at any step

        prev_a = a.c;
        prev_g = g;
        have_prev = true;
        a = next;
        p = pn;
        g = penalty_gradient(a, cfg);
        gn = norm(g);
        result.trace.iterations.push_back({it, a, p, std::sqrt(p), t, gn, std::nullopt});

        if (p <= cfg.penalty_tolerance) {
            result.status = DescentStatus::converged;
            break;
        }
    }
    return result;
}

}  // namespace octsh
