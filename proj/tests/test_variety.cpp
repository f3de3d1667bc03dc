#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "octsh/quotient.hpp"
#include "octsh/rotation.hpp"
#include "octsh/sh4.hpp"
#include "octsh/variety.hpp"
#include "oracles.hpp"

using namespace octsh;

TEST_CASE("quadric matrices: printed entries, symmetry, zero trace") {
    const QuadricSet& q = quadric_matrices();
    const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);

    const double diag1[9] = {28, 7, -8, -17, -20, -17, -8, 7, 28};
    for (int i = 0; i < 9; ++i) CHECK(q.s[0](i, i) == r2 * diag1[i]);

    CHECK(q.s[2](0, 7) == r3 * 14.0);
    CHECK(q.s[2](1, 8) == -r3 * 14.0);

    for (const Mat9& s : q.s) {
        double trace = 0.0;
        for (int i = 0; i < 9; ++i) {
            trace += s(i, i);
            for (int j = 0; j < 9; ++j) CHECK(s(i, j) == s(j, i));
        }
        CHECK(std::abs(trace) <= 1e-12);
    }
}

TEST_CASE("residuals at distinguished points") {
    SUBCASE("reference harmonic") {
        CHECK(residuals(reference_harmonic()).max_abs() <= 1e-12);
    }
    SUBCASE("zero vector") {
        const ResidualVector r = residuals(Sh4Coeffs{});
        CHECK(r.norm_residual == -1.0);
        for (double v : r.quadric_residuals) CHECK(v == 0.0);
    }
    SUBCASE("first basis vector") {
        Sh4Coeffs e0;
        e0.c[0] = 1.0;
        const ResidualVector r = residuals(e0);
        CHECK(r.norm_residual == 0.0);
        CHECK(r.quadric_residuals[0] == doctest::Approx(28.0 * std::sqrt(2.0)).epsilon(1e-15));
        for (std::size_t k = 1; k < 5; ++k) CHECK(r.quadric_residuals[k] == 0.0);
    }
}

TEST_CASE("deviation: zero on the orbit, quartic homogeneity, known value") {
    std::mt19937_64 rng(61);
    const Sh4Coeffs atil = reference_harmonic();

    SUBCASE("vanishes on random rotations of the reference harmonic") {
        for (int t = 0; t < 100; ++t)
            CHECK(deviation(rotate_coeffs(atil, oracles::random_euler(rng))) <= 1e-18);
    }
    SUBCASE("scales as lambda^4") {
        for (int t = 0; t < 100; ++t) {
            const Sh4Coeffs a{oracles::random_gaussian9(rng)};
            const double lam = 0.3 + 2.0 * t / 100.0;
            const double lhs = deviation(Sh4Coeffs{lam * a.c});
            const double rhs = std::pow(lam, 4) * deviation(a);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
    SUBCASE("unit vector along index 0") {
        Sh4Coeffs e0;
        e0.c[0] = 1.0;
        CHECK(deviation(e0) == doctest::Approx(1568.0).epsilon(1e-12));
    }
}

TEST_CASE("deviation is rotation invariant for arbitrary vectors") {
    std::mt19937_64 rng(67);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const Sh4Coeffs a{oracles::random_in_ball9(rng, 2.0)};
        const double d1 = deviation(a);
        const double d2 = deviation(rotate_coeffs(a, oracles::random_euler(rng)));
        worst = std::max(worst, std::abs(d1 - d2) / (1.0 + d1));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("individual quadric values are not separately invariant") {
    // Guards against degenerate implementations: only the sum of squares is
    // preserved, single residuals must move under a generic rotation.
    std::mt19937_64 rng(71);
    const Sh4Coeffs a{oracles::random_unit9(rng)};
    const ResidualVector before = residuals(a);
    bool moved = false;
    for (int t = 0; t < 20 && !moved; ++t) {
        const ResidualVector after = residuals(rotate_coeffs(a, oracles::random_euler(rng)));
        for (std::size_t k = 0; k < 5; ++k)
            if (std::abs(after.quadric_residuals[k] - before.quadric_residuals[k]) > 1e-3) moved = true;
    }
    CHECK(moved);
}

TEST_CASE("penalty values at distinguished points") {
    DescentConfig cfg11;
    cfg11.w1 = cfg11.w2 = 1.0;
    const Sh4Coeffs atil = reference_harmonic();

    CHECK(penalty(atil, cfg11) <= 1e-16);
    CHECK(penalty(atil, DescentConfig{}) <= 1e-16);
    CHECK(penalty(Sh4Coeffs{}, cfg11) == cfg11.w1);
    {
        DescentConfig cfg;
        cfg.w1 = 3.5;
        CHECK(penalty(Sh4Coeffs{}, cfg) == 3.5);
    }
    CHECK(penalty(Sh4Coeffs{2.0 * atil.c}, cfg11) == doctest::Approx(9.0).epsilon(1e-13));

    DescentConfig bad;
    bad.w2 = -1.0;
    CHECK_THROWS_AS(penalty(atil, bad), std::invalid_argument);
}

TEST_CASE("penalty gradient: stationary points and finite differences") {
    std::mt19937_64 rng(73);
    DescentConfig cfg11;
    cfg11.w1 = cfg11.w2 = 1.0;
    const Sh4Coeffs atil = reference_harmonic();

    SUBCASE("vanishes at the reference harmonic") {
        CHECK(norm(penalty_gradient(atil, DescentConfig{})) <= 1e-14);
        // With unit weights the ~4e-15 quadric residuals of the stored
        // reference harmonic are amplified by |S_k a| ~ 33.
        CHECK(norm(penalty_gradient(atil, cfg11)) <= 1e-11);
    }
    SUBCASE("matches central finite differences") {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const Sh4Coeffs a{oracles::random_in_ball9(rng, 1.0)};
            const Vec9 g = penalty_gradient(a, cfg11);
            const Vec9 fd = oracles::fd_penalty_gradient(a, cfg11);
            for (std::size_t i = 0; i < 9; ++i) worst = std::max(worst, std::abs(g[i] - fd[i]));
        }
        CHECK(worst <= 1e-6);
    }
    SUBCASE("radially scaled reference harmonic leaves only the norm term") {
        const Vec9 g = penalty_gradient(Sh4Coeffs{2.0 * atil.c}, cfg11);
        const Vec9 expect = 24.0 * atil.c;
        for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(g[i] - expect[i]) <= 1e-11);
    }
}

TEST_CASE("is_on_manifold") {
    const Sh4Coeffs atil = reference_harmonic();
    CHECK(is_on_manifold(atil, 1e-10));
    CHECK_FALSE(is_on_manifold(Sh4Coeffs{0.99 * atil.c}, 1e-10));
    std::mt19937_64 rng(79);
    for (int t = 0; t < 50; ++t)
        CHECK(is_on_manifold(rotate_coeffs(atil, oracles::random_euler(rng)), 1e-9));
    CHECK_THROWS_AS(is_on_manifold(atil, 0.0), std::invalid_argument);
}

TEST_CASE("symmetrize: trivial, perturbed, and degenerate starts") {
    std::mt19937_64 rng(83);
    const Sh4Coeffs atil = reference_harmonic();

    SUBCASE("already symmetric start terminates immediately") {
        const SymmetrizeResult r = symmetrize(atil);
        CHECK(r.status == DescentStatus::converged);
        CHECK(r.trace.iterations.size() == 1);
    }
    SUBCASE("perturbed reference harmonic converges with unit weights") {
        DescentConfig cfg;
        cfg.w1 = cfg.w2 = 1.0;
        cfg.max_iterations = 200;
        for (int t = 0; t < 10; ++t) {
            Vec9 d = oracles::random_unit9(rng);
            const SymmetrizeResult r = symmetrize(Sh4Coeffs{atil.c + 0.1 * d}, cfg);
            CHECK(r.status == DescentStatus::converged);
            CHECK(r.final_penalty() <= 1e-12);
            CHECK(residuals(r.final_coeffs()).max_abs() <= 1e-6);
        }
    }
    SUBCASE("sqrt penalty decreases strictly along accepted steps") {
        const Sh4Coeffs a0{oracles::random_unit9(rng)};
        const SymmetrizeResult r = symmetrize(a0);
        const auto& it = r.trace.iterations;
        for (std::size_t i = 1; i < it.size(); ++i) CHECK(it[i].sqrt_penalty < it[i - 1].sqrt_penalty);
        for (const DescentRecord& rec : it)
            CHECK(rec.sqrt_penalty == doctest::Approx(std::sqrt(rec.penalty)).epsilon(1e-15));
        if (r.status == DescentStatus::converged)
            CHECK(it.back().sqrt_penalty <= std::sqrt(DescentConfig{}.penalty_tolerance));
    }
    SUBCASE("zero start is reported as degenerate, not perturbed away") {
        const SymmetrizeResult r = symmetrize(Sh4Coeffs{});
        CHECK(r.status == DescentStatus::degenerate_start);
        CHECK(r.trace.iterations.size() == 1);
    }
    SUBCASE("iteration cap reports non-convergence with the trace intact") {
        DescentConfig cfg;
        cfg.max_iterations = 2;
        const SymmetrizeResult r = symmetrize(Sh4Coeffs{oracles::random_unit9(rng)}, cfg);
        CHECK(r.status == DescentStatus::not_converged);
        CHECK(r.trace.iterations.size() == 3);  // start + two accepted steps
    }
    SUBCASE("non-finite start is rejected") {
        Sh4Coeffs bad = atil;
        bad.c[2] = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(symmetrize(bad), std::invalid_argument);
    }
}

TEST_CASE("deviation separates the manifold from distant unit vectors") {
    std::mt19937_64 rng(89);
    const NearestSymmetricSearcher searcher(4096, 42);
    int far_points = 0;
    for (int t = 0; t < 100; ++t) {
        const Sh4Coeffs a{oracles::random_unit9(rng)};
        if (searcher.find(a, 40).distance > 0.3) {
            ++far_points;
            CHECK(deviation(a) > 1e-4);
        }
    }
    CHECK(far_points > 50);
}
