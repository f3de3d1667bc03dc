// Perturb the reference harmonic, run penalty descent, and print the
// two convergence curves (distance to the nearest symmetric harmonic and
// square root of the penalty) per iteration.

#include <cstdio>
#include <random>

#include "octsh/octsh.hpp"

int main() {
    using namespace octsh;

    const Sh4Coeffs atil = reference_harmonic();

    std::mt19937_64 rng(1);
    std::normal_distribution<double> gauss;
    Vec9 delta{};
    for (auto& v : delta) v = gauss(rng);
    delta = (0.3 / norm(delta)) * delta;

    const SymmetrizeResult result = symmetrize(Sh4Coeffs{atil.c + delta});

    const NearestSymmetricSearcher searcher;
    std::printf("%-6s %-14s %-14s\n", "iter", "distance", "sqrt_penalty");
    for (const DescentRecord& rec : result.trace.iterations) {
        const double dist = searcher.find(rec.a).distance;
        std::printf("%-6d %-14.9f %-14.9f\n", rec.index, dist, rec.sqrt_penalty);
    }
    std::printf("status: %s\n", result.status == DescentStatus::converged ? "converged" : "not converged");

    const ResidualVector r = residuals(result.final_coeffs());
    std::printf("final max residual: %.3e\n", r.max_abs());
    return result.status == DescentStatus::converged ? 0 : 1;
}
