// Command-line front end: construct and rotate octahedral harmonics, check
// residuals and deviation, run penalty-descent symmetrization with a
// convergence trace, search the nearest symmetric harmonic, reduce rotations
// into the fundamental zone, and export sphere samples for plotting.
//
// Exit codes: 0 success, 1 bad arguments, 2 unparseable input file,
// 3 symmetrize did not converge (outputs are still written).

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "octsh/octsh.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitNoConvergence = 3;

std::string quaternion_json(const octsh::UnitQuaternion& q) {
    using octsh::format_double;
    return "{\"w\":" + format_double(q.w) + ",\"x\":" + format_double(q.x) +
           ",\"y\":" + format_double(q.y) + ",\"z\":" + format_double(q.z) + "}";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace octsh;

    CLI::App app{"octsh: degree-4 spherical harmonics with octahedral symmetry"};
    app.require_subcommand(1);

    // --- make ---
    auto* make = app.add_subcommand("make", "Rotate the reference harmonic by Euler angles");
    EulerAngles make_e;
    std::string make_out;
    make->add_option("--alpha", make_e.alpha, "x rotation angle (radians)")->required();
    make->add_option("--beta", make_e.beta, "y rotation angle (radians)")->required();
    make->add_option("--gamma", make_e.gamma, "z rotation angle (radians)")->required();
    make->add_option("--out", make_out, "output coefficient JSON path")->required();

    // --- rotate ---
    auto* rotate = app.add_subcommand("rotate", "Rotate a coefficient file by Euler angles");
    EulerAngles rot_e;
    std::string rot_in, rot_out;
    rotate->add_option("--in", rot_in, "input coefficient JSON")->required();
    rotate->add_option("--alpha", rot_e.alpha, "x rotation angle (radians)")->required();
    rotate->add_option("--beta", rot_e.beta, "y rotation angle (radians)")->required();
    rotate->add_option("--gamma", rot_e.gamma, "z rotation angle (radians)")->required();
    rotate->add_option("--out", rot_out, "output coefficient JSON path")->required();

    // --- residuals ---
    auto* resid = app.add_subcommand("residuals", "Residuals of the defining quadric system");
    std::string resid_in;
    resid->add_option("--in", resid_in, "input coefficient JSON")->required();

    // --- deviation ---
    auto* dev = app.add_subcommand("deviation", "Rotation-invariant deviation from octahedral symmetry");
    std::string dev_in;
    dev->add_option("--in", dev_in, "input coefficient JSON")->required();

    // --- symmetrize ---
    auto* symm = app.add_subcommand("symmetrize", "Project onto the manifold by penalty descent");
    std::string symm_in, symm_out, symm_trace;
    DescentConfig symm_cfg;
    bool track_distance = false;
    symm->add_option("--in", symm_in, "input coefficient JSON")->required();
    symm->add_option("--out", symm_out, "output coefficient JSON path")->required();
    symm->add_option("--trace", symm_trace, "write per-iteration CSV trace here");
    symm->add_option("--w1", symm_cfg.w1, "scale-term weight");
    symm->add_option("--w2", symm_cfg.w2, "deviation-term weight");
    symm->add_option("--max-iter", symm_cfg.max_iterations, "iteration cap");
    symm->add_option("--tol", symm_cfg.penalty_tolerance, "penalty convergence tolerance");
    symm->add_option("--step", symm_cfg.initial_step, "initial line-search step");
    symm->add_flag("--track-distance", track_distance,
                   "fill the trace's distance column (Euclidean distance in R^9 to the nearest "
                   "point of the +-orbit, via seeded search)");

    // --- distance ---
    auto* dist = app.add_subcommand("distance", "Nearest symmetric harmonic (seeded search)");
    std::string dist_in;
    std::uint64_t dist_seed = 42;
    int dist_grid = 4096, dist_refine = 120;
    dist->add_option("--in", dist_in, "input coefficient JSON")->required();
    dist->add_option("--seed", dist_seed, "seed for the coarse rotation grid");
    dist->add_option("--grid", dist_grid, "coarse grid size")->check(CLI::PositiveNumber);
    dist->add_option("--refine", dist_refine, "refinement sweeps")->check(CLI::NonNegativeNumber);

    // --- reduce-rotation ---
    auto* reduce = app.add_subcommand("reduce-rotation", "Reduce a rotation into the fundamental zone");
    double qw = 1, qx = 0, qy = 0, qz = 0;
    reduce->add_option("--qw", qw, "quaternion w")->required();
    reduce->add_option("--qx", qx, "quaternion x")->required();
    reduce->add_option("--qy", qy, "quaternion y")->required();
    reduce->add_option("--qz", qz, "quaternion z")->required();

    // --- sample ---
    auto* sample = app.add_subcommand("sample", "Evaluate a harmonic on a (theta, phi) grid");
    std::string sample_in, sample_out;
    int n_theta = 64, n_phi = 128;
    sample->add_option("--in", sample_in, "input coefficient JSON")->required();
    sample->add_option("--ntheta", n_theta, "polar resolution (>= 2)")->required();
    sample->add_option("--nphi", n_phi, "azimuthal resolution (>= 4)")->required();
    sample->add_option("--out", sample_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*make) {
            const Sh4Coeffs a = rotate_coeffs(reference_harmonic(), make_e);
            write_coeffs_file(make_out, a);
            std::cout << "wrote " << make_out << " (norm " << format_double(a.norm()) << ")\n";
            return kExitOk;
        }

        if (*rotate) {
            const Sh4Coeffs a = rotate_coeffs(read_coeffs_file(rot_in), rot_e);
            write_coeffs_file(rot_out, a);
            std::cout << "wrote " << rot_out << " (norm " << format_double(a.norm()) << ")\n";
            return kExitOk;
        }

        if (*resid) {
            const ResidualVector r = residuals(read_coeffs_file(resid_in));
            std::cout << "{\"norm_residual\":" << format_double(r.norm_residual)
                      << ",\"quadric_residuals\":[";
            for (std::size_t k = 0; k < 5; ++k)
                std::cout << (k ? "," : "") << format_double(r.quadric_residuals[k]);
            std::cout << "]}\n";
            return kExitOk;
        }

        if (*dev) {
            std::cout << format_double(deviation(read_coeffs_file(dev_in))) << "\n";
            return kExitOk;
        }

        if (*symm) {
            const Sh4Coeffs a0 = read_coeffs_file(symm_in);
            SymmetrizeResult result = symmetrize(a0, symm_cfg);
            if (track_distance) {
                const NearestSymmetricSearcher searcher(dist_grid, 42);
                for (DescentRecord& rec : result.trace.iterations)
                    rec.distance = searcher.find(rec.a).distance;
            }
            write_coeffs_file(symm_out, result.final_coeffs());
            if (!symm_trace.empty()) write_text_file(symm_trace, trace_to_csv(result.trace));
            const DescentRecord& last = result.trace.iterations.back();
            std::cout << "iterations: " << last.index << "\n"
                      << "final penalty: " << format_double(last.penalty) << "\n";
            switch (result.status) {
                case DescentStatus::converged:
                    std::cout << "converged\n";
                    return kExitOk;
                case DescentStatus::degenerate_start:
                    std::cout << "degenerate start: gradient vanishes but penalty above tolerance\n";
                    return kExitNoConvergence;
                case DescentStatus::not_converged:
                    std::cout << "did not converge\n";
                    return kExitNoConvergence;
            }
        }

        if (*dist) {
            const Sh4Coeffs a = read_coeffs_file(dist_in);
            const NearestSymmetricSearcher searcher(dist_grid, dist_seed);
            const NearestResult r = searcher.find(a, dist_refine);
            std::cout << "{\"euclidean_distance_r9\":" << format_double(r.distance)
                      << ",\"sign\":" << r.sign << ",\"q_best\":" << quaternion_json(r.q_best)
                      << "}\n";
            return kExitOk;
        }

        if (*reduce) {
            UnitQuaternion q{qw, qx, qy, qz};
            const double n = q.norm();
            if (std::abs(n - 1.0) > 1e-6) {
                std::cerr << "error: quaternion norm " << n << " is not 1\n";
                return kExitUsage;
            }
            const FzReduction r = reduce_to_fundamental_zone(q.normalized());
            std::cout << "{\"q_reduced\":" << quaternion_json(r.q_reduced)
                      << ",\"symmetry_index\":" << r.symmetry_index << "}\n";
            return kExitOk;
        }

        if (*sample) {
            const Sh4Coeffs a = read_coeffs_file(sample_in);
            if (n_theta < 2 || n_phi < 4) {
                std::cerr << "error: need --ntheta >= 2 and --nphi >= 4\n";
                return kExitUsage;
            }
            write_text_file(sample_out, grid_to_csv(sample_sphere(a, n_theta, n_phi)));
            std::cout << "wrote " << sample_out << " (" << n_theta << "x" << n_phi << ")\n";
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
