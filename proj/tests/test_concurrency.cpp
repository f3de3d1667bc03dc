// Concurrency smoke test: every operation is a pure function over immutable
// values and the shared tables (rotation constants, quadric set, group,
// search grid) are initialize-once, so parallel callers must get bitwise the
// same answers as a serial run.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>
#include <vector>

#include "octsh/octsh.hpp"
#include "oracles.hpp"

using namespace octsh;

TEST_CASE("parallel symmetrize and nearest-orbit queries match the serial results") {
    const int n_inputs = 24;
    const Sh4Coeffs atil = reference_harmonic();
    std::mt19937_64 rng(314);

    std::vector<Sh4Coeffs> inputs;
    for (int i = 0; i < n_inputs; ++i) {
        Vec9 d = oracles::random_unit9(rng);
        inputs.push_back(Sh4Coeffs{atil.c + 0.25 * d});
    }

    const NearestSymmetricSearcher searcher(2048, 7);

    std::vector<Sh4Coeffs> serial_final(n_inputs);
    std::vector<double> serial_dist(n_inputs), serial_dev(n_inputs), serial_quot(n_inputs);
    for (int i = 0; i < n_inputs; ++i) {
        serial_final[i] = symmetrize(inputs[i]).final_coeffs();
        serial_dist[i] = searcher.find(inputs[i]).distance;
        serial_dev[i] = deviation(inputs[i]);
        serial_quot[i] = quotient_distance(
            reduce_to_fundamental_zone(quaternion_from_euler({0.1 * i, 0.2, -0.3})).q_reduced,
            UnitQuaternion{});
    }

    std::vector<Sh4Coeffs> par_final(n_inputs);
    std::vector<double> par_dist(n_inputs), par_dev(n_inputs), par_quot(n_inputs);
    std::vector<std::thread> workers;
    const int n_threads = 4;
    for (int t = 0; t < n_threads; ++t)
        workers.emplace_back([&, t] {
            for (int i = t; i < n_inputs; i += n_threads) {
                par_final[static_cast<std::size_t>(i)] = symmetrize(inputs[static_cast<std::size_t>(i)]).final_coeffs();
                par_dist[static_cast<std::size_t>(i)] = searcher.find(inputs[static_cast<std::size_t>(i)]).distance;
                par_dev[static_cast<std::size_t>(i)] = deviation(inputs[static_cast<std::size_t>(i)]);
                par_quot[static_cast<std::size_t>(i)] = quotient_distance(
                    reduce_to_fundamental_zone(quaternion_from_euler({0.1 * i, 0.2, -0.3})).q_reduced,
                    UnitQuaternion{});
            }
        });
    for (auto& w : workers) w.join();

    for (int i = 0; i < n_inputs; ++i) {
        for (std::size_t k = 0; k < 9; ++k)
            CHECK(par_final[static_cast<std::size_t>(i)].c[k] == serial_final[static_cast<std::size_t>(i)].c[k]);
        CHECK(par_dist[static_cast<std::size_t>(i)] == serial_dist[static_cast<std::size_t>(i)]);
        CHECK(par_dev[static_cast<std::size_t>(i)] == serial_dev[static_cast<std::size_t>(i)]);
        CHECK(par_quot[static_cast<std::size_t>(i)] == serial_quot[static_cast<std::size_t>(i)]);
    }
}
