#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "octsh/io.hpp"
#include "octsh/sh4.hpp"
#include "octsh/variety.hpp"
#include "oracles.hpp"

using namespace octsh;

TEST_CASE("coefficient JSON round trip is exact") {
    std::mt19937_64 rng(111);
    for (int t = 0; t < 50; ++t) {
        const Sh4Coeffs a{oracles::random_gaussian9(rng)};
        const Sh4Coeffs b = coeffs_from_json(coeffs_to_json(a));
        for (std::size_t i = 0; i < 9; ++i) CHECK(a.c[i] == b.c[i]);
        // serialization is deterministic
        CHECK(coeffs_to_json(a) == coeffs_to_json(b));
    }
}

TEST_CASE("coefficient JSON rejects malformed input") {
    CHECK_THROWS_AS(coeffs_from_json("not json"), ParseError);
    CHECK_THROWS_AS(coeffs_from_json("{}"), ParseError);
    CHECK_THROWS_AS(coeffs_from_json("{\"coeffs\":[1,2,3]}"), ParseError);
    CHECK_THROWS_AS(coeffs_from_json("{\"coeffs\":[1,2,3,4,5,6,7,8,\"x\"]}"), ParseError);
    CHECK_THROWS_AS(coeffs_from_json("{\"coeffs\":[0,0,0,0,0,0,0,0,0],\"x\":"), ParseError);
}

TEST_CASE("coefficient file round trip") {
    const auto path = (std::filesystem::temp_directory_path() / "octsh_io_test.json").string();
    const Sh4Coeffs a = reference_harmonic();
    write_coeffs_file(path, a);
    const Sh4Coeffs b = read_coeffs_file(path);
    for (std::size_t i = 0; i < 9; ++i) CHECK(a.c[i] == b.c[i]);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_coeffs_file(path), ParseError);
}

TEST_CASE("sample grid CSV shape") {
    const SphereSampleGrid g = sample_sphere(reference_harmonic(), 3, 4);
    const std::string csv = grid_to_csv(g);
    CHECK(csv.rfind("theta,phi,value\n", 0) == 0);
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 3 * 4);
    // first data row is the pole at theta = 0, phi = 0
    CHECK(csv.find("\n0,0,") != std::string::npos);
}

TEST_CASE("descent trace CSV: header, rows, optional distance column") {
    DescentTrace trace;
    trace.iterations.push_back({0, reference_harmonic(), 0.25, 0.5, 0.0, 1.0, std::nullopt});
    trace.iterations.push_back({1, reference_harmonic(), 0.01, 0.1, 0.125, 0.5, 0.75});
    const std::string csv = trace_to_csv(trace);
    CHECK(csv.rfind("iter,penalty,sqrt_penalty,step,grad_norm,distance\n", 0) == 0);
    CHECK(csv.find("\n0,0.25,0.5,0,1,\n") != std::string::npos);  // empty distance cell
    const std::string row1 = "\n1," + format_double(0.01) + "," + format_double(0.1) + ",0.125,0.5,0.75\n";
    CHECK(csv.find(row1) != std::string::npos);
}

TEST_CASE("double formatting survives round trips") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-1e3, 1e3);
    for (int t = 0; t < 1000; ++t) {
        const double v = uni(rng);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
}
