#pragma once

// File formats shared by the CLI and tests: coefficient JSON and the two CSV
// exports (sphere sample grids and descent traces). Numbers are printed with
// %.17g so identical values round-trip and identical runs emit identical
// bytes.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "octsh/sh4.hpp"
#include "octsh/variety.hpp"

namespace octsh {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string coeffs_to_json(const Sh4Coeffs& a) {
    std::string out = "{\"coeffs\":[";
    for (std::size_t i = 0; i < 9; ++i) {
        if (i) out += ',';
        out += format_double(a.c[i]);
    }
    out += "]}";
    return out;
}

inline Sh4Coeffs coeffs_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].size() != 9)
        throw ParseError("expected an object {\"coeffs\": [9 numbers]}");
    Sh4Coeffs a;
    for (std::size_t i = 0; i < 9; ++i) {
        if (!j["coeffs"][i].is_number()) throw ParseError("coeffs entries must be numbers");
        a.c[i] = j["coeffs"][i].get<double>();
    }
    if (!a.all_finite()) throw ParseError("coeffs entries must be finite");
    return a;
}

inline void write_coeffs_file(const std::string& path, const Sh4Coeffs& a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << coeffs_to_json(a) << "\n";
}

inline Sh4Coeffs read_coeffs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return coeffs_from_json(ss.str());
}

/// CSV export "theta,phi,value", row-major over the grid.
inline std::string grid_to_csv(const SphereSampleGrid& grid) {
    std::string out = "theta,phi,value\n";
    for (int j = 0; j < grid.n_theta; ++j)
        for (int k = 0; k < grid.n_phi; ++k) {
            out += format_double(grid.theta_at(j));
            out += ',';
            out += format_double(grid.phi_at(k));
            out += ',';
            out += format_double(grid.at(j, k));
            out += '\n';
        }
    return out;
}

/// CSV export "iter,penalty,sqrt_penalty,step,grad_norm,distance"; the
/// distance column stays empty on records that carry no distance.
inline std::string trace_to_csv(const DescentTrace& trace) {
    std::string out = "iter,penalty,sqrt_penalty,step,grad_norm,distance\n";
    for (const DescentRecord& r : trace.iterations) {
        out += std::to_string(r.index);
        out += ',';
        out += format_double(r.penalty);
        out += ',';
        out += format_double(r.sqrt_penalty);
        out += ',';
        out += format_double(r.step_size);
        out += ',';
        out += format_double(r.gradient_norm);
        out += ',';
        if (r.distance) out += format_double(*r.distance);
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

}  // namespace octsh
