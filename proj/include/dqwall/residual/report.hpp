#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

namespace dqwall::residual {

struct ResidualReport {
    std::string case_id;
    /// limit_pde | hrhetc | showeqn | stargen_im | stargen_re | op_identity
    std::string equation;
    nlohmann::ordered_json grid;
    double max_residual = 0.0;
    /// Largest absolute value of any single term over the scored points.
    double normalization = 0.0;
    double ratio = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    /// Secondary quantities (e.g. each residual field of a two-route check).
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["case"] = case_id;
        j["equation"] = equation;
        j["grid"] = grid;
        j["max_residual"] = max_residual;
        j["normalization"] = normalization;
        j["ratio"] = ratio;
        j["tolerance"] = tolerance;
        j["pass"] = pass;
        if (!details.empty()) j["details"] = details;
        return j;
    }
};

/// ratio = max_residual / normalization, with an all-zero input counting as exact.
inline void finalize(ResidualReport& r, double tolerance) {
    r.tolerance = tolerance;
    r.ratio = r.normalization > 0.0 ? r.max_residual / r.normalization : (r.max_residual == 0.0 ? 0.0 : INFINITY);
    r.pass = r.ratio <= tolerance;
}

}  // namespace dqwall::residual
