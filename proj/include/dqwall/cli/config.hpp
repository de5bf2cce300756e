#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dqwall/starcalc/phase_field.hpp"

namespace dqwall::cli {

/// Bad flags or config values; the front end exits with code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One layer of settings (command line or config file); unset fields fall through.
struct ConfigLayer {
    std::optional<std::string> system, suite, case_id, out, format;
    std::optional<double> energy, tolerance;
    std::optional<int> n;
    std::optional<double> x0, x1, p0, p1;
    std::optional<std::size_t> nx, np;
    // free-particle state: exact decimal or fraction literals
    std::optional<std::string> a_plus, a_minus, b_re, b_im, alpha_plus, alpha_minus, free_energy;
};

struct RunConfig {
    std::string system = "liouville";
    std::string suite = "all";
    std::string case_id = "wall_derived";
    double energy = 1.0;
    int n = 1;
    std::optional<double> tolerance;
    starcalc::PhaseGrid grid = starcalc::PhaseGrid::standard();
    /// Empty or "-" for standard output.
    std::string out;
    std::string format = "json";
    std::optional<std::string> a_plus, a_minus, b_re, b_im, alpha_plus, alpha_minus, free_energy;
};

namespace detail {

template <class T>
void read_key(const nlohmann::json& j, const char* key, std::optional<T>& slot) {
    if (!j.contains(key)) return;
    try {
        slot = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
}

template <class T>
void overlay(std::optional<T>& low, const std::optional<T>& high) {
    if (high) low = high;
}

}  // namespace detail

/// Reads a JSON config file; keys mirror the long flag names.
inline ConfigLayer load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file " + path + ": top level must be an object");
    ConfigLayer c;
    detail::read_key(j, "system", c.system);
    detail::read_key(j, "suite", c.suite);
    detail::read_key(j, "case", c.case_id);
    detail::read_key(j, "out", c.out);
    detail::read_key(j, "format", c.format);
    detail::read_key(j, "E", c.energy);
    detail::read_key(j, "tolerance", c.tolerance);
    detail::read_key(j, "n", c.n);
    detail::read_key(j, "x0", c.x0);
    detail::read_key(j, "x1", c.x1);
    detail::read_key(j, "p0", c.p0);
    detail::read_key(j, "p1", c.p1);
    detail::read_key(j, "nx", c.nx);
    detail::read_key(j, "np", c.np);
    detail::read_key(j, "a_plus", c.a_plus);
    detail::read_key(j, "a_minus", c.a_minus);
    detail::read_key(j, "b_re", c.b_re);
    detail::read_key(j, "b_im", c.b_im);
    detail::read_key(j, "alpha_plus", c.alpha_plus);
    detail::read_key(j, "alpha_minus", c.alpha_minus);
    detail::read_key(j, "free_energy", c.free_energy);
    return c;
}

/// Command line over config file over defaults.
inline RunConfig resolve(const ConfigLayer& command_line, const ConfigLayer& file = {}) {
    ConfigLayer c = file;
    detail::overlay(c.system, command_line.system);
    detail::overlay(c.suite, command_line.suite);
    detail::overlay(c.case_id, command_line.case_id);
    detail::overlay(c.out, command_line.out);
    detail::overlay(c.format, command_line.format);
    detail::overlay(c.energy, command_line.energy);
    detail::overlay(c.tolerance, command_line.tolerance);
    detail::overlay(c.n, command_line.n);
    detail::overlay(c.x0, command_line.x0);
    detail::overlay(c.x1, command_line.x1);
    detail::overlay(c.p0, command_line.p0);
    detail::overlay(c.p1, command_line.p1);
    detail::overlay(c.nx, command_line.nx);
    detail::overlay(c.np, command_line.np);
    detail::overlay(c.a_plus, command_line.a_plus);
    detail::overlay(c.a_minus, command_line.a_minus);
    detail::overlay(c.b_re, command_line.b_re);
    detail::overlay(c.b_im, command_line.b_im);
    detail::overlay(c.alpha_plus, command_line.alpha_plus);
    detail::overlay(c.alpha_minus, command_line.alpha_minus);
    detail::overlay(c.free_energy, command_line.free_energy);

    RunConfig r;
    if (c.system) r.system = *c.system;
    if (c.suite) r.suite = *c.suite;
    if (c.case_id) r.case_id = *c.case_id;
    if (c.out) r.out = *c.out;
    if (c.format) r.format = *c.format;
    if (c.energy) r.energy = *c.energy;
    if (c.n) r.n = *c.n;
    r.tolerance = c.tolerance;
    if (r.tolerance && !(*r.tolerance > 0.0)) throw UsageError("tolerance must be positive");
    if (r.format != "json" && r.format != "text" && r.format != "csv")
        throw UsageError("format must be json, text or csv (got '" + r.format + "')");
    const auto d = starcalc::PhaseGrid::standard();
    try {
        r.grid = starcalc::PhaseGrid(c.x0.value_or(d.x0()), c.x1.value_or(d.x1()), c.nx.value_or(d.nx()), c.p0.value_or(d.p0()),
                                     c.p1.value_or(d.p1()), c.np.value_or(d.np()));
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("grid: ") + e.what());
    }
    r.a_plus = c.a_plus;
    r.a_minus = c.a_minus;
    r.b_re = c.b_re;
    r.b_im = c.b_im;
    r.alpha_plus = c.alpha_plus;
    r.alpha_minus = c.alpha_minus;
    r.free_energy = c.free_energy;
    return r;
}

}  // namespace dqwall::cli
