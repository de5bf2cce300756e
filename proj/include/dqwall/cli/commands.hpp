#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dqwall/cli/config.hpp"
#include "dqwall/cli/suites.hpp"
#include "dqwall/elimination/eliminate.hpp"
#include "dqwall/elimination/operator.hpp"
#include "dqwall/freepart/free_state.hpp"
#include "dqwall/wigner/catalog.hpp"

namespace dqwall::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Output could not be written; exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest text that prints v with 17 significant digits.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write_json(const Json& j, std::string& out, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                write_json(it.value(), out, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                write_json(v, out, indent, depth + 1);
            }
            newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            std::string s = format_double(v);
            if (s.find_first_of(".e") == std::string::npos) s += ".0";
            out += s;
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace detail

/// JSON text with every float at 17 significant digits; non-finite floats become null.
inline std::string dump_json(const Json& j, int indent = 2) {
    std::string out;
    detail::write_json(j, out, indent, 0);
    return out;
}

/// Writes text to the configured path, or standard output for "" and "-".
inline void emit(const std::string& path, const std::string& text, std::ostream& stdout_stream = std::cout) {
    if (path.empty() || path == "-") {
        stdout_stream << text;
        stdout_stream.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + path);
    f << text;
    f.close();
    if (!f) throw IoError("error writing output file: " + path);
}

/// Preset names accept '-' for '_' (sinh-gordon, exp-delta).
inline std::string preset_name(std::string name) {
    for (auto& c : name)
        if (c == '-') c = '_';
    return name;
}

// ---------------------------------------------------------------- derive

inline Json relation_json(const elimination::Relation& r) {
    Json j;
    j["label"] = r.label();
    j["provenance"] = elimination::provenance_name(r.provenance());
    j["text"] = r.to_string();
    j["terms"] = r.to_json();
    return j;
}

/// Derivation record: inputs, the pre-limit relation, its limit, and the zeroth-order coefficient
/// compared with (p^2 - E)^2 and with the printed p^4 - 2Ep + E^2.
inline Json derive_json(const std::string& system) {
    using namespace elimination;
    using expr::sym;
    const auto spec = presets::by_name(preset_name(system));
    Json j;
    j["system"] = spec.name;
    if (spec.terms.empty()) {
        const auto [im, re] = build_base_relations(spec);
        j["base_relations"] = Json::array({relation_json(im), relation_json(re)});
        j["note"] = "no potential terms: nothing to eliminate";
        return j;
    }
    const auto el = eliminate(spec);
    Json inputs = Json::array();
    for (const auto& r : el.inputs) inputs.push_back(relation_json(r));
    j["relations_used"] = std::move(inputs);
    j["pre_limit"] = relation_json(el.relation);
    const Relation limit = take_limit(el.relation, spec);
    j["limit"] = relation_json(limit);

    const Poly p = sym(Symbol::p), E = sym(Symbol::E);
    const RationalFn Z = limit.coefficient({0, 0});
    const RationalFn expected((p * p - E) * (p * p - E));
    const RationalFn printed(p * p * p * p - Poly(2) * E * p + E * E);
    Json z;
    z["engine"] = Z.to_string();
    z["expected"] = "(p^2 - E)^2";
    z["matches_expected"] = Z == expected;
    z["printed"] = printed.to_string();
    z["matches_printed"] = Z == printed;
    z["engine_minus_printed"] = (Z - printed).to_string();
    j["zeroth_order"] = std::move(z);

    const Relation expansion = free_combination_relation();
    Json op;
    op["relation"] = expansion.to_string();
    op["agrees_with_limit"] = expansion == limit;
    j["operator_expansion"] = std::move(op);
    return j;
}

inline std::string derive_text(const Json& j) {
    std::ostringstream os;
    os << "system: " << j["system"].get<std::string>() << "\n";
    if (j.contains("base_relations")) {
        for (const auto& r : j["base_relations"]) os << r["provenance"].get<std::string>() << ": " << r["text"].get<std::string>() << "\n";
        os << j["note"].get<std::string>() << "\n";
        return os.str();
    }
    os << "relations used: " << j["relations_used"].size() << "\n";
    for (const auto& r : j["relations_used"]) os << "  " << r["label"].get<std::string>() << ": " << r["text"].get<std::string>() << "\n";
    os << "pre-limit: " << j["pre_limit"]["text"].get<std::string>() << "\n";
    os << "limit: " << j["limit"]["text"].get<std::string>() << "\n";
    const auto& z = j["zeroth_order"];
    os << "zeroth-order coefficient: " << z["engine"].get<std::string>() << "\n";
    os << "  equals " << z["expected"].get<std::string>() << ": " << (z["matches_expected"].get<bool>() ? "yes" : "no") << "\n";
    os << "  equals printed " << z["printed"].get<std::string>() << ": " << (z["matches_printed"].get<bool>() ? "yes" : "no")
       << " (engine - printed = " << z["engine_minus_printed"].get<std::string>() << ")\n";
    os << "operator expansion agrees with limit: " << (j["operator_expansion"]["agrees_with_limit"].get<bool>() ? "yes" : "no")
       << "\n";
    return os.str();
}

inline int run_derive(const RunConfig& cfg, std::ostream& out = std::cout) {
    const Json j = derive_json(cfg.system);
    emit(cfg.out, cfg.format == "text" ? derive_text(j) : dump_json(j) + "\n", out);
    return kExitOk;
}

// ---------------------------------------------------------------- check

inline Json reports_json(const std::vector<ResidualReport>& reports) {
    Json a = Json::array();
    for (const auto& r : reports) a.push_back(r.to_json());
    return a;
}

inline std::string reports_text(const std::vector<ResidualReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports)
        os << (r.pass ? "PASS " : "FAIL ") << r.case_id << " " << r.equation << " ratio=" << format_double(r.ratio)
           << " tolerance=" << format_double(r.tolerance) << "\n";
    return os.str();
}

inline int run_check(const RunConfig& cfg, std::ostream& out = std::cout) {
    const auto reports = run_suite(cfg.suite, cfg.tolerance);
    emit(cfg.out, cfg.format == "text" ? reports_text(reports) : dump_json(reports_json(reports)) + "\n", out);
    return all_pass(reports) ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- sample

inline wigner::CatalogEntry sample_entry(const RunConfig& cfg) {
    try {
        return wigner::catalog::by_id(cfg.case_id, cfg.energy, cfg.n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

/// CSV `x,p,value`, x-major, one row per grid point.
inline void write_samples(const wigner::CatalogEntry& entry, const starcalc::PhaseGrid& g, std::ostream& os) {
    os << "x,p,value\n";
    char buf[128];
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.np(); ++j) {
            const double x = g.x(i), p = g.p(j);
            const int n = std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, p, wigner::catalog_eval(entry, x, p));
            os.write(buf, n);
        }
}

inline int run_sample(const RunConfig& cfg, std::ostream& out = std::cout) {
    const auto entry = sample_entry(cfg);
    if (cfg.out.empty() || cfg.out == "-") {
        write_samples(entry, cfg.grid, out);
        out.flush();
        return kExitOk;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + cfg.out);
    write_samples(entry, cfg.grid, f);
    f.close();
    if (!f) throw IoError("error writing output file: " + cfg.out);
    return kExitOk;
}

// ---------------------------------------------------------------- free-particle

/// "re" or "re,im", each an exact decimal or fraction.
inline expr::Poly parse_amplitude(const std::string& text) {
    try {
        const auto comma = text.find(',');
        if (comma == std::string::npos) return expr::Poly(expr::GaussianRational::parse_real(text));
        const auto re = expr::GaussianRational::parse_real(text.substr(0, comma));
        const auto im = expr::GaussianRational::parse_real(text.substr(comma + 1));
        return expr::Poly(re) + expr::Poly::i() * expr::Poly(im);
    } catch (const std::exception& e) {
        throw UsageError("bad number '" + text + "': " + e.what());
    }
}

struct FreeInput {
    freepart::FreeState state;
    std::optional<std::pair<expr::Poly, expr::Poly>> amplitudes;
};

inline FreeInput free_input(const RunConfig& cfg) {
    const expr::GaussianRational E = parse_amplitude(cfg.free_energy.value_or("1")).constant_value();
    if (!E.is_real() || !(E.re() > 0)) throw UsageError("free-particle energy must be a positive real number");
    const bool by_amplitude = cfg.alpha_plus || cfg.alpha_minus;
    const bool by_coefficients = cfg.a_plus || cfg.a_minus || cfg.b_re || cfg.b_im;
    if (by_amplitude && by_coefficients) throw UsageError("give either --alpha-plus/--alpha-minus or --a-plus/--a-minus/--b-re/--b-im");
    if (by_amplitude) {
        const auto ap = parse_amplitude(cfg.alpha_plus.value_or("0"));
        const auto am = parse_amplitude(cfg.alpha_minus.value_or("0"));
        return {freepart::from_wavefunction(ap, am, E), std::pair{ap, am}};
    }
    const auto real = [](const std::optional<std::string>& s, const char* name) {
        const auto v = parse_amplitude(s.value_or("0"));
        if (!v.is_zero() && !v.constant_value().is_real()) throw UsageError(std::string(name) + " must be real");
        return v;
    };
    const auto b = real(cfg.b_re, "b_re") + expr::Poly::i() * real(cfg.b_im, "b_im");
    return {{real(cfg.a_plus, "a_plus"), real(cfg.a_minus, "a_minus"), b, E}, std::nullopt};
}

/// State, star-square, purity and star-genvalue residuals of a free-particle state.
inline Json free_particle_json(const FreeInput& in) {
    const auto& st = in.state;
    Json j;
    if (in.amplitudes) {
        j["alpha_plus"] = in.amplitudes->first.to_string();
        j["alpha_minus"] = in.amplitudes->second.to_string();
    }
    Json state;
    state["E"] = st.energy_text();
    state["a_plus"] = st.a_plus.to_string();
    state["a_minus"] = st.a_minus.to_string();
    state["b"] = st.b.to_string();
    state["rho"] = st.distribution().to_string();
    j["state"] = std::move(state);

    const auto sq = freepart::star_states(st, st);
    const expr::Poly k = st.a_plus + st.a_minus;
    Json square;
    square["distribution"] = sq.distribution.to_string();
    square["proportional_to_state"] = sq.delta_zero && sq.paired() && sq.a_plus == k * st.a_plus &&
                                      sq.a_minus == k * st.a_minus && sq.b_up == k * st.b;
    square["factor"] = "delta(0)*(" + k.to_string() + ")";
    j["star_square"] = std::move(square);

    const auto c = freepart::purity_constraint(st);
    Json purity;
    purity["constraint"] = c.to_string();
    purity["pure"] = c.is_zero();
    j["purity"] = std::move(purity);

    const auto g = freepart::stargen_residual_free(st);
    Json gen;
    gen["imaginary"] = g.imaginary.is_zero() ? "0" : g.imaginary.to_string();
    gen["real"] = g.real.is_zero() ? "0" : g.real.to_string();
    gen["eigenstate"] = g.imaginary.is_zero() && g.real.is_zero();
    j["stargen"] = std::move(gen);
    return j;
}

inline std::string free_particle_text(const Json& j) {
    std::ostringstream os;
    if (j.contains("alpha_plus"))
        os << "amplitudes: alpha_plus = " << j["alpha_plus"].get<std::string>()
           << ", alpha_minus = " << j["alpha_minus"].get<std::string>() << "\n";
    os << "E = " << j["state"]["E"].get<std::string>() << "\n";
    os << "rho = " << j["state"]["rho"].get<std::string>() << "\n";
    os << "rho * rho = " << j["star_square"]["distribution"].get<std::string>() << "\n";
    os << "  proportional to rho: " << (j["star_square"]["proportional_to_state"].get<bool>() ? "yes" : "no") << "\n";
    os << "purity constraint |b|^2 - a_plus a_minus = " << j["purity"]["constraint"].get<std::string>() << "\n";
    os << "stargen residual (imaginary) = " << j["stargen"]["imaginary"].get<std::string>() << "\n";
    os << "stargen residual (real) = " << j["stargen"]["real"].get<std::string>() << "\n";
    return os.str();
}

inline int run_free_particle(const RunConfig& cfg, std::ostream& out = std::cout) {
    const Json j = free_particle_json(free_input(cfg));
    emit(cfg.out, cfg.format == "text" ? free_particle_text(j) : dump_json(j) + "\n", out);
    return j["stargen"]["eigenstate"].get<bool>() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- report

inline const std::vector<std::string>& derivation_systems() {
    static const std::vector<std::string> names{"liouville", "sinh_gordon", "exp_delta", "exp_delta_left", "free"};
    return names;
}

/// Everything in one document: derivations, universality of the limit, all check suites, and an example free state.
inline Json report_json(const RunConfig& cfg) {
    Json j;
    Json derivations;
    for (const auto& name : derivation_systems()) derivations[name] = derive_json(name);
    j["derivations"] = derivations;

    Json uni;
    const auto& reference = derivations["liouville"]["limit"]["terms"];
    bool identical = true;
    Json systems = Json::array();
    for (const auto& name : {"liouville", "sinh_gordon", "exp_delta", "exp_delta_left"}) {
        systems.push_back(name);
        identical = identical && derivations[name]["limit"]["terms"] == reference;
    }
    uni["systems"] = std::move(systems);
    uni["limit"] = derivations["liouville"]["limit"]["text"];
    uni["identical"] = identical;
    j["universality"] = std::move(uni);

    const auto reports = run_suite("all", cfg.tolerance);
    j["checks"] = reports_json(reports);

    RunConfig example;
    example.alpha_plus = "2";
    example.alpha_minus = "1/2,1";
    example.free_energy = "1";
    const Json free = free_particle_json(free_input(example));
    j["free_particle"] = free;

    std::size_t passed = 0;
    for (const auto& r : reports) passed += r.pass;
    bool derivations_ok = true;
    for (const auto& name : derivation_systems()) {
        const auto& d = derivations[name];
        if (d.contains("zeroth_order"))
            derivations_ok = derivations_ok && d["zeroth_order"]["matches_expected"].get<bool>() &&
                             d["operator_expansion"]["agrees_with_limit"].get<bool>();
    }
    Json summary;
    summary["checks"] = reports.size();
    summary["passed"] = passed;
    summary["failed"] = reports.size() - passed;
    summary["derivations_consistent"] = derivations_ok;
    summary["universality"] = identical;
    summary["free_particle_eigenstate"] = free["stargen"]["eigenstate"];
    summary["pass"] = passed == reports.size() && derivations_ok && identical && free["stargen"]["eigenstate"].get<bool>();
    j["summary"] = std::move(summary);
    return j;
}

inline int run_report(const RunConfig& cfg, std::ostream& out = std::cout) {
    const Json j = report_json(cfg);
    emit(cfg.out, dump_json(j) + "\n", out);
    return j["summary"]["pass"].get<bool>() ? kExitOk : kExitCheckFailed;
}

}  // namespace dqwall::cli
