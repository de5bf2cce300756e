#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqwall/elimination/relations.hpp"
#include "dqwall/expr/linear_solve.hpp"

namespace dqwall::elimination {

struct Elimination {
    Relation relation;
    /// The relations fed to the solver and the multipliers that combine them into `relation`.
    std::vector<Relation> inputs;
    std::vector<RationalFn> certificate;
};

/// Sum of certificate[i] * inputs[i].
inline Relation recombine(const std::vector<Relation>& inputs, const std::vector<RationalFn>& certificate) {
    Relation out;
    for (std::size_t i = 0; i < inputs.size(); ++i) out = out + inputs[i].scaled(certificate[i]);
    return out;
}

/// The relation set {Im, Re, Im[+-1], Re[+-1], d Im, d Re, d^2 Re}; just {Im, Re} without a potential.
inline std::vector<Relation> elimination_inputs(const SystemSpec& spec) {
    const auto table = spec.derivation_table();
    const auto [im, re] = build_base_relations(spec);
    if (spec.terms.empty()) return {im, re};
    const Relation d_re = differentiate_relation(re, table);
    return {im,
            re,
            shift_relation(im, +1),
            shift_relation(im, -1),
            shift_relation(re, +1),
            shift_relation(re, -1),
            differentiate_relation(im, table),
            d_re,
            differentiate_relation(d_re, table)};
}

/// Combines the inputs into one relation free of every unknown other than D^n rho(x, p).
/// Throws when no such combination exists, naming a shifted unknown that survives.
inline Elimination eliminate_relations(const std::vector<Relation>& inputs) {
    // columns: shifted unknowns first so they are eliminated before the targets
    std::vector<Unknown> columns;
    for (const auto& r : inputs)
        for (const auto& [u, c] : r.terms())
            if (std::find(columns.begin(), columns.end(), u) == columns.end()) columns.push_back(u);
    std::stable_sort(columns.begin(), columns.end(), [](const Unknown& a, const Unknown& b) {
        if (a.is_target() != b.is_target()) return !a.is_target();
        return a < b;
    });
    const auto n_shifted = static_cast<std::size_t>(
        std::count_if(columns.begin(), columns.end(), [](const Unknown& u) { return !u.is_target(); }));

    std::vector<expr::LinearRow> rows;
    for (const auto& r : inputs) {
        expr::LinearRow row;
        for (const auto& u : columns) row.coeffs.push_back(r.coefficient(u));
        rows.push_back(std::move(row));
    }
    expr::SolveOptions options;
    options.track_combination = true;
    options.reduce = false;
    const auto report = expr::linear_solve(rows, options);

    const expr::ReducedRow* found = nullptr;
    for (const auto& row : report.rows) {
        if (row.pivot && *row.pivot >= n_shifted) {
            found = &row;
            break;
        }
    }
    if (!found) {
        std::string residual = "none";
        for (auto it = report.rows.rbegin(); it != report.rows.rend() && residual == "none"; ++it)
            for (std::size_t j = 0; j < n_shifted; ++j)
                if (!it->coeffs[j].is_zero()) {
                    residual = columns[j].name();
                    break;
                }
        throw std::runtime_error("elimination did not close: residual unknown " + residual);
    }

    Elimination out;
    out.inputs = inputs;
    out.certificate = found->combination;
    Relation rel(Provenance::combined, "eliminated");
    for (std::size_t j = n_shifted; j < columns.size(); ++j) rel.add(columns[j], found->coeffs[j]);
    const RationalFn factor = normalize_relation(rel);
    for (auto& c : out.certificate) c *= factor;
    out.relation = std::move(rel);
    return out;
}

inline Elimination eliminate(const SystemSpec& spec) { return eliminate_relations(elimination_inputs(spec)); }

namespace detail {

// Points of the region where the dominant monomials are compared.
inline std::vector<double> limit_probes(const Region& region) {
    if (std::isfinite(region.lo) && std::isfinite(region.hi)) {
        std::vector<double> out;
        for (double t : {0.125, 0.375, 0.625, 0.875}) out.push_back(region.lo + t * (region.hi - region.lo));
        return out;
    }
    if (std::isfinite(region.hi)) return {region.hi - 0.5, region.hi - 1.5, region.hi - 4.0};
    if (std::isfinite(region.lo)) return {region.lo + 0.5, region.lo + 1.5, region.lo + 4.0};
    return {0.0};
}

}  // namespace detail

/// alpha -> infinity on the region where every generator decays. At a point x a generator
/// monomial prod g_j^{e_j} behaves like exp(2 alpha sum_j e_j s_j (x - c_j)); only the slowest
/// decaying class survives after dividing it out. With a single generator this keeps exactly
/// the generator-free terms. The survivor must be alpha-free and the same at every point.
inline Relation take_limit(const Relation& r, const SystemSpec& spec) {
    if (!r.targets_only()) throw std::invalid_argument("take_limit needs a relation in the unshifted unknowns only");
    bool touched = false;
    for (const auto& [u, c] : r.terms())
        for (const auto& t : spec.terms)
            if (c.num().contains(t.generator) || c.den().contains(t.generator)) touched = true;
    if (!touched) return r;

    Relation poly = r;
    normalize_relation(poly);  // polynomial coefficients from here on
    auto rate = [&](const expr::Monomial& m, double x) {
        double acc = 0.0;
        for (const auto& t : spec.terms) acc += m[t.generator] * t.sign * (x - t.center);
        return acc;
    };

    std::optional<Relation> result;
    for (double x : detail::limit_probes(spec.region)) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& [u, c] : poly.terms())
            for (const auto& term : c.num().terms()) best = std::max(best, rate(term.mono, x));
        Relation out(Provenance::limit, "limit");
        for (const auto& [u, c] : poly.terms()) {
            Poly kept;
            for (const auto& term : c.num().terms()) {
                if (rate(term.mono, x) < best - 1e-12) continue;
                expr::Monomial m = term.mono;
                for (const auto& t : spec.terms) m[t.generator] = 0;
                kept += Poly::term(m, term.coef);
            }
            out.add(u, RationalFn(kept));
        }
        if (out.is_zero()) throw std::runtime_error("limit degenerate: every term vanishes");
        normalize_relation(out);
        for (const auto& [u, c] : out.terms())
            if (c.num().contains(Symbol::alpha) || c.den().contains(Symbol::alpha))
                throw std::runtime_error("limit divergent: (" + c.to_string() + ")*" + u.name());
        if (result && !(*result == out))
            throw std::runtime_error("limit depends on position: " + result->to_string() + " vs " + out.to_string());
        result = std::move(out);
    }
    return *result;
}

}  // namespace dqwall::elimination
