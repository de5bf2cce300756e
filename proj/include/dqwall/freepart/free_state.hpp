#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqwall/freepart/distribution.hpp"

namespace dqwall::freepart {

/// rho = a_+ delta(p - s) + a_- delta(p + s) + delta(p)[b e^{2isx} + b* e^{-2isx}], s = sqrt(E).
/// Coefficients are exact (possibly symbolic) polynomials; every symbol is treated as real, so
/// b* is b with its numeric coefficients conjugated. energy is nullopt for a symbolic E = s^2.
struct FreeState {
    Poly a_plus;
    Poly a_minus;
    Poly b;
    std::optional<GaussianRational> energy;

    static Poly s() { return expr::sym(Symbol::s); }

    Distribution distribution() const {
        Distribution d;
        const Poly two_s = Poly(2) * s();
        d.add(a_plus, s(), {});
        d.add(a_minus, -s(), {});
        d.add(b, {}, two_s);
        d.add(b.conj(), {}, -two_s);
        return d;
    }

    std::string energy_text() const { return energy ? energy->to_string() : "s^2"; }

    /// Fully symbolic state (a_p, a_m, b_r + i b_i).
    static FreeState symbolic() {
        return {expr::sym(Symbol::a_p), expr::sym(Symbol::a_m), expr::sym(Symbol::b_r) + Poly::i() * expr::sym(Symbol::b_i),
                std::nullopt};
    }
};

/// s1 * s2 = delta(0) [a_+ delta(p - s) + a_- delta(p + s) + delta(p)(b_up e^{2isx} + b_down e^{-2isx})].
struct StarOutcome {
    bool delta_zero = true;
    Poly a_plus, a_minus, b_up, b_down;
    Distribution distribution;

    /// b_down is the conjugate of b_up (always so for a star-square).
    bool paired() const { return b_down == b_up.conj(); }

    FreeState state(std::optional<GaussianRational> energy) const {
        if (!paired()) throw std::logic_error("star product is not of FreeState form");
        return {a_plus, a_minus, b_up, std::move(energy)};
    }
};

inline StarOutcome star_states(const FreeState& s1, const FreeState& s2) {
    if (s1.energy != s2.energy)
        throw std::invalid_argument("star_states: states have different energies (" + s1.energy_text() + " vs " +
                                    s2.energy_text() + ")");
    const auto d = star(s1.distribution(), s2.distribution());
    const Poly s = FreeState::s(), two_s = Poly(2) * s;
    StarOutcome out;
    out.distribution = d;
    out.a_plus = d.coefficient(s, {});
    out.a_minus = d.coefficient(-s, {});
    out.b_up = d.coefficient({}, two_s);
    out.b_down = d.coefficient({}, -two_s);
    const std::size_t known = !out.a_plus.is_zero() + !out.a_minus.is_zero() + !out.b_up.is_zero() + !out.b_down.is_zero();
    if (known != d.terms().size()) throw std::logic_error("star_states: product left the FreeState basis");
    return out;
}

/// One of the four delta pieces of a FreeState.
struct BasisTerm {
    std::string name;
    Poly location, frequency;
};

inline std::vector<BasisTerm> basis() {
    const Poly s = FreeState::s(), two_s = Poly(2) * s;
    return {{"delta(p - s)", s, {}}, {"delta(p + s)", -s, {}}, {"delta(p)*exp(2isx)", {}, two_s}, {"delta(p)*exp(-2isx)", {}, -two_s}};
}

struct RuleEntry {
    BasisTerm left, right;
    StarRule outcome;
};

/// The 16 ordered basis products.
inline std::vector<RuleEntry> rule_table() {
    std::vector<RuleEntry> out;
    for (const auto& a : basis())
        for (const auto& b : basis()) out.push_back({a, b, star_rule(a.location, a.frequency, b.location, b.frequency)});
    return out;
}

/// |b|^2 - a_+ a_-: zero iff rho * rho is proportional to delta(0) rho with one constant.
inline Poly purity_constraint(const FreeState& s) { return s.b * s.b.conj() - s.a_plus * s.a_minus; }

/// Wigner function of alpha_+ e^{isx} + alpha_- e^{-isx}: (|alpha_+|^2, |alpha_-|^2, alpha_+ alpha_-*).
inline FreeState from_wavefunction(const Poly& alpha_plus, const Poly& alpha_minus,
                                   std::optional<GaussianRational> energy = std::nullopt) {
    return {alpha_plus * alpha_plus.conj(), alpha_minus * alpha_minus.conj(), alpha_plus * alpha_minus.conj(), std::move(energy)};
}

/// Star-genvalue residuals of the state for eigenvalue E (default: the state's own E = s^2).
inline GenvalueResidual stargen_residual_free(const FreeState& s, const Poly& E = expr::sym(Symbol::s, 2)) {
    return stargen_residual(s.distribution(), E);
}

}  // namespace dqwall::freepart
