#pragma once

#include <string>
#include <utility>

#include "dqwall/elimination/relation.hpp"
#include "dqwall/elimination/system_spec.hpp"

namespace dqwall::elimination {

/// Imaginary and real parts of H * rho = E rho. A term c g with g = e^{2 s alpha x} acts as
/// c g rho(x, p + i s alpha), which splits into sin/cos(alpha d_p) shift combinations.
inline std::pair<Relation, Relation> build_base_relations(const SystemSpec& spec, Symbol energy = Symbol::E) {
    spec.validate();
    const Poly p = expr::sym(Symbol::p);
    const Poly E = expr::sym(energy);
    const Poly I = Poly::i();
    const RationalFn half(expr::GaussianRational::ratio(1, 2));

    Relation im(Provenance::base_im, "Im");
    Relation re(Provenance::base_re, "Re");
    im.add({0, 1}, RationalFn(-p));
    re.add({0, 0}, RationalFn(p * p - E));
    re.add({0, 2}, RationalFn(expr::GaussianRational::ratio(-1, 4)));
    for (const auto& t : spec.terms) {
        const RationalFn cg = t.coefficient * RationalFn(expr::sym(t.generator));
        const RationalFn im_part = cg / RationalFn(Poly(2) * I);
        im.add({t.sign, 0}, im_part);
        im.add({-t.sign, 0}, -im_part);
        re.add({t.sign, 0}, cg * half);
        re.add({-t.sign, 0}, cg * half);
    }
    return {im, re};
}

/// rho(x, p + i k0 alpha) -> rho(x, p + i (k0 + k) alpha), with p -> p + i k alpha in every coefficient.
inline Relation shift_relation(const Relation& r, int k) {
    const Poly shifted_p = expr::sym(Symbol::p) + Poly(k) * Poly::i() * expr::sym(Symbol::alpha);
    std::string label = r.label();
    label += k > 0 ? "[+" + std::to_string(k) + "]" : "[" + std::to_string(k) + "]";
    Relation out(Provenance::shifted, label);
    for (const auto& [u, c] : r.terms()) {
        const int nk = u.k + k;
        if (nk < -kMaxShift || nk > kMaxShift)
            throw std::out_of_range("shift out of bounds: " + u.name() + " shifted by " + std::to_string(k));
        out.add({nk, u.n}, c.substitute(Symbol::p, shifted_p));
    }
    return out;
}

/// d/dx by the product rule: coefficients through the derivation table, unknowns promoted.
inline Relation differentiate_relation(const Relation& r, const expr::DerivationTable& table) {
    Relation out(Provenance::differentiated, "d(" + r.label() + ")");
    for (const auto& [u, c] : r.terms()) {
        if (u.n >= kMaxOrder) throw std::out_of_range("derivative order overflow: " + u.name());
        out.add(u, table.differentiate(c));
        out.add({u.k, u.n + 1}, c);
    }
    return out;
}

}  // namespace dqwall::elimination
