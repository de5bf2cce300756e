#pragma once

// Fourier-mode oracle for the limit operator. The wall state is a sum of x-modes e^{iqx} with
// q = +-2(p + s) and +-2(p - s), s = sqrt(E). An operator sum_n c_n(p, E) D^n annihilates it
// exactly when its symbol sum_n c_n (iq)^n vanishes at every such q. With c4 = 1/16 and no odd
// orders, the conditions at the two mode families fix c2 and c0.

#include <vector>

#include "dqwall/elimination/relation.hpp"

namespace oracle {

using dqwall::elimination::Relation;
using dqwall::expr::GaussianRational;
using dqwall::expr::Poly;
using dqwall::expr::RationalFn;
using dqwall::expr::Symbol;
using dqwall::expr::sym;

struct ModeCoefficients {
    RationalFn c2;
    RationalFn c0;
};

inline std::vector<Poly> wall_modes() {
    const Poly p = sym(Symbol::p), s = sym(Symbol::s);
    const Poly q1 = Poly(2) * (p + s), q2 = Poly(2) * (p - s);
    return {q1, -q1, q2, -q2};
}

// q^4/16 - c2 q^2 + c0 = 0 at q1 and q2.
inline ModeCoefficients wall_mode_coefficients() {
    const auto q = wall_modes();
    const Poly a = q[0] * q[0], b = q[2] * q[2];
    const RationalFn sixteenth(Poly(GaussianRational::ratio(1, 16)));
    const RationalFn c2 = sixteenth * RationalFn(a + b);
    const RationalFn c0 = c2 * RationalFn(a) - sixteenth * RationalFn(a * a);
    return {c2, c0};
}

// The relation's coefficient of D^n R0 with E = s^2.
inline RationalFn coefficient_in_s(const Relation& r, int n) {
    return r.coefficient({0, n}).substitute(Symbol::E, sym(Symbol::s, 2));
}

// sum_n c_n (iq)^n for the target unknowns of the relation.
inline RationalFn symbol_at(const Relation& r, const Poly& q) {
    RationalFn out;
    Poly iq_n(1);
    const Poly iq = Poly::i() * q;
    for (int n = 0; n <= 4; ++n) {
        out += coefficient_in_s(r, n) * RationalFn(iq_n);
        iq_n = iq_n * iq;
    }
    return out;
}

}  // namespace oracle
