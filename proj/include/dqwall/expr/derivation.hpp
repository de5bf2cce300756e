#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "dqwall/expr/rational_fn.hpp"

namespace dqwall::expr {

/// d/dx on the polynomial ring: p, E and alpha are constants, and each registered
/// exponential generator g obeys dg/dx = sign * 2 alpha g.
class DerivationTable {
public:
    DerivationTable& add(Symbol generator, int sign) {
        if (is_constant_symbol(generator)) throw std::invalid_argument(std::string("not a generator: ") + symbol_name(generator));
        if (sign != 1 && sign != -1) throw std::invalid_argument("generator sign must be +1 or -1");
        signs_[static_cast<std::size_t>(generator)] = sign;
        return *this;
    }

    std::optional<int> sign(Symbol s) const { return signs_[static_cast<std::size_t>(s)]; }

    static bool is_constant_symbol(Symbol s) { return s == Symbol::p || s == Symbol::E || s == Symbol::alpha; }

    Poly differentiate(const Poly& f) const {
        Poly out;
        for (std::size_t n = 0; n < kSymbolCount; ++n) {
            const auto s = static_cast<Symbol>(n);
            if (is_constant_symbol(s) || !f.contains(s)) continue;
            const auto sg = signs_[n];
            if (!sg) throw std::invalid_argument(std::string("unknown generator: ") + symbol_name(s));
            out += f.derivative(s) * sym(s) * Poly(GaussianRational(2L * *sg)) * sym(Symbol::alpha);
        }
        return out;
    }

    RationalFn differentiate(const RationalFn& f) const {
        const Poly dn = differentiate(f.num());
        if (f.is_polynomial()) return RationalFn(dn);
        const Poly dd = differentiate(f.den());
        return {dn * f.den() - f.num() * dd, f.den() * f.den()};
    }

private:
    std::array<std::optional<int>, kSymbolCount> signs_{};
};

}  // namespace dqwall::expr
