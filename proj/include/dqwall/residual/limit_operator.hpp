#pragma once

#include <array>
#include <complex>
#include <stdexcept>

#include "dqwall/elimination/eliminate.hpp"

namespace dqwall::residual {

/// Coefficients c_n(p, E) of sum_n c_n d^n/dx^n rho = 0, read from the elimination engine's
/// limit relation (computed once per process).
class LimitOperator {
public:
    static const LimitOperator& get() {
        static const LimitOperator op;
        return op;
    }

    const elimination::Relation& relation() const { return relation_; }

    std::array<double, 5> at(double p, double E) const {
        std::array<std::complex<double>, expr::kSymbolCount> v{};
        v[static_cast<std::size_t>(expr::Symbol::p)] = p;
        v[static_cast<std::size_t>(expr::Symbol::E)] = E;
        std::array<double, 5> c{};
        for (int n = 0; n <= 4; ++n) c[n] = coeffs_[n].is_zero() ? 0.0 : coeffs_[n].evaluate(v).real();
        return c;
    }

private:
    elimination::Relation relation_;
    std::array<expr::RationalFn, 5> coeffs_;

    LimitOperator() {
        const auto spec = elimination::presets::liouville();
        relation_ = elimination::take_limit(elimination::eliminate(spec).relation, spec);
        for (const auto& [u, c] : relation_.terms()) {
            if (u.k != 0) throw std::logic_error("limit relation contains a shifted unknown");
            coeffs_[u.n] = c;
        }
    }
};

}  // namespace dqwall::residual
