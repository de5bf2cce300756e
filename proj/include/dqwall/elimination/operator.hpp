#pragma once

#include <map>
#include <string>

#include "dqwall/elimination/relation.hpp"

namespace dqwall::elimination {

/// Polynomial in D = d/dx with coefficients in the p-, E-ring. Coefficients never depend on
/// x, so D commutes with them and composition is plain multiplication.
class DOperator {
public:
    DOperator() = default;
    DOperator(Poly c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) coeffs_.emplace(0U, std::move(c));
    }

    static DOperator d(unsigned power = 1) {
        DOperator out;
        out.coeffs_.emplace(power, Poly(1));
        return out;
    }

    const std::map<unsigned, Poly>& coefficients() const { return coeffs_; }

    friend DOperator operator+(const DOperator& a, const DOperator& b) {
        DOperator out = a;
        for (const auto& [n, c] : b.coeffs_) out.accumulate(n, c);
        return out;
    }
    friend DOperator operator-(const DOperator& a, const DOperator& b) { return a + b * DOperator(Poly(-1)); }
    friend DOperator operator*(const DOperator& a, const DOperator& b) {
        DOperator out;
        for (const auto& [n, c] : a.coeffs_)
            for (const auto& [m, e] : b.coeffs_) out.accumulate(n + m, c * e);
        return out;
    }
    friend bool operator==(const DOperator&, const DOperator&) = default;

    /// Real part on real functions with real p and E.
    DOperator real_part() const {
        DOperator out;
        for (const auto& [n, c] : coeffs_) out.accumulate(n, c.real_part());
        return out;
    }

    Relation to_relation(std::string label = "operator") const {
        Relation out(Provenance::operator_expansion, std::move(label));
        for (const auto& [n, c] : coeffs_) out.add({0, static_cast<int>(n)}, RationalFn(c));
        return out;
    }

private:
    std::map<unsigned, Poly> coeffs_;

    void accumulate(unsigned n, const Poly& c) {
        auto [it, inserted] = coeffs_.try_emplace(n, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        } else if (c.is_zero()) {
            coeffs_.erase(it);
        }
    }
};

/// f(p + shift * D) for a symbol f(p), by Horner in p.
inline DOperator substitute_p(const Poly& f, const DOperator& shift) {
    const DOperator arg = DOperator(expr::sym(Symbol::p)) + shift;
    DOperator out;
    const auto coeffs = f.coefficients_in(Symbol::p);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out = out * arg + DOperator(*it);
    return out;
}

/// f * rho = f(p - (i/2) D) rho for an x-independent symbol f(p).
inline DOperator bopp_left(const Poly& f) {
    return substitute_p(f, DOperator(Poly(expr::GaussianRational(0, mpq_class(-1, 2)))) * DOperator::d());
}

/// rho * f = f(p + (i/2) D) rho for an x-independent symbol f(p).
inline DOperator bopp_right(const Poly& f) {
    return substitute_p(f, DOperator(Poly(expr::GaussianRational(0, mpq_class(1, 2)))) * DOperator::d());
}

/// p^2 * rho * p^2 - E^2 rho - 2E Re(p^2 * rho - E rho), assembled from free-particle star products.
inline Relation free_combination_relation() {
    const Poly p2 = expr::sym(Symbol::p, 2);
    const Poly E = expr::sym(Symbol::E);
    const DOperator op = bopp_left(p2) * bopp_right(p2) - DOperator(E * E) -
                         DOperator(Poly(2) * E) * (bopp_left(p2) - DOperator(E)).real_part();
    Relation r = op.to_relation("free-combination");
    normalize_relation(r);
    return r;
}

}  // namespace dqwall::elimination
