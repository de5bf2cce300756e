#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqwall/expr/poly.hpp"

namespace dqwall::freepart {

using expr::GaussianRational;
using expr::Poly;
using expr::Symbol;

/// coefficient * delta(p - location) * exp(i frequency x). Location and frequency are real
/// linear forms in the frequency symbols (s = sqrt(E), s2, k).
struct DeltaTerm {
    Poly coefficient;
    Poly location;
    Poly frequency;
};

/// A finite sum of DeltaTerms times delta(0)^delta_zero_power. Terms with equal (location,
/// frequency) are merged and zero terms dropped, so equality is structural.
class Distribution {
public:
    Distribution() = default;

    unsigned delta_zero_power() const { return delta_zero_power_; }
    const std::vector<DeltaTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void set_delta_zero_power(unsigned n) { delta_zero_power_ = n; }

    Distribution& add(const Poly& coefficient, const Poly& location, const Poly& frequency) {
        if (coefficient.is_zero()) return *this;
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            if (it->location == location && it->frequency == frequency) {
                it->coefficient += coefficient;
                if (it->coefficient.is_zero()) terms_.erase(it);
                return *this;
            }
        }
        terms_.push_back({coefficient, location, frequency});
        std::sort(terms_.begin(), terms_.end(), [](const DeltaTerm& a, const DeltaTerm& b) {
            const auto ka = a.location.to_string(), kb = b.location.to_string();
            if (ka != kb) return ka < kb;
            return a.frequency.to_string() < b.frequency.to_string();
        });
        return *this;
    }

    /// Coefficient of delta(p - location) exp(i frequency x) (zero if absent).
    Poly coefficient(const Poly& location, const Poly& frequency) const {
        for (const auto& t : terms_)
            if (t.location == location && t.frequency == frequency) return t.coefficient;
        return {};
    }

    Distribution map_coefficients(const auto& f) const {
        Distribution out;
        out.delta_zero_power_ = delta_zero_power_;
        for (const auto& t : terms_) out.add(f(t), t.location, t.frequency);
        return out;
    }

    friend bool operator==(const Distribution& a, const Distribution& b) {
        if (a.delta_zero_power_ != b.delta_zero_power_ || a.terms_.size() != b.terms_.size()) return false;
        for (const auto& t : a.terms_)
            if (b.coefficient(t.location, t.frequency) != t.coefficient) return false;
        return true;
    }

    /// Canonical text, e.g. "delta(0)*[(a_p^2)*delta(p - s) + (b_r)*delta(p)*exp(i*(2*s)*x)]".
    std::string to_string() const {
        std::string body;
        for (const auto& t : terms_) {
            if (!body.empty()) body += " + ";
            body += "(" + t.coefficient.to_string() + ")*";
            if (t.location.is_zero()) {
                body += "delta(p)";
            } else {
                const Poly neg = -t.location;
                const bool minus = t.location.leading_coefficient().re() < 0;
                body += minus ? "delta(p + " + neg.to_string() + ")" : "delta(p - " + t.location.to_string() + ")";
            }
            if (!t.frequency.is_zero()) body += "*exp(i*(" + t.frequency.to_string() + ")*x)";
        }
        if (body.empty()) body = "0";
        if (delta_zero_power_ == 0) return body;
        std::string prefix = "delta(0)";
        if (delta_zero_power_ > 1) prefix += "^" + std::to_string(delta_zero_power_);
        return prefix + "*[" + body + "]";
    }

private:
    unsigned delta_zero_power_ = 0;
    std::vector<DeltaTerm> terms_;
};

/// Outcome of one basis product in the delta rule table.
struct StarRule {
    bool nonzero;
    /// Location of the surviving delta and frequency of the product.
    Poly location, frequency;
};

/// (delta(p - c1) e^{i q1 x}) * (delta(p - c2) e^{i q2 x}) = e^{i(q1+q2)x} delta(p + q2/2 - c1) delta(p - q1/2 - c2)
/// (the Moyal product of x-plane waves shifts each factor's momentum by half the other's
/// frequency). The product of two deltas is read as delta(0) delta(p - c) when their supports
/// coincide and as zero otherwise (distinct linear forms in s are distinct points for E > 0).
inline StarRule star_rule(const Poly& c1, const Poly& q1, const Poly& c2, const Poly& q2) {
    const Poly half(GaussianRational::ratio(1, 2));
    const Poly left = c1 - half * q2;
    const Poly right = c2 + half * q1;
    if (left != right) return {false, {}, {}};
    return {true, left, q1 + q2};
}

/// Term-by-term star product under the rule table; every product carries one delta(0).
inline Distribution star(const Distribution& f, const Distribution& g) {
    Distribution out;
    out.set_delta_zero_power(f.delta_zero_power() + g.delta_zero_power() + 1);
    for (const auto& a : f.terms())
        for (const auto& b : g.terms()) {
            const auto rule = star_rule(a.location, a.frequency, b.location, b.frequency);
            if (rule.nonzero) out.add(a.coefficient * b.coefficient, rule.location, rule.frequency);
        }
    return out;
}

/// Residuals of the star-genvalue equation p^2 * rho = E rho for a delta ansatz, split into
///   imaginary part: p d_x rho          (p delta(p - c) = c delta(p - c), d_x e^{iqx} = iq e^{iqx})
///   real part:      (p^2 - (1/4) d_x^2 - E) rho.
struct GenvalueResidual {
    Distribution imaginary;
    Distribution real;
};

inline GenvalueResidual stargen_residual(const Distribution& rho, const Poly& E) {
    const Poly I = Poly::i();
    const Poly quarter(GaussianRational::ratio(1, 4));
    return {rho.map_coefficients([&](const DeltaTerm& t) { return t.coefficient * t.location * I * t.frequency; }),
            rho.map_coefficients([&](const DeltaTerm& t) {
                return t.coefficient * (t.location * t.location + quarter * t.frequency * t.frequency - E);
            })};
}

}  // namespace dqwall::freepart
