#pragma once

#include <string>

#include "dqwall/expr/gcd.hpp"
#include "dqwall/expr/poly.hpp"

namespace dqwall::expr {

/// Quotient of two polynomials, kept reduced (gcd removed) with a monic denominator.
class RationalFn {
public:
    RationalFn() : den_(1) {}
    RationalFn(Poly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalFn(const GaussianRational& c) : RationalFn(Poly(c)) {}  // NOLINT(google-explicit-constructor)
    RationalFn(long c) : RationalFn(Poly(c)) {}  // NOLINT(google-explicit-constructor)
    RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RationalFn operator-() const { return raw(-num_, den_); }

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_polynomial() && b.is_polynomial()) return raw(a.num_ * b.num_, Poly(1));
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
        if (b.is_zero()) throw std::domain_error("zero denominator");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
    RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
    RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
    RationalFn& operator/=(const RationalFn& o) { return *this = *this / o; }

    /// Decided by cross-multiplication, so it does not depend on the normal form.
    friend bool operator==(const RationalFn& a, const RationalFn& b) { return a.num_ * b.den_ == b.num_ * a.den_; }
    friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

    RationalFn substitute(Symbol s, const Poly& r) const { return {num_.substitute(s, r), den_.substitute(s, r)}; }
    RationalFn conj() const { return {num_.conj(), den_.conj()}; }

    std::complex<double> evaluate(std::span<const std::complex<double>, kSymbolCount> values) const {
        return num_.evaluate(values) / den_.evaluate(values);
    }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    Poly num_;
    Poly den_;

    static RationalFn raw(Poly num, Poly den) {
        RationalFn r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        if (!den_.is_constant()) {
            const Poly g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = *num_.divide_exact(g);
                den_ = *den_.divide_exact(g);
            }
        }
        const GaussianRational lc = den_.leading_coefficient();
        if (!lc.is_one()) {
            const GaussianRational inv = GaussianRational(1) / lc;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
};

inline std::ostream& operator<<(std::ostream& os, const RationalFn& f) { return os << f.to_string(); }

}  // namespace dqwall::expr
