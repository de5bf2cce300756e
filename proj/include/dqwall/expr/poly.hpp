#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dqwall/expr/gaussian_rational.hpp"

namespace dqwall::expr {

/// Polynomial variables. Everything the phase-space calculus needs lives in one fixed table:
/// momentum, energy, the exponent scale alpha, the exponential generators, and the
/// parameters of the distributional free-particle states.
enum class Symbol : std::uint8_t {
    p,      // momentum
    E,      // energy
    alpha,  // exponent scale of the wall potentials
    u,      // e^{2 alpha x}
    u_p,    // e^{2 alpha (x-1)}
    u_m,    // e^{-2 alpha (x+1)}
    v,      // e^{-2 alpha x}
    s,      // sqrt(E) in the free-particle sector
    s2,     // a second, independent frequency
    k,      // a free momentum label
    a_p,    // a_+
    a_m,    // a_-
    b_r,    // Re b
    b_i,    // Im b
};

inline constexpr std::size_t kSymbolCount = 14;

inline constexpr std::array<const char*, kSymbolCount> kSymbolNames = {
    "p", "E", "alpha", "u", "u_p", "u_m", "v", "s", "s2", "k", "a_p", "a_m", "b_r", "b_i"};

inline const char* symbol_name(Symbol s) { return kSymbolNames[static_cast<std::size_t>(s)]; }

inline std::optional<Symbol> symbol_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kSymbolCount; ++i)
        if (name == kSymbolNames[i]) return static_cast<Symbol>(i);
    return std::nullopt;
}

/// Exponent vector. Lexicographic comparison over the symbol order is the monomial order.
struct Monomial {
    std::array<std::uint16_t, kSymbolCount> exp{};

    std::uint16_t operator[](Symbol s) const { return exp[static_cast<std::size_t>(s)]; }
    std::uint16_t& operator[](Symbol s) { return exp[static_cast<std::size_t>(s)]; }

    unsigned total_degree() const {
        unsigned d = 0;
        for (auto e : exp) d += e;
        return d;
    }
    bool is_one() const {
        return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
    }
    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < kSymbolCount; ++i)
            if (exp[i] > o.exp[i]) return false;
        return true;
    }
    friend Monomial operator*(Monomial a, const Monomial& b) {
        for (std::size_t i = 0; i < kSymbolCount; ++i) a.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
        return a;
    }
    /// Requires b.divides(a).
    friend Monomial operator/(Monomial a, const Monomial& b) {
        for (std::size_t i = 0; i < kSymbolCount; ++i) a.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
        return a;
    }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < kSymbolCount; ++i) {
            if (exp[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += kSymbolNames[i];
            if (exp[i] > 1) out += "^" + std::to_string(exp[i]);
        }
        return out;
    }
};

struct Term {
    Monomial mono;
    GaussianRational coef;
};

/// Sparse multivariate polynomial over Q(i). Terms are stored in strictly descending
/// monomial order with no zero coefficients, so structural equality is mathematical equality.
class Poly {
public:
    Poly() = default;
    Poly(const GaussianRational& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.push_back({Monomial{}, c});
    }
    Poly(long c) : Poly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

    static Poly symbol(Symbol s, unsigned power = 1) {
        Monomial m;
        m[s] = static_cast<std::uint16_t>(power);
        return term(m, GaussianRational(1));
    }
    static Poly term(const Monomial& m, const GaussianRational& c) {
        Poly r;
        if (!c.is_zero()) r.terms_.push_back({m, c});
        return r;
    }
    static Poly i() { return Poly(GaussianRational::i()); }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    GaussianRational constant_value() const {
        if (!is_constant()) throw std::logic_error("polynomial is not constant");
        return terms_.empty() ? GaussianRational() : terms_[0].coef;
    }
    bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].coef.is_one(); }

    const Term& leading_term() const { return terms_.front(); }
    GaussianRational leading_coefficient() const { return terms_.empty() ? GaussianRational() : terms_[0].coef; }

    unsigned degree(Symbol s) const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[s]);
        return d;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }
    bool contains(Symbol s) const {
        return std::any_of(terms_.begin(), terms_.end(), [s](const Term& t) { return t.mono[s] > 0; });
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.coef = -t.coef;
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = merge(*this, o, false); }
    Poly& operator-=(const Poly& o) { return *this = merge(*this, o, true); }
    Poly& operator*=(const Poly& o) { return *this = multiply(*this, o); }
    friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
    friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }
    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t n = 0; n < a.terms_.size(); ++n)
            if (a.terms_[n].mono != b.terms_[n].mono || a.terms_[n].coef != b.terms_[n].coef) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(const GaussianRational& c) const {
        if (c.is_zero()) return {};
        Poly r = *this;
        for (auto& t : r.terms_) t.coef *= c;
        return r;
    }
    Poly times_monomial(const Monomial& m) const {
        Poly r = *this;
        for (auto& t : r.terms_) t.mono = t.mono * m;
        return r;
    }

    Poly pow(unsigned n) const {
        Poly result(1), base = *this;
        while (n > 0) {
            if (n & 1U) result *= base;
            n >>= 1U;
            if (n > 0) base *= base;
        }
        return result;
    }

    /// Leading coefficient scaled to one; zero stays zero.
    Poly monic() const {
        if (is_zero()) return {};
        const GaussianRational lc = leading_coefficient();
        if (lc.is_one()) return *this;
        return scaled(GaussianRational(1) / lc);
    }

    /// Coefficients of powers of s: result[n] multiplies s^n. Coefficients are free of s.
    std::vector<Poly> coefficients_in(Symbol s) const {
        std::vector<std::vector<Term>> buckets(degree(s) + 1);
        for (const auto& t : terms_) {
            Term u = t;
            const auto d = u.mono[s];
            u.mono[s] = 0;
            buckets[d].push_back(std::move(u));
        }
        std::vector<Poly> out;
        out.reserve(buckets.size());
        for (auto& b : buckets) {
            // removing one exponent preserves the relative lex order of terms sharing it
            Poly c;
            c.terms_ = std::move(b);
            out.push_back(std::move(c));
        }
        return out;
    }
    Poly coefficient_of(Symbol s, unsigned power) const {
        Poly c;
        for (const auto& t : terms_) {
            if (t.mono[s] != power) continue;
            Term u = t;
            u.mono[s] = 0;
            c.terms_.push_back(std::move(u));
        }
        return c;
    }

    Poly derivative(Symbol s) const {
        std::vector<Term> out;
        for (const auto& t : terms_) {
            const auto e = t.mono[s];
            if (e == 0) continue;
            Term u = t;
            u.mono[s] = static_cast<std::uint16_t>(e - 1);
            u.coef *= GaussianRational(static_cast<long>(e));
            out.push_back(std::move(u));
        }
        return from_unsorted(std::move(out));
    }

    /// Replaces every occurrence of s by the polynomial r.
    Poly substitute(Symbol s, const Poly& r) const {
        const auto coeffs = coefficients_in(s);
        Poly result;
        for (std::size_t n = coeffs.size(); n-- > 0;) {
            result = result * r + coeffs[n];
        }
        return result;
    }

    /// Quotient if o divides *this exactly, nullopt otherwise.
    std::optional<Poly> divide_exact(const Poly& o) const {
        if (o.is_zero()) throw std::domain_error("zero denominator");
        if (is_zero()) return Poly{};
        if (o.is_constant()) return scaled(GaussianRational(1) / o.constant_value());
        const Term& lead = o.leading_term();
        const GaussianRational inv = GaussianRational(1) / lead.coef;
        Poly rem = *this;
        std::vector<Term> quotient;
        while (!rem.is_zero()) {
            const Term& lt = rem.leading_term();
            if (!lead.mono.divides(lt.mono)) return std::nullopt;
            Term q{lt.mono / lead.mono, lt.coef * inv};
            rem -= o.times_monomial(q.mono).scaled(q.coef);
            quotient.push_back(std::move(q));
        }
        Poly out;
        out.terms_ = std::move(quotient);  // produced in descending order
        return out;
    }

    /// Complex conjugate, treating every symbol as real.
    Poly conj() const {
        Poly r = *this;
        for (auto& t : r.terms_) t.coef = t.coef.conj();
        return r;
    }
    /// Real part, treating every symbol as real.
    Poly real_part() const {
        std::vector<Term> out;
        for (const auto& t : terms_)
            if (sgn(t.coef.re()) != 0) out.push_back({t.mono, GaussianRational(t.coef.re())});
        Poly r;
        r.terms_ = std::move(out);
        return r;
    }
    Poly imag_part() const {
        std::vector<Term> out;
        for (const auto& t : terms_)
            if (sgn(t.coef.im()) != 0) out.push_back({t.mono, GaussianRational(t.coef.im())});
        Poly r;
        r.terms_ = std::move(out);
        return r;
    }

    /// Drops every term whose monomial satisfies pred.
    template <class Pred>
    Poly drop_terms_if(Pred pred) const {
        Poly r;
        for (const auto& t : terms_)
            if (!pred(t.mono)) r.terms_.push_back(t);
        return r;
    }

    /// Numeric value; values are indexed by symbol.
    std::complex<double> evaluate(std::span<const std::complex<double>, kSymbolCount> values) const {
        std::complex<double> acc = 0;
        for (const auto& t : terms_) {
            std::complex<double> m = t.coef.to_complex();
            for (std::size_t n = 0; n < kSymbolCount; ++n)
                for (unsigned e = 0; e < t.mono.exp[n]; ++e) m *= values[n];
            acc += m;
        }
        return acc;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& t : terms_) {
            std::string piece;
            if (t.mono.is_one()) {
                piece = t.coef.to_string();
            } else if (t.coef.is_one()) {
                piece = t.mono.to_string();
            } else if (t.coef == GaussianRational(-1)) {
                piece = "-" + t.mono.to_string();
            } else {
                piece = t.coef.to_string() + "*" + t.mono.to_string();
            }
            if (out.empty()) {
                out = piece;
            } else if (piece[0] == '-') {
                out += " - " + piece.substr(1);
            } else {
                out += " + " + piece;
            }
        }
        return out;
    }

private:
    std::vector<Term> terms_;

    static Poly from_unsorted(std::vector<Term> terms) {
        std::map<Monomial, GaussianRational, std::greater<>> acc;
        for (auto& t : terms) {
            auto [it, inserted] = acc.try_emplace(t.mono, t.coef);
            if (!inserted) it->second += t.coef;
        }
        Poly r;
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.is_zero()) r.terms_.push_back({m, std::move(c)});
        return r;
    }

    static Poly merge(const Poly& a, const Poly& b, bool subtract) {
        Poly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
                Term t = b.terms_[j++];
                if (subtract) t.coef = -t.coef;
                r.terms_.push_back(std::move(t));
            } else {
                GaussianRational c = subtract ? a.terms_[i].coef - b.terms_[j].coef : a.terms_[i].coef + b.terms_[j].coef;
                if (!c.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    static Poly multiply(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_constant()) return b.scaled(a.terms_[0].coef);
        if (b.is_constant()) return a.scaled(b.terms_[0].coef);
        std::map<Monomial, GaussianRational, std::greater<>> acc;
        for (const auto& x : a.terms_) {
            for (const auto& y : b.terms_) {
                auto [it, inserted] = acc.try_emplace(x.mono * y.mono);
                it->second += x.coef * y.coef;
            }
        }
        Poly r;
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.is_zero()) r.terms_.push_back({m, std::move(c)});
        return r;
    }
};

inline Poly sym(Symbol s, unsigned power = 1) { return Poly::symbol(s, power); }

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

}  // namespace dqwall::expr
