#pragma once

#include <array>
#include <optional>

#include "dqwall/expr/poly.hpp"

namespace dqwall::expr {

Poly gcd(const Poly& a, const Poly& b);

/// Pseudo-remainder of a by b with respect to s.
inline Poly pseudo_remainder(const Poly& a, const Poly& b, Symbol s) {
    const unsigned db = b.degree(s);
    const Poly lc = b.coefficient_of(s, db);
    Poly r = a;
    while (!r.is_zero() && r.degree(s) >= db) {
        const unsigned dr = r.degree(s);
        Monomial shift;
        shift[s] = static_cast<std::uint16_t>(dr - db);
        r = lc * r - r.coefficient_of(s, dr) * b.times_monomial(shift);
    }
    return r;
}

/// Gcd of the coefficients of a viewed as a polynomial in s (monic).
inline Poly content_in(const Poly& a, Symbol s) {
    Poly g;
    for (const auto& c : a.coefficients_in(s)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

namespace detail {

// Primitive polynomial remainder sequence for a and b primitive in s.
inline Poly primitive_prs(Poly a, Poly b, Symbol s) {
    if (a.degree(s) < b.degree(s)) std::swap(a, b);
    a = a.monic();
    b = b.monic();
    while (true) {
        Poly r = pseudo_remainder(a, b, s);
        if (r.is_zero()) return b.monic();
        if (r.degree(s) == 0) return Poly(1);
        a = std::move(b);
        b = r.divide_exact(content_in(r, s))->monic();
    }
}

// Degree in s of gcd(a, b) after mapping every other symbol to a fixed integer. This is an
// upper bound on the true degree; nullopt when the evaluation drops a leading coefficient.
inline std::optional<unsigned> image_gcd_degree(const Poly& a, const Poly& b, Symbol s, long offset) {
    static constexpr std::array<long, kSymbolCount> points = {3, -5, 7, 11, -13, 17, 19, -23, 29, 31, -37, 41, 43, -47};
    Poly ea = a, eb = b;
    for (std::size_t n = 0; n < kSymbolCount; ++n) {
        const auto t = static_cast<Symbol>(n);
        if (t == s) continue;
        const Poly value(points[n] + offset * static_cast<long>(n + 1));
        if (ea.contains(t)) ea = ea.substitute(t, value);
        if (eb.contains(t)) eb = eb.substitute(t, value);
    }
    if (ea.degree(s) != a.degree(s) || eb.degree(s) != b.degree(s)) return std::nullopt;
    if (ea.degree(s) < eb.degree(s)) std::swap(ea, eb);
    eb = eb.monic();
    while (!eb.is_zero()) {
        Poly r = pseudo_remainder(ea, eb, s);
        ea = std::move(eb);
        eb = r.is_zero() ? std::move(r) : r.monic();
    }
    return ea.degree(s);
}

}  // namespace detail

/// Greatest common divisor over Q(i), normalized to be monic in the lex order.
inline Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a.size() <= b.size()) {
        if (b.divide_exact(a)) return a.monic();
    } else if (a.divide_exact(b)) {
        return b.monic();
    }
    for (std::size_t n = 0; n < kSymbolCount; ++n) {
        const auto s = static_cast<Symbol>(n);
        const bool in_a = a.contains(s), in_b = b.contains(s);
        if (in_a && !in_b) return gcd(content_in(a, s), b);
        if (in_b && !in_a) return gcd(a, content_in(b, s));
    }
    Symbol main = Symbol::p;
    for (std::size_t n = 0; n < kSymbolCount; ++n) {
        if (a.contains(static_cast<Symbol>(n))) {
            main = static_cast<Symbol>(n);
            break;
        }
    }
    const Poly ca = content_in(a, main);
    const Poly cb = content_in(b, main);
    const Poly c = gcd(ca, cb);
    for (long offset : {0L, 1L}) {
        const auto bound = detail::image_gcd_degree(a, b, main, offset);
        if (bound && *bound == 0) return c;
    }
    const Poly g = detail::primitive_prs(*a.divide_exact(ca), *b.divide_exact(cb), main);
    return (c * g).monic();
}

}  // namespace dqwall::expr
