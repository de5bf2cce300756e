#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "dqwall/wigner/erf.hpp"
#include "dqwall/wigner/jet.hpp"

namespace dqwall::wigner {

inline constexpr std::size_t kMaxXOrder = 4;
inline constexpr std::size_t kMaxPOrder = 2;

using CJet = Jet<std::complex<double>, kMaxXOrder>;
using VJet = Jet<std::complex<double>, 0>;

struct Support {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double x) const { return x >= lo && x <= hi; }
};

struct CatalogParams {
    double E = 0.0;
    int n = 0;
    double a_plus = 0.0;
    double a_minus = 0.0;
    std::complex<double> b{};
    /// Width of the Gaussians standing in for the momentum deltas of free states.
    double sigma = 0.0;
};

/// A closed-form Wigner function. The formula is a function of jets so a single definition
/// yields the value and its derivatives in x or p.
struct CatalogEntry {
    std::string id;
    std::string wave_id;
    CatalogParams params;
    Support support;
    /// Set for formulas kept exactly as printed although they disagree with the quadrature oracle.
    bool flagged = false;
    std::string note;
    std::function<CJet(const CJet& x, const CJet& p)> formula;
    /// The same formula on plain values (no derivative bookkeeping).
    std::function<VJet(const VJet& x, const VJet& p)> value_formula;

    template <class F>
    void set_formula(F f) {
        formula = f;
        value_formula = f;
    }
};

namespace detail {

template <class J>
J abs_jet(const J& x) {
    return x.value().real() < 0.0 ? -x : x;
}

}  // namespace detail

/// The formula continued past the support, as a complex number (no realness projection).
inline std::complex<double> catalog_eval_complex(const CatalogEntry& entry, double x, double p, std::size_t dx = 0,
                                                 std::size_t dp = 0) {
    if (dx > kMaxXOrder) throw std::out_of_range("x-derivative order out of range (max 4)");
    if (dp > kMaxPOrder) throw std::out_of_range("p-derivative order out of range (max 2)");
    if (dx > 0 && dp > 0) throw std::out_of_range("mixed derivatives are not supported");
    if (dx == 0 && dp == 0) return entry.value_formula(VJet(x), VJet(p)).value();
    if (dp > 0) return entry.formula(CJet(x), CJet::variable(p)).derivative(dp);
    return entry.formula(CJet::variable(x), CJet(p)).derivative(dx);
}

/// Value (or derivative) of the entry; zero outside its support.
inline double catalog_eval(const CatalogEntry& entry, double x, double p, std::size_t dx = 0, std::size_t dp = 0) {
    if (!std::isfinite(x) || !std::isfinite(p)) throw std::invalid_argument("non-finite sample point");
    const auto v = catalog_eval_complex(entry, x, p, dx, dp);
    if (!entry.support.contains(x)) return 0.0;
    return v.real();
}

/// The entry and its x-derivatives through order 4 at (x, p), from a single jet evaluation;
/// zero outside the support.
inline std::array<double, kMaxXOrder + 1> catalog_eval_x_derivatives(const CatalogEntry& entry, double x, double p) {
    if (!std::isfinite(x) || !std::isfinite(p)) throw std::invalid_argument("non-finite sample point");
    std::array<double, kMaxXOrder + 1> out{};
    if (!entry.support.contains(x)) return out;
    const auto j = entry.formula(CJet::variable(x), CJet(p));
    for (std::size_t n = 0; n <= kMaxXOrder; ++n) out[n] = j.derivative(n).real();
    return out;
}

namespace catalog {

/// Infinite wall at x = 0, as printed: the interference term enters with a plus sign.
inline CatalogEntry wall(double E) {
    if (!(E > 0.0)) throw std::invalid_argument("wall requires E > 0");
    const double s = std::sqrt(E);
    CatalogEntry e{"wall", "wall", {.E = E}, {.hi = 0.0}, true,
                   "printed interference sign; not proportional to the wave-function oracle", {}, {}};
    e.set_formula([s](const auto& x, const auto& p) {
        using J = std::decay_t<decltype(x)>;
        const J two_x = J(2.0) * x;
        return J(4.0) * x *
               (sinc(two_x * (p + J(s))) + sinc(two_x * (p - J(s))) +
                J(2.0) * cos(two_x * J(s)) * sinc(two_x * p));
    });
    return e;
}

/// Infinite wall at x = 0 with the interference sign that reproduces the standing wave.
inline CatalogEntry wall_derived(double E) {
    auto e = wall(E);
    e.id = "wall_derived";
    e.flagged = false;
    e.note = "interference sign fixed by the wave-function oracle";
    const double s = std::sqrt(E);
    e.set_formula([s](const auto& x, const auto& p) {
        using J = std::decay_t<decltype(x)>;
        const J two_x = J(2.0) * x;
        return J(4.0) * x *
               (sinc(two_x * (p + J(s))) + sinc(two_x * (p - J(s))) -
                J(2.0) * cos(two_x * J(s)) * sinc(two_x * p));
    });
    return e;
}

/// Infinite square well on [-1, 1], state n with E = n^2 pi^2 / 4.
inline CatalogEntry square_well(int n) {
    if (n < 1) throw std::invalid_argument("square well quantum number must be >= 1");
    const double npi = n * std::numbers::pi;
    CatalogEntry e{"square_well", "square_well", {.E = npi * npi / 4.0, .n = n}, {-1.0, 1.0}, false, {}, {}, {}};
    e.set_formula([npi](const auto& x, const auto& p) {
        using J = std::decay_t<decltype(x)>;
        const J l = J(1.0) - detail::abs_jet(x);
        const J two_p = J(2.0) * p;
        return l * sinc((two_p + J(npi)) * l) + l * sinc((two_p - J(npi)) * l) +
               J(2.0) * l * cos(J(npi) * x) * sinc(two_p * l);
    });
    return e;
}

/// Bound state of the attractive delta potential, E = -1.
inline CatalogEntry delta_well() {
    CatalogEntry e{"delta_well", "delta_well", {.E = -1.0}, {}, false, {}, {}, {}};
    e.set_formula([](const auto& x, const auto& p) {
        using J = std::decay_t<decltype(x)>;
        const J ax = detail::abs_jet(x);
        const J t = J(2.0) * ax;
        return exp(-t) * (cos(t * p) + t * sinc(t * p)) / (p * p + J(1.0));
    });
    return e;
}

/// Half oscillator V = x^2 for x < 0, wall at 0; ground state E = 3.
inline CatalogEntry half_sho() {
    CatalogEntry e{"half_sho", "half_sho", {.E = 3.0}, {.hi = 0.0}, false, "closed form derived from the ground state", {}, {}};
    e.set_formula([](const auto& x, const auto& p) {
        using J = std::decay_t<decltype(x)>;
        const std::complex<double> I(0.0, 1.0);
        const J ip = J(I) * p;
        const J x2 = x * x, p2 = p * p;
        const double k = std::sqrt(std::numbers::pi) / 2.0;
        const J re_erf = J(0.5 * k) * (erf(x + ip) + erf(x - ip));
        const J first = J(-2.0) * (x2 + p2 - J(0.5)) * exp(-x2 - p2) * re_erf;
        const J two_xp = J(2.0) * x * p;
        const J second = exp(J(-2.0) * x2) * (p * sin(two_xp) - x * cos(two_xp));
        return J(1.0 / std::numbers::pi) * (first + second);
    });
    return e;
}

/// Half oscillator, the closed form exactly as printed, with erf(z) = int_0^z e^{-t^2} dt.
inline CatalogEntry half_sho_printed() {
    CatalogEntry e{"half_sho_printed", "half_sho", {.E = 3.0}, {.hi = 0.0}, true,
                   "verbatim printed form; complex-valued and not proportional to the oracle", {}, {}};
    e.set_formula([](const auto& x, const auto& p) {
        using J = std::decay_t<decltype(x)>;
        const std::complex<double> I(0.0, 1.0);
        const J ip = J(I) * p;
        const J x2 = x * x, p2 = p * p;
        const double k = std::sqrt(std::numbers::pi) / 2.0;
        const J Ep = J(k) * erf(x + ip);
        const J Em = J(k) * erf(x - ip);
        const J pi(std::numbers::pi), rpi(std::sqrt(std::numbers::pi)), half(0.5);
        const J g = exp(-p2 - x2);
        const J wm = exp(J(-2.0) * x * (x - ip));
        const J wp = exp(J(-2.0) * x * (x + ip));
        return x2 * Em * pi * g - half * Ep * pi * g + x2 * Ep * pi * g + rpi * x * wm + J(I) * rpi * p * wm +
               Em * p2 * pi * g - half * Ep * pi * g + rpi * x * wp - J(I) * rpi * p * wp + Em * p2 * pi * g;
    });
    return e;
}

/// Free particle, a+ d(p - k) + a- d(p + k) + d(p)[b e^{2ikx} + c.c.], k = sqrt(E), with each
/// delta replaced by a normalized Gaussian of width sigma.
inline CatalogEntry free_mixed(double a_plus, double a_minus, std::complex<double> b, double E, double sigma) {
    if (!(E > 0.0)) throw std::invalid_argument("free state requires E > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("free state requires sigma > 0");
    CatalogEntry e{"free_mixed", "free",
                   {.E = E, .a_plus = a_plus, .a_minus = a_minus, .b = b, .sigma = sigma}, {}, false,
                   "momentum deltas regularized by Gaussians", {}, {}};
    const double k = std::sqrt(E);
    e.set_formula([=](const auto& x, const auto& p) {
        using J = std::decay_t<decltype(x)>;
        const auto g = [sigma](const J& q) {
            return exp(-(q * q) / J(sigma * sigma)) / J(sigma * std::sqrt(std::numbers::pi));
        };
        const std::complex<double> I(0.0, 1.0);
        const J phase = J(2.0 * k * I) * x;
        return J(a_plus) * g(p - J(k)) + J(a_minus) * g(p + J(k)) +
               g(p) * (J(b) * exp(phase) + J(std::conj(b)) * exp(-phase));
    });
    return e;
}

/// The entry multiplied by a constant (the governing equations are homogeneous in rho).
inline CatalogEntry scaled(CatalogEntry e, std::complex<double> factor) {
    auto f = e.formula;
    auto v = e.value_formula;
    e.formula = [f, factor](const CJet& x, const CJet& p) { return CJet(factor) * f(x, p); };
    e.value_formula = [v, factor](const VJet& x, const VJet& p) { return VJet(factor) * v(x, p); };
    return e;
}

inline std::vector<std::string> ids() {
    return {"wall", "wall_derived", "square_well", "delta_well", "half_sho", "half_sho_printed", "free_mixed"};
}

/// Entry by id. E applies to the walls and free states, n to the square well.
inline CatalogEntry by_id(const std::string& id, double E = 1.0, int n = 1) {
    if (id == "wall") return wall(E);
    if (id == "wall_derived") return wall_derived(E);
    if (id == "square_well") return square_well(n);
    if (id == "delta_well") return delta_well();
    if (id == "half_sho") return half_sho();
    if (id == "half_sho_printed") return half_sho_printed();
    if (id == "free_mixed") return free_mixed(1.0, 1.0, 1.0, E, 0.1);
    throw std::invalid_argument("unknown catalog entry: " + id);
}

}  // namespace catalog

}  // namespace dqwall::wigner
