#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqwall/residual/limit_operator.hpp"
#include "dqwall/residual/report.hpp"
#include "dqwall/starcalc/spectral.hpp"
#include "dqwall/wigner/catalog.hpp"

namespace dqwall::residual {

using starcalc::cdouble;
using starcalc::PhaseField;
using starcalc::PhaseGrid;
using wigner::CatalogEntry;

inline constexpr double kAnalyticTolerance = 1e-9;
inline constexpr double kGridTolerance = 1e-6;
inline constexpr double kOperatorIdentityTolerance = 1e-10;
inline constexpr double kShiftIdentityTolerance = 1e-8;

struct SamplePoint {
    double x, p;
};

struct SampleSet {
    std::vector<SamplePoint> points;
    nlohmann::ordered_json description;
};

/// nx * np cell midpoints of the rectangle (never on its edges).
inline SampleSet sample_grid(double x_lo, double x_hi, double p_lo, double p_hi, int nx, int np) {
    SampleSet s;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < np; ++j)
            s.points.push_back({x_lo + (i + 0.5) * (x_hi - x_lo) / nx, p_lo + (j + 0.5) * (p_hi - p_lo) / np});
    s.description = {{"samples", nx * np}, {"x", {x_lo, x_hi}}, {"p", {p_lo, p_hi}}};
    return s;
}

/// Whether x lies where the entry's potential vanishes (the limit PDE applies there).
inline bool in_free_region(const CatalogEntry& entry, double x) {
    const auto& w = entry.wave_id;
    if (w == "wall") return x < 0.0;
    if (w == "square_well") return std::abs(x) < 1.0;
    if (w == "delta_well") return x != 0.0;
    if (w == "free") return true;
    return false;
}

/// (1/16) rho_xxxx + (1/2)(p^2 + E) rho_xx + Z rho at the sample points, from the catalog's
/// analytic derivatives and the engine's coefficients.
inline ResidualReport limit_pde_residual(const CatalogEntry& entry, double E, const SampleSet& samples,
                                         double tolerance = kAnalyticTolerance) {
    const auto& op = LimitOperator::get();
    ResidualReport r;
    r.case_id = entry.id;
    r.equation = "limit_pde";
    r.grid = samples.description;
    for (const auto& s : samples.points) {
        if (!in_free_region(entry, s.x))
            throw std::invalid_argument("sample outside the V=0 region of " + entry.id + ": x = " + std::to_string(s.x));
        const auto c = op.at(s.p, E);
        double sum = 0.0;
        for (std::size_t n = 0; n <= 4; ++n) {
            if (c[n] == 0.0) continue;
            const double term = c[n] * wigner::catalog_eval(entry, s.x, s.p, n);
            sum += term;
            r.normalization = std::max(r.normalization, std::abs(term));
        }
        r.max_residual = std::max(r.max_residual, std::abs(sum));
    }
    finalize(r, tolerance);
    return r;
}

/// A sampled field and the index box that is scored (the taper margins are excluded).
struct ScoredField {
    std::string case_id;
    PhaseField field;
    std::size_t i_lo = 0, i_hi = 0, j_lo = 0, j_hi = 0;
    nlohmann::ordered_json grid;
    /// Cutoff profiles along x and p (empty: no cutoff was applied).
    std::vector<double> wx, wp;
    /// Exact x-derivatives of orders 1..4 (times the same cutoff), when the source is analytic.
    std::array<std::optional<PhaseField>, 5> analytic_dx;

    /// Reapplies the cutoff, clearing round-off that derivatives spread into the margins.
    PhaseField retaper(const PhaseField& g) const {
        if (wx.empty()) return g;
        const std::size_t np = g.grid().np();
        std::vector<cdouble> d(g.data());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] *= wx[k / np] * wp[k % np];
        return PhaseField(g.grid(), std::move(d));
    }

    bool scored(std::size_t i, std::size_t j) const { return i >= i_lo && i < i_hi && j >= j_lo && j < j_hi; }

    /// d^n/dx^n of the field: analytic when available, spectral otherwise.
    PhaseField dx(int n) const {
        if (n == 0) return field;
        if (analytic_dx[n]) return *analytic_dx[n];
        return retaper(starcalc::spectral_dx(field, n));
    }
};

struct WindowSpec {
    double x_lo, x_hi, p_lo, p_hi;
    std::size_t nx, np;
    /// Fraction of the window at each edge used for the smooth cutoff and excluded from scoring.
    double margin = 0.1;
    /// Off along an axis on which the field is already periodic or decayed.
    bool taper_x = true, taper_p = true;
    /// Sample the x-derivatives of the entry as well (used for the base field in showeqn).
    bool analytic_derivatives = false;
};

namespace detail {

/// Smooth cutoff: ~1e-17 at the window edges, 1 - 1e-17 from one margin inwards.
inline double taper(double t, double a, double b, double m) {
    const double sigma = m / 12.0;
    return 0.5 * (std::erf((t - (a + 0.5 * m)) / sigma) - std::erf((t - (b - 0.5 * m)) / sigma));
}

inline void set_scored_box(ScoredField& s, double margin) {
    const auto& g = s.field.grid();
    const double mx = margin * (g.x1() - g.x0()), mp = margin * (g.p1() - g.p0());
    s.i_lo = static_cast<std::size_t>(std::ceil(mx / g.dx()));
    s.i_hi = g.nx() - s.i_lo;
    s.j_lo = static_cast<std::size_t>(std::ceil(mp / g.dp()));
    s.j_hi = g.np() - s.j_lo;
    s.grid = {{"x", {g.x0(), g.x1()}}, {"nx", g.nx()}, {"p", {g.p0(), g.p1()}}, {"np", g.np()}, {"margin", margin}};
}

}  // namespace detail

/// The entry sampled on the window (which must lie in its V=0 or support region), multiplied by
/// a smooth cutoff in x and p.
inline ScoredField windowed_field(const CatalogEntry& entry, const WindowSpec& w) {
    const bool any_taper = w.taper_x || w.taper_p;
    const PhaseGrid g(w.x_lo, w.x_hi, w.nx, w.p_lo, w.p_hi, w.np);
    const double mx = w.margin * (w.x_hi - w.x_lo), mp = w.margin * (w.p_hi - w.p_lo);
    std::vector<double> tx(g.nx()), tp(g.np());
    for (std::size_t i = 0; i < g.nx(); ++i) tx[i] = w.taper_x ? detail::taper(g.x(i), w.x_lo, w.x_hi, mx) : 1.0;
    for (std::size_t j = 0; j < g.np(); ++j) tp[j] = w.taper_p ? detail::taper(g.p(j), w.p_lo, w.p_hi, mp) : 1.0;
    std::array<std::vector<cdouble>, 5> d;
    const std::size_t orders = w.analytic_derivatives ? 5 : 1;
    for (std::size_t n = 0; n < orders; ++n) d[n].resize(g.size());
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.np(); ++j) {
            const std::size_t k = i * g.np() + j;
            const double t = tx[i] * tp[j];
            if (orders == 1) {
                d[0][k] = t * wigner::catalog_eval(entry, g.x(i), g.p(j));
                continue;
            }
            const auto all = wigner::catalog_eval_x_derivatives(entry, g.x(i), g.p(j));
            for (std::size_t n = 0; n < orders; ++n) d[n][k] = t * all[n];
        }
    ScoredField s{entry.id, PhaseField(g, std::move(d[0])), 0, 0, 0, 0, {}, {}, {}, {}};
    for (std::size_t n = 1; n < orders; ++n) s.analytic_dx[n] = PhaseField(g, std::move(d[n]));
    if (any_taper) {
        s.wx = std::move(tx);
        s.wp = std::move(tp);
    }
    detail::set_scored_box(s, w.margin);
    s.grid["taper"] = {{"x", w.taper_x}, {"p", w.taper_p}};
    return s;
}

/// A real sum of random Gaussians, well inside the grid; not an eigenfunction of anything.
inline ScoredField random_smooth_field(std::uint64_t seed, const PhaseGrid& g = PhaseGrid::standard(), double margin = 0.1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> c(-2.0, 2.0), w(0.5, 1.0), a(-1.0, 1.0);
    struct Bump {
        double x0, p0, sx, sp, amp;
    };
    std::vector<Bump> bumps;
    for (int k = 0; k < 6; ++k) bumps.push_back({c(rng), c(rng), w(rng), w(rng), a(rng)});
    auto f = PhaseField::sample(g, [&](double x, double p) {
        double v = 0.0;
        for (const auto& b : bumps)
            v += b.amp * std::exp(-(x - b.x0) * (x - b.x0) / (b.sx * b.sx) - (p - b.p0) * (p - b.p0) / (b.sp * b.sp));
        return cdouble(v);
    });
    ScoredField s{"random_smooth_" + std::to_string(seed), std::move(f), 0, 0, 0, 0, {}, {}, {}, {}};
    detail::set_scored_box(s, margin);
    return s;
}

/// A residual field and, per point, the largest single term that entered it.
struct TermField {
    PhaseField residual;
    std::vector<double> term_max;
};

namespace detail {

inline void require_real(const PhaseField& f, const char* op) {
    for (const auto& v : f.data())
        if (v.imag() != 0.0) throw std::invalid_argument(std::string(op) + ": field must be real");
}

inline void add_term(TermField& t, const PhaseField& term) {
    t.residual = t.residual + term;
    for (std::size_t k = 0; k < term.data().size(); ++k) t.term_max[k] = std::max(t.term_max[k], std::abs(term.data()[k]));
}

inline PhaseField times_p_fn(const PhaseField& f, const std::function<double(double)>& c) {
    return f.times([&](double, double p) { return cdouble(c(p)); });
}

inline void score(ResidualReport& r, const ScoredField& s, const PhaseField& residual, const std::vector<double>& term_max) {
    const std::size_t np = s.field.grid().np();
    for (std::size_t i = s.i_lo; i < s.i_hi; ++i)
        for (std::size_t j = s.j_lo; j < s.j_hi; ++j) {
            r.max_residual = std::max(r.max_residual, std::abs(residual(i, j)));
            r.normalization = std::max(r.normalization, term_max[i * np + j]);
        }
}

}  // namespace detail

/// The limit-PDE residual field; dx(n) supplies the x-derivatives.
template <class Dx>
TermField limit_pde_field(const PhaseField& f, double E, Dx&& dx) {
    const auto& op = LimitOperator::get();
    TermField t{PhaseField(f.grid()), std::vector<double>(f.grid().size(), 0.0)};
    for (int n = 0; n <= 4; ++n) {
        const auto dn = n == 0 ? f : dx(n);
        const auto term = detail::times_p_fn(dn, [&](double p) { return op.at(p, E)[n]; });
        detail::add_term(t, term);
    }
    return t;
}

/// p^2 * rho * p^2 - E^2 rho - 2E Re(p^2 * rho - E rho), from Bopp shifts applied on both sides.
inline PhaseField hrhetc_field(const PhaseField& f, double E) {
    detail::require_real(f, "hrhetc");
    const auto left = starcalc::bopp_kinetic(f, starcalc::Side::left);
    const auto both = starcalc::bopp_kinetic(left, starcalc::Side::right);
    return both - cdouble(E * E) * f - cdouble(2.0 * E) * (left.real_part() - cdouble(E) * f);
}

/// The operator identity p^2 * rho * p^2 - E^2 rho - 2E Re(p^2 * rho - E rho) = L rho, with L the
/// limit operator, both with spectral x-derivatives: max |difference| over the scored box.
/// The size of each residual field is reported alongside (both vanish for an eigen-field).
inline ResidualReport hrhetc_residual(const ScoredField& s, double E, double tolerance = kOperatorIdentityTolerance) {
    const auto a = hrhetc_field(s.field, E);
    const auto b = limit_pde_field(s.field, E, [&](int n) { return starcalc::spectral_dx(s.field, n); });
    ResidualReport r;
    r.case_id = s.case_id;
    r.equation = "hrhetc";
    r.grid = s.grid;
    detail::score(r, s, a - b.residual, b.term_max);
    double ra = 0.0, rb = 0.0;
    for (std::size_t i = s.i_lo; i < s.i_hi; ++i)
        for (std::size_t j = s.j_lo; j < s.j_hi; ++j) {
            ra = std::max(ra, std::abs(a(i, j)));
            rb = std::max(rb, std::abs(b.residual(i, j)));
        }
    finalize(r, tolerance);
    const double norm = r.normalization > 0.0 ? r.normalization : 1.0;
    r.details["operator_residual_ratio"] = ra / norm;
    r.details["limit_residual_ratio"] = rb / norm;
    return r;
}

/// The generalized limit equation for a potential V = c0 + c1 x + c2 x^2 (V * f is the left
/// star product), term by term:
///   L rho + (p^2 - E) Re[V*rho] - p d_x Im[V*rho] - (1/4) d_x^2 Re[V*rho] - Im[V*(p d_x rho)]
///   + Im{V*Im[V*rho]} + Re{V*Re[V*rho]} + Re{V*[(p^2 - E - (1/4) d_x^2) rho]}.
inline TermField showeqn_field(const ScoredField& s, double E, const std::vector<double>& V) {
    const auto& f = s.field;
    detail::require_real(f, "showeqn");
    auto spectral_dx = [&](const PhaseField& g, int n) { return s.retaper(starcalc::spectral_dx(g, n)); };
    auto vstar = [&](const PhaseField& g) { return s.retaper(starcalc::star_poly_potential(V, g)); };
    TermField t = limit_pde_field(f, E, [&](int n) { return s.dx(n); });
    const auto vr = vstar(f);
    const auto re_vr = vr.real_part(), im_vr = vr.imag_part();
    detail::add_term(t, detail::times_p_fn(re_vr, [E](double p) { return p * p - E; }));
    detail::add_term(t, cdouble(-1.0) * detail::times_p_fn(spectral_dx(im_vr, 1), [](double p) { return p; }));
    detail::add_term(t, cdouble(-0.25) * spectral_dx(re_vr, 2));
    const auto p_dx = detail::times_p_fn(s.dx(1), [](double p) { return p; });
    detail::add_term(t, cdouble(-1.0) * vstar(p_dx).imag_part());
    detail::add_term(t, vstar(im_vr).imag_part() + vstar(re_vr).real_part());
    const auto kinetic = detail::times_p_fn(f, [E](double p) { return p * p - E; }) - cdouble(0.25) * s.dx(2);
    detail::add_term(t, vstar(kinetic).real_part());
    return t;
}

inline ResidualReport showeqn_residual(const ScoredField& s, double E, const std::vector<double>& V,
                                       double tolerance = kGridTolerance) {
    const auto t = showeqn_field(s, E, V);
    ResidualReport r;
    r.case_id = s.case_id;
    r.equation = "showeqn";
    r.grid = s.grid;
    r.grid["potential"] = V;
    detail::score(r, s, t.residual, t.term_max);
    finalize(r, tolerance);
    return r;
}

/// x-window of length 8 pi, p-grid on 1/8 + Z/4: for E = 1 and E = 4 every x-frequency of the
/// wall entry (2p, 2(p +- sqrt E), 2 sqrt E) is a multiple of 2 pi / length, so the field is
/// periodic as sampled. The rows p = 0, +-sqrt E (where the entry grows linearly in x) are avoided.
inline WindowSpec wall_window() {
    const double L = 8.0 * std::numbers::pi;
    return {-L - 0.25, -0.25, -7.875, 8.125, 512, 64, 0.1, false, false};
}

/// Window used for the half-oscillator check.
inline WindowSpec half_sho_window() { return {-4.0, -0.3, -6.0, 6.0, 512, 512, 0.1, true, true, true}; }

/// The half-oscillator (V = x^2 for x < 0) ground state in the generalized equation.
inline ResidualReport showeqn_residual(double E = 3.0) {
    return showeqn_residual(windowed_field(wigner::catalog::half_sho(), half_sho_window()), E, {0.0, 0.0, 1.0});
}

/// The showeqn route with V = 0 against the limit PDE with analytic derivatives, pointwise on
/// the scored grid points: max |difference| / normalization.
inline ResidualReport showeqn_zero_potential_check(const CatalogEntry& entry, double E, const WindowSpec& w,
                                                   double tolerance = 1e-10) {
    const auto s = windowed_field(entry, w);
    const auto t = showeqn_field(s, E, {0.0, 0.0, 0.0});
    const auto& op = LimitOperator::get();
    const auto& g = s.field.grid();
    ResidualReport r;
    r.case_id = entry.id;
    r.equation = "showeqn";
    r.grid = s.grid;
    r.grid["potential"] = std::vector<double>{0.0, 0.0, 0.0};
    double analytic_max = 0.0;
    for (std::size_t i = s.i_lo; i < s.i_hi; ++i)
        for (std::size_t j = s.j_lo; j < s.j_hi; ++j) {
            const double x = g.x(i), p = g.p(j);
            const auto c = op.at(p, E);
            double sum = 0.0;
            for (std::size_t n = 0; n <= 4; ++n) {
                if (c[n] == 0.0) continue;
                const double term = c[n] * wigner::catalog_eval(entry, x, p, n);
                sum += term;
                r.normalization = std::max(r.normalization, std::abs(term));
            }
            analytic_max = std::max(analytic_max, std::abs(sum));
            r.max_residual = std::max(r.max_residual, std::abs(t.residual(i, j).real() - sum));
        }
    finalize(r, tolerance);
    r.details["analytic_residual_ratio"] = analytic_max / r.normalization;
    return r;
}

/// Gaussian test field for the shift identities: slowly varying in p so the truncated series converges.
inline PhaseField op_identity_field() {
    const PhaseGrid g(-8.0, 8.0, 64, -48.0, 48.0, 256);
    return PhaseField::sample(g, [](double x, double p) { return cdouble(std::exp(-x * x - p * p / 36.0)); });
}

/// sin(alpha d_p) f = (1/2i)[f(p + i alpha) - f(p - i alpha)] and cos(alpha d_p) f = (1/2)[...+...],
/// truncated series against exact imaginary shifts.
inline ResidualReport op_identity_check(double alpha, const PhaseField& f = op_identity_field(),
                                        double tolerance = kShiftIdentityTolerance) {
    const auto up = starcalc::imag_p_shift(f, alpha);
    const auto down = starcalc::imag_p_shift(f, -alpha);
    const auto [c, s] = starcalc::trig_shift_series(f, alpha);
    const auto sin_shift = cdouble(0.0, -0.5) * (up - down);
    const auto cos_shift = cdouble(0.5) * (up + down);
    ResidualReport r;
    r.case_id = "gaussian_alpha_" + nlohmann::json(alpha).dump();
    r.equation = "op_identity";
    const auto& g = f.grid();
    r.grid = {{"x", {g.x0(), g.x1()}}, {"nx", g.nx()}, {"p", {g.p0(), g.p1()}}, {"np", g.np()}, {"alpha", alpha}};
    const double sin_err = (sin_shift - s).max_abs(), cos_err = (cos_shift - c).max_abs();
    r.max_residual = std::max(sin_err, cos_err);
    r.normalization = std::max({up.max_abs(), down.max_abs(), f.max_abs()});
    r.details["sin_discrepancy"] = sin_err;
    r.details["cos_discrepancy"] = cos_err;
    finalize(r, tolerance);
    return r;
}

}  // namespace dqwall::residual
