#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "dqwall/residual/report.hpp"
#include "dqwall/starcalc/star.hpp"

namespace dqwall::residual {

inline constexpr double kStarTolerance = 1e-6;
inline constexpr double kHermiticityTolerance = 1e-10;

namespace detail {

inline starcalc::PhaseField gaussian_bump(const starcalc::PhaseGrid& g, double x0, double p0, double sx, double sp) {
    return starcalc::PhaseField::sample(g, [=](double x, double p) {
        return starcalc::cdouble(std::exp(-(x - x0) * (x - x0) / (sx * sx) - (p - p0) * (p - p0) / (sp * sp)));
    });
}

inline nlohmann::ordered_json grid_json(const starcalc::PhaseGrid& g) {
    return {{"x", {g.x0(), g.x1()}}, {"nx", g.nx()}, {"p", {g.p0(), g.p1()}}, {"np", g.np()}};
}

}  // namespace detail

/// rho0 * rho0 = rho0 / (2 pi) for rho0 = e^{-x^2 - p^2} / pi.
inline ResidualReport star_idempotent_check(double tolerance = kStarTolerance) {
    const auto g = starcalc::PhaseGrid::standard();
    const auto rho0 = (1.0 / std::numbers::pi) * detail::gaussian_bump(g, 0.0, 0.0, 1.0, 1.0);
    const auto half = starcalc::cdouble(0.5 / std::numbers::pi) * rho0;
    ResidualReport r;
    r.case_id = "ground_state";
    r.equation = "star_idempotent";
    r.grid = detail::grid_json(g);
    r.max_residual = (starcalc::star_general(rho0, rho0) - half).max_abs();
    r.normalization = half.max_abs();
    finalize(r, tolerance);
    return r;
}

/// int f * g = int f g for two displaced Gaussians of different widths.
inline ResidualReport star_trace_check(double tolerance = kStarTolerance) {
    const auto g = starcalc::PhaseGrid::standard();
    const auto f = detail::gaussian_bump(g, 0.7, -0.4, 1.1, 0.9);
    const auto h = detail::gaussian_bump(g, -0.5, 0.8, 0.85, 1.3);
    const auto plain = (f * h).integral();
    ResidualReport r;
    r.case_id = "gaussian_pair";
    r.equation = "star_trace";
    r.grid = detail::grid_json(g);
    r.max_residual = std::abs(starcalc::star_general(f, h).integral() - plain);
    r.normalization = std::abs(plain);
    finalize(r, tolerance);
    return r;
}

/// conj(f * g) = g * f for real f, g.
inline ResidualReport star_hermiticity_check(double tolerance = kHermiticityTolerance) {
    const auto g = starcalc::PhaseGrid::standard();
    const auto f = detail::gaussian_bump(g, 0.7, -0.4, 1.1, 0.9);
    const auto h = detail::gaussian_bump(g, -0.5, 0.8, 0.85, 1.3);
    const auto fh = starcalc::star_general(f, h);
    ResidualReport r;
    r.case_id = "gaussian_pair";
    r.equation = "star_hermiticity";
    r.grid = detail::grid_json(g);
    r.max_residual = (fh.conj() - starcalc::star_general(h, f)).max_abs();
    r.normalization = fh.max_abs();
    finalize(r, tolerance);
    return r;
}

}  // namespace dqwall::residual
