#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dqwall/starcalc/fft.hpp"
#include "dqwall/starcalc/phase_field.hpp"

namespace dqwall::starcalc {

enum class Axis { x, p };

/// Relative level below which Fourier coefficients are treated as round-off.
inline constexpr double kSpectralNoiseFloor = 1e-15;
/// Largest growth of any retained Fourier coefficient that imag_p_shift accepts.
inline constexpr double kShiftDynamicRange = 1e12;

namespace detail {

/// Fraction of the spectral energy along `axis` in the upper half of the resolved band.
inline double top_octave_fraction(const PhaseField& f, Axis axis) {
    const auto& g = f.grid();
    std::vector<cdouble> d = f.data();
    const int nx = static_cast<int>(g.nx()), np = static_cast<int>(g.np());
    const bool along_x = axis == Axis::x;
    const int n = along_x ? nx : np;
    if (along_x)
        fft_many(d, nx, np, np, 1, FFTW_FORWARD);
    else
        fft_many(d, np, nx, 1, np, FFTW_FORWARD);
    double total = 0.0, top = 0.0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < np; ++j) {
            const double e = std::norm(d[static_cast<std::size_t>(i) * np + j]);
            const int m = along_x ? i : j;
            total += e;
            if (m >= n / 4 && m < n - n / 4) top += e;
        }
    return total > 0.0 ? top / total : 0.0;
}

/// The periodic extension must be smooth: either the field decays at the boundaries, or it is
/// already periodic and resolved (top-octave energy at round-off level, e.g. x-independent fields).
inline void require_decay(const PhaseField& f, Axis axis, const char* op) {
    const bool ok = axis == Axis::x ? f.decays_in_x() : f.decays_in_p();
    if (ok || top_octave_fraction(f, axis) <= kDecayTolerance * kDecayTolerance) return;
    throw std::domain_error(std::string(op) + ": field does not decay at the " + (axis == Axis::x ? "x" : "p") +
                            "-boundaries");
}

/// Transform along one axis, scale each bin by factor(k), transform back. Bins at round-off
/// level are dropped so that high-order derivatives do not amplify noise.
template <class F>
PhaseField fourier_multiply(const PhaseField& f, Axis axis, F&& factor) {
    const auto& g = f.grid();
    std::vector<cdouble> d = f.data();
    const int nx = static_cast<int>(g.nx()), np = static_cast<int>(g.np());
    const bool along_x = axis == Axis::x;
    const int n = along_x ? nx : np;
    const int howmany = along_x ? np : nx;
    const int stride = along_x ? np : 1;
    const int dist = along_x ? 1 : np;
    fft_many(d, n, howmany, stride, dist, FFTW_FORWARD);
    double top = 0.0;
    for (const auto& v : d) top = std::max(top, std::abs(v));
    for (int m = 0; m < n; ++m) {
        const double k = along_x ? g.kx(m) : g.kp(m);
        const cdouble s = factor(k, m == n / 2) / static_cast<double>(n);
        for (int r = 0; r < howmany; ++r) {
            auto& v = d[static_cast<std::size_t>(m) * stride + static_cast<std::size_t>(r) * dist];
            v = std::abs(v) <= kSpectralNoiseFloor * top ? cdouble(0.0) : v * s;
        }
    }
    fft_many(d, n, howmany, stride, dist, FFTW_BACKWARD);
    return {g, std::move(d)};
}

inline PhaseField spectral_derivative(const PhaseField& f, Axis axis, int order, const char* op) {
    if (order < 1 || order > 4) throw std::out_of_range(std::string(op) + ": derivative order must be 1..4");
    require_decay(f, axis, op);
    return fourier_multiply(f, axis, [order](double k, bool nyquist) {
        if (nyquist && order % 2 == 1) return cdouble(0.0);
        return std::pow(cdouble(0.0, k), order);
    });
}

}  // namespace detail

/// d^n f / dx^n by Fourier differentiation along x.
inline PhaseField spectral_dx(const PhaseField& f, int n) { return detail::spectral_derivative(f, Axis::x, n, "spectral_dx"); }

/// d^n f / dp^n by Fourier differentiation along p.
inline PhaseField spectral_dp(const PhaseField& f, int n) { return detail::spectral_derivative(f, Axis::p, n, "spectral_dp"); }

/// f(x, p + i beta) for f analytic in p: each p-Fourier mode e^{ikp} picks up e^{-k beta}.
/// Modes at round-off level are dropped first; growth beyond the dynamic-range bound is an error.
/// A field that does not decay in p has a slowly decaying p-spectrum and fails that bound.
inline PhaseField imag_p_shift(const PhaseField& f, double beta) {
    if (beta == 0.0) return f;
    const auto& g = f.grid();
    std::vector<cdouble> d = f.data();
    const int nx = static_cast<int>(g.nx()), np = static_cast<int>(g.np());
    detail::fft_many(d, np, nx, 1, np, FFTW_FORWARD);
    double top = 0.0;
    for (const auto& v : d) top = std::max(top, std::abs(v));
    double worst = 0.0;
    for (int i = 0; i < nx; ++i)
        for (int m = 0; m < np; ++m) {
            auto& v = d[static_cast<std::size_t>(i) * np + m];
            if (std::abs(v) <= kSpectralNoiseFloor * top || m == np / 2) {
                v = 0.0;
                continue;
            }
            const double grow = std::exp(-g.kp(m) * beta);
            worst = std::max(worst, grow * std::abs(v) / top);
            v *= grow / static_cast<double>(np);
        }
    if (worst > kShiftDynamicRange)
        throw std::range_error("imag_p_shift: amplified spectrum exceeds dynamic range (" + std::to_string(worst) + ")");
    detail::fft_many(d, np, nx, 1, np, FFTW_BACKWARD);
    return {g, std::move(d)};
}

/// cos(beta d/dp) f and sin(beta d/dp) f from their Taylor series through the given order,
/// with spectral p-derivatives. Used to cross-check imag_p_shift.
inline std::pair<PhaseField, PhaseField> trig_shift_series(const PhaseField& f, double beta, int order = 12) {
    detail::require_decay(f, Axis::p, "trig_shift_series");
    PhaseField c = f, s(f.grid());
    double coef = 1.0;
    for (int k = 1; k <= order; ++k) {
        coef *= beta / k;
        // beta^k/k! d^k f; the sign pattern of cos and sin follows k mod 4
        const auto dk = detail::fourier_multiply(f, Axis::p, [k](double kp, bool nyquist) {
            if (nyquist) return cdouble(0.0);
            return std::pow(cdouble(0.0, kp), k);
        });
        const double sign = (k % 4 == 0 || k % 4 == 1) ? 1.0 : -1.0;
        if (k % 2 == 0)
            c = c + cdouble(sign * coef) * dk;
        else
            s = s + cdouble(sign * coef) * dk;
    }
    return {c, s};
}

enum class Side { left, right };

/// p^2 * f (left) or f * p^2 (right) with hbar = 1: (p -+ (i/2) d/dx)^2 f.
inline PhaseField bopp_kinetic(const PhaseField& f, Side side = Side::left) {
    detail::require_decay(f, Axis::x, "bopp_kinetic");
    const double s = side == Side::left ? -1.0 : 1.0;
    const auto d1 = spectral_dx(f, 1);
    const auto d2 = spectral_dx(f, 2);
    return f.times([](double, double p) { return cdouble(p * p); }) +
           d1.times([s](double, double p) { return cdouble(0.0, s * p); }) - cdouble(0.25) * d2;
}

/// V * f (left) or f * V (right) for V = c0 + c1 x + c2 x^2: V(x +- (i/2) d/dp) f.
inline PhaseField star_poly_potential(const std::vector<double>& coeffs, const PhaseField& f, Side side = Side::left) {
    if (coeffs.size() > 3) throw std::invalid_argument("star_poly_potential: polynomial degree above 2");
    const double c0 = coeffs.size() > 0 ? coeffs[0] : 0.0;
    const double c1 = coeffs.size() > 1 ? coeffs[1] : 0.0;
    const double c2 = coeffs.size() > 2 ? coeffs[2] : 0.0;
    const double s = side == Side::left ? 1.0 : -1.0;
    PhaseField out = cdouble(c0) * f;
    if (c1 == 0.0 && c2 == 0.0) return out;
    detail::require_decay(f, Axis::p, "star_poly_potential");
    const auto d1 = spectral_dp(f, 1);
    if (c1 != 0.0) out = out + cdouble(c1) * (f.times([](double x, double) { return cdouble(x); }) + cdouble(0.0, 0.5 * s) * d1);
    if (c2 != 0.0) {
        const auto d2 = spectral_dp(f, 2);
        out = out + cdouble(c2) * (f.times([](double x, double) { return cdouble(x * x); }) +
                                   d1.times([s](double x, double) { return cdouble(0.0, s * x); }) - cdouble(0.25) * d2);
    }
    return out;
}

}  // namespace dqwall::starcalc
