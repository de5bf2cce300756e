#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqwall/wigner/catalog.hpp"
#include "dqwall/wigner/quadrature.hpp"

namespace dqwall::wigner {

struct WaveSpec {
    std::string id;
    double E = 0.0;
    int n = 0;
    std::function<std::complex<double>(double)> psi;
    Support support;
    /// Points where psi is not smooth (interior kinks and finite support edges).
    std::vector<double> kinks;
    /// kappa in |psi| <= C e^{-kappa |x|}; zero when the support is bounded on the relevant side.
    double decay_rate = 0.0;
    /// Plane waves are not square-integrable and have no convergent y-integral.
    bool plane_wave = false;
};

namespace waves {

inline WaveSpec wall(double E) {
    if (!(E > 0.0)) throw std::invalid_argument("wall requires E > 0");
    const double s = std::sqrt(E);
    return {"wall", E, 0,
            [s](double x) {
                const std::complex<double> I(0.0, 1.0);
                return x <= 0.0 ? std::exp(I * s * x) - std::exp(-I * s * x) : std::complex<double>(0.0);
            },
            {.hi = 0.0}, {0.0}, 0.0, false};
}

inline WaveSpec square_well(int n) {
    if (n < 1) throw std::invalid_argument("square well quantum number must be >= 1");
    const double k = n * std::numbers::pi / 2.0;
    return {"square_well", k * k, n,
            [k](double x) { return std::abs(x) <= 1.0 ? std::complex<double>(std::cos(k * x)) : 0.0; },
            {-1.0, 1.0}, {-1.0, 1.0}, 0.0, false};
}

inline WaveSpec delta_well() {
    return {"delta_well", -1.0, 0, [](double x) { return std::complex<double>(std::exp(-std::abs(x))); }, {}, {0.0},
            1.0, false};
}

inline WaveSpec half_sho() {
    return {"half_sho", 3.0, 0,
            [](double x) { return x <= 0.0 ? std::complex<double>(x * std::exp(-x * x / 2.0)) : 0.0; },
            {.hi = 0.0}, {0.0}, 0.0, false};
}

inline WaveSpec free(std::complex<double> alpha_plus, std::complex<double> alpha_minus, double E) {
    const double s = std::sqrt(E);
    WaveSpec w{"free", E, 0,
               [=](double x) {
                   const std::complex<double> I(0.0, 1.0);
                   return alpha_plus * std::exp(I * s * x) + alpha_minus * std::exp(-I * s * x);
               },
               {}, {}, 0.0, true};
    return w;
}

/// Wave function matching a catalog entry.
inline WaveSpec for_entry(const CatalogEntry& entry) {
    if (entry.wave_id == "wall") return wall(entry.params.E);
    if (entry.wave_id == "square_well") return square_well(entry.params.n);
    if (entry.wave_id == "delta_well") return delta_well();
    if (entry.wave_id == "half_sho") return half_sho();
    if (entry.wave_id == "free") return free(1.0, 1.0, entry.params.E);
    throw std::invalid_argument("no wave function for entry: " + entry.id);
}

}  // namespace waves

/// Tail probability below which a decaying integrand is cut off.
inline constexpr double kTailBound = 1e-14;
inline constexpr double kImagThreshold = 1e-10;

/// Half-width Y of the y-interval on which psi*(x - y/2) psi(x + y/2) can be nonzero.
inline double y_half_width(const WaveSpec& w, double x) {
    if (w.plane_wave) throw std::invalid_argument("plane-wave state: the y-integral does not converge");
    double y = 2.0 * std::min(x - w.support.lo, w.support.hi - x);
    if (std::isinf(y)) {
        if (!(w.decay_rate > 0.0)) throw std::invalid_argument("state neither compact nor decaying: " + w.id);
        y = -std::log(kTailBound) / w.decay_rate + 2.0 * std::abs(x);
    }
    return std::max(y, 0.0);
}

/// Values of y where the integrand has a kink.
inline std::vector<double> y_breakpoints(const WaveSpec& w, double x) {
    std::vector<double> out{0.0};
    for (double c : w.kinks) {
        out.push_back(2.0 * (c - x));
        out.push_back(-2.0 * (c - x));
    }
    return out;
}

/// rho[psi](x, p) = (1/2pi) int dy e^{-ipy} psi*(x - y/2) psi(x + y/2).
inline double wigner_quadrature(const WaveSpec& w, double x, double p, const QuadratureOptions& options = {}) {
    if (!std::isfinite(x) || !std::isfinite(p)) throw std::invalid_argument("non-finite sample point");
    const double Y = y_half_width(w, x);
    if (Y == 0.0) return 0.0;
    auto integrand = [&](double y) {
        return std::exp(std::complex<double>(0.0, -p * y)) * std::conj(w.psi(x - y / 2.0)) * w.psi(x + y / 2.0);
    };
    const auto r = integrate(integrand, -Y, Y, y_breakpoints(w, x), options);
    const std::complex<double> v = r.value / (2.0 * std::numbers::pi);
    if (std::abs(v.imag()) >= kImagThreshold)
        throw std::runtime_error("imaginary residue " + std::to_string(v.imag()) + " in Wigner quadrature");
    return v.real();
}

struct MarginalResult {
    /// |psi(x)|^2, the y = 0 value of the intermediate function.
    double value = 0.0;
    /// The same quantity from integrating the quadrature Wigner function over p.
    double p_integral = 0.0;
    double extrapolation_error = 0.0;
};

struct MarginalOptions {
    int max_levels = 8;
    /// The check fails when |value - p_integral| exceeds this.
    double tolerance = 1e-6;
    /// Tolerance of each Wigner sample; the p-weights sum to about the p-range, so this stays well below `tolerance`.
    QuadratureOptions sample_options{.abs_tol = 1e-10, .rel_tol = 1e-12};
};

/// int dp rho(x, p). The p-integral is regularized by e^{-eps p^2}, which turns it into a
/// Gaussian average of the intermediate function around y = 0; eps -> 0 by Richardson
/// extrapolation over eps, eps/2, eps/4, ... until two successive estimates agree.
inline MarginalResult marginal_p(const WaveSpec& w, double x, const MarginalOptions& options = {}) {
    MarginalResult out;
    out.value = std::norm(w.psi(x));
    const double Y = y_half_width(w, x);
    if (Y == 0.0) {
        out.p_integral = 0.0;
        if (std::abs(out.value) > options.tolerance) throw std::runtime_error("marginal disagreement at support edge");
        return out;
    }
    double d = Y;
    for (double b : y_breakpoints(w, x))
        if (b != 0.0) d = std::min(d, std::abs(b));
    const double eps0 = std::min(d * d / 100.0, 0.1);
    // rho oscillates in p with frequencies up to the y-range where the integrand is not negligible
    double y_eff = Y;
    if (w.decay_rate > 0.0) y_eff = std::min(Y, 2.0 * std::abs(x) + 9.0 * std::log(10.0) / w.decay_rate);
    const double h = 6.0 / std::max(y_eff, 1.0);
    const auto [gx, gw] = gauss_legendre(10);

    // panels [k h, (k + 1) h] for k in [-count, count); samples grow outward as eps shrinks
    std::vector<double> nodes, weights, rho;
    int count = 0;
    auto extend_to = [&](double P) {
        const int need = static_cast<int>(std::ceil(P / h));
        for (int k = count; k < need; ++k) {
            for (int side : {-1, 1}) {
                const double c = side * (k + 0.5) * h;
                for (std::size_t j = 0; j < gx.size(); ++j) {
                    const double p = c + 0.5 * h * gx[j];
                    nodes.push_back(p);
                    weights.push_back(0.5 * h * gw[j]);
                    rho.push_back(wigner_quadrature(w, x, p, options.sample_options));
                }
            }
        }
        count = std::max(count, need);
    };

    std::vector<std::vector<double>> table;
    for (int i = 0; i < options.max_levels; ++i) {
        const double eps = eps0 / std::pow(2.0, i);
        extend_to(std::sqrt(23.0 / eps));
        double s = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) s += weights[j] * std::exp(-eps * nodes[j] * nodes[j]) * rho[j];
        table.push_back({s});
        for (int j = 1; j <= i; ++j) {
            const double f = std::pow(2.0, j);
            table[i].push_back(table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (f - 1.0));
        }
        out.p_integral = table[i][i];
        if (i >= 2) {
            out.extrapolation_error = std::abs(table[i][i] - table[i][i - 1]);
            if (out.extrapolation_error < 1e-2 * options.tolerance) break;
        }
    }
    if (std::abs(out.p_integral - out.value) > options.tolerance)
        throw std::runtime_error("marginal disagreement at x = " + std::to_string(x) + ": |psi|^2 = " +
                                 std::to_string(out.value) + ", p-integral = " + std::to_string(out.p_integral));
    return out;
}

}  // namespace dqwall::wigner
