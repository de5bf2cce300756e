#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace dqwall::wigner {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    /// Used only when it is looser than abs_tol, for integrals of large magnitude.
    double rel_tol = 1e-13;
    int max_intervals = 4000;
};

struct QuadratureResult {
    std::complex<double> value;
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Piece {
    double a, b;
    std::complex<double> value;
    double error;
    friend bool operator<(const Piece& l, const Piece& r) { return l.error < r.error; }
};

// QUADPACK's error estimate: |K15 - G7| rescaled by the variation of the integrand, which is
// much less pessimistic than the raw difference once the rule has converged.
template <class F>
Piece kronrod15(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<std::complex<double>, 15> fv;
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        fv[j] = f(c - dx);
        fv[14 - j] = f(c + dx);
    }
    std::complex<double> k = fv[7] * kKronrodWeights[7];
    std::complex<double> g = fv[7] * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        k += kKronrodWeights[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1) g += kGaussWeights[j / 2] * (fv[j] + fv[14 - j]);
    }
    const std::complex<double> mean = 0.5 * k;
    double asc = kKronrodWeights[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) asc += kKronrodWeights[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    asc *= std::abs(h);
    double err = std::abs((k - g) * h);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    return {a, b, k * h, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex integrand over [a, b], with
/// the interval pre-split at the given breakpoints. Throws when the tolerance is not reached.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, std::vector<double> breakpoints = {},
                           const QuadratureOptions& options = {}) {
    QuadratureResult out;
    if (a == b) return out;
    if (!(a < b)) throw std::invalid_argument("integration interval reversed");
    breakpoints.erase(std::remove_if(breakpoints.begin(), breakpoints.end(),
                                     [&](double t) { return !(t > a && t < b); }),
                      breakpoints.end());
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    std::priority_queue<detail::Piece> queue;
    std::complex<double> total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        auto piece = detail::kronrod15(f, breakpoints[i], breakpoints[i + 1]);
        total += piece.value;
        error += piece.error;
        queue.push(piece);
    }
    while (!(error <= std::max(options.abs_tol, options.rel_tol * std::abs(total)))) {
        if (!std::isfinite(error) || !std::isfinite(std::abs(total)))
            throw std::runtime_error("nonconvergent integral: non-finite integrand values");
        if (static_cast<int>(queue.size()) >= options.max_intervals)
            throw std::runtime_error("nonconvergent integral: error estimate " + std::to_string(error));
        const auto worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) throw std::runtime_error("nonconvergent integral: interval underflow");
        const auto left = detail::kronrod15(f, worst.a, mid);
        const auto right = detail::kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    out.value = total;
    out.error = error;
    out.intervals = static_cast<int>(queue.size());
    return out;
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-16) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return {x, w};
}

}  // namespace dqwall::wigner
