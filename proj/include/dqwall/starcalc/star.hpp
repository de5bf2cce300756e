#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqwall/starcalc/fft.hpp"
#include "dqwall/starcalc/phase_field.hpp"

namespace dqwall::starcalc {

/// Fraction of spectral energy allowed in the upper half of the resolved band along either axis.
inline constexpr double kAliasingThreshold = 1e-8;

namespace detail {

/// 2-D spectrum normalized so that f = sum_{a,b} F[a][b] e^{i(a(x - x0) + b(p - p0))}.
inline std::vector<cdouble> spectrum2d(const PhaseField& f) {
    const auto& g = f.grid();
    std::vector<cdouble> d = f.data();
    const int nx = static_cast<int>(g.nx()), np = static_cast<int>(g.np());
    fft_many(d, np, nx, 1, np, FFTW_FORWARD);
    fft_many(d, nx, np, np, 1, FFTW_FORWARD);
    const double s = 1.0 / (static_cast<double>(nx) * np);
    for (auto& v : d) v *= s;
    return d;
}

inline void check_aliasing(const std::vector<cdouble>& spec, const PhaseGrid& g, const char* which) {
    const std::size_t nx = g.nx(), np = g.np();
    double total = 0.0, top = 0.0;
    for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t b = 0; b < np; ++b) {
            const double e = std::norm(spec[a * np + b]);
            total += e;
            const bool high_a = a >= nx / 4 && a < nx - nx / 4;
            const bool high_b = b >= np / 4 && b < np - np / 4;
            if (high_a || high_b) top += e;
        }
    if (total > 0.0 && top > kAliasingThreshold * total)
        throw std::range_error(std::string("star_general: aliasing, spectral energy fraction ") + std::to_string(top / total) +
                               " in the top octave of " + which);
}

}  // namespace detail

/// Moyal product f * g (hbar = 1) of two sampled fields.
///
/// With f = sum_a f_a(p) e^{iax}, the product has x-modes
///   (f*g)_a(p) = sum_{a'} f_{a'}(p + (a - a')/2) g_{a - a'}(p - a'/2),
/// the twisted convolution written with p kept in real space. The p-translations are exact
/// phase factors on the p-spectrum, so the cost is one length-Np transform pair per (a', a - a').
inline PhaseField star_general(const PhaseField& f, const PhaseField& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("star_general: fields live on different grids");
    const auto& grid = f.grid();
    const std::size_t nx = grid.nx(), np = grid.np();
    const auto F = detail::spectrum2d(f);
    const auto G = detail::spectrum2d(g);
    detail::check_aliasing(F, grid, "the first factor");
    detail::check_aliasing(G, grid, "the second factor");

    // x-modes with negligible content are skipped; their products stay below round-off.
    auto active_rows = [&](const std::vector<cdouble>& S) {
        double top = 0.0;
        for (const auto& v : S) top = std::max(top, std::abs(v));
        std::vector<std::size_t> rows;
        for (std::size_t a = 0; a < nx; ++a) {
            double m = 0.0;
            for (std::size_t b = 0; b < np; ++b) m = std::max(m, std::abs(S[a * np + b]));
            if (m > 1e-18 * top) rows.push_back(a);
        }
        return rows;
    };
    const auto rows_f = active_rows(F);
    const auto rows_g = active_rows(G);

    std::vector<cdouble> H(nx * np, 0.0);  // x-spectrum, p in real space
    detail::Fft1d tf(static_cast<int>(np), FFTW_BACKWARD), tg(static_cast<int>(np), FFTW_BACKWARD);
    for (std::size_t a1 : rows_f) {
        const double k1 = grid.kx(a1);
        for (std::size_t a2 : rows_g) {
            const double k2 = grid.kx(a2);
            auto& bf = tf.buffer();
            auto& bg = tg.buffer();
            for (std::size_t b = 0; b < np; ++b) {
                const double kb = b == np / 2 ? 0.0 : grid.kp(b);
                bf[b] = F[a1 * np + b] * std::polar(1.0, kb * 0.5 * k2);
                bg[b] = G[a2 * np + b] * std::polar(1.0, -kb * 0.5 * k1);
            }
            tf.execute();
            tg.execute();
            cdouble* h = &H[((a1 + a2) % nx) * np];
            for (std::size_t j = 0; j < np; ++j) h[j] += bf[j] * bg[j];
        }
    }
    detail::fft_many(H, static_cast<int>(nx), static_cast<int>(np), static_cast<int>(np), 1, FFTW_BACKWARD);
    return {grid, std::move(H)};
}

}  // namespace dqwall::starcalc
