#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "dqwall/wigner/jet.hpp"

namespace dqwall::wigner {

namespace detail {

// Weideman's rational approximation of the Faddeeva function w(z) = e^{-z^2} erfc(-iz) for Im z >= 0.
// The N polynomial coefficients are the DFT of e^{-t^2}(L^2 + t^2) sampled at t = L tan(theta/2).
class Faddeeva {
public:
    static constexpr int kTerms = 48;

    static const Faddeeva& instance() {
        static const Faddeeva f;
        return f;
    }

    std::complex<double> operator()(std::complex<double> z) const {
        const std::complex<double> i(0.0, 1.0);
        const std::complex<double> Z = (L_ + i * z) / (L_ - i * z);
        std::complex<double> poly = 0.0;
        for (int j = kTerms - 1; j >= 0; --j) poly = poly * Z + a_[j];
        const std::complex<double> d = L_ - i * z;
        return 2.0 * poly / (d * d) + (1.0 / std::sqrt(std::numbers::pi)) / d;
    }

private:
    double L_;
    std::array<double, kTerms> a_{};

    Faddeeva() {
        const int M = 2 * kTerms;
        const int M2 = 2 * M;
        L_ = std::sqrt(kTerms / std::sqrt(2.0));
        std::array<double, 2 * 2 * kTerms> f{};
        for (int n = 0; n < M2; ++n) {
            const int k = n < M ? n : n - M2;
            if (k == -M) continue;  // the sample at theta = -pi is zero
            const double t = L_ * std::tan(k * std::numbers::pi / (2.0 * M));
            f[n] = std::exp(-t * t) * (L_ * L_ + t * t);
        }
        for (int j = 1; j <= kTerms; ++j) {
            double acc = 0.0;
            for (int n = 0; n < M2; ++n) acc += f[n] * std::cos(2.0 * std::numbers::pi * j * n / M2);
            a_[j - 1] = acc / M2;
        }
    }
};

}  // namespace detail

/// Standard error function (2/sqrt(pi)) int_0^z e^{-t^2} dt for complex z.
inline std::complex<double> erf(std::complex<double> z) {
    if (std::abs(z) < 2.5) {
        // 2/sqrt(pi) sum_n (-1)^n z^{2n+1} / (n! (2n+1))
        const std::complex<double> z2 = z * z;
        std::complex<double> term = z, sum = z;
        for (int n = 1; n < 80; ++n) {
            term *= -z2 / static_cast<double>(n);
            const std::complex<double> add = term / static_cast<double>(2 * n + 1);
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return 2.0 / std::sqrt(std::numbers::pi) * sum;
    }
    if (z.real() < 0.0) return -erf(-z);
    const std::complex<double> i(0.0, 1.0);
    return 1.0 - std::exp(-z * z) * detail::Faddeeva::instance()(i * z);
}

/// The un-normalized variant int_0^z e^{-t^2} dt = (sqrt(pi)/2) erf(z).
inline std::complex<double> erf_integral(std::complex<double> z) { return std::sqrt(std::numbers::pi) / 2.0 * erf(z); }

template <std::size_t N>
Jet<std::complex<double>, N> erf(const Jet<std::complex<double>, N>& z) {
    using J = Jet<std::complex<double>, N>;
    const J deriv = J(std::complex<double>(2.0 / std::sqrt(std::numbers::pi))) * exp(-(z * z));
    return compose_antiderivative(erf(z.value()), deriv, z);
}

}  // namespace dqwall::wigner
