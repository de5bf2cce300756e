#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace dqwall::wigner {

/// Truncated Taylor series in one variable: c[k] = f^(k)(t0) / k!.
template <class T, std::size_t N>
struct Jet {
    std::array<T, N + 1> c{};

    Jet() = default;
    Jet(T value) { c[0] = value; }  // NOLINT(google-explicit-constructor)

    /// The independent variable t at t0.
    static Jet variable(T t0) {
        Jet j(t0);
        if constexpr (N > 0) j.c[1] = T(1);
        return j;
    }

    T value() const { return c[0]; }

    /// k-th derivative.
    T derivative(std::size_t k) const {
        T f = c[k];
        for (std::size_t j = 2; j <= k; ++j) f *= static_cast<double>(j);
        return f;
    }

    Jet operator-() const {
        Jet out;
        for (std::size_t k = 0; k <= N; ++k) out.c[k] = -c[k];
        return out;
    }
    Jet& operator+=(const Jet& o) {
        for (std::size_t k = 0; k <= N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t k = 0; k <= N; ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet out;
        for (std::size_t k = 0; k <= N; ++k)
            for (std::size_t j = 0; j <= k; ++j) out.c[k] += a.c[j] * b.c[k - j];
        return out;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet out;
        for (std::size_t k = 0; k <= N; ++k) {
            T acc = a.c[k];
            for (std::size_t j = 1; j <= k; ++j) acc -= b.c[j] * out.c[k - j];
            out.c[k] = acc / b.c[0];
        }
        return out;
    }
};

template <class T, std::size_t N>
Jet<T, N> exp(const Jet<T, N>& z) {
    Jet<T, N> out;
    using std::exp;
    out.c[0] = exp(z.c[0]);
    for (std::size_t k = 1; k <= N; ++k) {
        T acc{};
        for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * z.c[j] * out.c[k - j];
        out.c[k] = acc / static_cast<double>(k);
    }
    return out;
}

/// sin and cos together through s' = c z', c' = -s z'.
template <class T, std::size_t N>
void sincos(const Jet<T, N>& z, Jet<T, N>& s, Jet<T, N>& co) {
    using std::cos;
    using std::sin;
    s = Jet<T, N>();
    co = Jet<T, N>();
    s.c[0] = sin(z.c[0]);
    co.c[0] = cos(z.c[0]);
    for (std::size_t k = 1; k <= N; ++k) {
        T as{}, ac{};
        for (std::size_t j = 1; j <= k; ++j) {
            as += static_cast<double>(j) * z.c[j] * co.c[k - j];
            ac -= static_cast<double>(j) * z.c[j] * s.c[k - j];
        }
        s.c[k] = as / static_cast<double>(k);
        co.c[k] = ac / static_cast<double>(k);
    }
}

template <class T, std::size_t N>
Jet<T, N> sin(const Jet<T, N>& z) {
    Jet<T, N> s, c;
    sincos(z, s, c);
    return s;
}

template <class T, std::size_t N>
Jet<T, N> cos(const Jet<T, N>& z) {
    Jet<T, N> s, c;
    sincos(z, s, c);
    return c;
}

/// F(z(t)) given F(z0) and the jet of F'(z(t)).
template <class T, std::size_t N>
Jet<T, N> compose_antiderivative(T f0, const Jet<T, N>& fprime_of_z, const Jet<T, N>& z) {
    Jet<T, N> dz;  // z'(t)
    for (std::size_t k = 0; k < N; ++k) dz.c[k] = static_cast<double>(k + 1) * z.c[k + 1];
    const Jet<T, N> g = fprime_of_z * dz;
    Jet<T, N> out(f0);
    for (std::size_t k = 1; k <= N; ++k) out.c[k] = g.c[k - 1] / static_cast<double>(k);
    return out;
}

/// sin(z)/z, continued through z = 0. Uses the power series near zero, where the quotient loses digits.
template <class T, std::size_t N>
Jet<T, N> sinc(const Jet<T, N>& z) {
    using std::abs;
    if (abs(z.c[0]) < 1.0) {
        const Jet<T, N> z2 = z * z;
        // sum_k (-1)^k z^{2k} / (2k+1)!, Horner from k = 12 (remainder < 1e-27 for |z| < 1)
        Jet<T, N> acc(T(1));
        for (int k = 12; k >= 1; --k) {
            const double denom = static_cast<double>((2 * k) * (2 * k + 1));
            acc = Jet<T, N>(T(1)) - z2 * acc / Jet<T, N>(T(denom));
        }
        return acc;
    }
    return sin(z) / z;
}

}  // namespace dqwall::wigner
