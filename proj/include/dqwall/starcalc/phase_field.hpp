#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqwall::starcalc {

using cdouble = std::complex<double>;

inline constexpr double kDecayTolerance = 1e-12;

/// Uniform periodic grid: x_i = x0 + i (x1 - x0) / nx for i < nx, likewise in p.
class PhaseGrid {
public:
    PhaseGrid(double x0, double x1, std::size_t nx, double p0, double p1, std::size_t np)
        : x0_(x0), x1_(x1), p0_(p0), p1_(p1), nx_(nx), np_(np) {
        check_size(nx, "Nx");
        check_size(np, "Np");
        if (!(x1 > x0) || !(p1 > p0)) throw std::invalid_argument("grid ranges must be increasing");
    }

    /// [-8, 8] x [-8, 8] at 256 x 256.
    static PhaseGrid standard() { return {-8.0, 8.0, 256, -8.0, 8.0, 256}; }

    std::size_t nx() const { return nx_; }
    std::size_t np() const { return np_; }
    std::size_t size() const { return nx_ * np_; }
    double x0() const { return x0_; }
    double x1() const { return x1_; }
    double p0() const { return p0_; }
    double p1() const { return p1_; }
    double dx() const { return (x1_ - x0_) / static_cast<double>(nx_); }
    double dp() const { return (p1_ - p0_) / static_cast<double>(np_); }
    double x(std::size_t i) const { return x0_ + static_cast<double>(i) * dx(); }
    double p(std::size_t j) const { return p0_ + static_cast<double>(j) * dp(); }

    /// Angular wavenumber of FFT bin m along x (signed, Nyquist bin negative).
    double kx(std::size_t m) const { return wavenumber(m, nx_, x1_ - x0_); }
    double kp(std::size_t m) const { return wavenumber(m, np_, p1_ - p0_); }

    friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;

private:
    double x0_, x1_, p0_, p1_;
    std::size_t nx_, np_;

    static void check_size(std::size_t n, const char* what) {
        if (n < 64 || n > 4096 || (n & (n - 1)) != 0)
            throw std::invalid_argument(std::string(what) + " must be a power of two in [64, 4096]");
    }
    static double wavenumber(std::size_t m, std::size_t n, double length) {
        const auto sm = m < n / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
        return 2.0 * std::numbers::pi * sm / length;
    }
};

/// Complex samples on a PhaseGrid, row-major in (x, p).
class PhaseField {
public:
    explicit PhaseField(PhaseGrid grid) : grid_(grid), data_(grid.size()) { refresh(); }
    PhaseField(PhaseGrid grid, std::vector<cdouble> data) : grid_(grid), data_(std::move(data)) {
        if (data_.size() != grid_.size()) throw std::invalid_argument("sample count does not match grid");
        refresh();
    }

    static PhaseField sample(const PhaseGrid& grid, const std::function<cdouble(double, double)>& f) {
        std::vector<cdouble> d(grid.size());
        for (std::size_t i = 0; i < grid.nx(); ++i)
            for (std::size_t j = 0; j < grid.np(); ++j) d[i * grid.np() + j] = f(grid.x(i), grid.p(j));
        return {grid, std::move(d)};
    }

    const PhaseGrid& grid() const { return grid_; }
    const std::vector<cdouble>& data() const { return data_; }
    cdouble operator()(std::size_t i, std::size_t j) const { return data_[i * grid_.np() + j]; }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    /// True when the first and last x-rows are below the decay tolerance relative to the field maximum.
    bool decays_in_x() const { return decays_x_; }
    bool decays_in_p() const { return decays_p_; }

    PhaseField real_part() const { return map([](cdouble v) { return cdouble(v.real()); }); }
    PhaseField imag_part() const { return map([](cdouble v) { return cdouble(v.imag()); }); }
    PhaseField conj() const { return map([](cdouble v) { return std::conj(v); }); }

    template <class F>
    PhaseField map(F&& f) const {
        std::vector<cdouble> d(data_.size());
        std::transform(data_.begin(), data_.end(), d.begin(), f);
        return {grid_, std::move(d)};
    }

    /// Pointwise product with a function of (x, p).
    PhaseField times(const std::function<cdouble(double, double)>& w) const {
        std::vector<cdouble> d(data_);
        for (std::size_t i = 0; i < grid_.nx(); ++i)
            for (std::size_t j = 0; j < grid_.np(); ++j) d[i * grid_.np() + j] *= w(grid_.x(i), grid_.p(j));
        return {grid_, std::move(d)};
    }

    friend PhaseField operator+(const PhaseField& a, const PhaseField& b) { return zip(a, b, std::plus<>()); }
    friend PhaseField operator-(const PhaseField& a, const PhaseField& b) { return zip(a, b, std::minus<>()); }
    friend PhaseField operator*(const PhaseField& a, const PhaseField& b) { return zip(a, b, std::multiplies<>()); }
    friend PhaseField operator*(cdouble s, const PhaseField& a) { return a.map([s](cdouble v) { return s * v; }); }

    /// Riemann sum over the grid (spectrally accurate for decaying fields).
    cdouble integral() const {
        cdouble s = 0.0;
        for (const auto& v : data_) s += v;
        return s * grid_.dx() * grid_.dp();
    }

private:
    PhaseGrid grid_;
    std::vector<cdouble> data_;
    bool decays_x_ = true;
    bool decays_p_ = true;

    template <class Op>
    static PhaseField zip(const PhaseField& a, const PhaseField& b, Op op) {
        if (!(a.grid_ == b.grid_)) throw std::invalid_argument("fields live on different grids");
        std::vector<cdouble> d(a.data_.size());
        std::transform(a.data_.begin(), a.data_.end(), b.data_.begin(), d.begin(), op);
        return {a.grid_, std::move(d)};
    }

    void refresh() {
        double m = 0.0, ex = 0.0, ep = 0.0;
        const std::size_t nx = grid_.nx(), np = grid_.np();
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < np; ++j) {
                const double a = std::abs(data_[i * np + j]);
                if (!std::isfinite(a)) throw std::domain_error("non-finite field sample");
                m = std::max(m, a);
                if (i == 0 || i == nx - 1) ex = std::max(ex, a);
                if (j == 0 || j == np - 1) ep = std::max(ep, a);
            }
        decays_x_ = ex <= kDecayTolerance * m;
        decays_p_ = ep <= kDecayTolerance * m;
    }
};

}  // namespace dqwall::starcalc
