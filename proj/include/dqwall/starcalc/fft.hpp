#pragma once

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <new>
#include <mutex>
#include <vector>

namespace dqwall::starcalc::detail {

// FFTW planning is not thread-safe; execution is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// fftw_malloc storage: FFTW picks SIMD codelets by alignment, so transforming arbitrary vector
// memory could round differently from run to run.
class AlignedBuffer {
public:
    explicit AlignedBuffer(std::size_t n) : n_(n), p_(fftw_alloc_complex(n)) {
        if (!p_) throw std::bad_alloc();
    }
    ~AlignedBuffer() { fftw_free(p_); }
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;

    fftw_complex* get() { return p_; }
    std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(p_); }
    std::complex<double>* begin() { return data(); }
    std::complex<double>* end() { return data() + n_; }
    std::size_t size() const { return n_; }
    std::complex<double>& operator[](std::size_t i) { return data()[i]; }

private:
    std::size_t n_;
    fftw_complex* p_;
};

/// Unnormalized batch of 1-D transforms over `count` contiguous elements: `howmany` sequences of
/// length n, elements `stride` apart, consecutive sequences `dist` apart.
/// sign = FFTW_FORWARD or FFTW_BACKWARD.
inline void fft_many(std::complex<double>* data, std::size_t count, int n, int howmany, int stride, int dist, int sign) {
    AlignedBuffer buf(count);
    std::copy(data, data + count, buf.data());
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_many_dft(1, &n, howmany, buf.get(), nullptr, stride, dist, buf.get(), nullptr, stride, dist, sign,
                                  FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    std::copy(buf.begin(), buf.end(), data);
}

inline void fft_many(std::vector<std::complex<double>>& data, int n, int howmany, int stride, int dist, int sign) {
    fft_many(data.data(), data.size(), n, howmany, stride, dist, sign);
}

/// Reusable plan for repeated transforms of one buffer.
class Fft1d {
public:
    Fft1d(int n, int sign) : buffer_(static_cast<std::size_t>(n)) {
        std::lock_guard lock(fftw_planner_mutex());
        plan_ = fftw_plan_dft_1d(n, buffer_.get(), buffer_.get(), sign, FFTW_ESTIMATE);
    }
    ~Fft1d() {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Fft1d(const Fft1d&) = delete;
    Fft1d& operator=(const Fft1d&) = delete;

    AlignedBuffer& buffer() { return buffer_; }
    void execute() { fftw_execute(plan_); }

private:
    AlignedBuffer buffer_;
    fftw_plan plan_;
};

}  // namespace dqwall::starcalc::detail
