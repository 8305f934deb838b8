#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace nanopteron::detail {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

RealFft& RealFft::get(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<RealFft>> cache;
    auto& slot = cache[n];
    if (!slot) slot.reset(new RealFft(n));
    return *slot;
}

RealFft::RealFft(std::size_t n) : n_(n), scratch_(n / 2 + 1) {
    std::vector<double> buf(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.data(),
                                reinterpret_cast<fftw_complex*>(scratch_.data()), flags);
    bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch_.data()),
                                buf.data(), flags);
}

RealFft::~RealFft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void RealFft::forward(const double* in, cplx* out) {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void RealFft::backward(const cplx* in, double* out) {
    // c2r destroys its input
    std::copy(in, in + n_ / 2 + 1, scratch_.begin());
    fftw_execute_dft_c2r(static_cast<fftw_plan>(bwd_), reinterpret_cast<fftw_complex*>(scratch_.data()), out);
}

} // namespace nanopteron::detail
