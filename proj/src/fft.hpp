#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nanopteron::detail {

using cplx = std::complex<double>;

/// Unnormalized real DFT of length n: forward gives n/2+1 modes,
/// backward returns n * input.
class RealFft {
public:
    static RealFft& get(std::size_t n);

    void forward(const double* in, cplx* out);
    void backward(const cplx* in, double* out);
    std::size_t size() const { return n_; }

    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

private:
    explicit RealFft(std::size_t n);
    std::size_t n_;
    void* fwd_ = nullptr;
    void* bwd_ = nullptr;
    std::vector<cplx> scratch_;
};

} // namespace nanopteron::detail
