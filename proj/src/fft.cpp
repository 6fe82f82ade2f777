#include "mra/fft.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include <fftw3.h>

#include "mra/error.hpp"

namespace mra {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

FftWorkspace::FftWorkspace(std::size_t length)
    : length_(length),
      real_(fftw_alloc_real(std::max<std::size_t>(length, 1))),
      spectrum_(reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(length / 2 + 1))) {
    if (real_ == nullptr || spectrum_ == nullptr) {
        throw RuntimeFailure("FftWorkspace: allocation failed");
    }
}

FftWorkspace::~FftWorkspace() {
    fftw_free(real_);
    fftw_free(spectrum_);
}

FftWorkspace::FftWorkspace(FftWorkspace&& other) noexcept
    : length_(other.length_), real_(other.real_), spectrum_(other.spectrum_) {
    other.real_ = nullptr;
    other.spectrum_ = nullptr;
}

std::shared_ptr<const RealFft> RealFft::of_length(std::size_t length) {
    require(length >= 1, "RealFft: length must be positive");
    static std::map<std::size_t, std::shared_ptr<const RealFft>> cache;
    std::lock_guard lock(planner_mutex());
    auto it = cache.find(length);
    if (it != cache.end()) {
        return it->second;
    }
    std::shared_ptr<const RealFft> fft(new RealFft(length));
    cache.emplace(length, fft);
    return fft;
}

// Called with planner_mutex held.
RealFft::RealFft(std::size_t length) : length_(length) {
    FftWorkspace ws(length);
    const int n = static_cast<int>(length);
    auto* cplx = reinterpret_cast<fftw_complex*>(ws.spectrum().data());
    forward_plan_ = fftw_plan_dft_r2c_1d(n, ws.real().data(), cplx, FFTW_ESTIMATE);
    backward_plan_ = fftw_plan_dft_c2r_1d(n, cplx, ws.real().data(), FFTW_ESTIMATE);
    if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
        throw RuntimeFailure("RealFft: FFTW planning failed");
    }
}

RealFft::~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void RealFft::forward_in_place(FftWorkspace& ws) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), ws.real().data(),
                         reinterpret_cast<fftw_complex*>(ws.spectrum().data()));
}

void RealFft::backward_in_place(FftWorkspace& ws) const {
    fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_plan_),
                         reinterpret_cast<fftw_complex*>(ws.spectrum().data()), ws.real().data());
}

void RealFft::forward(FftWorkspace& ws, std::span<const double> in, std::span<std::complex<double>> out) const {
    require(in.size() == length_ && out.size() == spectrum_size() && ws.length() == length_,
            "RealFft::forward: size mismatch");
    std::copy(in.begin(), in.end(), ws.real().begin());
    forward_in_place(ws);
    std::copy(ws.spectrum().begin(), ws.spectrum().end(), out.begin());
}

void RealFft::backward(FftWorkspace& ws, std::span<const std::complex<double>> in, std::span<double> out) const {
    require(in.size() == spectrum_size() && out.size() == length_ && ws.length() == length_,
            "RealFft::backward: size mismatch");
    std::copy(in.begin(), in.end(), ws.spectrum().begin());
    backward_in_place(ws);
    std::copy(ws.real().begin(), ws.real().end(), out.begin());
}

} // namespace mra
