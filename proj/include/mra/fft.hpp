#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace mra {

/// Scratch buffers aligned for FFTW. One per thread.
class FftWorkspace {
public:
    explicit FftWorkspace(std::size_t length);
    ~FftWorkspace();
    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;
    FftWorkspace(FftWorkspace&& other) noexcept;
    FftWorkspace& operator=(FftWorkspace&&) = delete;

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] std::span<double> real() noexcept { return {real_, length_}; }
    [[nodiscard]] std::span<std::complex<double>> spectrum() noexcept { return {spectrum_, length_ / 2 + 1}; }

private:
    std::size_t length_;
    double* real_;
    std::complex<double>* spectrum_;
};

/// Real-input DFT of a fixed length, forward X_k = sum_j x_j e^{-2 pi i jk/L}
/// and unnormalized backward. Plans are shared per length and immutable, so
/// transforms may run concurrently provided each thread has its own workspace.
class RealFft {
public:
    static std::shared_ptr<const RealFft> of_length(std::size_t length);

    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] std::size_t spectrum_size() const noexcept { return length_ / 2 + 1; }

    void forward(FftWorkspace& ws, std::span<const double> in, std::span<std::complex<double>> out) const;
    void backward(FftWorkspace& ws, std::span<const std::complex<double>> in, std::span<double> out) const;

    // Operate in place on the workspace buffers.
    void forward_in_place(FftWorkspace& ws) const;
    void backward_in_place(FftWorkspace& ws) const;

private:
    explicit RealFft(std::size_t length);

    std::size_t length_;
    void* forward_plan_;
    void* backward_plan_;
};

} // namespace mra
