#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "mra/fft.hpp"
#include "mra/signal.hpp"

namespace mra {

/// Below this length the O(L^2) direct sum beats the transform overhead.
inline constexpr std::size_t kDirectCorrelationCutoff = 16;

/// A template whose spectrum has been computed once for repeated matching.
struct PreparedTemplate {
    std::vector<double> values;
    std::vector<std::complex<double>> spectrum;  // empty when below the cutoff
};

/// Computes out[ell] = <y, R_ell x> = sum_j y_j x_{(j+ell) mod L} for a fixed L.
/// Holds its own scratch space; use one instance per thread.
class Correlator {
public:
    explicit Correlator(std::size_t length);

    [[nodiscard]] std::size_t length() const noexcept { return length_; }

    [[nodiscard]] PreparedTemplate prepare(std::span<const double> x);

    void correlate(std::span<const double> x, std::span<const double> y, std::span<double> out);
    void correlate(const PreparedTemplate& x, std::span<const double> y, std::span<double> out);

    /// Spectrum of y (length L/2+1); exposed for kernels that reuse it.
    void spectrum(std::span<const double> y, std::span<std::complex<double>> out);
    /// out[ell] = <y, R_ell x> given both spectra.
    void correlate_spectra(std::span<const std::complex<double>> x_spectrum,
                           std::span<const std::complex<double>> y_spectrum, std::span<double> out);

private:
    std::size_t length_;
    std::shared_ptr<const RealFft> fft_;
    FftWorkspace workspace_;
    std::vector<std::complex<double>> scratch_;
};

std::vector<double> circular_correlations(const Signal& x, const Signal& y);

/// Reference O(L^2) evaluation of the same quantity.
std::vector<double> circular_correlations_direct(std::span<const double> x, std::span<const double> y);

/// Index of the maximum; ties go to the smallest index.
std::size_t argmax_first(std::span<const double> values);

/// Smallest index whose value is within rel_tol * max|v| of the maximum, so
/// ties that differ only by transform rounding resolve to the smallest index.
std::size_t argmax_first(std::span<const double> values, double rel_tol);

/// Default tolerance used by all shift estimators.
inline constexpr double kTieTolerance = 1e-12;

} // namespace mra
