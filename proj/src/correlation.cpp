#include "mra/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "mra/error.hpp"

namespace mra {

Correlator::Correlator(std::size_t length)
    : length_(length),
      fft_(RealFft::of_length(length)),
      workspace_(length),
      scratch_(length / 2 + 1) {}

PreparedTemplate Correlator::prepare(std::span<const double> x) {
    require(x.size() == length_, "Correlator::prepare: length mismatch");
    PreparedTemplate t;
    t.values.assign(x.begin(), x.end());
    if (length_ >= kDirectCorrelationCutoff) {
        t.spectrum.resize(fft_->spectrum_size());
        fft_->forward(workspace_, x, t.spectrum);
    }
    return t;
}

void Correlator::spectrum(std::span<const double> y, std::span<std::complex<double>> out) {
    fft_->forward(workspace_, y, out);
}

void Correlator::correlate_spectra(std::span<const std::complex<double>> x_spectrum,
                                   std::span<const std::complex<double>> y_spectrum, std::span<double> out) {
    require(out.size() == length_, "Correlator: output length mismatch");
    auto spec = workspace_.spectrum();
    for (std::size_t k = 0; k < spec.size(); ++k) {
        spec[k] = std::conj(y_spectrum[k]) * x_spectrum[k];
    }
    fft_->backward_in_place(workspace_);
    const double scale = 1.0 / static_cast<double>(length_);
    auto real = workspace_.real();
    for (std::size_t l = 0; l < length_; ++l) {
        out[l] = real[l] * scale;
    }
}

void Correlator::correlate(const PreparedTemplate& x, std::span<const double> y, std::span<double> out) {
    require(y.size() == length_ && out.size() == length_ && x.values.size() == length_,
            "Correlator::correlate: length mismatch");
    if (x.spectrum.empty()) {
        auto direct = circular_correlations_direct(x.values, y);
        std::copy(direct.begin(), direct.end(), out.begin());
        return;
    }
    fft_->forward(workspace_, y, scratch_);
    correlate_spectra(x.spectrum, scratch_, out);
}

void Correlator::correlate(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    require(x.size() == length_ && y.size() == length_ && out.size() == length_,
            "Correlator::correlate: length mismatch");
    if (length_ < kDirectCorrelationCutoff) {
        auto direct = circular_correlations_direct(x, y);
        std::copy(direct.begin(), direct.end(), out.begin());
        return;
    }
    std::vector<std::complex<double>> xs(fft_->spectrum_size());
    fft_->forward(workspace_, x, xs);
    fft_->forward(workspace_, y, scratch_);
    correlate_spectra(xs, scratch_, out);
}

std::vector<double> circular_correlations(const Signal& x, const Signal& y) {
    require(x.size() == y.size(), "circular_correlations: length mismatch");
    require(!x.empty(), "circular_correlations: empty signal");
    Correlator c(x.size());
    std::vector<double> out(x.size());
    c.correlate(x.view(), y.view(), out);
    return out;
}

std::vector<double> circular_correlations_direct(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), "circular_correlations_direct: length mismatch");
    const std::size_t n = x.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t l = 0; l < n; ++l) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t idx = j + l;
            if (idx >= n) {
                idx -= n;
            }
            acc += y[j] * x[idx];
        }
        out[l] = acc;
    }
    return out;
}

std::size_t argmax_first(std::span<const double> values) {
    require(!values.empty(), "argmax_first: empty input");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

std::size_t argmax_first(std::span<const double> values, double rel_tol) {
    const std::size_t best = argmax_first(values);
    double scale = 0.0;
    for (double v : values) {
        scale = std::max(scale, std::abs(v));
    }
    const double threshold = values[best] - rel_tol * scale;
    for (std::size_t i = 0; i < best; ++i) {
        if (values[i] >= threshold) {
            return i;
        }
    }
    return best;
}

} // namespace mra
