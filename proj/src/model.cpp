#include "mra/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mra/correlation.hpp"
#include "mra/error.hpp"
#include "mra/fft.hpp"

namespace mra {

double sigma_sq_from_alpha(std::size_t length, double alpha) {
    require(length >= 2, "sigma_sq_from_alpha: L must be at least 2");
    require(alpha > 0.0 && std::isfinite(alpha), "sigma_sq_from_alpha: alpha must be positive");
    const double l = static_cast<double>(length);
    return l / (alpha * std::log(l));
}

double alpha_from_sigma_sq(std::size_t length, double sigma_sq) {
    require(length >= 2, "alpha_from_sigma_sq: L must be at least 2");
    require(sigma_sq > 0.0, "alpha_from_sigma_sq: sigma^2 must be positive");
    const double l = static_cast<double>(length);
    return l / (sigma_sq * std::log(l));
}

NoiseModel NoiseModel::plain(std::size_t length, double alpha) {
    return NoiseModel{length, alpha, sigma_sq_from_alpha(length, alpha), std::nullopt};
}

NoiseModel NoiseModel::projected(std::size_t length, std::size_t projected_length, double alpha) {
    require(projected_length >= 1 && projected_length <= length, "NoiseModel: need 1 <= L' <= L");
    require(length >= 2, "NoiseModel: L must be at least 2");
    require(alpha > 0.0, "NoiseModel: alpha must be positive");
    const double sigma_sq = static_cast<double>(projected_length) / (alpha * std::log(static_cast<double>(length)));
    return NoiseModel{length, alpha, sigma_sq, projected_length};
}

NoiseModel NoiseModel::from_sigma_sq(std::size_t length, double sigma_sq) {
    require(length >= 1, "NoiseModel: L must be positive");
    require(sigma_sq >= 0.0 && std::isfinite(sigma_sq), "NoiseModel: sigma^2 must be finite and nonnegative");
    double alpha = std::numeric_limits<double>::quiet_NaN();
    if (sigma_sq == 0.0) {
        alpha = std::numeric_limits<double>::infinity();
    } else if (length >= 2) {
        alpha = alpha_from_sigma_sq(length, sigma_sq);
    }
    return NoiseModel{length, alpha, sigma_sq, std::nullopt};
}

ProjectionMask::ProjectionMask(std::size_t length, std::vector<std::size_t> kept)
    : length_(length), kept_(std::move(kept)) {
    std::sort(kept_.begin(), kept_.end());
    require(std::adjacent_find(kept_.begin(), kept_.end()) == kept_.end(), "ProjectionMask: duplicate index");
    require(kept_.empty() || kept_.back() < length_, "ProjectionMask: index out of range");
    require(!kept_.empty(), "ProjectionMask: empty mask");
}

ProjectionMask ProjectionMask::full(std::size_t length) { return leading(length, length); }

ProjectionMask ProjectionMask::leading(std::size_t length, std::size_t kept) {
    require(kept <= length, "ProjectionMask: L' exceeds L");
    std::vector<std::size_t> idx(kept);
    for (std::size_t i = 0; i < kept; ++i) {
        idx[i] = i;
    }
    return ProjectionMask(length, std::move(idx));
}

ProjectionMask ProjectionMask::random(std::size_t length, std::size_t kept, Engine& engine) {
    require(kept <= length, "ProjectionMask: L' exceeds L");
    std::vector<std::size_t> all(length);
    for (std::size_t i = 0; i < length; ++i) {
        all[i] = i;
    }
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < kept; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, length - 1);
        std::swap(all[i], all[pick(engine)]);
    }
    all.resize(kept);
    return ProjectionMask(length, std::move(all));
}

Signal ProjectionMask::project(std::span<const double> x) const {
    require(x.size() == length_, "ProjectionMask::project: length mismatch");
    Signal out(kept_.size());
    for (std::size_t i = 0; i < kept_.size(); ++i) {
        out[i] = x[kept_[i]];
    }
    return out;
}

MeasurementSet MeasurementSet::slice(std::size_t first, std::size_t count) const {
    require(first + count <= size(), "MeasurementSet::slice: range out of bounds");
    MeasurementSet out;
    out.observations.assign(observations.begin() + static_cast<std::ptrdiff_t>(first),
                            observations.begin() + static_cast<std::ptrdiff_t>(first + count));
    out.true_shifts.assign(true_shifts.begin() + static_cast<std::ptrdiff_t>(first),
                           true_shifts.begin() + static_cast<std::ptrdiff_t>(first + count));
    out.noise = noise;
    out.seed = seed;
    out.lineage = mix64(mix64(lineage ^ 0x51A11CEULL) ^ (first * 0x100000001B3ULL + count));
    out.mask = mask;
    return out;
}

Signal sample_signal(std::size_t length, Engine& engine) {
    Signal x(length);
    fill_standard_normal(engine, x.view());
    return x;
}

namespace {

MeasurementSet generate(const Signal& x, const ProjectionMask* mask, long long n, const NoiseModel& noise,
                        StreamSeed seed) {
    require(n >= 0, "generate: n must be nonnegative");
    require(x.size() == noise.length, "generate: signal length does not match noise model");
    const std::size_t length = x.size();
    const std::size_t out_length = mask != nullptr ? mask->kept_size() : length;
    const double sigma = std::sqrt(noise.sigma_sq);
    const auto count = static_cast<std::size_t>(n);

    MeasurementSet ms;
    ms.observations.resize(count);
    ms.true_shifts.resize(count);
    ms.noise = noise;
    ms.seed = seed;
    ms.lineage = seed.value();
    if (mask != nullptr) {
        ms.mask = *mask;
    }

    const StreamSeed base = seed.child(stream::measurements);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        Engine engine = base.child(static_cast<std::uint64_t>(i)).engine();
        std::uniform_int_distribution<std::size_t> shift_dist(0, length - 1);
        const std::size_t ell = shift_dist(engine);
        Signal shifted = apply_shift(x.view(), ell);
        Signal obs = mask != nullptr ? mask->project(shifted.view()) : std::move(shifted);
        std::vector<double> z(out_length);
        fill_standard_normal(engine, z);
        for (std::size_t j = 0; j < out_length; ++j) {
            obs[j] += sigma * z[j];
        }
        ms.observations[static_cast<std::size_t>(i)] = std::move(obs);
        ms.true_shifts[static_cast<std::size_t>(i)] = ShiftIndex(static_cast<long long>(ell), length);
    }
    return ms;
}

} // namespace

MeasurementSet generate_mra(const Signal& x, long long n, const NoiseModel& noise, StreamSeed seed) {
    require(!noise.is_projected(), "generate_mra: noise model is projected; use generate_pmra");
    return generate(x, nullptr, n, noise, seed);
}

MeasurementSet generate_pmra(const Signal& x, const ProjectionMask& mask, long long n, const NoiseModel& noise,
                             StreamSeed seed) {
    require(noise.is_projected(), "generate_pmra: noise model is not projected");
    require(*noise.projected_length == mask.kept_size(), "generate_pmra: mask size does not match L'");
    require(mask.length() == noise.length, "generate_pmra: mask length does not match L");
    return generate(x, &mask, n, noise, seed);
}

std::vector<double> shift_sym_eigenvalues(std::size_t length, std::size_t ell) {
    require(length >= 1 && ell < length, "shift_sym_eigenvalues: need 0 <= ell < L");
    std::vector<double> out(length);
    const double l = static_cast<double>(length);
    for (std::size_t k = 0; k < length; ++k) {
        // Reduce k*ell mod L first so the cosine argument stays in [0, 2 pi).
        const auto phase = static_cast<double>((k * ell) % length);
        out[k] = 2.0 * std::cos(2.0 * std::numbers::pi * phase / l);
    }
    return out;
}

double default_kappa(std::size_t length) {
    require(length >= 2, "default_kappa: L must be at least 2");
    const double l = static_cast<double>(length);
    return 10.0 * std::log(l) / std::sqrt(l);
}

NiceSignalReport nice_signal_check(const Signal& x, double kappa) {
    const std::size_t length = x.size();
    require(length >= 2, "nice_signal_check: L must be at least 2");
    const double l = static_cast<double>(length);

    NiceSignalReport report;
    const auto auto_corr = circular_correlations(x, x);
    report.norm_dev = std::abs(auto_corr[0] / l - 1.0);
    for (std::size_t ell = 1; ell < length; ++ell) {
        report.max_offdiag = std::max(report.max_offdiag, std::abs(auto_corr[ell]) / l);
    }
    report.autocorr_ok = std::max(report.norm_dev, report.max_offdiag) <= kappa;

    // F^* x with (f_k)_j = L^{-1/2} e^{2 pi i k j / L}, i.e. the forward
    // transform scaled by L^{-1/2}. Real input: the upper half mirrors the lower.
    auto fft = RealFft::of_length(length);
    FftWorkspace ws(length);
    std::vector<std::complex<double>> spec(fft->spectrum_size());
    fft->forward(ws, x.view(), spec);
    double sup = 0.0;
    for (const auto& c : spec) {
        sup = std::max(sup, std::abs(c));
    }
    report.dft_supnorm = sup / std::sqrt(l);
    report.dft_ok = report.dft_supnorm <= std::sqrt(10.0 * std::log(l));
    return report;
}

} // namespace mra
