#include "mra/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "mra/correlation.hpp"
#include "mra/error.hpp"
#include "mra/kernels.hpp"

namespace mra {

ShiftIndex template_match(const Signal& templ, const Signal& y) {
    require(templ.size() == y.size(), "template_match: length mismatch");
    require(!templ.empty(), "template_match: empty signal");
    // <templ, R_ell^{-1} y> = <y, R_ell templ>
    const auto c = circular_correlations(templ, y);
    return ShiftIndex(static_cast<long long>(argmax_first(c, kTieTolerance)), templ.size());
}

double template_match_error_rate(std::size_t length, double alpha, long long trials, StreamSeed seed) {
    require(trials >= 1, "template_match_error_rate: trials must be positive");
    const double sigma = std::sqrt(sigma_sq_from_alpha(length, alpha));
    long long errors = 0;
#pragma omp parallel reduction(+ : errors)
    {
        Correlator corr(length);
        std::vector<double> c(length);
#pragma omp for schedule(static)
        for (long long t = 0; t < trials; ++t) {
            Engine engine = seed.child(static_cast<std::uint64_t>(t)).engine();
            const Signal x = sample_signal(length, engine);
            std::uniform_int_distribution<std::size_t> shift_dist(0, length - 1);
            const std::size_t ell = shift_dist(engine);
            Signal y = apply_shift(x.view(), ell);
            std::vector<double> z(length);
            fill_standard_normal(engine, z);
            for (std::size_t j = 0; j < length; ++j) {
                y[j] += sigma * z[j];
            }
            corr.correlate(x.view(), y.view(), c);
            if (argmax_first(c, kTieTolerance) != ell) {
                ++errors;
            }
        }
    }
    return static_cast<double>(errors) / static_cast<double>(trials);
}

ShiftIndex synchronize_pair(const Signal& y1, const Signal& y2) {
    require(y1.size() == y2.size(), "synchronize_pair: length mismatch");
    require(!y1.empty(), "synchronize_pair: empty signal");
    // <y1, R_ell^{-1} y2> = <y2, R_ell y1>
    const auto c = circular_correlations(y1, y2);
    return ShiftIndex(static_cast<long long>(argmax_first(c, kTieTolerance)), y1.size());
}

EstimateResult genie_align_average(const Signal& x_true, const MeasurementSet& ms) {
    require(!ms.noise.is_projected() && !ms.mask.has_value(), "genie_align_average: projected sets are not supported");
    require(x_true.size() == ms.signal_length(), "genie_align_average: signal length mismatch");
    require(ms.size() >= 1, "genie_align_average: empty measurement set");

    const auto shifts = kernels::align_shifts(x_true, ms.observations);
    EstimateResult result;
    result.xhat = kernels::aligned_average(ms.observations, shifts);

    std::vector<ShiftIndex> estimates;
    estimates.reserve(shifts.size());
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        estimates.emplace_back(static_cast<long long>(shifts[i]), x_true.size());
        if (i < ms.true_shifts.size() && ms.true_shifts[i].value() != shifts[i]) {
            ++wrong;
        }
    }
    if (ms.true_shifts.size() == shifts.size()) {
        result.meta["misaligned_fraction"] = static_cast<double>(wrong) / static_cast<double>(shifts.size());
    }
    result.shift_estimates = std::move(estimates);
    return result;
}

std::vector<ShiftIndex> likely_shifts(const Signal& x, const Signal& y, double tau) {
    require(x.size() == y.size(), "likely_shifts: length mismatch");
    const double xx = squared_norm(x.view());
    require(xx > 0.0, "likely_shifts: zero template");
    const auto c = circular_correlations(x, y);  // c[ell] = <x, R_ell^{-1} y>
    std::vector<ShiftIndex> out;
    for (std::size_t ell = 0; ell < c.size(); ++ell) {
        if (c[ell] / xx >= 1.0 - tau) {
            out.emplace_back(static_cast<long long>(ell), x.size());
        }
    }
    return out;
}

double misaligned_fraction_up_to_offset(std::span<const ShiftIndex> estimated, std::span<const ShiftIndex> truth) {
    require(estimated.size() == truth.size(), "misaligned_fraction_up_to_offset: size mismatch");
    if (estimated.empty()) {
        return 0.0;
    }
    const std::size_t length = truth.front().length();
    std::vector<std::size_t> offset_counts(length, 0);
    for (std::size_t i = 0; i < estimated.size(); ++i) {
        const std::size_t d = (estimated[i].value() + length - truth[i].value()) % length;
        ++offset_counts[d];
    }
    const std::size_t best = *std::max_element(offset_counts.begin(), offset_counts.end());
    return 1.0 - static_cast<double>(best) / static_cast<double>(estimated.size());
}

} // namespace mra
