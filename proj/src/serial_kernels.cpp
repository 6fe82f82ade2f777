#include "mra/serial_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "mra/correlation.hpp"
#include "mra/error.hpp"

namespace mra::serial {

std::vector<std::size_t> align_shifts(const Signal& templ, std::span<const Signal> observations) {
    std::vector<std::size_t> shifts;
    shifts.reserve(observations.size());
    for (const auto& y : observations) {
        const auto c = circular_correlations_direct(templ.view(), y.view());
        shifts.push_back(argmax_first(c, kTieTolerance));
    }
    return shifts;
}

Signal aligned_average(std::span<const Signal> observations, std::span<const std::size_t> shifts) {
    require(observations.size() == shifts.size() && !observations.empty(), "serial::aligned_average: bad input");
    const std::size_t length = observations.front().size();
    Signal out(length);
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const Signal aligned = apply_inverse_shift(observations[i].view(), shifts[i]);
        for (std::size_t j = 0; j < length; ++j) {
            out[j] += aligned[j];
        }
    }
    for (double& v : out) {
        v /= static_cast<double>(observations.size());
    }
    return out;
}

kernels::EmStepResult em_step(std::span<const Signal> observations, const Signal& x, double sigma_sq,
                              bool shrinkage) {
    require(sigma_sq > 0.0 && !observations.empty(), "serial::em_step: bad input");
    const std::size_t length = x.size();
    const double n = static_cast<double>(observations.size());
    Signal numer(length);
    double objective = 0.0;
    for (const auto& y : observations) {
        auto a = circular_correlations_direct(x.view(), y.view());
        for (double& v : a) {
            v /= sigma_sq;
        }
        const double m = *std::max_element(a.begin(), a.end());
        double s = 0.0;
        for (double v : a) {
            s += std::exp(v - m);
        }
        objective += m + std::log(s) - std::log(static_cast<double>(length));
        for (std::size_t ell = 0; ell < length; ++ell) {
            const double w = std::exp(a[ell] - m) / s;
            const Signal back = apply_inverse_shift(y.view(), ell);
            for (std::size_t j = 0; j < length; ++j) {
                numer[j] += w * back[j];
            }
        }
    }
    const double xx = squared_norm(x.view());
    objective -= n * xx / (2.0 * sigma_sq) + (shrinkage ? 0.5 * xx : 0.0);
    const double denom = n + (shrinkage ? sigma_sq : 0.0);
    for (double& v : numer) {
        v /= denom;
    }
    return {objective, std::move(numer)};
}

std::vector<long long> net_scores(std::span<const Signal> net, std::span<const Signal> observations,
                                  double threshold) {
    std::vector<long long> scores;
    scores.reserve(net.size());
    for (const auto& q : net) {
        const double inv_sqrt_l = 1.0 / std::sqrt(static_cast<double>(q.size()));
        long long score = 0;
        for (const auto& y : observations) {
            double best = -INFINITY;
            for (std::size_t ell = 0; ell < q.size(); ++ell) {
                best = std::max(best, dot(y.view(), apply_inverse_shift(q.view(), ell).view()));
            }
            if (best * inv_sqrt_l >= threshold) {
                ++score;
            }
        }
        scores.push_back(score);
    }
    return scores;
}

std::vector<double> mi_inner_terms(std::size_t length, double sigma_sq, std::size_t draws, StreamSeed seed) {
    std::vector<double> out;
    out.reserve(draws);
    const double sigma = std::sqrt(sigma_sq);
    std::vector<double> x(length), z(length), y(length);
    for (std::size_t t = 0; t < draws; ++t) {
        Engine engine = seed.child(static_cast<std::uint64_t>(t)).engine();
        fill_standard_normal(engine, x);
        fill_standard_normal(engine, z);
        for (std::size_t j = 0; j < length; ++j) {
            y[j] = x[j] + sigma * z[j];
        }
        auto c = circular_correlations_direct(x, y);
        double m = -INFINITY;
        for (double& v : c) {
            v /= sigma_sq;
            m = std::max(m, v);
        }
        double s = 0.0;
        for (double v : c) {
            s += std::exp(v - m);
        }
        out.push_back(m + std::log(s / static_cast<double>(length)));
    }
    return out;
}

} // namespace mra::serial
