#include "mra/kernels.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "mra/correlation.hpp"
#include "mra/error.hpp"
#include "mra/fft.hpp"

namespace mra::kernels {

namespace {

std::size_t common_length(std::span<const Signal> signals, std::size_t expected) {
    for (const auto& s : signals) {
        require(s.size() == expected, "kernels: observation length mismatch");
    }
    return expected;
}

std::size_t chunk_count(std::size_t n) { return (n + kReductionChunk - 1) / kReductionChunk; }

// log( sum_ell exp(a_ell) ), and overwrites a with the normalized weights.
double log_sum_exp_normalize(std::span<double> a) {
    // Eigen's packet exp, staged through an Eigen-owned (maximally aligned)
    // buffer: on a Map the scalar/packet split, and hence the rounding,
    // would follow the caller's pointer alignment.
    thread_local Eigen::ArrayXd v;
    v = Eigen::Map<const Eigen::ArrayXd>(a.data(), static_cast<Eigen::Index>(a.size()));
    const double m = v.maxCoeff();
    v = (v - m).exp();
    const double s = v.sum();
    v *= 1.0 / s;
    std::copy(v.data(), v.data() + v.size(), a.begin());
    return m + std::log(s);
}

} // namespace

std::vector<std::size_t> align_shifts(const Signal& templ, std::span<const Signal> observations) {
    const std::size_t length = templ.size();
    require(length >= 1, "align_shifts: empty template");
    common_length(observations, length);
    std::vector<std::size_t> shifts(observations.size());
#pragma omp parallel
    {
        Correlator corr(length);
        const PreparedTemplate prepared = corr.prepare(templ.view());
        std::vector<double> c(length);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(observations.size()); ++i) {
            corr.correlate(prepared, observations[static_cast<std::size_t>(i)].view(), c);
            shifts[static_cast<std::size_t>(i)] = argmax_first(c, kTieTolerance);
        }
    }
    return shifts;
}

Signal aligned_average(std::span<const Signal> observations, std::span<const std::size_t> shifts) {
    require(observations.size() == shifts.size(), "aligned_average: shift count mismatch");
    require(!observations.empty(), "aligned_average: no observations");
    const std::size_t length = observations.front().size();
    common_length(observations, length);
    const std::size_t n = observations.size();
    const std::size_t chunks = chunk_count(n);
    std::vector<std::vector<double>> partial(chunks, std::vector<double>(length, 0.0));

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
        auto& acc = partial[static_cast<std::size_t>(c)];
        const std::size_t begin = static_cast<std::size_t>(c) * kReductionChunk;
        const std::size_t end = std::min(n, begin + kReductionChunk);
        for (std::size_t i = begin; i < end; ++i) {
            const auto& y = observations[i];
            const std::size_t ell = shifts[i] % length;
            // (R_ell^{-1} y)_j = y_{(j - ell) mod L}
            for (std::size_t j = 0; j < length; ++j) {
                const std::size_t src = j >= ell ? j - ell : j + length - ell;
                acc[j] += y[src];
            }
        }
    }

    Signal out(length);
    for (const auto& acc : partial) {
        for (std::size_t j = 0; j < length; ++j) {
            out[j] += acc[j];
        }
    }
    const double inv = 1.0 / static_cast<double>(n);
    for (double& v : out) {
        v *= inv;
    }
    return out;
}

std::vector<std::vector<std::complex<double>>> observation_spectra(std::span<const Signal> observations) {
    std::vector<std::vector<std::complex<double>>> out(observations.size());
    if (observations.empty()) {
        return out;
    }
    const std::size_t length = observations.front().size();
    common_length(observations, length);
    auto fft = RealFft::of_length(length);
#pragma omp parallel
    {
        FftWorkspace ws(length);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(observations.size()); ++i) {
            auto& spec = out[static_cast<std::size_t>(i)];
            spec.resize(fft->spectrum_size());
            fft->forward(ws, observations[static_cast<std::size_t>(i)].view(), spec);
        }
    }
    return out;
}

namespace {

EmStepResult em_pass(std::span<const std::vector<std::complex<double>>> spectra, const Signal& x, double sigma_sq,
                     bool shrinkage, bool want_update) {
    require(sigma_sq > 0.0, "em_step: sigma^2 must be positive");
    require(!spectra.empty(), "em_step: no observations");
    const std::size_t length = x.size();
    auto fft = RealFft::of_length(length);
    const std::size_t k_size = fft->spectrum_size();
    for (const auto& s : spectra) {
        require(s.size() == k_size, "em_step: spectrum size mismatch");
    }

    const std::size_t n = spectra.size();
    const std::size_t chunks = chunk_count(n);
    const double inv_s2 = 1.0 / sigma_sq;
    const double inv_l = 1.0 / static_cast<double>(length);
    const double log_l = std::log(static_cast<double>(length));

    std::vector<std::complex<double>> x_spec(k_size);
    {
        FftWorkspace ws(length);
        fft->forward(ws, x.view(), x_spec);
    }

    std::vector<double> partial_obj(chunks, 0.0);
    std::vector<std::vector<std::complex<double>>> partial_acc(
        want_update ? chunks : 0, std::vector<std::complex<double>>(k_size));

#pragma omp parallel
    {
        FftWorkspace ws(length);
#pragma omp for schedule(static)
        for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
            const auto cu = static_cast<std::size_t>(c);
            const std::size_t begin = cu * kReductionChunk;
            const std::size_t end = std::min(n, begin + kReductionChunk);
            double obj = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                const auto& ys = spectra[i];
                auto spec = ws.spectrum();
                for (std::size_t k = 0; k < k_size; ++k) {
                    spec[k] = std::conj(ys[k]) * x_spec[k];
                }
                fft->backward_in_place(ws);
                // real[ell] = L <y_i, R_ell x>
                auto a = ws.real();
                for (double& v : a) {
                    v *= inv_l * inv_s2;
                }
                obj += log_sum_exp_normalize(a) - log_l;
                if (!want_update) {
                    continue;
                }
                // sum_ell w_ell R_ell^{-1} y = w (*) y, accumulated in frequency.
                fft->forward_in_place(ws);
                auto& acc = partial_acc[cu];
                for (std::size_t k = 0; k < k_size; ++k) {
                    acc[k] += spec[k] * ys[k];
                }
            }
            partial_obj[cu] = obj;
        }
    }

    const double xx = squared_norm(x.view());
    double objective = -static_cast<double>(n) * xx * 0.5 * inv_s2 - (shrinkage ? 0.5 * xx : 0.0);
    double data_term = 0.0;
    for (double v : partial_obj) {
        data_term += v;
    }
    objective += data_term;

    EmStepResult result;
    result.objective = objective;
    if (!want_update) {
        return result;
    }
    std::vector<std::complex<double>> total(k_size);
    for (const auto& acc : partial_acc) {
        for (std::size_t k = 0; k < k_size; ++k) {
            total[k] += acc[k];
        }
    }
    FftWorkspace ws(length);
    Signal next(length);
    fft->backward(ws, total, next.view());
    const double denom = static_cast<double>(n) + (shrinkage ? sigma_sq : 0.0);
    for (double& v : next) {
        v *= inv_l / denom;
    }
    result.next = std::move(next);
    return result;
}

} // namespace

EmStepResult em_step(std::span<const std::vector<std::complex<double>>> spectra, const Signal& x, double sigma_sq,
                     bool shrinkage) {
    return em_pass(spectra, x, sigma_sq, shrinkage, true);
}

double em_objective(std::span<const std::vector<std::complex<double>>> spectra, const Signal& x, double sigma_sq,
                    bool shrinkage) {
    return em_pass(spectra, x, sigma_sq, shrinkage, false).objective;
}

std::vector<long long> net_scores(std::span<const Signal> net, std::span<const Signal> observations,
                                  double threshold) {
    std::vector<long long> scores(net.size(), 0);
    if (net.empty() || observations.empty()) {
        return scores;
    }
    const std::size_t length = net.front().size();
    common_length(net, length);
    common_length(observations, length);
    const double inv_sqrt_l = 1.0 / std::sqrt(static_cast<double>(length));
    const bool use_fft = length >= kDirectCorrelationCutoff;
    const auto spectra = use_fft ? observation_spectra(observations)
                                 : std::vector<std::vector<std::complex<double>>>{};

#pragma omp parallel
    {
        Correlator corr(length);
        std::vector<double> c(length);
        std::vector<std::complex<double>> q_spec(length / 2 + 1);
#pragma omp for schedule(dynamic, 4)
        for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(net.size()); ++p) {
            const auto& q = net[static_cast<std::size_t>(p)];
            if (use_fft) {
                corr.spectrum(q.view(), q_spec);
            }
            long long score = 0;
            for (std::size_t i = 0; i < observations.size(); ++i) {
                // The set {<y, R_ell^{-1} q>}_ell equals {<y, R_ell q>}_ell.
                if (use_fft) {
                    corr.correlate_spectra(q_spec, spectra[i], c);
                } else {
                    corr.correlate(q.view(), observations[i].view(), c);
                }
                const double best = *std::max_element(c.begin(), c.end());
                if (best * inv_sqrt_l >= threshold) {
                    ++score;
                }
            }
            scores[static_cast<std::size_t>(p)] = score;
        }
    }
    return scores;
}

std::vector<double> mi_inner_terms(std::size_t length, double sigma_sq, std::size_t draws, StreamSeed seed) {
    require(length >= 1, "mi_inner_terms: L must be positive");
    require(sigma_sq > 0.0, "mi_inner_terms: sigma^2 must be positive");
    std::vector<double> out(draws);
    const double sigma = std::sqrt(sigma_sq);
    const double inv_s2 = 1.0 / sigma_sq;
    const double log_l = std::log(static_cast<double>(length));
#pragma omp parallel
    {
        Correlator corr(length);
        std::vector<double> x(length), z(length), y(length), c(length);
#pragma omp for schedule(static)
        for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(draws); ++t) {
            Engine engine = seed.child(static_cast<std::uint64_t>(t)).engine();
            fill_standard_normal(engine, x);
            fill_standard_normal(engine, z);
            for (std::size_t j = 0; j < length; ++j) {
                y[j] = x[j] + sigma * z[j];
            }
            corr.correlate(x, y, c);
            for (double& v : c) {
                v *= inv_s2;
            }
            out[static_cast<std::size_t>(t)] = log_sum_exp_normalize(c) - log_l;
        }
    }
    return out;
}

} // namespace mra::kernels
