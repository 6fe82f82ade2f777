#include "mra/em.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mra/error.hpp"
#include "mra/kernels.hpp"

namespace mra {

void EmConfig::validate() const {
    require(max_iters >= 1, "EmConfig: max_iters must be at least 1");
    require(rel_tol > 0.0, "EmConfig: rel_tol must be positive");
    require(restarts >= 1, "EmConfig: restarts must be at least 1");
}

namespace {

void check_input(const MeasurementSet& ms) {
    require(!ms.noise.is_projected() && !ms.mask.has_value(), "em: projected sets are not supported");
    require(ms.noise.sigma_sq > 0.0, "em: sigma^2 = 0 gives a degenerate posterior");
    require(ms.size() >= 1, "em: empty measurement set");
}

void check_finite(double objective, int iteration) {
    if (!std::isfinite(objective)) {
        std::ostringstream msg;
        msg << "em: non-finite objective " << objective << " at iteration " << iteration;
        throw RuntimeFailure(msg.str());
    }
}

EstimateResult run_with_spectra(const MeasurementSet& ms,
                                std::span<const std::vector<std::complex<double>>> spectra, const EmConfig& config,
                                const Signal& x0) {
    require(x0.size() == ms.signal_length(), "em: initial point has wrong length");
    const double sigma_sq = ms.noise.sigma_sq;

    EstimateResult result;
    Signal x = x0;
    int iteration = 0;
    bool converged = false;
    for (; iteration < config.max_iters; ++iteration) {
        auto step = kernels::em_step(spectra, x, sigma_sq, config.shrinkage);
        check_finite(step.objective, iteration);
        result.trace.emplace_back(iteration, step.objective);

        double diff = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double d = step.next[j] - x[j];
            diff += d * d;
        }
        const double scale = std::max(squared_norm(x.view()), std::numeric_limits<double>::min());
        x = std::move(step.next);
        if (std::sqrt(diff / scale) < config.rel_tol) {
            converged = true;
            ++iteration;
            break;
        }
    }
    const double final_objective = kernels::em_objective(spectra, x, sigma_sq, config.shrinkage);
    check_finite(final_objective, iteration);
    result.trace.emplace_back(iteration, final_objective);

    result.meta["iterations"] = iteration;
    result.meta["converged"] = converged ? 1.0 : 0.0;
    result.meta["final_objective"] = final_objective;
    result.xhat = std::move(x);
    return result;
}

void attach_shift_diagnostics(const MeasurementSet& ms, EstimateResult& result) {
    const auto shifts = kernels::align_shifts(result.xhat, ms.observations);
    std::vector<ShiftIndex> estimates;
    estimates.reserve(shifts.size());
    for (auto s : shifts) {
        estimates.emplace_back(static_cast<long long>(s), ms.signal_length());
    }
    if (ms.true_shifts.size() == estimates.size()) {
        result.meta["misaligned_fraction"] = misaligned_fraction_up_to_offset(estimates, ms.true_shifts);
    }
    result.shift_estimates = std::move(estimates);
}

} // namespace

EstimateResult em_run(const MeasurementSet& ms, const EmConfig& config, const Signal& x0) {
    config.validate();
    check_input(ms);
    const auto spectra = kernels::observation_spectra(ms.observations);
    auto result = run_with_spectra(ms, spectra, config, x0);
    attach_shift_diagnostics(ms, result);
    return result;
}

EstimateResult em_estimate(const MeasurementSet& ms, const EmConfig& config, StreamSeed seed) {
    config.validate();
    check_input(ms);
    const std::size_t length = ms.signal_length();
    const auto spectra = kernels::observation_spectra(ms.observations);

    EstimateResult best;
    double best_objective = -std::numeric_limits<double>::infinity();
    int best_restart = -1;
    for (int r = 0; r < config.restarts; ++r) {
        Engine engine = seed.child({stream::init, static_cast<std::uint64_t>(r)}).engine();
        Signal x0 = sample_signal(length, engine);
        const double scale = std::sqrt(static_cast<double>(length)) / std::max(norm(x0.view()), 1e-300);
        for (double& v : x0) {
            v *= scale;
        }
        auto run = run_with_spectra(ms, spectra, config, x0);
        const double objective = run.trace.back().second;
        if (best_restart < 0 || objective > best_objective) {
            best_objective = objective;
            best = std::move(run);
            best_restart = r;
        }
    }
    best.meta["best_restart"] = best_restart;
    best.meta["restarts"] = config.restarts;
    attach_shift_diagnostics(ms, best);
    return best;
}

} // namespace mra
