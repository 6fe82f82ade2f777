#include "mra/harness/experiments.hpp"

#include <cmath>

#include "mra/bounds.hpp"
#include "mra/error.hpp"
#include "mra/estimators.hpp"
#include "mra/metrics.hpp"
#include "mra/model.hpp"
#include "mra/two_stage.hpp"

namespace mra::harness {

std::vector<ThresholdRow> template_threshold(std::size_t length, const std::vector<double>& alphas, long long trials,
                                             std::uint64_t seed) {
    std::vector<ThresholdRow> rows;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const double p = template_match_error_rate(length, alphas[k], trials, StreamSeed(seed).child(k));
        rows.push_back({length, alphas[k], sigma_sq_from_alpha(length, alphas[k]), trials, p});
    }
    return rows;
}

CsvTable threshold_csv(const std::vector<ThresholdRow>& rows) {
    CsvTable t{{"L", "alpha", "sigma_sq", "trials", "p_e"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.length), format_real(r.alpha), format_real(r.sigma_sq),
                          std::to_string(r.trials), format_real(r.p_e)});
    }
    return t;
}

std::vector<MiEstimateRow> mi_estimate_grid(const std::vector<std::size_t>& lengths, const std::vector<double>& alphas,
                                            std::size_t draws, std::uint64_t seed) {
    std::vector<MiEstimateRow> rows;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            MiEstimateRow r;
            r.length = lengths[i];
            r.alpha = alphas[j];
            r.sigma_sq = sigma_sq_from_alpha(r.length, r.alpha);
            r.draws = draws;
            const auto mc = mi_monte_carlo(r.length, r.sigma_sq, draws, StreamSeed(seed).child({i, j}));
            r.estimate = mc.estimate;
            r.std_error = mc.std_error;
            const auto b = mi_upper_bound_low_snr(r.length, r.sigma_sq);
            r.bound = b.report.value;
            r.bound_valid = b.report.valid;
            r.mi_awgn_single = mi_awgn(r.length, r.sigma_sq, 1.0);
            rows.push_back(r);
        }
    }
    return rows;
}

CsvTable mi_estimate_csv(const std::vector<MiEstimateRow>& rows) {
    CsvTable t{{"L", "alpha", "sigma_sq", "draws", "estimate", "std_error", "bound", "bound_valid", "mi_awgn_single"},
               {}};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.length), format_real(r.alpha), format_real(r.sigma_sq),
                          std::to_string(r.draws), format_real(r.estimate), format_real(r.std_error),
                          format_real(r.bound), r.bound_valid ? "true" : "false", format_real(r.mi_awgn_single)});
    }
    return t;
}

std::vector<TwoStageDemoRow> two_stage_demo(const TwoStageDemoConfig& config) {
    require(config.trials >= 1, "two_stage_demo: trials must be at least 1");
    require(config.eps > 0.0 && config.eps < 1.0, "two_stage_demo: eps must lie in (0, 1)");
    const NoiseModel noise = NoiseModel::plain(config.length, config.alpha);
    const double eta = default_eta(config.alpha);
    const auto n1 = static_cast<long long>(std::ceil(config.gamma1 * noise.sigma_sq * std::log(1.0 / eta) / (eta * eta)));
    const auto n2 = static_cast<long long>(std::ceil(config.gamma2 * noise.sigma_sq / config.eps));

    std::vector<TwoStageDemoRow> rows;
    for (long long t = 0; t < config.trials; ++t) {
        const StreamSeed seed = StreamSeed(config.seed).child(static_cast<std::uint64_t>(t));
        Engine engine = seed.child(stream::signal).engine();
        const Signal x = sample_signal(config.length, engine);
        const MeasurementSet ms = generate_mra(x, n1 + n2, noise, seed);

        NetParams net;
        net.size_cap = config.net_size;
        if (config.planted) {
            net.strategy = NetStrategy::planted_augmented;
            net.plant = x;
        }
        TwoStageOptions options;
        options.truth = x;
        const auto est = two_stage_estimate(ms, static_cast<std::size_t>(n1), static_cast<std::size_t>(n2), eta, net,
                                            seed.child(stream::init), options);

        TwoStageDemoRow row;
        row.trial = t;
        row.n1 = n1;
        row.n2 = n2;
        row.rho = rho(x, est.xhat).rho;
        row.stage1_alignment = est.meta.at("stage1_alignment") * std::sqrt(static_cast<double>(config.length)) /
                               norm(x.view());
        row.stage2_misaligned = est.meta.at("stage2_misaligned_fraction");
        row.success = row.rho <= config.eps;
        rows.push_back(row);
    }
    return rows;
}

CsvTable two_stage_demo_csv(const std::vector<TwoStageDemoRow>& rows) {
    CsvTable t{{"trial", "n1", "n2", "rho", "stage1_alignment", "stage2_misaligned_fraction", "success"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.trial), std::to_string(r.n1), std::to_string(r.n2), format_real(r.rho),
                          format_real(r.stage1_alignment), format_real(r.stage2_misaligned),
                          r.success ? "true" : "false"});
    }
    return t;
}

} // namespace mra::harness
