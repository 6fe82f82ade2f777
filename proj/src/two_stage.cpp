#include "mra/two_stage.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "mra/correlation.hpp"
#include "mra/error.hpp"
#include "mra/kernels.hpp"

namespace mra {

double default_eta(double alpha) {
    require(alpha > 2.0, "default_eta: alpha must exceed 2");
    const double g = 1.0 - std::sqrt(2.0 / alpha);
    return g * g / 16.0;
}

double cover_size_bound(std::size_t length, double eta) {
    require(eta > 0.0 && eta < 1.0, "cover_size_bound: eta must lie in (0, 1)");
    return std::pow(3.0 / std::sqrt(eta), static_cast<double>(length));
}

namespace {

Signal normalized(Signal v) {
    const double n = norm(v.view());
    require(n > 0.0, "normalized: zero vector");
    for (double& x : v) {
        x /= n;
    }
    return v;
}

// Unit vector at Euclidean distance d from the unit vector u.
Signal perturb_on_sphere(const Signal& u, double d, Engine& engine) {
    const std::size_t length = u.size();
    Signal w(length);
    double w_norm = 0.0;
    while (w_norm < 1e-8) {
        fill_standard_normal(engine, w.view());
        const double proj = dot(w.view(), u.view());
        for (std::size_t j = 0; j < length; ++j) {
            w[j] -= proj * u[j];
        }
        w_norm = norm(w.view());
        if (length == 1) {
            break;
        }
    }
    Signal q(length);
    const double along = 1.0 - 0.5 * d * d;
    const double across = length == 1 ? 0.0 : d * std::sqrt(std::max(0.0, 1.0 - 0.25 * d * d)) / w_norm;
    for (std::size_t j = 0; j < length; ++j) {
        q[j] = along * u[j] + across * w[j];
    }
    return normalized(std::move(q));
}

} // namespace

SphereNet build_sphere_net(std::size_t length, double eta, const NetParams& params, StreamSeed seed) {
    require(length >= 1, "build_sphere_net: L must be positive");
    require(eta > 0.0 && eta < 1.0, "build_sphere_net: eta must lie in (0, 1)");
    require(params.size_cap >= 1, "build_sphere_net: size_cap must be at least 1");
    const bool planted = params.strategy == NetStrategy::planted_augmented;
    const std::size_t extra = planted ? 1 + 2 * params.planted_per_radius : 0;
    const double bytes = static_cast<double>(params.size_cap + extra) * static_cast<double>(length) * sizeof(double);
    if (bytes > static_cast<double>(params.memory_budget_bytes)) {
        throw InvalidParameter("build_sphere_net: size_cap exceeds the configured memory budget");
    }
    require(!planted || (params.plant.has_value() && params.plant->size() == length),
            "build_sphere_net: planted-augmented strategy needs a plant of length L");

    SphereNet net;
    net.eta = eta;
    net.strategy = params.strategy;
    net.points.resize(params.size_cap);
    const StreamSeed base = seed.child(stream::net);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(params.size_cap); ++i) {
        Engine engine = base.child(static_cast<std::uint64_t>(i)).engine();
        Signal g(length);
        do {
            fill_standard_normal(engine, g.view());
        } while (squared_norm(g.view()) == 0.0);
        net.points[static_cast<std::size_t>(i)] = normalized(std::move(g));
    }

    if (planted) {
        const Signal u = normalized(*params.plant);
        net.points.push_back(u);
        Engine engine = base.child(0x504C414E54ULL).engine();  // "PLANT"
        const double radius = std::sqrt(eta);
        for (double d : {0.5 * radius, radius}) {
            for (std::size_t k = 0; k < params.planted_per_radius; ++k) {
                net.points.push_back(perturb_on_sphere(u, d, engine));
            }
        }
    }
    return net;
}

double template_alignment(const Signal& x, const Signal& q) {
    require(x.size() == q.size() && !x.empty(), "template_alignment: length mismatch");
    // <x, R_ell^{-1} q> = <q, R_ell x>
    const auto c = circular_correlations(x, q);
    return *std::max_element(c.begin(), c.end()) / std::sqrt(static_cast<double>(x.size()));
}

int stage1_score(const Signal& q, const Signal& y, double eta) {
    require(q.size() == y.size() && !q.empty(), "stage1_score: length mismatch");
    require(std::abs(norm(q.view()) - 1.0) < 1e-8, "stage1_score: q must be unit norm");
    const auto c = circular_correlations(q, y);
    const double best = *std::max_element(c.begin(), c.end());
    return best / std::sqrt(static_cast<double>(q.size())) >= 1.0 - 0.75 * eta ? 1 : 0;
}

Stage1Result brute_force_stage1(const MeasurementSet& ms, const SphereNet& net, double eta) {
    require(!net.points.empty(), "brute_force_stage1: empty net");
    require(!ms.mask.has_value(), "brute_force_stage1: projected sets are not supported");
    const auto scores = kernels::net_scores(net.points, ms.observations, 1.0 - 0.75 * eta);
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best]) {
            best = i;
        }
    }
    return Stage1Result{net.points[best], best, scores[best], ms.lineage};
}

EstimateResult align_average_stage2(const MeasurementSet& ms, const Signal& q, std::optional<std::uint64_t> q_lineage) {
    require(!ms.mask.has_value(), "align_average_stage2: projected sets are not supported");
    require(ms.size() >= 1, "align_average_stage2: empty measurement set");
    require(q.size() == ms.signal_length(), "align_average_stage2: template length mismatch");

    EstimateResult result;
    if (q_lineage.has_value() && *q_lineage == ms.lineage) {
        std::cerr << "warning: stage-2 template was derived from the same samples it aligns\n";
        result.meta["lineage_violation"] = 1.0;
    }
    // argmax_ell <Y_i, R_ell q>
    const auto shifts = kernels::align_shifts(q, ms.observations);
    result.xhat = kernels::aligned_average(ms.observations, shifts);

    std::vector<ShiftIndex> estimates;
    estimates.reserve(shifts.size());
    for (auto s : shifts) {
        estimates.emplace_back(static_cast<long long>(s), q.size());
    }
    if (ms.true_shifts.size() == estimates.size()) {
        result.meta["misaligned_fraction"] = misaligned_fraction_up_to_offset(estimates, ms.true_shifts);
    }
    result.shift_estimates = std::move(estimates);
    return result;
}

Signal norm_clamp(const Signal& xhat) {
    const double limit = 10.0 * std::sqrt(static_cast<double>(xhat.size()));
    if (norm(xhat.view()) <= limit) {
        return xhat;
    }
    return Signal(xhat.size());
}

EstimateResult two_stage_estimate(const MeasurementSet& ms, std::size_t n1, std::size_t n2, double eta,
                                  const NetParams& net_params, StreamSeed seed, const TwoStageOptions& options) {
    require(n1 >= 1 && n2 >= 1, "two_stage_estimate: both stages need samples");
    if (n1 + n2 > ms.size()) {
        throw InvalidParameter("two_stage_estimate: insufficient samples (n1 + n2 > n)");
    }
    const MeasurementSet first = ms.slice(0, n1);
    const MeasurementSet second = ms.slice(n1, n2);

    const SphereNet net = build_sphere_net(ms.signal_length(), eta, net_params, seed);
    const Stage1Result stage1 = brute_force_stage1(first, net, eta);
    EstimateResult result = align_average_stage2(second, stage1.q, stage1.lineage);

    result.meta["stage1_index"] = static_cast<double>(stage1.index);
    result.meta["stage1_score"] = static_cast<double>(stage1.score);
    result.meta["net_size"] = static_cast<double>(net.points.size());
    if (auto it = result.meta.find("misaligned_fraction"); it != result.meta.end()) {
        result.meta["stage2_misaligned_fraction"] = it->second;
    }
    if (options.truth.has_value()) {
        result.meta["stage1_alignment"] = template_alignment(*options.truth, stage1.q);
    }

    if (options.inject_norm.has_value()) {
        const double n = norm(result.xhat.view());
        for (double& v : result.xhat) {
            v *= *options.inject_norm / n;
        }
    }
    if (options.clamp) {
        Signal clamped = norm_clamp(result.xhat);
        result.meta["clamped"] = clamped == result.xhat ? 0.0 : 1.0;
        result.xhat = std::move(clamped);
    }
    return result;
}

} // namespace mra
