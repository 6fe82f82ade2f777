#pragma once

// Two-stage estimator for the high-SNR regime (alpha > 2):
//   1. brute-force search over a finite subset of the unit sphere for a
//      direction Q that scores highest against the first n1 samples;
//   2. template-match the remaining n2 samples against Q and average them.
// Stage 1 is exponential in L when the net is a true cover; here the net is
// a capped random sample, optionally augmented with points planted near a
// known signal so the selection logic can be exercised at desk scale.

#include <cstdint>
#include <optional>
#include <vector>

#include "mra/estimators.hpp"
#include "mra/model.hpp"
#include "mra/rng.hpp"

namespace mra {

enum class NetStrategy { random, planted_augmented };

struct SphereNet {
    std::vector<Signal> points;  // unit norm
    double eta = 0.0;
    NetStrategy strategy = NetStrategy::random;
};

struct NetParams {
    std::size_t size_cap = 1024;
    NetStrategy strategy = NetStrategy::random;
    std::optional<Signal> plant;
    /// Planted points per nonzero radius (sqrt(eta)/2 and sqrt(eta)).
    std::size_t planted_per_radius = 4;
    std::size_t memory_budget_bytes = std::size_t{1} << 30;
};

/// (1 - sqrt(2/alpha))^2 / 16; requires alpha > 2.
double default_eta(double alpha);

/// Size bound (3 / sqrt(eta))^L of a sqrt(eta)-cover of the sphere.
double cover_size_bound(std::size_t length, double eta);

SphereNet build_sphere_net(std::size_t length, double eta, const NetParams& params, StreamSeed seed);

/// max_ell L^{-1/2} <x, R_ell^{-1} q>
double template_alignment(const Signal& x, const Signal& q);

/// 1 if max_ell L^{-1/2} <y, R_ell^{-1} q> >= 1 - 3 eta / 4, else 0.
int stage1_score(const Signal& q, const Signal& y, double eta);

struct Stage1Result {
    Signal q;
    std::size_t index = 0;
    long long score = 0;
    std::uint64_t lineage = 0;  // lineage of the samples that produced q
};

/// Net point maximizing the total score; ties go to the first index.
Stage1Result brute_force_stage1(const MeasurementSet& ms, const SphereNet& net, double eta);

/// ellhat_i = argmax_ell <Y_i, R_ell q>; xhat = (1/n2) sum_i R_{ellhat_i}^{-1} Y_i.
/// If q_lineage equals ms.lineage the template was fit on these samples;
/// that is flagged in meta["lineage_violation"] and on stderr, not rejected.
EstimateResult align_average_stage2(const MeasurementSet& ms, const Signal& q,
                                    std::optional<std::uint64_t> q_lineage = std::nullopt);

/// xhat if ||xhat|| <= 10 sqrt(L), else the zero signal.
Signal norm_clamp(const Signal& xhat);

struct TwoStageOptions {
    bool clamp = true;
    /// Diagnostics only: used to report the stage-1 alignment.
    std::optional<Signal> truth;
    /// Fault injection for tests: rescales xhat to this norm before clamping.
    std::optional<double> inject_norm;
};

EstimateResult two_stage_estimate(const MeasurementSet& ms, std::size_t n1, std::size_t n2, double eta,
                                  const NetParams& net_params, StreamSeed seed, const TwoStageOptions& options = {});

} // namespace mra
