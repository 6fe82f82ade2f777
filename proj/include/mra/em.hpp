#pragma once

#include "mra/estimators.hpp"
#include "mra/model.hpp"
#include "mra/rng.hpp"

namespace mra {

/// Expectation-maximization for the uniform-shift Gaussian mixture.
///
/// E-step: w_{i,ell} proportional to exp(<Y_i, R_ell x> / sigma^2), computed
/// with log-sum-exp. The term ||R_ell x||^2 does not depend on ell and drops.
/// M-step: x <- sum_i sum_ell w_{i,ell} R_ell^{-1} Y_i / (n + [shrinkage] sigma^2).
/// With shrinkage the iteration is MAP-EM under the N(0, I) prior, so the
/// high-SNR error approaches the Bayes AWGN error sigma^2 / (sigma^2 + n).
struct EmConfig {
    int max_iters = 200;
    double rel_tol = 1e-6;
    int restarts = 5;
    bool shrinkage = true;

    void validate() const;
};

/// One EM run from a given starting point. trace[t] is the objective at the
/// t-th iterate; the last entry belongs to the returned estimate.
EstimateResult em_run(const MeasurementSet& ms, const EmConfig& config, const Signal& x0);

/// Best of config.restarts runs by final objective. Each start is a
/// N(0, I) draw rescaled to norm sqrt(L), taken from seed.child({init, r}).
EstimateResult em_estimate(const MeasurementSet& ms, const EmConfig& config, StreamSeed seed);

} // namespace mra
