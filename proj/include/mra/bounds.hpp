#pragma once

// Information-theoretic lower bounds and mutual-information quantities for
// the shift-and-noise model. Everything is in nats.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mra/rng.hpp"

namespace mra {

struct BoundReport {
    std::string name;
    double value = 0.0;
    bool valid = true;
    std::string note;  // precondition that failed, or empty
};

/// R(eps) >= (L/2) ln(1/eps) - ln L. valid = false for eps >= 1.
BoundReport rdf_lower_bound(std::size_t length, double eps);

/// MSE* >= L^{-2/L} / (1 + n / sigma^2).
double mse_lower_bound_awgn_style(std::size_t length, double sigma_sq, double n);

/// (L/2) ln(1 + n / sigma^2): the information carried by n unshifted samples.
double mi_awgn(std::size_t length, double sigma_sq, double n);

struct LowSnrMiBound {
    BoundReport report;
    /// ln(1 + L^{-1} e^{L / sigma^2})
    double asymptotic = 0.0;
};

/// Single-sample bound
///   (L/2) ln(1 + 1/s2) - L/(2 s2) + ln sum_ell e^{psi_ell} - ln L,
///   psi_ell = -(1/2) sum_k ln(1 - 2 cos(2 pi k ell / L) / s2).
/// Needs sigma^2 > 2 for the chi-square MGF to exist; valid = false otherwise.
LowSnrMiBound mi_upper_bound_low_snr(std::size_t length, double sigma_sq);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// I(X;Y) = (L/2) ln(1 + 1/s2) - L/s2 + E log( (1/L) sum_ell exp(<X + sigma Z, R_ell X>/s2) ).
MonteCarloEstimate mi_monte_carlo(std::size_t length, double sigma_sq, std::size_t trials, StreamSeed seed);

/// n* >= (L/2) (ln(1/eps) - 2 ln L / L) / I.
double sample_complexity_lower_bound(std::size_t length, double eps, double mi_single);

/// E rho >= exp(-(2 I + 2 ln L) / L).
double mse_lower_bound_from_mi(std::size_t length, double mi_total);

/// sample_complexity_lower_bound evaluated at the low-SNR single-sample MI
/// bound, sigma^2 = L / (alpha ln L). valid only for 0 < alpha < 1.
BoundReport theorem2_scaling_bound(std::size_t length, double alpha, double eps);

/// Projected model with |S| = L', sigma^2 = L' / (alpha ln L):
///   pmra_high_snr  (L/L') (1/eps - 1) sigma^2     (valid for alpha > 2)
///   pmra_mi_cap    (L/2) ln(1 + (L'/L) n / sigma^2)
///   pmra_mse_floor mse_lower_bound_from_mi(L, pmra_mi_cap)
std::vector<BoundReport> pmra_bounds(std::size_t length, std::size_t projected_length, double alpha, double eps,
                                     double n);

struct CapacityEndpoints {
    double c_awgn = 0.0;         // (L/2) ln(1 + 1/s2)
    double c_const_input = 0.0;  // (1/2) ln(1 + L/s2)
};

CapacityEndpoints capacity_endpoints(std::size_t length, double sigma_sq);

/// Log-log least-squares slope of ys against xs.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace mra
