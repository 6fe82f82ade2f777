#pragma once

// Small fixed experiments shared by the CLI and the acceptance suite.

#include <cstdint>
#include <vector>

#include "mra/harness/csv.hpp"

namespace mra::harness {

struct ThresholdRow {
    std::size_t length = 0;
    double alpha = 0.0;
    double sigma_sq = 0.0;
    long long trials = 0;
    double p_e = 0.0;
};

/// Template-matching error rate at each alpha; alpha k uses seed.child(k).
std::vector<ThresholdRow> template_threshold(std::size_t length, const std::vector<double>& alphas, long long trials,
                                             std::uint64_t seed);
CsvTable threshold_csv(const std::vector<ThresholdRow>& rows);

struct MiEstimateRow {
    std::size_t length = 0;
    double alpha = 0.0;
    double sigma_sq = 0.0;
    std::size_t draws = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    double bound = 0.0;  // low-SNR single-sample bound, NaN if invalid
    bool bound_valid = false;
    double mi_awgn_single = 0.0;
};

std::vector<MiEstimateRow> mi_estimate_grid(const std::vector<std::size_t>& lengths, const std::vector<double>& alphas,
                                            std::size_t draws, std::uint64_t seed);
CsvTable mi_estimate_csv(const std::vector<MiEstimateRow>& rows);

struct TwoStageDemoConfig {
    std::size_t length = 16;
    double alpha = 8.0;
    double eps = 0.1;
    long long trials = 50;
    /// n1 = ceil(gamma1 sigma^2 ln(1/eta) / eta^2)
    double gamma1 = 4.0;
    /// n2 = ceil(gamma2 sigma^2 / eps)
    double gamma2 = 2.0;
    std::size_t net_size = 64;
    bool planted = true;
    std::uint64_t seed = 0;
};

struct TwoStageDemoRow {
    long long trial = 0;
    long long n1 = 0;
    long long n2 = 0;
    double rho = 0.0;
    double stage1_alignment = 0.0;  // max_ell <x, R_ell^{-1} q> / ||x||
    double stage2_misaligned = 0.0;
    bool success = false;           // rho <= eps
};

std::vector<TwoStageDemoRow> two_stage_demo(const TwoStageDemoConfig& config);
CsvTable two_stage_demo_csv(const std::vector<TwoStageDemoRow>& rows);

} // namespace mra::harness
