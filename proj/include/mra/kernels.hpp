#pragma once

// Data-parallel inner loops. Every kernel here has an O(L^2) single-threaded
// counterpart in serial_kernels.hpp that the tests compare against.
//
// Reductions use a fixed chunking of the measurement index, and partial sums
// are combined in chunk order, so results are bit-identical for any number
// of OpenMP threads.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mra/rng.hpp"
#include "mra/signal.hpp"

namespace mra::kernels {

inline constexpr std::size_t kReductionChunk = 64;

/// For each observation, argmax_ell <y_i, R_ell t> (smallest index on ties).
std::vector<std::size_t> align_shifts(const Signal& templ, std::span<const Signal> observations);

/// (1/n) sum_i R_{shift_i}^{-1} y_i.
Signal aligned_average(std::span<const Signal> observations, std::span<const std::size_t> shifts);

/// Spectra of the observations, computed once and reused by em_step.
std::vector<std::vector<std::complex<double>>> observation_spectra(std::span<const Signal> observations);

struct EmStepResult {
    double objective = 0.0;  // log-posterior surrogate evaluated at the input x
    Signal next;             // M-step update
};

/// One EM iteration for the uniform-shift mixture.
///   objective(x) = sum_i [logsumexp_ell(<y_i, R_ell x>/s2) - ln L] - n ||x||^2/(2 s2) - [shrink] ||x||^2/2
///   w_{i,ell}   ~ exp(<y_i, R_ell x>/s2)
///   next        = sum_i sum_ell w_{i,ell} R_ell^{-1} y_i / (n + [shrink] s2)
EmStepResult em_step(std::span<const std::vector<std::complex<double>>> spectra, const Signal& x, double sigma_sq,
                     bool shrinkage);

/// Objective only, as defined for em_step.
double em_objective(std::span<const std::vector<std::complex<double>>> spectra, const Signal& x, double sigma_sq,
                    bool shrinkage);

/// For each net point q: number of observations with
/// max_ell L^{-1/2} <y_i, R_ell^{-1} q> >= threshold.
std::vector<long long> net_scores(std::span<const Signal> net, std::span<const Signal> observations, double threshold);

/// Per-draw inner term of the single-sample mutual information:
///   log( (1/L) sum_ell exp(<X + sigma Z, R_ell X> / s2) )
/// with X, Z drawn from seed.child(t) for draw t.
std::vector<double> mi_inner_terms(std::size_t length, double sigma_sq, std::size_t draws, StreamSeed seed);

} // namespace mra::kernels
