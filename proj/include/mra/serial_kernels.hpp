#pragma once

// Straightforward O(L^2) single-threaded versions of the kernels in
// kernels.hpp. Kept as test oracles and as the baseline in the benchmark.

#include <cstddef>
#include <span>
#include <vector>

#include "mra/kernels.hpp"
#include "mra/signal.hpp"

namespace mra::serial {

std::vector<std::size_t> align_shifts(const Signal& templ, std::span<const Signal> observations);

Signal aligned_average(std::span<const Signal> observations, std::span<const std::size_t> shifts);

kernels::EmStepResult em_step(std::span<const Signal> observations, const Signal& x, double sigma_sq, bool shrinkage);

std::vector<long long> net_scores(std::span<const Signal> net, std::span<const Signal> observations, double threshold);

std::vector<double> mi_inner_terms(std::size_t length, double sigma_sq, std::size_t draws, StreamSeed seed);

} // namespace mra::serial
