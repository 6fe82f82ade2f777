#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mra/model.hpp"
#include "mra/rng.hpp"
#include "mra/signal.hpp"

namespace mra {

struct EstimateResult {
    Signal xhat;
    std::optional<std::vector<ShiftIndex>> shift_estimates;
    std::vector<std::pair<int, double>> trace;  // (iteration, objective)
    std::map<std::string, double> meta;
};

/// MAP shift of y given the template: argmax_ell <template, R_ell^{-1} y>.
ShiftIndex template_match(const Signal& templ, const Signal& y);

/// Fraction of trials where template matching misses the true shift. Each
/// trial draws a fresh X ~ N(0, I), a uniform shift and fresh noise at
/// sigma^2 = L / (alpha ln L).
double template_match_error_rate(std::size_t length, double alpha, long long trials, StreamSeed seed);

/// Relative shift between two observations: argmax_ell <y1, R_ell^{-1} y2>.
ShiftIndex synchronize_pair(const Signal& y1, const Signal& y2);

/// Shifts estimated by template matching against the true signal, then
/// xhat = (1/n) sum_i R_{ellhat_i}^{-1} Y_i. meta["misaligned_fraction"]
/// counts ellhat_i != ell_i.
EstimateResult genie_align_average(const Signal& x_true, const MeasurementSet& ms);

/// { ell : <x, R_ell^{-1} y> / ||x||^2 >= 1 - tau }, ascending.
std::vector<ShiftIndex> likely_shifts(const Signal& x, const Signal& y, double tau);

/// Fraction of estimated shifts that differ from the truth by anything other
/// than one common offset: min over offsets d of mean[est_i != true_i + d].
double misaligned_fraction_up_to_offset(std::span<const ShiftIndex> estimated, std::span<const ShiftIndex> truth);

} // namespace mra
