#pragma once

#include "mra/signal.hpp"

namespace mra {

struct DistortionValue {
    double rho = 0.0;
    ShiftIndex argmin_shift;  // smallest index attaining the minimum
};

/// Orbit distortion (1/L) min_ell ||x - R_ell xhat||^2, evaluated through
/// ||x||^2 + ||xhat||^2 - 2 max_ell <x, R_ell xhat> in O(L log L).
DistortionValue rho(const Signal& x, const Signal& xhat);

/// MSE of estimating X ~ N(0, I) from n unshifted copies: sigma^2 / (sigma^2 + n).
double awgn_mse(double sigma_sq, double n);

/// ceil((1/eps - 1) sigma^2).
long long awgn_sample_complexity(double sigma_sq, double eps);

} // namespace mra
