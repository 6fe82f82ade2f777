#include "mra/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mra/correlation.hpp"
#include "mra/error.hpp"

namespace mra {

DistortionValue rho(const Signal& x, const Signal& xhat) {
    require(x.size() == xhat.size(), "rho: length mismatch");
    require(!x.empty(), "rho: empty signal");
    const auto c = circular_correlations(xhat, x);  // c[ell] = <x, R_ell xhat>
    const std::size_t best = argmax_first(c, kTieTolerance);
    const double l = static_cast<double>(x.size());
    const double d = squared_norm(x.view()) + squared_norm(xhat.view()) - 2.0 * c[best];
    return {std::max(d, 0.0) / l, ShiftIndex(static_cast<long long>(best), x.size())};
}

double awgn_mse(double sigma_sq, double n) {
    require(n >= 0.0, "awgn_mse: n must be nonnegative");
    require(sigma_sq >= 0.0 && sigma_sq + n > 0.0, "awgn_mse: sigma^2 must be nonnegative with sigma^2 + n > 0");
    return sigma_sq / (sigma_sq + n);
}

long long awgn_sample_complexity(double sigma_sq, double eps) {
    require(eps > 0.0 && eps < 1.0, "awgn_sample_complexity: eps must lie in (0, 1)");
    require(sigma_sq >= 0.0, "awgn_sample_complexity: sigma^2 must be nonnegative");
    return static_cast<long long>(std::ceil((1.0 / eps - 1.0) * sigma_sq));
}

} // namespace mra
