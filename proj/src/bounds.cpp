#include "mra/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "mra/error.hpp"
#include "mra/kernels.hpp"
#include "mra/model.hpp"

namespace mra {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_l(std::size_t length) { return std::log(static_cast<double>(length)); }

BoundReport invalid(std::string name, std::string note) {
    return BoundReport{std::move(name), kNaN, false, std::move(note)};
}

} // namespace

BoundReport rdf_lower_bound(std::size_t length, double eps) {
    require(length >= 2, "rdf_lower_bound: L must be at least 2");
    require(eps > 0.0, "rdf_lower_bound: eps must be positive");
    const double value = 0.5 * static_cast<double>(length) * std::log(1.0 / eps) - log_l(length);
    if (eps >= 1.0) {
        return BoundReport{"rdf", value, false, "eps must be below 1"};
    }
    return BoundReport{"rdf", value, true, ""};
}

double mse_lower_bound_awgn_style(std::size_t length, double sigma_sq, double n) {
    require(length >= 2, "mse_lower_bound_awgn_style: L must be at least 2");
    require(sigma_sq > 0.0, "mse_lower_bound_awgn_style: sigma^2 must be positive");
    require(n >= 0.0, "mse_lower_bound_awgn_style: n must be nonnegative");
    return std::exp(-2.0 * log_l(length) / static_cast<double>(length)) / (1.0 + n / sigma_sq);
}

double mi_awgn(std::size_t length, double sigma_sq, double n) {
    require(sigma_sq > 0.0, "mi_awgn: sigma^2 must be positive");
    require(n >= 0.0, "mi_awgn: n must be nonnegative");
    return 0.5 * static_cast<double>(length) * std::log1p(n / sigma_sq);
}

LowSnrMiBound mi_upper_bound_low_snr(std::size_t length, double sigma_sq) {
    require(length >= 1, "mi_upper_bound_low_snr: L must be positive");
    const double L = static_cast<double>(length);
    LowSnrMiBound out;
    if (!(sigma_sq > 2.0)) {
        out.report = invalid("mi_low_snr", "requires sigma^2 > 2");
        out.asymptotic = kNaN;
        return out;
    }
    // ln(1 + e^{L/s2} / L), written to stay finite for large L/s2
    const double a = L / sigma_sq - std::log(L);
    out.asymptotic = a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));

    std::vector<double> psi(length);
    for (std::size_t ell = 0; ell < length; ++ell) {
        double s = 0.0;
        for (std::size_t k = 0; k < length; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * ell) % length) / L;
            s += std::log1p(-2.0 * std::cos(angle) / sigma_sq);
        }
        psi[ell] = -0.5 * s;
    }
    const double m = *std::max_element(psi.begin(), psi.end());
    double acc = 0.0;
    for (double p : psi) {
        acc += std::exp(p - m);
    }
    const double value = 0.5 * L * std::log1p(1.0 / sigma_sq) - L / (2.0 * sigma_sq) + m + std::log(acc) - std::log(L);
    out.report = BoundReport{"mi_low_snr", value, std::isfinite(value), ""};
    return out;
}

MonteCarloEstimate mi_monte_carlo(std::size_t length, double sigma_sq, std::size_t trials, StreamSeed seed) {
    require(length >= 1, "mi_monte_carlo: L must be positive");
    require(sigma_sq > 0.0, "mi_monte_carlo: sigma^2 must be positive");
    require(trials >= 2, "mi_monte_carlo: at least two trials are needed");
    const auto terms = kernels::mi_inner_terms(length, sigma_sq, trials, seed);
    const double T = static_cast<double>(trials);
    double mean = 0.0;
    for (double t : terms) {
        if (!std::isfinite(t)) {
            throw RuntimeFailure("mi_monte_carlo: non-finite draw");
        }
        mean += t;
    }
    mean /= T;
    double ss = 0.0;
    for (double t : terms) {
        ss += (t - mean) * (t - mean);
    }
    const double sd = std::sqrt(ss / (T - 1.0));
    const double L = static_cast<double>(length);
    return MonteCarloEstimate{0.5 * L * std::log1p(1.0 / sigma_sq) - L / sigma_sq + mean, sd / std::sqrt(T)};
}

double sample_complexity_lower_bound(std::size_t length, double eps, double mi_single) {
    require(length >= 1, "sample_complexity_lower_bound: L must be positive");
    require(eps > 0.0 && eps < 1.0, "sample_complexity_lower_bound: eps must lie in (0, 1)");
    require(mi_single > 0.0, "sample_complexity_lower_bound: mutual information must be positive");
    const double L = static_cast<double>(length);
    return 0.5 * L * (std::log(1.0 / eps) - 2.0 * std::log(L) / L) / mi_single;
}

double mse_lower_bound_from_mi(std::size_t length, double mi_total) {
    require(length >= 1, "mse_lower_bound_from_mi: L must be positive");
    require(mi_total >= 0.0, "mse_lower_bound_from_mi: mutual information must be nonnegative");
    const double L = static_cast<double>(length);
    return std::exp(-(2.0 * mi_total + 2.0 * std::log(L)) / L);
}

BoundReport theorem2_scaling_bound(std::size_t length, double alpha, double eps) {
    require(length >= 2, "theorem2_scaling_bound: L must be at least 2");
    require(eps > 0.0 && eps < 1.0, "theorem2_scaling_bound: eps must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        return invalid("theorem2_chained", "requires 0 < alpha < 1");
    }
    const auto mi = mi_upper_bound_low_snr(length, sigma_sq_from_alpha(length, alpha));
    if (!mi.report.valid || !(mi.report.value > 0.0)) {
        return invalid("theorem2_chained", "single-sample bound unavailable (sigma^2 <= 2)");
    }
    return BoundReport{"theorem2_chained", sample_complexity_lower_bound(length, eps, mi.report.value), true, ""};
}

std::vector<BoundReport> pmra_bounds(std::size_t length, std::size_t projected_length, double alpha, double eps,
                                     double n) {
    require(length >= 2, "pmra_bounds: L must be at least 2");
    require(projected_length >= 1 && projected_length <= length, "pmra_bounds: need 1 <= L' <= L");
    require(alpha > 0.0, "pmra_bounds: alpha must be positive");
    require(n >= 0.0, "pmra_bounds: n must be nonnegative");
    const double L = static_cast<double>(length);
    const double Lp = static_cast<double>(projected_length);
    const double s2 = Lp / (alpha * std::log(L));

    std::vector<BoundReport> out;
    if (!(eps > 0.0 && eps < 1.0)) {
        out.push_back(invalid("pmra_high_snr", "eps must lie in (0, 1)"));
    } else {
        BoundReport a{"pmra_high_snr", (L / Lp) * (1.0 / eps - 1.0) * s2, alpha > 2.0, ""};
        if (!a.valid) {
            a.note = "high-SNR regime requires alpha > 2";
        }
        out.push_back(std::move(a));
    }
    const double cap = 0.5 * L * std::log1p((Lp / L) * n / s2);
    out.push_back(BoundReport{"pmra_mi_cap", cap, true, ""});
    out.push_back(BoundReport{"pmra_mse_floor", mse_lower_bound_from_mi(length, cap), true, ""});
    return out;
}

CapacityEndpoints capacity_endpoints(std::size_t length, double sigma_sq) {
    require(length >= 1, "capacity_endpoints: L must be positive");
    require(sigma_sq > 0.0, "capacity_endpoints: sigma^2 must be positive");
    const double L = static_cast<double>(length);
    return CapacityEndpoints{0.5 * L * std::log1p(1.0 / sigma_sq), 0.5 * std::log1p(L / sigma_sq)};
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    require(xs.size() == ys.size() && xs.size() >= 2, "loglog_slope: need at least two matched points");
    const std::size_t m = xs.size();
    std::vector<double> lx(m), ly(m);
    for (std::size_t i = 0; i < m; ++i) {
        require(xs[i] > 0.0 && ys[i] > 0.0, "loglog_slope: values must be positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(m);
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(m);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

} // namespace mra
