#include <doctest.h>

#include <cmath>

#include "mra/bounds.hpp"
#include "mra/error.hpp"
#include "mra/metrics.hpp"
#include "mra/model.hpp"

using namespace mra;

TEST_CASE("rate distortion bound") {
    const auto r = rdf_lower_bound(100, 0.1);
    CHECK(r.valid);
    CHECK(r.value == doctest::Approx(110.52408446371419).epsilon(1e-13));
    const auto edge = rdf_lower_bound(100, 1.0);
    CHECK_FALSE(edge.valid);
    CHECK(edge.value == doctest::Approx(-std::log(100.0)));
    for (std::size_t L : {8, 64, 500}) {
        CHECK(rdf_lower_bound(L, 0.3).value == doctest::Approx(0.5 * L * std::log(1 / 0.3) - std::log(double(L))));
    }
    CHECK_THROWS_AS(rdf_lower_bound(1, 0.5), InvalidParameter);
}

TEST_CASE("AWGN-style MSE bound") {
    CHECK(mse_lower_bound_awgn_style(1024, 10.0, 0.0) == doctest::Approx(std::pow(1024.0, -2.0 / 1024.0)));
    const double s2 = sigma_sq_from_alpha(1024, 2.0);
    CHECK(mse_lower_bound_awgn_style(1024, s2, 7387) == doctest::Approx(0.009767327921652054).epsilon(1e-12));
    for (double n : {0.0, 10.0, 1000.0}) {
        CHECK(mse_lower_bound_awgn_style(256, 5.0, n) <= awgn_mse(5.0, n));
    }
}

TEST_CASE("AWGN mutual information") {
    CHECK(mi_awgn(2, 1.0, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(mi_awgn(64, 3.0, 0.0) == 0.0);
    double prev = -1.0;
    for (double n = 0; n < 50; n += 5) {
        const double v = mi_awgn(64, 3.0, n);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("low-SNR bound at L = 2 matches the hand formula") {
    // psi_0 = -ln(1 - 2/s2), psi_1 = -(1/2)[ln(1 - 2/s2) + ln(1 + 2/s2)]
    const double s2 = 10.0;
    const double psi0 = -std::log(1.0 - 2.0 / s2);
    const double psi1 = -0.5 * (std::log(1.0 - 2.0 / s2) + std::log(1.0 + 2.0 / s2));
    const double hand = std::log(1.0 + 1.0 / s2) - 1.0 / s2 + std::log(std::exp(psi0) + std::exp(psi1)) - std::log(2.0);
    const auto b = mi_upper_bound_low_snr(2, s2);
    CHECK(b.report.valid);
    CHECK(b.report.value == doctest::Approx(hand).epsilon(1e-14));
    CHECK(b.report.value == doctest::Approx(0.12221624100512330).epsilon(1e-13));
}

TEST_CASE("low-SNR bound values and validity") {
    const auto b = mi_upper_bound_low_snr(64, sigma_sq_from_alpha(64, 0.5));
    CHECK(b.report.value == doctest::Approx(0.1257975850614464).epsilon(1e-12));
    CHECK(b.report.value < 0.2);
    CHECK_FALSE(mi_upper_bound_low_snr(64, 2.0).report.valid);
    CHECK_FALSE(mi_upper_bound_low_snr(64, 1.0).report.valid);
    const auto far = mi_upper_bound_low_snr(64, 100.0);
    CHECK(far.asymptotic == doctest::Approx(std::log1p(std::exp(0.64) / 64.0)));
    CHECK(far.report.value <= mi_awgn(64, 100.0, 1.0) + far.asymptotic);
}

TEST_CASE("Monte Carlo MI in the trivial group") {
    const auto est = mi_monte_carlo(1, 4.0, 100000, StreamSeed(81));
    CHECK(std::abs(est.estimate - 0.5 * std::log1p(0.25)) < 3.0 * est.std_error);
}

TEST_CASE("Monte Carlo MI at negligible SNR") {
    const auto est = mi_monte_carlo(32, 1e6, 2000, StreamSeed(82));
    CHECK(est.estimate >= -3.0 * est.std_error);
    CHECK(est.estimate <= 0.05);
}

TEST_CASE("Monte Carlo MI respects non-negativity and the AWGN cap") {
    for (auto [L, s2] : {std::pair<std::size_t, double>{16, 4.0}, {32, 10.0}, {64, 30.0}}) {
        const auto est = mi_monte_carlo(L, s2, 2000, StreamSeed(83));
        CHECK(est.estimate >= -3.0 * est.std_error);
        CHECK(est.estimate <= mi_awgn(L, s2, 1.0) + 3.0 * est.std_error);
    }
    CHECK_THROWS_AS(mi_monte_carlo(8, 1.0, 1, StreamSeed(1)), InvalidParameter);
}

TEST_CASE("Monte Carlo MI is seeded") {
    const auto a = mi_monte_carlo(16, 8.0, 100, StreamSeed(4));
    const auto b = mi_monte_carlo(16, 8.0, 100, StreamSeed(4));
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("sample complexity bound") {
    CHECK(sample_complexity_lower_bound(64, 0.1, 0.15) == doctest::Approx(463.49226594966527).epsilon(1e-13));
    const double eps0 = std::exp(-2.0 * std::log(64.0) / 64.0);
    CHECK(std::abs(sample_complexity_lower_bound(64, eps0, 0.1)) < 1e-12);
    CHECK(sample_complexity_lower_bound(64, 0.1, 0.075) ==
          doctest::Approx(2.0 * sample_complexity_lower_bound(64, 0.1, 0.15)));
    CHECK_THROWS_AS(sample_complexity_lower_bound(64, 0.1, 0.0), InvalidParameter);
}

TEST_CASE("MSE bound from mutual information") {
    CHECK(mse_lower_bound_from_mi(100, 0.0) == doctest::Approx(std::pow(100.0, -0.02)));
    CHECK(mse_lower_bound_from_mi(100, 5.0) < mse_lower_bound_from_mi(100, 1.0));
    for (std::size_t L : {2, 16, 1024}) {
        for (double s2 : {0.5, 10.0, 73.8617}) {
            for (double n : {0.0, 1.0, 7387.0}) {
                CHECK(std::abs(mse_lower_bound_from_mi(L, mi_awgn(L, s2, n)) - mse_lower_bound_awgn_style(L, s2, n)) <
                      1e-9);
            }
        }
    }
}

TEST_CASE("chained bound grows like L^{2 - alpha}") {
    const std::vector<double> Ls{64, 128, 256, 512};
    for (double alpha : {0.25, 0.5}) {
        std::vector<double> values;
        for (double L : Ls) {
            const auto b = theorem2_scaling_bound(static_cast<std::size_t>(L), alpha, 0.5);
            REQUIRE(b.valid);
            values.push_back(b.value);
        }
        CHECK(std::abs(loglog_slope(Ls, values) - (2.0 - alpha)) < 0.25);
    }
    CHECK(theorem2_scaling_bound(256, 0.5, 0.5).value == doctest::Approx(1270.2829936875521).epsilon(1e-10));
    CHECK(theorem2_scaling_bound(256, 0.5, 0.5).value > theorem2_scaling_bound(256, 0.9, 0.5).value);
    const double ratio = theorem2_scaling_bound(256, 0.5, 0.9).value / theorem2_scaling_bound(256, 0.5, 0.1).value;
    const double c = 2.0 * std::log(256.0) / 256.0;
    CHECK(ratio == doctest::Approx((std::log(1 / 0.9) - c) / (std::log(1 / 0.1) - c)));
    CHECK_FALSE(theorem2_scaling_bound(256, 1.0, 0.5).valid);
    CHECK_FALSE(theorem2_scaling_bound(256, 1.5, 0.5).valid);
}

TEST_CASE("projected bounds") {
    const auto b = pmra_bounds(256, 64, 4.0, 0.1, 0.0);
    REQUIRE(b.size() == 3);
    CHECK(b[0].name == "pmra_high_snr");
    CHECK(b[0].valid);
    CHECK(b[0].value == doctest::Approx(103.87404294400537).epsilon(1e-13));
    CHECK(b[1].value == 0.0);
    CHECK(b[2].value == doctest::Approx(mse_lower_bound_from_mi(256, 0.0)));
    const auto full = pmra_bounds(128, 128, 3.0, 0.2, 10.0);
    CHECK(full[0].value == doctest::Approx((1 / 0.2 - 1) * sigma_sq_from_alpha(128, 3.0)));
    CHECK(full[1].value == doctest::Approx(mi_awgn(128, sigma_sq_from_alpha(128, 3.0), 10.0)));
    CHECK_FALSE(pmra_bounds(128, 64, 1.0, 0.2, 10.0)[0].valid);
    CHECK_THROWS_AS(pmra_bounds(64, 65, 1.0, 0.1, 1.0), InvalidParameter);
}

TEST_CASE("capacity endpoints") {
    const auto c = capacity_endpoints(100, 200.0);
    CHECK(c.c_awgn == doctest::Approx(0.24937707555195368).epsilon(1e-13));
    CHECK(c.c_const_input == doctest::Approx(0.20273255405408219).epsilon(1e-13));
    const auto one = capacity_endpoints(1, 3.0);
    CHECK(one.c_awgn == doctest::Approx(one.c_const_input));
    for (std::size_t L : {1, 2, 10, 1000}) {
        for (double s2 : {0.01, 1.0, 100.0}) {
            const auto e = capacity_endpoints(L, s2);
            CHECK(e.c_const_input <= e.c_awgn + 1e-12);
        }
    }
}

TEST_CASE("log-log slope of an exact power law") {
    CHECK(loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}) == doctest::Approx(2.0));
}
