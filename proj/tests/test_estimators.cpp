#include <doctest.h>

#include <cmath>

#include "mra/error.hpp"
#include "mra/estimators.hpp"
#include "mra/metrics.hpp"

using namespace mra;

TEST_CASE("template matching recovers the shift without noise") {
    Engine e = StreamSeed(41).engine();
    const Signal x = sample_signal(37, e);
    for (long long ell = 0; ell < 37; ++ell) {
        const Signal y = apply_shift(x, ShiftIndex(ell, 37));
        CHECK(template_match(x, y).value() == static_cast<std::size_t>(ell));
    }
}

TEST_CASE("template matching at very high SNR never errs") {
    Engine e = StreamSeed(42).engine();
    const std::size_t L = 128;
    const Signal x = sample_signal(L, e);
    const auto ms = generate_mra(x, 100, NoiseModel::from_sigma_sq(L, 0.01), StreamSeed(43));
    int correct = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        correct += template_match(x, ms.observations[i]) == ms.true_shifts[i] ? 1 : 0;
    }
    CHECK(correct == 100);
}

TEST_CASE("template matching error rate on both sides of alpha = 2") {
    CHECK(template_match_error_rate(512, 100.0, 200, StreamSeed(44)) < 0.02);
    CHECK(template_match_error_rate(512, 0.25, 200, StreamSeed(45)) > 0.9);
}

TEST_CASE("template matching at negligible SNR is a uniform guess") {
    // sigma^2 = 10^4 L: the argmax is uniform, so p_e = 1 - 1/L
    const std::size_t L = 16;
    const double alpha = alpha_from_sigma_sq(L, 1e4 * L);
    const int trials = 4000;
    const double rate = template_match_error_rate(L, alpha, trials, StreamSeed(46));
    const double p = 1.0 - 1.0 / L;
    CHECK(std::abs(rate - p) < 3.0 * std::sqrt(p * (1 - p) / trials));
    // sigma^2 = 10 sqrt(L) is still alpha < 2 at L = 256, far into the error regime
    const std::size_t L2 = 256;
    CHECK(template_match_error_rate(L2, alpha_from_sigma_sq(L2, 10.0 * std::sqrt(256.0)), 400, StreamSeed(47)) > 0.85);
}

TEST_CASE("template matching error rate is deterministic") {
    CHECK(template_match_error_rate(64, 1.0, 50, StreamSeed(7)) == template_match_error_rate(64, 1.0, 50, StreamSeed(7)));
}

TEST_CASE("synchronization returns the relative shift") {
    Engine e = StreamSeed(47).engine();
    const Signal x = sample_signal(64, e);
    const Signal y1 = apply_shift(x, ShiftIndex(10, 64));
    const Signal y2 = apply_shift(x, ShiftIndex(25, 64));
    // y2 = R_15 y1, so <y1, R_ell^{-1} y2> peaks at ell = 15
    CHECK(synchronize_pair(y1, y2).value() == 15);
    CHECK(synchronize_pair(y2, y1).value() == 64 - 15);
}

TEST_CASE("genie alignment without noise is exact") {
    Engine e = StreamSeed(48).engine();
    const Signal x = sample_signal(32, e);
    const auto ms = generate_mra(x, 20, NoiseModel::from_sigma_sq(32, 0.0), StreamSeed(49));
    const auto est = genie_align_average(x, ms);
    CHECK(rho(x, est.xhat).rho < 1e-12);
    CHECK(est.meta.at("misaligned_fraction") == 0.0);
    REQUIRE(est.shift_estimates.has_value());
    CHECK(*est.shift_estimates == ms.true_shifts);
}

TEST_CASE("genie alignment matches the AWGN rate at high SNR") {
    Engine e = StreamSeed(50).engine();
    const std::size_t L = 256;
    const Signal x = sample_signal(L, e);
    const double alpha = 10.0;
    const auto ms = generate_mra(x, 1000, NoiseModel::plain(L, alpha), StreamSeed(51));
    const auto est = genie_align_average(x, ms);
    const double expected = ms.noise.sigma_sq / 1000.0;
    CHECK(rho(x, est.xhat).rho == doctest::Approx(expected).epsilon(0.25));
}

TEST_CASE("genie alignment breaks down below alpha = 2") {
    Engine e = StreamSeed(52).engine();
    const std::size_t L = 1024;
    const Signal x = sample_signal(L, e);
    const long long n = std::llround(100.0 * L / std::log(static_cast<double>(L)));
    const auto ms = generate_mra(x, n, NoiseModel::plain(L, 1.0), StreamSeed(53));
    const double reference = std::sqrt(awgn_mse(ms.noise.sigma_sq, static_cast<double>(n)));
    CHECK(std::sqrt(rho(x, genie_align_average(x, ms).xhat).rho) > 3.0 * reference);
}

TEST_CASE("genie rejects projected data") {
    Engine e = StreamSeed(54).engine();
    const Signal x = sample_signal(16, e);
    const auto ms = generate_pmra(x, ProjectionMask::leading(16, 8), 4, NoiseModel::projected(16, 8, 2.0), StreamSeed(1));
    CHECK_THROWS_AS(genie_align_average(x, ms), InvalidParameter);
}

TEST_CASE("likely shifts") {
    Engine e = StreamSeed(55).engine();
    const Signal x = sample_signal(64, e);
    const Signal y = apply_shift(x, ShiftIndex(9, 64));
    const auto s = likely_shifts(x, y, 0.2);
    REQUIRE(!s.empty());
    CHECK(std::find(s.begin(), s.end(), ShiftIndex(9, 64)) != s.end());
    CHECK(likely_shifts(x, y, 2.5).size() == 64);
    CHECK_THROWS_AS(likely_shifts(Signal(64), y, 0.2), InvalidParameter);
}

TEST_CASE("likely shifts are few and contain the truth at alpha = 1") {
    // The true shift scores 1 + sigma <x, z> / ||x||^2 ~ N(1, 1 / (alpha ln L)), so
    // it is kept with probability Phi(tau sqrt(alpha ln L)), about 0.71 here.
    const std::size_t L = 2048;
    const double alpha = 1.0;
    const double tau = 0.2;
    const auto noise = NoiseModel::plain(L, alpha);
    int contained = 0;
    double mean_size = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        Engine e = StreamSeed(600 + t).engine();
        const Signal x = sample_signal(L, e);
        const auto ms = generate_mra(x, 1, noise, StreamSeed(700 + t));
        const auto s = likely_shifts(x, ms.observations[0], tau);
        mean_size += static_cast<double>(s.size());
        contained += std::find(s.begin(), s.end(), ms.true_shifts[0]) != s.end() ? 1 : 0;
    }
    mean_size /= trials;
    CHECK(mean_size < 0.05 * L);
    const double p = 0.5 * std::erfc(-tau * std::sqrt(alpha * std::log(static_cast<double>(L))) / std::sqrt(2.0));
    CHECK(p == doctest::Approx(0.7096).epsilon(1e-3));
    const double se = std::sqrt(p * (1 - p) / trials);
    CHECK(std::abs(contained / double(trials) - p) < 3 * se);
}

TEST_CASE("misaligned fraction ignores a global offset") {
    const std::size_t L = 10;
    std::vector<ShiftIndex> truth, est;
    for (long long i = 0; i < 10; ++i) {
        truth.emplace_back(i, L);
        est.emplace_back(i + 3, L);
    }
    CHECK(misaligned_fraction_up_to_offset(est, truth) == 0.0);
    est[0] = ShiftIndex(0, L);
    CHECK(misaligned_fraction_up_to_offset(est, truth) == doctest::Approx(0.1));
}
