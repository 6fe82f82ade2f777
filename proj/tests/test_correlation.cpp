#include <doctest.h>

#include <cmath>

#include "mra/correlation.hpp"
#include "mra/model.hpp"

using namespace mra;

TEST_CASE("correlation definition on a hand example") {
    // out[ell] = sum_j y_j x_{j + ell}
    const Signal x{1, 2, 3};
    const Signal y{1, 0, 0};
    const auto c = circular_correlations(x, y);
    CHECK(c == std::vector<double>{1, 2, 3});
}

TEST_CASE("correlation matches the direct sum") {
    Engine e = StreamSeed(21).engine();
    const std::size_t lengths[] = {1, 2, 3, 7, 15, 16, 17, 31, 64, 100, 127, 256, 1000};
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t L = lengths[static_cast<std::size_t>(trial) % std::size(lengths)];
        const Signal x = sample_signal(L, e);
        const Signal y = sample_signal(L, e);
        const auto fast = circular_correlations(x, y);
        const auto slow = circular_correlations_direct(x.view(), y.view());
        REQUIRE(fast.size() == L);
        for (std::size_t k = 0; k < L; ++k) {
            CHECK(std::abs(fast[k] - slow[k]) < 1e-9);
        }
    }
}

TEST_CASE("correlation equals <x, R_ell^{-1} y>") {
    Engine e = StreamSeed(22).engine();
    const Signal x = sample_signal(40, e);
    const Signal y = sample_signal(40, e);
    const auto c = circular_correlations(x, y);
    for (std::size_t ell = 0; ell < 40; ++ell) {
        const Signal r = apply_inverse_shift(y.view(), ell);
        CHECK(c[ell] == doctest::Approx(dot(x.view(), r.view())));
    }
}

TEST_CASE("prepared templates and spectra agree with the plain call") {
    Engine e = StreamSeed(23).engine();
    for (std::size_t L : {8, 33, 128}) {
        const Signal x = sample_signal(L, e);
        const Signal y = sample_signal(L, e);
        Correlator corr(L);
        const auto prepared = corr.prepare(x.view());
        std::vector<double> a(L), b(L);
        corr.correlate(prepared, y.view(), a);
        corr.correlate(x.view(), y.view(), b);
        const auto ref = circular_correlations_direct(x.view(), y.view());
        for (std::size_t k = 0; k < L; ++k) {
            CHECK(a[k] == doctest::Approx(ref[k]));
            CHECK(b[k] == doctest::Approx(ref[k]));
        }
    }
}

TEST_CASE("argmax ties go to the smallest index") {
    CHECK(argmax_first(std::vector<double>{1, 3, 3, 2}) == 1);
    CHECK(argmax_first(std::vector<double>{5}) == 0);
    const std::vector<double> nearly{1.0, 2.0 - 1e-15, 2.0};
    CHECK(argmax_first(nearly) == 2);
    CHECK(argmax_first(nearly, kTieTolerance) == 1);
}

TEST_CASE("constant templates resolve to shift 0 despite transform rounding") {
    const Signal ones(std::vector<double>(64, 1.0));
    const auto c = circular_correlations(ones, ones);
    CHECK(argmax_first(c, kTieTolerance) == 0);
}
