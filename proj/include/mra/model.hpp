#pragma once

// Measurement model: signals observed under random cyclic shifts plus white
// Gaussian noise, optionally restricted to a fixed coordinate subset.
//
// All logarithms are natural. The noise level is parametrized by
//     sigma^2 = L / (alpha * ln L)          (plain model)
//     sigma^2 = L' / (alpha * ln L)         (projected model)
// so alpha depends on the log base; nats are used throughout.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mra/rng.hpp"
#include "mra/signal.hpp"

namespace mra {

double sigma_sq_from_alpha(std::size_t length, double alpha);
double alpha_from_sigma_sq(std::size_t length, double sigma_sq);

struct NoiseModel {
    std::size_t length = 0;
    double alpha = 0.0;
    double sigma_sq = 0.0;
    std::optional<std::size_t> projected_length;

    static NoiseModel plain(std::size_t length, double alpha);
    static NoiseModel projected(std::size_t length, std::size_t projected_length, double alpha);
    /// Fixes sigma^2 directly. sigma^2 = 0 is accepted for noiseless
    /// diagnostics; alpha is then +inf.
    static NoiseModel from_sigma_sq(std::size_t length, double sigma_sq);

    [[nodiscard]] bool is_projected() const noexcept { return projected_length.has_value(); }
    [[nodiscard]] std::size_t observation_length() const noexcept {
        return projected_length.value_or(length);
    }
};

/// Sorted set of kept coordinates S, |S| = L' <= L.
class ProjectionMask {
public:
    ProjectionMask(std::size_t length, std::vector<std::size_t> kept);

    static ProjectionMask full(std::size_t length);
    static ProjectionMask leading(std::size_t length, std::size_t kept);
    static ProjectionMask random(std::size_t length, std::size_t kept, Engine& engine);

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] std::size_t kept_size() const noexcept { return kept_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& kept() const noexcept { return kept_; }

    [[nodiscard]] Signal project(std::span<const double> x) const;

private:
    std::size_t length_;
    std::vector<std::size_t> kept_;
};

struct MeasurementSet {
    std::vector<Signal> observations;
    /// Ground truth for diagnostics. Estimators other than the genie must not read it.
    std::vector<ShiftIndex> true_shifts;
    NoiseModel noise;
    StreamSeed seed;
    /// Identifies the sample lineage; disjoint subsets get distinct tags.
    std::uint64_t lineage = 0;
    std::optional<ProjectionMask> mask;

    [[nodiscard]] std::size_t size() const noexcept { return observations.size(); }
    [[nodiscard]] std::size_t signal_length() const noexcept { return noise.length; }

    /// Contiguous sub-range [first, first + count) with its own lineage tag.
    [[nodiscard]] MeasurementSet slice(std::size_t first, std::size_t count) const;
};

/// i.i.d. N(0, 1) entries.
Signal sample_signal(std::size_t length, Engine& engine);

/// Y_i = R_{ell_i} x + sigma Z_i with ell_i uniform. Measurement i draws from
/// seed.child(i) only, so generation order does not matter.
MeasurementSet generate_mra(const Signal& x, long long n, const NoiseModel& noise, StreamSeed seed);

/// Y_i = pi_S R_{ell_i} x + sigma Z_i.
MeasurementSet generate_pmra(const Signal& x, const ProjectionMask& mask, long long n, const NoiseModel& noise,
                             StreamSeed seed);

/// Eigenvalues {2 cos(2 pi k ell / L)}_k of R_ell + R_ell^T.
std::vector<double> shift_sym_eigenvalues(std::size_t length, std::size_t ell);

struct NiceSignalReport {
    bool autocorr_ok = false;
    double max_offdiag = 0.0;   // max_{ell != 0} |<x, R_ell x>| / L
    double norm_dev = 0.0;      // | ||x||^2 / L - 1 |
    double dft_supnorm = 0.0;   // ||F^* x||_inf, unitary DFT
    bool dft_ok = false;        // dft_supnorm <= sqrt(10 ln L)
};

/// kappa = 10 ln L / sqrt(L).
double default_kappa(std::size_t length);

NiceSignalReport nice_signal_check(const Signal& x, double kappa);

} // namespace mra
