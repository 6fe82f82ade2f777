#pragma once

// Monte Carlo sweeps over (L, alpha, trial). Each cell draws a fresh signal
// and measurement set from its own seed, runs one estimator and records
// rmse = sqrt(rho). Output columns, in order:
//
//   L, alpha, sigma_sq, n, trial, rmse, misaligned_fraction, error_tag, wall_time_ms
//
// Rows are appended and flushed as cells finish, so an interrupted run can
// be resumed: cells already present in the output are skipped. When every
// cell is done the file is rewritten sorted by (L, alpha, trial).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mra/harness/config.hpp"

namespace mra::harness {

struct SweepRow {
    std::size_t length = 0;
    double alpha = 0.0;
    double sigma_sq = 0.0;
    long long n = 0;
    long long trial = 0;
    double rmse = 0.0;  // NaN when the estimator failed
    std::optional<double> misaligned_fraction;
    std::string error_tag;
    double wall_time_ms = 0.0;
};

const std::vector<std::string>& sweep_columns();
std::vector<std::string> format_row(const SweepRow& row);
SweepRow parse_row(const std::vector<std::string>& fields);

/// hash(master, L, alpha index, trial): appending grid values leaves the
/// existing cells' seeds unchanged.
std::uint64_t cell_seed(std::uint64_t master, std::size_t length, std::size_t alpha_index, long long trial);

/// One (L, alpha, trial) cell. Estimator failures become a NaN row with the
/// exception text as error tag.
SweepRow run_cell(const ExperimentConfig& config, std::size_t length, std::size_t alpha_index, long long trial);

struct SweepOptions {
    bool write_output = true;
    /// Stop after computing this many new cells, leaving the output
    /// unfinalized (used to exercise resumption).
    std::optional<std::size_t> stop_after;
};

struct SweepOutcome {
    std::vector<SweepRow> rows;  // sorted by (L, alpha, trial)
    std::size_t computed = 0;
    std::size_t resumed = 0;
    bool complete = false;
};

SweepOutcome run_sweep(const ExperimentConfig& config, const SweepOptions& options = {});

struct CellSummary {
    std::size_t length = 0;
    double alpha = 0.0;
    std::size_t rows = 0;
    std::size_t nan_rows = 0;  // excluded from the mean
    double mean_rmse = 0.0;    // NaN if every row failed
    double mean_misaligned = 0.0;
};

std::vector<CellSummary> summarize(const std::vector<SweepRow>& rows);

} // namespace mra::harness
