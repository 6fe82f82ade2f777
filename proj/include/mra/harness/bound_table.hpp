#pragma once

// Tabulates the closed-form bounds over a (L, alpha) grid. Columns:
//   name, L, L_prime, alpha, sigma_sq, n, eps, value, valid
// Domain violations produce valid=false rows rather than errors.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mra/harness/config.hpp"
#include "mra/harness/csv.hpp"

namespace mra::harness {

struct BoundGrid {
    std::vector<std::size_t> lengths;
    std::vector<double> alphas;
    double eps = 0.1;
    /// Sample count; empty means round(100 L / ln L).
    std::optional<double> n;
    /// Projected length; PMRA rows are emitted only when present.
    std::optional<std::size_t> projected_length;
    /// Restricts the output to these bound names; empty emits all.
    std::set<std::string> names;

    static BoundGrid from(const ConfigFile& file);
};

struct BoundRow {
    std::string name;
    std::size_t length = 0;
    std::optional<std::size_t> projected_length;
    double alpha = 0.0;
    double sigma_sq = 0.0;
    double n = 0.0;
    double eps = 0.0;
    double value = 0.0;
    bool valid = true;
};

/// All bound names, in emission order.
const std::vector<std::string>& bound_names();

std::vector<BoundRow> run_bound_table(const BoundGrid& grid);
CsvTable bound_table_csv(const std::vector<BoundRow>& rows);

} // namespace mra::harness
