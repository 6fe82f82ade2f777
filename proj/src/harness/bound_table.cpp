#include "mra/harness/bound_table.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>

#include "mra/bounds.hpp"
#include "mra/model.hpp"

namespace mra::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

const std::vector<std::string>& bound_names() {
    static const std::vector<std::string> names{
        "rdf",           "mse_awgn_style", "mi_awgn",          "mi_low_snr",       "mi_low_snr_asymptotic",
        "sample_complexity_low_snr", "mse_from_mi_awgn", "theorem2_chained", "capacity_awgn",
        "capacity_const_input", "pmra_high_snr", "pmra_mi_cap", "pmra_mse_floor"};
    return names;
}

BoundGrid BoundGrid::from(const ConfigFile& file) {
    BoundGrid g;
    const auto lengths = file.get("lengths");
    const auto alphas = file.get("alphas");
    if (!lengths || !alphas) {
        throw ConfigError("bounds config needs 'lengths' and 'alphas'");
    }
    g.lengths = parse_size_list(*lengths, "lengths");
    g.alphas = parse_double_list(*alphas, "alphas");
    if (g.lengths.empty() || g.alphas.empty()) {
        throw ConfigError("bounds config: grids must be nonempty");
    }
    if (auto v = file.get("eps")) {
        g.eps = parse_double(*v, "eps");
    }
    if (auto v = file.get("n")) {
        g.n = parse_double(*v, "n");
    }
    if (auto v = file.get("L_prime")) {
        g.projected_length = static_cast<std::size_t>(parse_int(*v, "L_prime"));
    }
    if (auto v = file.get("names")) {
        for (const auto& name : split_list(*v)) {
            if (std::find(bound_names().begin(), bound_names().end(), name) == bound_names().end()) {
                throw ConfigError("names: unknown bound '" + name + "'");
            }
            g.names.insert(name);
        }
    }
    return g;
}

std::vector<BoundRow> run_bound_table(const BoundGrid& grid) {
    std::vector<BoundRow> rows;
    for (auto L : grid.lengths) {
        for (double alpha : grid.alphas) {
            double s2 = kNaN;
            try {
                s2 = sigma_sq_from_alpha(L, alpha);
            } catch (const std::exception&) {
            }
            double n = kNaN;
            if (grid.n) {
                n = *grid.n;
            } else if (L >= 2) {
                n = static_cast<double>(default_sample_count(L));
            }
            auto emit = [&](const std::string& name, const std::function<BoundReport()>& eval) {
                if (!grid.names.empty() && grid.names.count(name) == 0) {
                    return;
                }
                BoundRow row{name, L, std::nullopt, alpha, s2, n, grid.eps, kNaN, false};
                if (name.rfind("pmra", 0) == 0) {
                    row.projected_length = grid.projected_length;
                    if (grid.projected_length) {
                        row.sigma_sq = static_cast<double>(*grid.projected_length) / (alpha * std::log(static_cast<double>(L)));
                    }
                }
                try {
                    const BoundReport r = eval();
                    row.value = r.value;
                    row.valid = r.valid && std::isfinite(r.value);
                } catch (const std::exception&) {
                    row.valid = false;
                }
                rows.push_back(row);
            };
            auto plain = [](std::string name, auto f) {
                return [name, f]() { return BoundReport{name, f(), true, ""}; };
            };

            emit("rdf", [&] { return rdf_lower_bound(L, grid.eps); });
            emit("mse_awgn_style", plain("mse_awgn_style", [&] { return mse_lower_bound_awgn_style(L, s2, n); }));
            emit("mi_awgn", plain("mi_awgn", [&] { return mi_awgn(L, s2, n); }));
            emit("mi_low_snr", [&] { return mi_upper_bound_low_snr(L, s2).report; });
            emit("mi_low_snr_asymptotic", [&] {
                const auto b = mi_upper_bound_low_snr(L, s2);
                return BoundReport{"mi_low_snr_asymptotic", b.asymptotic, b.report.valid, b.report.note};
            });
            emit("sample_complexity_low_snr", [&] {
                const auto b = mi_upper_bound_low_snr(L, s2);
                if (!b.report.valid) {
                    return BoundReport{"sample_complexity_low_snr", kNaN, false, b.report.note};
                }
                return BoundReport{"sample_complexity_low_snr", sample_complexity_lower_bound(L, grid.eps, b.report.value),
                                   true, ""};
            });
            emit("mse_from_mi_awgn",
                 plain("mse_from_mi_awgn", [&] { return mse_lower_bound_from_mi(L, mi_awgn(L, s2, n)); }));
            emit("theorem2_chained", [&] { return theorem2_scaling_bound(L, alpha, grid.eps); });
            emit("capacity_awgn", plain("capacity_awgn", [&] { return capacity_endpoints(L, s2).c_awgn; }));
            emit("capacity_const_input",
                 plain("capacity_const_input", [&] { return capacity_endpoints(L, s2).c_const_input; }));
            if (grid.projected_length) {
                const auto Lp = *grid.projected_length;
                for (std::size_t k = 0; k < 3; ++k) {
                    const std::string name = bound_names()[10 + k];
                    emit(name, [&] { return pmra_bounds(L, Lp, alpha, grid.eps, n).at(k); });
                }
            }
        }
    }
    return rows;
}

CsvTable bound_table_csv(const std::vector<BoundRow>& rows) {
    CsvTable table{{"name", "L", "L_prime", "alpha", "sigma_sq", "n", "eps", "value", "valid"}, {}};
    for (const auto& r : rows) {
        table.rows.push_back({r.name, std::to_string(r.length),
                              r.projected_length ? std::to_string(*r.projected_length) : "", format_real(r.alpha),
                              format_real(r.sigma_sq), format_real(r.n), format_real(r.eps), format_real(r.value),
                              r.valid ? "true" : "false"});
    }
    return table;
}

} // namespace mra::harness
