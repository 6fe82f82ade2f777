#include "mra/harness/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "mra/em.hpp"
#include "mra/estimators.hpp"
#include "mra/harness/csv.hpp"
#include "mra/metrics.hpp"
#include "mra/two_stage.hpp"

namespace mra::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string sanitize(std::string tag) {
    for (char& c : tag) {
        if (c == ',' || c == '\n' || c == '\r') {
            c = ';';
        }
    }
    return tag;
}

double param_double(const EstimatorSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : parse_double(it->second, spec.name + "." + key);
}

long long param_int(const EstimatorSpec& spec, const std::string& key, long long fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : parse_int(it->second, spec.name + "." + key);
}

EmConfig em_config_from(const EstimatorSpec& spec) {
    EmConfig cfg;
    cfg.max_iters = static_cast<int>(param_int(spec, "max_iters", cfg.max_iters));
    cfg.rel_tol = param_double(spec, "rel_tol", cfg.rel_tol);
    cfg.restarts = static_cast<int>(param_int(spec, "restarts", cfg.restarts));
    if (auto it = spec.params.find("shrinkage"); it != spec.params.end()) {
        cfg.shrinkage = parse_bool(it->second, "em.shrinkage");
    }
    return cfg;
}

EstimateResult run_estimator(const EstimatorSpec& spec, const Signal& x, const MeasurementSet& ms, double alpha,
                             StreamSeed seed) {
    if (spec.name == "genie") {
        return genie_align_average(x, ms);
    }
    if (spec.name == "em") {
        return em_estimate(ms, em_config_from(spec), seed);
    }
    // two_stage
    const double eta = param_double(spec, "eta", alpha > 2.0 ? default_eta(alpha) : kNaN);
    require(eta > 0.0 && eta < 1.0, "two_stage: eta must lie in (0, 1); the default needs alpha > 2");
    const double fraction = param_double(spec, "n1_fraction", 0.5);
    require(fraction > 0.0 && fraction < 1.0, "two_stage: n1_fraction must lie in (0, 1)");
    const auto n1 = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(ms.size()))));
    NetParams net;
    net.size_cap = static_cast<std::size_t>(param_int(spec, "net_size", 256));
    const auto mode = spec.params.count("net") ? spec.params.at("net") : std::string("random");
    if (mode == "planted") {
        net.strategy = NetStrategy::planted_augmented;
        net.plant = x;
    } else if (mode != "random") {
        throw InvalidParameter("two_stage: net must be 'random' or 'planted'");
    }
    EstimateResult r = two_stage_estimate(ms, n1, ms.size() - n1, eta, net, seed);
    if (auto it = r.meta.find("stage2_misaligned_fraction"); it != r.meta.end()) {
        r.meta["misaligned_fraction"] = it->second;
    }
    return r;
}

using CellKey = std::tuple<std::size_t, double, long long>;

CellKey key_of(const SweepRow& r) { return {r.length, r.alpha, r.trial}; }

bool same_statistics(const std::vector<std::string>& header) { return header == sweep_columns(); }

} // namespace

const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols{"L",    "alpha", "sigma_sq",           "n",         "trial",
                                               "rmse", "misaligned_fraction", "error_tag", "wall_time_ms"};
    return cols;
}

std::vector<std::string> format_row(const SweepRow& row) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", row.wall_time_ms);
    return {std::to_string(row.length),
            format_real(row.alpha),
            format_real(row.sigma_sq),
            std::to_string(row.n),
            std::to_string(row.trial),
            format_real(row.rmse),
            row.misaligned_fraction ? format_real(*row.misaligned_fraction) : "",
            sanitize(row.error_tag),
            wall};
}

SweepRow parse_row(const std::vector<std::string>& f) {
    if (f.size() != sweep_columns().size()) {
        throw RuntimeFailure("sweep row has " + std::to_string(f.size()) + " fields");
    }
    SweepRow r;
    r.length = static_cast<std::size_t>(parse_int(f[0], "L"));
    r.alpha = parse_double(f[1], "alpha");
    r.sigma_sq = parse_double(f[2], "sigma_sq");
    r.n = parse_int(f[3], "n");
    r.trial = parse_int(f[4], "trial");
    r.rmse = parse_double(f[5], "rmse");
    if (!f[6].empty()) {
        r.misaligned_fraction = parse_double(f[6], "misaligned_fraction");
    }
    r.error_tag = f[7];
    r.wall_time_ms = parse_double(f[8], "wall_time_ms");
    return r;
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t length, std::size_t alpha_index, long long trial) {
    return StreamSeed(master).child({static_cast<std::uint64_t>(length), static_cast<std::uint64_t>(alpha_index),
                                     static_cast<std::uint64_t>(trial)}).value();
}

SweepRow run_cell(const ExperimentConfig& config, std::size_t length, std::size_t alpha_index, long long trial) {
    const auto start = std::chrono::steady_clock::now();
    SweepRow row;
    row.length = length;
    row.alpha = config.alphas.at(alpha_index);
    row.sigma_sq = sigma_sq_from_alpha(length, row.alpha);
    row.n = config.n_rule.evaluate(length);
    row.trial = trial;

    const StreamSeed seed(cell_seed(config.master_seed, length, alpha_index, trial));
    try {
        Engine engine = seed.child(stream::signal).engine();
        const Signal x = sample_signal(length, engine);
        const MeasurementSet ms = generate_mra(x, row.n, NoiseModel::plain(length, row.alpha), seed);
        const EstimateResult est = run_estimator(config.estimator, x, ms, row.alpha, seed.child(stream::init));
        row.rmse = std::sqrt(rho(x, est.xhat).rho);
        if (auto it = est.meta.find("misaligned_fraction"); it != est.meta.end()) {
            row.misaligned_fraction = it->second;
        }
    } catch (const std::exception& e) {
        row.rmse = kNaN;
        row.error_tag = e.what();
    }
    row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

SweepOutcome run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
    config.validate();
    SweepOutcome outcome;
    const auto& path = config.output_path;

    // Cells found in an existing output file are reused as-is.
    std::map<CellKey, SweepRow> done;
    bool have_header = false;
    if (options.write_output && std::filesystem::exists(path)) {
        const CsvTable existing = read_csv(path);
        if (!existing.header.empty()) {
            if (!same_statistics(existing.header)) {
                throw RuntimeFailure(path.string() + " exists with a different column layout");
            }
            have_header = true;
        }
        for (const auto& fields : existing.rows) {
            SweepRow r = parse_row(fields);
            done.emplace(key_of(r), std::move(r));
        }
    }

    struct Pending {
        std::size_t length;
        std::size_t alpha_index;
        long long trial;
    };
    std::vector<Pending> pending;
    for (auto L : config.lengths) {
        for (std::size_t a = 0; a < config.alphas.size(); ++a) {
            for (long long t = 0; t < config.trials; ++t) {
                if (done.count(CellKey{L, config.alphas[a], t}) != 0) {
                    ++outcome.resumed;
                } else {
                    pending.push_back({L, a, t});
                }
            }
        }
    }

    std::ofstream sink;
    if (options.write_output) {
        if (!path.parent_path().empty()) {
            std::filesystem::create_directories(path.parent_path());
        }
        sink.open(path, std::ios::app);
        if (!sink) {
            throw RuntimeFailure("cannot open " + path.string() + " for writing");
        }
        if (!have_header) {
            sink << join_csv_line(sweep_columns()) << '\n' << std::flush;
        }
    }

    const std::size_t budget = options.stop_after.value_or(pending.size());
    std::mutex sink_mutex;
    std::size_t started = 0;
    bool io_failed = false;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(pending.size()); ++k) {
        {
            std::lock_guard lock(sink_mutex);
            if (started >= budget || io_failed) {
                continue;
            }
            ++started;
        }
        const auto& p = pending[static_cast<std::size_t>(k)];
        SweepRow row = run_cell(config, p.length, p.alpha_index, p.trial);
        std::lock_guard lock(sink_mutex);
        if (options.write_output) {
            sink << join_csv_line(format_row(row)) << '\n' << std::flush;
            if (!sink) {
                io_failed = true;
            }
        }
        done.emplace(key_of(row), std::move(row));
        ++outcome.computed;
    }
    if (io_failed) {
        throw RuntimeFailure("write to " + path.string() + " failed; completed rows were kept");
    }
    sink.close();

    outcome.complete = outcome.computed == pending.size();
    outcome.rows.reserve(done.size());
    for (auto& [key, row] : done) {
        outcome.rows.push_back(row);
    }
    if (options.write_output && outcome.complete) {
        CsvTable table{sweep_columns(), {}};
        for (const auto& r : outcome.rows) {
            table.rows.push_back(format_row(r));
        }
        write_csv_atomic(path, table);
    }
    return outcome;
}

std::vector<CellSummary> summarize(const std::vector<SweepRow>& rows) {
    std::map<std::pair<std::size_t, double>, CellSummary> cells;
    std::map<std::pair<std::size_t, double>, std::size_t> misaligned_counts;
    for (const auto& r : rows) {
        auto& c = cells[{r.length, r.alpha}];
        c.length = r.length;
        c.alpha = r.alpha;
        ++c.rows;
        if (std::isnan(r.rmse)) {
            ++c.nan_rows;
            continue;
        }
        c.mean_rmse += r.rmse;
        if (r.misaligned_fraction) {
            c.mean_misaligned += *r.misaligned_fraction;
            ++misaligned_counts[{r.length, r.alpha}];
        }
    }
    std::vector<CellSummary> out;
    for (auto& [key, c] : cells) {
        const std::size_t ok = c.rows - c.nan_rows;
        c.mean_rmse = ok == 0 ? kNaN : c.mean_rmse / static_cast<double>(ok);
        const std::size_t m = misaligned_counts[key];
        c.mean_misaligned = m == 0 ? kNaN : c.mean_misaligned / static_cast<double>(m);
        out.push_back(c);
    }
    return out;
}

} // namespace mra::harness
