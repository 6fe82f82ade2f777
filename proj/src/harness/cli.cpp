#include "mra/harness/cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "mra/harness/bound_table.hpp"
#include "mra/harness/config.hpp"
#include "mra/harness/csv.hpp"
#include "mra/harness/experiments.hpp"
#include "mra/harness/sweep.hpp"

namespace mra::harness {

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "configuration file");
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_option("--threads", c.threads, "worker threads (MRA_LAB_THREADS takes precedence)");
    cmd->add_option("--out", c.out, "output CSV path");
}

ConfigFile load(const Common& c) {
    if (c.config.empty()) {
        return ConfigFile{};
    }
    if (!std::filesystem::exists(c.config)) {
        throw ConfigError("config file not found: " + c.config);
    }
    return ConfigFile::load(c.config);
}

void apply_threads(const Common& c) {
    std::optional<int> threads = c.threads;
    if (const char* env = std::getenv("MRA_LAB_THREADS"); env != nullptr && *env != '\0') {
        threads = static_cast<int>(parse_int(env, "MRA_LAB_THREADS"));
    }
    if (threads) {
        if (*threads < 1) {
            throw ConfigError("thread count must be at least 1");
        }
        omp_set_num_threads(*threads);
    }
}

std::uint64_t seed_of(const Common& c, const ConfigFile& file) {
    if (c.seed) {
        return *c.seed;
    }
    return parse_seed(file.get("seed").value_or("0"), "seed");
}

std::filesystem::path out_of(const Common& c, const ConfigFile& file, const std::string& fallback) {
    if (!c.out.empty()) {
        return c.out;
    }
    return file.get("output").value_or(fallback);
}

void write_table(const std::filesystem::path& path, const CsvTable& table) {
    if (!path.parent_path().empty()) {
        std::filesystem::create_directories(path.parent_path());
    }
    write_csv_atomic(path, table);
    std::cout << "wrote " << table.rows.size() << " rows to " << path.string() << '\n';
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Multi-reference alignment laboratory", "mra-lab"};
    app.require_subcommand(1);

    Common common;
    std::string L_override, alphas_override, estimator_override, names_override;
    std::optional<long long> trials_override;
    std::optional<double> eps_override;
    std::optional<long long> lprime_override, draws_override;

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo RMSE sweep over (L, alpha, trial)");
    auto* bounds = app.add_subcommand("bounds", "tabulate the closed-form bounds");
    auto* threshold = app.add_subcommand("template-threshold", "template-matching error rate versus alpha");
    auto* demo = app.add_subcommand("two-stage-demo", "desk-scale run of the two-stage estimator");
    auto* mi = app.add_subcommand("mi-estimate", "Monte Carlo single-sample mutual information");
    for (auto* cmd : {sweep, bounds, threshold, demo, mi}) {
        add_common(cmd, common);
        cmd->add_option("--L", L_override, "signal length(s), comma separated");
        cmd->add_option("--alphas", alphas_override, "alpha grid, comma separated");
    }
    for (auto* cmd : {sweep, threshold, demo}) {
        cmd->add_option("--trials", trials_override, "trials per grid point");
    }
    sweep->add_option("--estimator", estimator_override, "genie | em | two_stage");
    bounds->add_option("--eps", eps_override, "target distortion");
    bounds->add_option("--L-prime", lprime_override, "projected length (adds PMRA rows)");
    bounds->add_option("--names", names_override, "restrict to these bound names");
    demo->add_option("--eps", eps_override, "target distortion");
    mi->add_option("--draws", draws_override, "Monte Carlo draws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitConfig;
    }

    try {
        apply_threads(common);
        ConfigFile file = load(common);
        auto override_key = [&](const std::string& key, const std::string& value) {
            if (!value.empty()) {
                file.set(key, value);
            }
        };

        if (sweep->parsed()) {
            override_key("lengths", L_override);
            override_key("alphas", alphas_override);
            override_key("estimator", estimator_override);
            if (trials_override) {
                file.set("trials", std::to_string(*trials_override));
            }
            ExperimentConfig cfg = ExperimentConfig::from(file);
            cfg.master_seed = seed_of(common, file);
            cfg.output_path = out_of(common, file, "sweep.csv");
            const auto outcome = run_sweep(cfg);
            std::cout << "computed " << outcome.computed << " cells, resumed " << outcome.resumed << " into "
                      << cfg.output_path.string() << '\n';
            for (const auto& s : summarize(outcome.rows)) {
                std::cout << "L=" << s.length << " alpha=" << s.alpha << " mean_rmse=" << s.mean_rmse
                          << " rows=" << s.rows << " failed=" << s.nan_rows << '\n';
            }
        } else if (bounds->parsed()) {
            override_key("lengths", L_override);
            override_key("alphas", alphas_override);
            override_key("names", names_override);
            if (eps_override) {
                file.set("eps", format_real(*eps_override));
            }
            if (lprime_override) {
                file.set("L_prime", std::to_string(*lprime_override));
            }
            const auto grid = BoundGrid::from(file);
            write_table(out_of(common, file, "bounds.csv"), bound_table_csv(run_bound_table(grid)));
        } else if (threshold->parsed()) {
            override_key("L", L_override);
            override_key("alphas", alphas_override);
            if (trials_override) {
                file.set("trials", std::to_string(*trials_override));
            }
            const auto L = static_cast<std::size_t>(parse_int(file.get("L").value_or("2048"), "L"));
            const auto alphas = parse_double_list(file.get("alphas").value_or("0.5, 1, 2, 4, 8"), "alphas");
            const long long trials = parse_int(file.get("trials").value_or("200"), "trials");
            if (alphas.empty() || trials < 1 || L < 2) {
                throw ConfigError("template-threshold: need L >= 2, trials >= 1 and a nonempty alpha grid");
            }
            const auto rows = template_threshold(L, alphas, trials, seed_of(common, file));
            write_table(out_of(common, file, "threshold.csv"), threshold_csv(rows));
        } else if (demo->parsed()) {
            override_key("L", L_override);
            if (trials_override) {
                file.set("trials", std::to_string(*trials_override));
            }
            if (eps_override) {
                file.set("eps", format_real(*eps_override));
            }
            if (!alphas_override.empty()) {
                const auto a = parse_double_list(alphas_override, "alphas");
                if (a.size() != 1) {
                    throw ConfigError("two-stage-demo takes a single alpha");
                }
                file.set("alpha", format_real(a[0]));
            }
            TwoStageDemoConfig cfg;
            cfg.length = static_cast<std::size_t>(parse_int(file.get("L").value_or("16"), "L"));
            cfg.alpha = parse_double(file.get("alpha").value_or("8"), "alpha");
            cfg.eps = parse_double(file.get("eps").value_or("0.1"), "eps");
            cfg.trials = parse_int(file.get("trials").value_or("50"), "trials");
            cfg.gamma1 = parse_double(file.get("gamma1").value_or("4"), "gamma1");
            cfg.gamma2 = parse_double(file.get("gamma2").value_or("2"), "gamma2");
            cfg.net_size = static_cast<std::size_t>(parse_int(file.get("net_size").value_or("64"), "net_size"));
            const std::string net = file.get("net").value_or("planted");
            if (net != "planted" && net != "random") {
                throw ConfigError("net: expected 'planted' or 'random'");
            }
            cfg.planted = net == "planted";
            cfg.seed = seed_of(common, file);
            const auto rows = two_stage_demo(cfg);
            std::size_t ok = 0;
            for (const auto& r : rows) {
                ok += r.success ? 1 : 0;
            }
            std::cout << "rho <= " << cfg.eps << " in " << ok << " of " << rows.size() << " trials\n";
            write_table(out_of(common, file, "two_stage.csv"), two_stage_demo_csv(rows));
        } else if (mi->parsed()) {
            override_key("lengths", L_override);
            override_key("alphas", alphas_override);
            if (draws_override) {
                file.set("draws", std::to_string(*draws_override));
            }
            const auto lengths = parse_size_list(file.get("lengths").value_or("32, 64, 128"), "lengths");
            const auto alphas = parse_double_list(file.get("alphas").value_or("0.25, 0.5, 0.75"), "alphas");
            const long long draws = parse_int(file.get("draws").value_or("5000"), "draws");
            if (draws < 2) {
                throw ConfigError("draws must be at least 2");
            }
            const auto rows = mi_estimate_grid(lengths, alphas, static_cast<std::size_t>(draws), seed_of(common, file));
            write_table(out_of(common, file, "mi.csv"), mi_estimate_csv(rows));
        }
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace mra::harness
