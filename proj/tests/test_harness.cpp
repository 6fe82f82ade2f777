#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mra/bounds.hpp"
#include "mra/harness/bound_table.hpp"
#include "mra/harness/config.hpp"
#include "mra/harness/csv.hpp"
#include "mra/harness/experiments.hpp"
#include "mra/harness/measurement_io.hpp"
#include "mra/harness/sweep.hpp"

using namespace mra;
using namespace mra::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mra_harness_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Drops the wall-time column.
std::vector<std::vector<std::string>> statistical_columns(const fs::path& p) {
    auto table = read_csv(p);
    for (auto& row : table.rows) {
        row.pop_back();
    }
    return table.rows;
}

ExperimentConfig small_config(const fs::path& out) {
    ExperimentConfig cfg;
    cfg.lengths = {16, 24};
    cfg.alphas = {1.0, 4.0};
    cfg.n_rule.explicit_n = 60;
    cfg.estimator.name = "genie";
    cfg.trials = 3;
    cfg.master_seed = 99;
    cfg.output_path = out;
    return cfg;
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(MRA_LAB_EXE) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("config parsing") {
    const auto cfg = ConfigFile::parse(R"(# sweep
lengths = [256, 1024]
alphas = 0.5, 1,2   # trailing comment
output = "out.csv"

[estimator.em]
restarts = 3
)");
    CHECK(cfg.get("lengths") == "[256, 1024]");
    CHECK(cfg.get("output") == "out.csv");
    CHECK(cfg.get("restarts", "estimator.em") == "3");
    CHECK_FALSE(cfg.has("restarts"));
    CHECK(parse_size_list(*cfg.get("lengths"), "lengths") == std::vector<std::size_t>{256, 1024});
    CHECK(parse_double_list(*cfg.get("alphas"), "alphas") == std::vector<double>{0.5, 1, 2});

    CHECK_THROWS_AS(ConfigFile::parse("[broken"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse("novalue"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse("a = 1\na = 2"), ConfigError);
    CHECK_THROWS_AS(parse_double("1.5x", "v"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::load("/nonexistent/cfg.toml"), ConfigError);
}

TEST_CASE("experiment config validation and defaults") {
    auto file = ConfigFile::parse("lengths = 1024\nalphas = 10\nestimator = em\n[estimator.em]\nrestarts = 2\n");
    const auto cfg = ExperimentConfig::from(file);
    CHECK(cfg.trials == 100);
    CHECK(cfg.n_rule.evaluate(1024) == 14773);  // 14773.2
    CHECK(cfg.estimator.params.at("restarts") == "2");
    CHECK(default_sample_count(256) == 4617);
    CHECK_THROWS_AS(ExperimentConfig::from(ConfigFile::parse("alphas = 1")), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from(ConfigFile::parse("lengths = 8\nalphas = 1\ntrials = 0")), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from(ConfigFile::parse("lengths = 8\nalphas = 1\nestimator = mle")),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from(ConfigFile::parse("lengths = \nalphas = 1")), ConfigError);
}

TEST_CASE("noiseless genie sweep gives zero error") {
    ExperimentConfig cfg = small_config(scratch("noiseless.csv"));
    cfg.lengths = {32};
    cfg.alphas = {1e12};
    cfg.trials = 1;
    const auto out = run_sweep(cfg);
    REQUIRE(out.rows.size() == 1);
    CHECK(out.rows[0].rmse < 1e-4);
    CHECK(out.rows[0].misaligned_fraction == 0.0);
}

TEST_CASE("sweep output layout and determinism") {
    const auto a = scratch("det_a.csv");
    const auto b = scratch("det_b.csv");
    const auto ra = run_sweep(small_config(a));
    CHECK(ra.complete);
    CHECK(ra.computed == 12);
    const auto table = read_csv(a);
    CHECK(table.header == sweep_columns());
    CHECK(table.rows.size() == 12);
    // sorted by (L, alpha, trial)
    CHECK(table.rows.front()[0] == "16");
    CHECK(table.rows.back()[0] == "24");
    CHECK(table.rows[1][4] == "1");

    const int saved = omp_get_max_threads();
    omp_set_num_threads(saved > 1 ? 1 : 3);
    run_sweep(small_config(b));
    omp_set_num_threads(saved);
    CHECK(statistical_columns(a) == statistical_columns(b));
}

TEST_CASE("interrupted sweeps resume to the same result") {
    const auto full = scratch("full.csv");
    const auto part = scratch("part.csv");
    run_sweep(small_config(full));

    SweepOptions stop;
    stop.stop_after = 5;
    const auto first = run_sweep(small_config(part), stop);
    CHECK_FALSE(first.complete);
    CHECK(first.computed == 5);
    CHECK(read_csv(part).rows.size() == 5);

    const auto second = run_sweep(small_config(part));
    CHECK(second.complete);
    CHECK(second.resumed == 5);
    CHECK(second.computed == 7);
    CHECK(statistical_columns(part) == statistical_columns(full));
}

TEST_CASE("cell seeds do not move when the grid grows") {
    CHECK(cell_seed(1, 64, 0, 3) == cell_seed(1, 64, 0, 3));
    CHECK(cell_seed(1, 64, 0, 3) != cell_seed(1, 64, 1, 3));
    ExperimentConfig small = small_config(scratch("unused.csv"));
    ExperimentConfig bigger = small;
    bigger.alphas.push_back(9.0);
    bigger.lengths.push_back(40);
    const auto r1 = run_cell(small, 24, 1, 2);
    const auto r2 = run_cell(bigger, 24, 1, 2);
    CHECK(r1.rmse == r2.rmse);
}

TEST_CASE("estimator failures become NaN rows that summaries exclude") {
    ExperimentConfig cfg = small_config(scratch("nan.csv"));
    cfg.estimator.name = "two_stage";
    cfg.lengths = {16};
    cfg.alphas = {1.0, 8.0};  // alpha = 1 has no default eta
    cfg.trials = 2;
    cfg.n_rule.explicit_n = 400;
    cfg.estimator.params = {{"net_size", "8"}};
    const auto out = run_sweep(cfg);
    int failed = 0;
    for (const auto& r : out.rows) {
        if (r.alpha == 1.0) {
            CHECK(std::isnan(r.rmse));
            CHECK_FALSE(r.error_tag.empty());
            ++failed;
        } else {
            CHECK(std::isfinite(r.rmse));
            CHECK(r.error_tag.empty());
        }
    }
    CHECK(failed == 2);
    const auto summary = summarize(out.rows);
    REQUIRE(summary.size() == 2);
    CHECK(summary[0].nan_rows == 2);
    CHECK(std::isnan(summary[0].mean_rmse));
    CHECK(summary[1].nan_rows == 0);
    CHECK(std::isfinite(summary[1].mean_rmse));

    auto text = slurp(cfg.output_path);
    CHECK(text.find("nan") != std::string::npos);
}

TEST_CASE("summaries average only finite rows") {
    std::vector<SweepRow> rows(3);
    for (auto& r : rows) {
        r.length = 8;
        r.alpha = 2.0;
    }
    rows[0].rmse = 1.0;
    rows[1].rmse = 3.0;
    rows[2].rmse = std::nan("");
    const auto s = summarize(rows);
    REQUIRE(s.size() == 1);
    CHECK(s[0].rows == 3);
    CHECK(s[0].nan_rows == 1);
    CHECK(s[0].mean_rmse == 2.0);
}

TEST_CASE("sweep rows round-trip through CSV") {
    SweepRow r;
    r.length = 64;
    r.alpha = 0.1;
    r.sigma_sq = 1.0 / 3.0;
    r.n = 10;
    r.trial = 4;
    r.rmse = 0.123456789012345678;
    r.misaligned_fraction = 0.25;
    r.error_tag = "a,b";
    const auto back = parse_row(format_row(r));
    CHECK(back.alpha == r.alpha);
    CHECK(back.sigma_sq == r.sigma_sq);
    CHECK(back.rmse == r.rmse);
    CHECK(back.misaligned_fraction == 0.25);
    CHECK(back.error_tag == "a;b");
}

TEST_CASE("bound table") {
    BoundGrid grid;
    grid.lengths = {64, 128, 256, 512};
    grid.alphas = {0.5};
    grid.eps = 0.5;
    grid.names = {"theorem2_chained"};
    const auto rows = run_bound_table(grid);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.value == theorem2_scaling_bound(r.length, 0.5, 0.5).value);
    }

    BoundGrid all;
    all.lengths = {64};
    all.alphas = {0.5, 3.0};
    const auto plain = run_bound_table(all);
    for (const auto& r : plain) {
        CHECK(r.name.rfind("pmra", 0) != 0);
    }
    CHECK(plain.size() == 2 * 10);
    all.projected_length = 32;
    const auto with_pmra = run_bound_table(all);
    CHECK(with_pmra.size() == 2 * 13);
    for (const auto& r : with_pmra) {
        if (r.name == "mi_low_snr" && r.alpha == 0.5) {
            CHECK(r.value == mi_upper_bound_low_snr(64, sigma_sq_from_alpha(64, 0.5)).report.value);
        }
        if (r.name == "pmra_high_snr") {
            CHECK(r.valid == (r.alpha > 2.0));
        }
        if (r.name == "theorem2_chained" && r.alpha == 3.0) {
            CHECK_FALSE(r.valid);
        }
    }
    const auto csv = bound_table_csv(with_pmra);
    CHECK(csv.header ==
          std::vector<std::string>{"name", "L", "L_prime", "alpha", "sigma_sq", "n", "eps", "value", "valid"});
}

TEST_CASE("measurement sets round-trip exactly") {
    Engine e = StreamSeed(1).engine();
    const Signal x = sample_signal(12, e);
    const auto ms = generate_mra(x, 7, NoiseModel::plain(12, 1.3), StreamSeed(2));
    const auto p = scratch("ms.csv");
    save_measurements(p, ms);
    const auto back = load_measurements(p);
    CHECK(back.observations == ms.observations);
    CHECK(back.true_shifts == ms.true_shifts);
    CHECK(back.noise.sigma_sq == ms.noise.sigma_sq);
    CHECK(back.noise.alpha == ms.noise.alpha);
    CHECK(back.seed == ms.seed);
    CHECK(back.lineage == ms.lineage);

    const auto pm = generate_pmra(x, ProjectionMask(12, {0, 4, 5}), 4, NoiseModel::projected(12, 3, 2.0), StreamSeed(3));
    std::stringstream buf;
    write_measurements(buf, pm);
    const auto pback = read_measurements(buf);
    REQUIRE(pback.mask.has_value());
    CHECK(pback.mask->kept() == pm.mask->kept());
    CHECK(pback.observations == pm.observations);
    CHECK(*pback.noise.projected_length == 3);

    std::stringstream bad("not a file\n");
    CHECK_THROWS(read_measurements(bad));
}

TEST_CASE("template threshold ordering") {
    const auto rows = template_threshold(256, {0.5, 8.0}, 100, 5);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].p_e > rows[1].p_e);
}

TEST_CASE("command line exit codes") {
    const auto dir = fs::temp_directory_path() / "mra_harness_tests";
    const auto cfg = dir / "b.toml";
    {
        std::ofstream out(cfg);
        out << "lengths = 32, 64\nalphas = 0.5\neps = 0.2\n";
    }
    const auto out = scratch("b.csv");
    CHECK(run_tool("bounds --config " + cfg.string() + " --out " + out.string()) == 0);
    CHECK(read_csv(out).rows.size() == 20);
    CHECK(run_tool("bounds --config " + (dir / "missing.toml").string()) == 2);
    CHECK(run_tool("frobnicate") == 2);
    CHECK(run_tool("") == 2);
    CHECK(run_tool("sweep --L 16 --alphas 1 --trials x") == 2);

    const auto thr = scratch("thr.csv");
    CHECK(run_tool("template-threshold --L 512 --alphas 0.5,8 --trials 100 --out " + thr.string()) == 0);
    const auto t = read_csv(thr);
    REQUIRE(t.rows.size() == 2);
    CHECK(std::stod(t.rows[0][t.column("p_e")]) > std::stod(t.rows[1][t.column("p_e")]));

    const auto mi = scratch("mi.csv");
    CHECK(run_tool("mi-estimate --L 16 --alphas 0.5 --draws 50 --out " + mi.string()) == 0);
    CHECK(read_csv(mi).rows.size() == 1);

    const auto sw = scratch("sw.csv");
    const auto swcfg = dir / "sw.toml";
    {
        std::ofstream o(swcfg);
        o << "lengths = 16\nalphas = 2\nn_rule = 30\ntrials = 2\nestimator = em\n[estimator.em]\nrestarts = 1\n";
    }
    CHECK(run_tool("sweep --config " + swcfg.string() + " --out " + sw.string()) == 0);
    CHECK(read_csv(sw).rows.size() == 2);
    const auto bad = dir / "bad.toml";
    {
        std::ofstream o(bad);
        o << "lengths = 16\nalphas = 2\nestimator = mle\n";
    }
    CHECK(run_tool("sweep --config " + bad.string() + " --out " + sw.string()) == 2);
}
