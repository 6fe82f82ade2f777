#pragma once

// Experiment configuration files.
//
// The format is a small subset of TOML: `key = value` lines, `[section]`
// headers, `#` comments. Values are scalars, "quoted strings" or lists
// written either bare (`0.5, 1, 2`) or bracketed (`[0.5, 1, 2]`).
//
//   lengths   = [256, 1024]
//   alphas    = [0.5, 1, 2, 4, 10]
//   n_rule    = "100L/lnL"        # or an explicit integer count
//   trials    = 50
//   seed      = 7
//   estimator = "genie"           # genie | em | two_stage
//   output    = "sweep.csv"
//
//   [estimator.em]                # parameters for the chosen estimator
//   restarts = 5

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mra/error.hpp"

namespace mra::harness {

class ConfigError : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

/// Parsed key/value pairs; top-level keys live in section "".
class ConfigFile {
public:
    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::filesystem::path& path);

    [[nodiscard]] bool has(const std::string& key, const std::string& section = "") const;
    [[nodiscard]] std::optional<std::string> get(const std::string& key, const std::string& section = "") const;
    [[nodiscard]] std::map<std::string, std::string> section(const std::string& name) const;
    void set(const std::string& key, const std::string& value, const std::string& section = "");

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

std::vector<std::string> split_list(const std::string& value);
double parse_double(const std::string& text, const std::string& what);
long long parse_int(const std::string& text, const std::string& what);
std::uint64_t parse_seed(const std::string& text, const std::string& what);
bool parse_bool(const std::string& text, const std::string& what);
std::vector<double> parse_double_list(const std::string& text, const std::string& what);
std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what);

struct NRule {
    std::optional<long long> explicit_n;  // empty: round(100 L / ln L)
    [[nodiscard]] long long evaluate(std::size_t length) const;
};

struct EstimatorSpec {
    std::string name = "genie";
    std::map<std::string, std::string> params;
};

struct ExperimentConfig {
    std::vector<std::size_t> lengths;
    std::vector<double> alphas;
    NRule n_rule;
    EstimatorSpec estimator;
    long long trials = 0;
    std::uint64_t master_seed = 0;
    std::filesystem::path output_path;

    void validate() const;
    static ExperimentConfig from(const ConfigFile& file);
};

/// round(100 L / ln L)
long long default_sample_count(std::size_t length);

} // namespace mra::harness
