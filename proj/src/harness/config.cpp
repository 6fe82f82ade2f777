#include "mra/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mra::harness {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

// Drops a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return line.substr(0, i);
        }
    }
    return line;
}

} // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
            }
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) {
                throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
            }
            cfg.sections_[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        }
        if (cfg.sections_[current].count(key) != 0) {
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        cfg.sections_[current][key] = value;
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

bool ConfigFile::has(const std::string& key, const std::string& section) const {
    return get(key, section).has_value();
}

std::optional<std::string> ConfigFile::get(const std::string& key, const std::string& section) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) {
        return std::nullopt;
    }
    const auto v = s->second.find(key);
    if (v == s->second.end()) {
        return std::nullopt;
    }
    return v->second;
}

std::map<std::string, std::string> ConfigFile::section(const std::string& name) const {
    const auto s = sections_.find(name);
    return s == sections_.end() ? std::map<std::string, std::string>{} : s->second;
}

void ConfigFile::set(const std::string& key, const std::string& value, const std::string& section) {
    sections_[section][key] = value;
}

std::vector<std::string> split_list(const std::string& value) {
    std::string body = trim(value);
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') {
            throw ConfigError("unterminated list: " + value);
        }
        body = body.substr(1, body.size() - 2);
    }
    std::vector<std::string> items;
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = unquote(trim(item));
        if (!item.empty()) {
            items.push_back(item);
        }
    }
    return items;
}

double parse_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(what + ": not a number: '" + text + "'");
    }
    return v;
}

long long parse_int(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(what + ": not an integer: '" + text + "'");
    }
    return v;
}

std::uint64_t parse_seed(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(what + ": not an unsigned integer: '" + text + "'");
    }
    return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t == "true" || t == "1") {
        return true;
    }
    if (t == "false" || t == "0") {
        return false;
    }
    throw ConfigError(what + ": expected true or false, got '" + text + "'");
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        out.push_back(parse_double(item, what));
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(text)) {
        const long long v = parse_int(item, what);
        if (v < 1) {
            throw ConfigError(what + ": entries must be positive");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

long long default_sample_count(std::size_t length) {
    require(length >= 2, "default_sample_count: L must be at least 2");
    return std::llround(100.0 * static_cast<double>(length) / std::log(static_cast<double>(length)));
}

long long NRule::evaluate(std::size_t length) const {
    return explicit_n.has_value() ? *explicit_n : default_sample_count(length);
}

void ExperimentConfig::validate() const {
    if (lengths.empty()) {
        throw ConfigError("lengths: grid must be nonempty");
    }
    if (alphas.empty()) {
        throw ConfigError("alphas: grid must be nonempty");
    }
    for (auto L : lengths) {
        if (L < 2) {
            throw ConfigError("lengths: L must be at least 2");
        }
    }
    for (double a : alphas) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw ConfigError("alphas: entries must be positive and finite");
        }
    }
    if (trials < 1) {
        throw ConfigError("trials: must be at least 1");
    }
    if (n_rule.explicit_n.has_value() && *n_rule.explicit_n < 1) {
        throw ConfigError("n_rule: explicit n must be at least 1");
    }
    static const std::set<std::string> known{"genie", "em", "two_stage"};
    if (known.count(estimator.name) == 0) {
        throw ConfigError("estimator: unknown estimator '" + estimator.name + "'");
    }
}

ExperimentConfig ExperimentConfig::from(const ConfigFile& file) {
    ExperimentConfig cfg;
    auto need = [&](const std::string& key) {
        auto v = file.get(key);
        if (!v) {
            throw ConfigError("missing required key '" + key + "'");
        }
        return *v;
    };
    cfg.lengths = parse_size_list(need("lengths"), "lengths");
    cfg.alphas = parse_double_list(need("alphas"), "alphas");
    const std::string rule = file.get("n_rule").value_or("100L/lnL");
    if (rule != "100L/lnL") {
        cfg.n_rule.explicit_n = parse_int(rule, "n_rule");
    }
    cfg.estimator.name = file.get("estimator").value_or("genie");
    cfg.estimator.params = file.section("estimator." + cfg.estimator.name);
    cfg.trials = parse_int(file.get("trials").value_or(cfg.estimator.name == "em" ? "100" : "50"), "trials");
    cfg.master_seed = parse_seed(file.get("seed").value_or("0"), "seed");
    cfg.output_path = file.get("output").value_or("sweep.csv");
    cfg.validate();
    return cfg;
}

} // namespace mra::harness
