#include "mra/harness/measurement_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "mra/error.hpp"
#include "mra/harness/config.hpp"
#include "mra/harness/csv.hpp"

namespace mra::harness {

namespace {

constexpr const char* kMagic = "mra-measurements v1";
constexpr const char* kHeader = "L,L_prime,n,sigma_sq,alpha,seed,lineage";

std::string next_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) {
        throw RuntimeFailure(std::string("measurement file truncated before ") + what);
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

} // namespace

void write_measurements(std::ostream& out, const MeasurementSet& ms) {
    const auto& nm = ms.noise;
    out << kMagic << '\n' << kHeader << '\n';
    out << nm.length << ',' << (nm.projected_length ? std::to_string(*nm.projected_length) : "") << ','
        << ms.size() << ',' << format_real(nm.sigma_sq) << ',' << format_real(nm.alpha) << ','
        << ms.seed.value() << ',' << ms.lineage << '\n';
    if (ms.mask) {
        out << "mask";
        for (auto k : ms.mask->kept()) {
            out << ',' << k;
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
        out << (i < ms.true_shifts.size() ? ms.true_shifts[i].value() : 0);
        for (double v : ms.observations[i]) {
            out << ',' << format_real(v);
        }
        out << '\n';
    }
    if (!out) {
        throw RuntimeFailure("failed to write measurement set");
    }
}

MeasurementSet read_measurements(std::istream& in) {
    if (next_line(in, "magic") != kMagic) {
        throw RuntimeFailure("not a measurement file (bad magic line)");
    }
    if (next_line(in, "header") != kHeader) {
        throw RuntimeFailure("unexpected measurement header");
    }
    const auto meta = split_csv_line(next_line(in, "metadata"));
    if (meta.size() != 7) {
        throw RuntimeFailure("metadata row must have 7 fields");
    }
    const auto L = static_cast<std::size_t>(parse_int(meta[0], "L"));
    const long long n = parse_int(meta[2], "n");
    const double sigma_sq = parse_double(meta[3], "sigma_sq");

    MeasurementSet ms;
    ms.noise = NoiseModel::from_sigma_sq(L, sigma_sq);
    if (!meta[1].empty()) {
        ms.noise.projected_length = static_cast<std::size_t>(parse_int(meta[1], "L_prime"));
    }
    ms.noise.alpha = parse_double(meta[4], "alpha");
    ms.seed = StreamSeed(parse_seed(meta[5], "seed"));
    ms.lineage = parse_seed(meta[6], "lineage");

    if (ms.noise.projected_length) {
        const auto fields = split_csv_line(next_line(in, "mask"));
        if (fields.empty() || fields[0] != "mask") {
            throw RuntimeFailure("projected measurement file is missing its mask row");
        }
        std::vector<std::size_t> kept;
        for (std::size_t k = 1; k < fields.size(); ++k) {
            kept.push_back(static_cast<std::size_t>(parse_int(fields[k], "mask")));
        }
        ms.mask = ProjectionMask(L, std::move(kept));
        if (ms.mask->kept_size() != *ms.noise.projected_length) {
            throw RuntimeFailure("mask size does not match L_prime");
        }
    }

    const std::size_t width = ms.noise.observation_length();
    ms.observations.reserve(static_cast<std::size_t>(n));
    ms.true_shifts.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        const auto fields = split_csv_line(next_line(in, "observation rows"));
        if (fields.size() != width + 1) {
            throw RuntimeFailure("observation row " + std::to_string(i) + " has the wrong width");
        }
        ms.true_shifts.emplace_back(parse_int(fields[0], "shift"), L);
        Signal y(width);
        for (std::size_t j = 0; j < width; ++j) {
            y[j] = parse_double(fields[j + 1], "observation");
        }
        ms.observations.push_back(std::move(y));
    }
    return ms;
}

void save_measurements(const std::filesystem::path& path, const MeasurementSet& ms) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw RuntimeFailure("cannot write " + path.string());
    }
    write_measurements(out, ms);
}

MeasurementSet load_measurements(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw RuntimeFailure("cannot open " + path.string());
    }
    return read_measurements(in);
}

} // namespace mra::harness
