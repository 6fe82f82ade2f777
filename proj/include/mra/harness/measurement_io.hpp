#pragma once

// Measurement-set container (text, one record per line):
//
//   mra-measurements v1
//   L,L_prime,n,sigma_sq,alpha,seed,lineage
//   <values; L_prime empty for the plain model>
//   mask,<kept indices>                    (projected model only)
//   <shift>,<y_0>,...,<y_{L'-1}>           (n lines)
//
// Reals are written with 17 significant digits, so a round trip is exact.

#include <filesystem>
#include <iosfwd>

#include "mra/model.hpp"

namespace mra::harness {

void write_measurements(std::ostream& out, const MeasurementSet& ms);
MeasurementSet read_measurements(std::istream& in);

void save_measurements(const std::filesystem::path& path, const MeasurementSet& ms);
MeasurementSet load_measurements(const std::filesystem::path& path);

} // namespace mra::harness
