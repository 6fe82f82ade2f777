#pragma once

namespace mra::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Entry point of the mra-lab tool. Subcommands: sweep, bounds,
/// template-threshold, two-stage-demo, mi-estimate.
int run_cli(int argc, const char* const* argv);

} // namespace mra::harness
