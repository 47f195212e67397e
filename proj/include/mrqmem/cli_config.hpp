#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mrqmem/core.hpp"

namespace mrqmem {

// Raised for configuration problems; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a computation produces non-finite values; exit code 1.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value run description shared by all subcommands.
struct RunConfig {
    std::string model = "reduced";  // analytic | reduced | full
    int n = 7;
    double delta = 1.0;         // comb spacing, in `units`
    std::string units = "rad";  // rad (rad/s) | hz
    double g = -1.0;            // coupling; negative means "use the optimum"
    double c = 1.0;
    double k0 = 100.0;
    double delta0 = 10.0;
    std::string init = "rect";  // rect | custom
    std::vector<Complex> init_values;
    double t_max = 1.0;  // in units of the echo time 2*pi/Delta
    int samples = 2048;
    int modes_per_band = 256;
    std::vector<std::string> outputs = {"efficiency"};
    int n1 = 0, n2 = 1;          // e12 pair
    double prominence = 0.25;    // peak prominence floor
    double g_min = 0.0, g_max = 0.0;  // sweep range; 0 means g*/10 .. 10 g*
    int count = 201;
    std::string grid = "log";  // log | linear
    std::string out_dir;       // empty: $MR_QMEM_OUT or "."
    int jobs = 1;
};

// Parse a flat `key = value` file; `#` starts a comment. Unknown keys and
// malformed values raise ConfigError with line diagnostics.
RunConfig load_config(const std::string& path);

// Apply one key=value override (CLI flags); raises ConfigError on bad input.
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

// Resolve derived quantities: internal rad/s units, default coupling,
// validated SystemParams, initial amplitudes.
struct ResolvedRun {
    RunConfig cfg;
    SystemParams params;
    AmplitudeVector init;
    bool init_was_rescaled = false;
};
ResolvedRun resolve(const RunConfig& cfg);

// FNV-1a over the canonical serialization of the effective config.
std::uint64_t config_hash(const RunConfig& cfg);
std::string canonical_config(const RunConfig& cfg);

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

// Subcommand drivers; return paths of the files written.
std::vector<std::string> run_simulate(const ResolvedRun& run);
std::vector<std::string> run_sweep(const ResolvedRun& run);
std::vector<std::string> run_compare(const ResolvedRun& run);
std::vector<std::string> run_peaks(const ResolvedRun& run);

}  // namespace mrqmem
