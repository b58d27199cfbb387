#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loopgas/mcmc.hpp"
#include "loopgas/oracle.hpp"

namespace loopgas {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full run configuration: the simulation parameters plus output,
/// validator and oracle-comparison settings.  Parsed from schema-versioned
/// JSON with unknown keys rejected; render produces the normalized
/// canonical form, so parse(render(c)) == c.
struct RunConfig {
    SimulationParams params;
    std::string output_dir = "out";
    std::string report_format = "both";  // delimited | records | both
    std::vector<std::string> validators;
    int workers = 0;  // 0: LOOPGAS_WORKERS env var, else 1

    // Estimator / validator knobs.
    double density_cell = 0.0;  // 0 disables the density profile
    std::optional<BoxRegion> box1;
    std::vector<std::pair<ClassicalConfig, ClassicalConfig>> test_pairs;
    int n_z_draws = 8;
    int n_bridge_draws = 4;
    int test_loop_count = 3;
    QuadratureSpec oracle;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string render_config(const RunConfig& config);

/// FNV-1a 64-bit over the canonical rendering; stable across runs.
std::uint64_t fnv1a64(const std::string& s);
std::string config_hash(const RunConfig& config);

}  // namespace loopgas
