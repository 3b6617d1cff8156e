#ifndef SEMSANS_CONFIG_HPP
#define SEMSANS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "semsans/core.hpp"

namespace semsans {

/// Checkerboard (two orthogonal pairs) geometry: distances from each prism
/// center to the common focusing plane, plus the shared edge length. Fields
/// follow from the focusing conditions, either from B1 or from a cap on the
/// largest field (B2).
struct CheckerboardSetup {
    double L1 = 0.0, L2 = 0.0, L3 = 0.0, L4 = 0.0;  // [m]
    double a = 0.0;                                 // [m]
    double field_cap = 0.0;                         // [T], used when capped
    double B1 = 0.0;                                // [T], used when !capped
    bool capped = true;
};

struct RunConfig {
    NeutronState state;
    BeamlineConfig beamline;
    bool has_pairs = false;
    std::optional<CheckerboardSetup> checkerboard;

    // command-scoped parameters (CLI flags)
    int grid_n = 256;
    int cells = 1;
    bool subtract_carrier = false;
    std::uint64_t seed = 1;
    std::string out_dir = ".";

    std::uint64_t config_hash = 0;  // FNV-1a of the raw config text
};

/// Parses the sectioned key=value config format. Every physical value must
/// carry an explicit unit suffix (lengths nm/um/mm/cm/m, fields T/mT, angles
/// rad/mrad/deg). Throws Error(ParseError) with a line reference, or
/// Error(ValidationError) naming the violated invariant.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace semsans

#endif
