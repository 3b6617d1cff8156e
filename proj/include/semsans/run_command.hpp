#ifndef SEMSANS_RUN_COMMAND_HPP
#define SEMSANS_RUN_COMMAND_HPP

#include <string>
#include <vector>

#include "semsans/config.hpp"
#include "semsans/textures.hpp"

namespace semsans {

struct CommandResult {
    std::vector<std::string> files;  // paths written
    std::string summary;             // printed to stdout by the CLI
    bool ok = true;
};

/// Dispatches one CLI subcommand: refract, trace, focus, phase, fringe,
/// solve-fields, texture, oam, validate. Throws Error for config/physics/I-O
/// failures; `validate` reports suite failures via ok = false instead.
CommandResult run_command(const std::string& cmd, const RunConfig& cfg);

/// Solved two-pair checkerboard: fields, common |dB|, kappa, texture period,
/// r0 and the assembled two-pair beamline.
struct CheckerboardSolution {
    CheckerboardFields fields;
    KappaSpec kappa_spec;
    double dB = 0.0;      // common |B1-B2| = |B3-B4| [T]
    double kappa = 0.0;   // [rad/m], zero divergence
    double period = 0.0;  // pi/kappa [m]
    double r0 = 0.0;      // [m]
    BeamlineConfig beamline;
};

CheckerboardSolution solve_checkerboard(const RunConfig& cfg);

}  // namespace semsans

#endif
