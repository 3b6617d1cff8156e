#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semsans/run_command.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SEMSANS magnetic-Wollaston-prism beam simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int grid_n = 256;
    int cells = 1;
    bool subtract_carrier = false;
    std::uint64_t seed = 1;

    const std::vector<std::string> names = {"refract", "trace", "focus", "phase",
                                            "fringe", "solve-fields", "texture",
                                            "oam", "validate"};
    for (const auto& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--grid", grid_n, "grid samples per axis");
        sub->add_option("--cells", cells, "unit cells per axis");
        sub->add_flag("--subtract-carrier", subtract_carrier,
                      "drop the plane-wave carrier terms from OAM densities");
        sub->add_option("--seed", seed, "RNG seed for randomized validation");
    }

    CLI11_PARSE(app, argc, argv);

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        semsans::RunConfig cfg = semsans::load_config_file(config_path);
        cfg.out_dir = out_dir;
        cfg.grid_n = grid_n;
        cfg.cells = cells;
        cfg.subtract_carrier = subtract_carrier;
        cfg.seed = seed;
        const semsans::CommandResult result = semsans::run_command(cmd, cfg);
        std::cout << result.summary << "\n";
        return result.ok ? 0 : 3;
    } catch (const semsans::Error& e) {
        std::cerr << semsans::error_code_name(e.code()) << ": " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
