#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "semsans/csv_io.hpp"
#include "semsans/run_command.hpp"

using namespace semsans;

namespace {

const char* kMinimal = R"(
[beam]
wavelength = 1 nm

[pair]
a   = 100 mm
gap = 300 mm
B1  = 103.846153846153846 mT
B2  = 150 mT

[detector]
z = 1.3 m
)";

std::string temp_dir(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    const RunConfig cfg = parse_config(kMinimal);
    CHECK(cfg.has_pairs);
    CHECK(cfg.state.wavelength == 1e-9);
    CHECK(cfg.state.theta_in == doctest::Approx(M_PI / 2.0));
    CHECK(cfg.state.divergence == 0.0);
    CHECK(cfg.beamline.pairs.size() == 1);
    CHECK(cfg.beamline.pairs[0].geometry == Geometry::Parallelogram);
    CHECK(cfg.beamline.pairs[0].a == doctest::Approx(0.1));
    CHECK(cfg.beamline.pairs[0].L1 == doctest::Approx(1.3));
    CHECK(cfg.beamline.pairs[0].L2 == doctest::Approx(0.9));
    CHECK(cfg.beamline.detector_z == doctest::Approx(1.3));
}

TEST_CASE("unit suffixes are mandatory") {
    const char* broken = R"(
[beam]
wavelength = 1 nm

[pair]
a   = 100 mm
gap = 300 mm
B1  = 150
B2  = 103.8 mT
)";
    CHECK_THROWS_AS(parse_config(broken), Error);
    try {
        parse_config(broken);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(e.exit_code() == 2);
        CHECK(std::string(e.what()).find("unit") != std::string::npos);
    }
}

TEST_CASE("parse errors carry line context") {
    CHECK_THROWS_AS(parse_config("[beam]\nwavelength 1 nm\n"), Error);
    CHECK_THROWS_AS(parse_config("wavelength = 1 nm\n"), Error);
    CHECK_THROWS_AS(parse_config("[nonsense]\nx = 1 m\n"), Error);
    CHECK_THROWS_AS(parse_config("[beam]\nwavelength = 1 nm\n"), Error);  // no pairs
}

TEST_CASE("reference checkerboard config parses and solves") {
    const RunConfig cfg = load_config_file(std::string(SEMSANS_SOURCE_DIR)
                                           + "/configs/checkerboard.cfg");
    REQUIRE(cfg.checkerboard.has_value());
    const CheckerboardSolution sol = solve_checkerboard(cfg);
    CHECK(sol.fields.B1 == doctest::Approx(0.1038461538461538).epsilon(1e-12));
    CHECK(sol.fields.B2 == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(sol.fields.B3 == doctest::Approx(0.03461538461538462).epsilon(1e-12));
    CHECK(sol.fields.B4 == doctest::Approx(0.08076923076923077).epsilon(1e-12));
    CHECK(std::fabs(sol.period - 145e-6) <= 0.03 * 145e-6);

    // assembled beamline: pair spacings consistent with the distances
    REQUIRE(sol.beamline.pairs.size() == 2);
    CHECK(sol.beamline.pairs[0].prism_spacing() == doctest::Approx(0.4));
    CHECK(sol.beamline.pairs[1].prism_spacing() == doctest::Approx(0.4));
    CHECK(sol.beamline.pairs[1].z_center1 == doctest::Approx(0.6));
}

TEST_CASE("csv round-trips through its own parser") {
    CsvTable t;
    t.comments = {"config fnv1a64: 0123456789abcdef", "columns carry units"};
    t.columns = {"x [m]", "value"};
    t.rows = {{0.1, 1.2345678901234567e-8}, {-3.0, 2.0 / 3.0}};
    const std::string text = format_csv(t);
    const CsvTable back = parse_csv(text);
    REQUIRE(back.rows.size() == t.rows.size());
    REQUIRE(back.columns == t.columns);
    for (size_t i = 0; i < t.rows.size(); ++i)
        for (size_t j = 0; j < t.rows[i].size(); ++j)
            CHECK(back.rows[i][j] == t.rows[i][j]);  // 17 digits round-trip exactly
    CHECK(text.find("# config fnv1a64") != std::string::npos);
    CHECK(text.find("\r") == std::string::npos);
}

TEST_CASE("run_command emits byte-stable files") {
    RunConfig cfg = parse_config(kMinimal);
    cfg.out_dir = temp_dir("semsans_test_stable");
    const CommandResult r1 = run_command("focus", cfg);
    auto read = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const std::string first = read(cfg.out_dir + "/focus.csv");
    run_command("focus", cfg);
    CHECK(read(cfg.out_dir + "/focus.csv") == first);
    CHECK(!r1.files.empty());
}

TEST_CASE("solve-fields output matches the solver") {
    RunConfig cfg = load_config_file(std::string(SEMSANS_SOURCE_DIR)
                                     + "/configs/checkerboard.cfg");
    cfg.out_dir = temp_dir("semsans_test_fields");
    run_command("solve-fields", cfg);
    const CsvTable t = read_csv(cfg.out_dir + "/solve_fields.csv");
    REQUIRE(t.rows.size() == 1);
    const CheckerboardSolution sol = solve_checkerboard(cfg);
    CHECK(t.rows[0][0] == sol.fields.B1);
    CHECK(t.rows[0][1] == sol.fields.B2);
    CHECK(t.rows[0][2] == sol.fields.B3);
    CHECK(t.rows[0][3] == sol.fields.B4);
}

TEST_CASE("texture with equal fields emits a constant map") {
    const char* text = R"(
[beam]
wavelength = 1 nm
theta_in   = 90 deg
phi_in     = 90 deg

[pair]
a   = 100 mm
gap = 300 mm
B1  = 100 mT
B2  = 100 mT

[detector]
z = 1.3 m
)";
    RunConfig cfg = parse_config(text);
    cfg.out_dir = temp_dir("semsans_test_const");
    cfg.grid_n = 16;
    run_command("texture", cfg);
    const CsvTable t = read_csv(cfg.out_dir + "/texture.csv");
    REQUIRE(t.rows.size() == 16 * 16);
    for (const auto& row : t.rows) {
        CHECK(row[2] == doctest::Approx(0.0).epsilon(1e-12));  // sx
        CHECK(row[3] == doctest::Approx(1.0).epsilon(1e-12));  // sy
        CHECK(row[4] == doctest::Approx(0.0).epsilon(1e-12));  // sz
    }
}

TEST_CASE("fringe summary reports unit visibility under focusing") {
    RunConfig cfg = parse_config(kMinimal);
    cfg.out_dir = temp_dir("semsans_test_fringe");
    const CommandResult r = run_command("fringe", cfg);
    CHECK(r.summary.find("visibility=1.000000") != std::string::npos);
}

TEST_CASE("validate runs the invariant battery") {
    RunConfig cfg = parse_config(kMinimal);
    cfg.out_dir = temp_dir("semsans_test_validate");
    cfg.seed = 42;
    const CommandResult r = run_command("validate", cfg);
    CHECK(r.ok);
    CHECK(r.summary.find("FAIL") == std::string::npos);
}

TEST_CASE("remaining commands emit their documented tables") {
    RunConfig cfg = parse_config(kMinimal);
    cfg.out_dir = temp_dir("semsans_test_cmds");
    cfg.grid_n = 24;

    run_command("refract", cfg);
    const CsvTable refract = read_csv(cfg.out_dir + "/refract.csv");
    CHECK(refract.columns.size() == 9);
    CHECK(refract.rows.size() == 81);

    run_command("trace", cfg);
    const CsvTable trace = read_csv(cfg.out_dir + "/trace.csv");
    CHECK(trace.columns.size() == 11);
    CHECK(trace.rows.size() >= 10);  // both spins, several segments each
    const CsvTable summary = read_csv(cfg.out_dir + "/trace_summary.csv");
    REQUIRE(summary.rows.size() == 1);
    CHECK(summary.rows[0][1] == doctest::Approx(1.3).epsilon(1e-6));  // z_f

    run_command("phase", cfg);
    const CsvTable phase = read_csv(cfg.out_dir + "/phase.csv");
    CHECK(phase.columns.size() == 6);
    CHECK((int)phase.rows.size() == cfg.grid_n);
    for (const auto& row : phase.rows)  // breakdown sums to the half-angle
        CHECK(row[4] + row[5] == doctest::Approx(row[1]).epsilon(1e-12));

    cfg.subtract_carrier = true;
    run_command("oam", cfg);
    const CsvTable oam = read_csv(cfg.out_dir + "/oam.csv");
    CHECK(oam.columns.size() == 5);
    CHECK((int)oam.rows.size() == cfg.grid_n * cfg.grid_n);
}

TEST_CASE("checkerboard accepts B1 instead of a field cap, but not both") {
    const char* with_b1 = R"(
[beam]
wavelength = 1 nm

[checkerboard]
L1 = 1.3 m
L2 = 0.9 m
L3 = 0.7 m
L4 = 0.3 m
a  = 100 mm
B1 = 103.846153846153846 mT
)";
    const RunConfig cfg = parse_config(with_b1);
    const CheckerboardSolution sol = solve_checkerboard(cfg);
    CHECK(sol.fields.B2 == doctest::Approx(0.15).epsilon(1e-12));

    std::string both(with_b1);
    both += "field_cap = 150 mT\n";
    CHECK_THROWS_AS(parse_config(both), Error);

    std::string neither(with_b1);
    neither.erase(neither.find("B1 = "));
    CHECK_THROWS_AS(parse_config(neither), Error);
}

TEST_CASE("two [pair] sections chain along the beamline") {
    const char* text = R"(
[beam]
wavelength = 1 nm
y0         = 5 mm

[pair]
a   = 100 mm
gap = 300 mm
B1  = 100 mT
B2  = 150 mT
axis = x

[pair]
a      = 100 mm
gap    = 300 mm
B1     = 80 mT
B2     = 120 mT
axis   = x
offset = 2 m

[detector]
z = 4 m
)";
    RunConfig cfg = parse_config(text);
    REQUIRE(cfg.beamline.pairs.size() == 2);
    CHECK(cfg.beamline.pairs[1].z_center1 == doctest::Approx(2.0));
    CHECK(cfg.beamline.pairs[1].L1 == doctest::Approx(2.0));
    cfg.out_dir = temp_dir("semsans_test_twopair");
    run_command("trace", cfg);
    const CsvTable t = read_csv(cfg.out_dir + "/trace.csv");
    CHECK(t.rows.size() >= 20);  // both spins through two full pairs
}

TEST_CASE("rounded-moment constants selectable via config") {
    const char* text = R"(
[constants]
set = rounded

[beam]
wavelength = 1 nm

[pair]
a   = 100 mm
gap = 300 mm
B1  = 100 mT
B2  = 150 mT

[detector]
z = 1.3 m
)";
    const RunConfig cfg = parse_config(text);
    CHECK(cfg.beamline.constants.g_half == doctest::Approx(-1.913).epsilon(1e-15));
    CHECK_THROWS_AS(parse_config("[constants]\nset = bogus\n"), Error);
}

TEST_CASE("focusing-plane detector orientation parses and focuses the fringes") {
    const char* text = R"(
[beam]
wavelength = 1 nm
divergence = 3 mrad

[pair]
a   = 100 mm
gap = 300 mm
B1  = 103.846153846153846 mT
B2  = 150 mT

[detector]
z           = 1.8 m
orientation = focusing-plane
)";
    RunConfig cfg = parse_config(text);
    CHECK(cfg.beamline.detector_orientation == DetectorOrientation::FocusingPlane);
    cfg.out_dir = temp_dir("semsans_test_focalplane");
    const CommandResult r = run_command("fringe", cfg);
    CHECK(r.summary.find("visibility=1.000000") != std::string::npos);
}

TEST_CASE("degenerate command parameters are rejected") {
    RunConfig cfg = parse_config(kMinimal);
    cfg.grid_n = 1;
    CHECK_THROWS_AS(run_command("phase", cfg), Error);
    cfg.grid_n = 16;
    cfg.cells = 0;
    CHECK_THROWS_AS(run_command("texture", cfg), Error);
}

TEST_CASE("exit code mapping") {
    CHECK(Error(ErrorCode::ParseError, "x").exit_code() == 2);
    CHECK(Error(ErrorCode::ValidationError, "x").exit_code() == 3);
    CHECK(Error(ErrorCode::ClassicallyForbidden, "x").exit_code() == 4);
    CHECK(Error(ErrorCode::MissedAperture, "x").exit_code() == 4);
    CHECK(Error(ErrorCode::IoError, "x").exit_code() == 5);
}
