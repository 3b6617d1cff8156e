#include "semsans/run_command.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "semsans/csv_io.hpp"
#include "semsans/interferometry.hpp"
#include "semsans/raytrace.hpp"
#include "semsans/refraction.hpp"

namespace semsans {

namespace {

namespace fs = std::filesystem;

std::string hash_comment(const RunConfig& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)cfg.config_hash);
    return std::string("config fnv1a64: ") + buf;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    return (fs::path(cfg.out_dir) / name).string();
}

void write_sidecar(const RunConfig& cfg, const std::string& cmd,
                   std::vector<std::string>& files) {
    const std::string path = out_path(cfg, cmd + ".meta.txt");
    std::ofstream out(path);
    out << "command: " << cmd << "\n";
    out << "config hash: " << hash_comment(cfg) << "\n";
    out << "seed: " << cfg.seed << "\n";
    files.push_back(path);
}

void write_plot_script(const RunConfig& cfg, const std::string& cmd,
                       const std::string& body, std::vector<std::string>& files) {
    const std::string path = out_path(cfg, cmd + ".gp");
    std::ofstream out(path, std::ios::binary);
    out << "# gnuplot template for " << cmd << ".csv\n" << body;
    files.push_back(path);
}

const PrismPairSpec& first_pair(const RunConfig& cfg) {
    if (!cfg.has_pairs)
        throw Error(ErrorCode::ValidationError,
                    "this command needs at least one [pair] section");
    return cfg.beamline.pairs.front();
}

double detector_z_or_focus(const RunConfig& cfg) {
    if (cfg.beamline.detector_z != 0.0) return cfg.beamline.detector_z;
    const PrismPairSpec& p = first_pair(cfg);
    const FocusPoint f = p.geometry == Geometry::Parallelogram
        ? focus_parallelogram(p, cfg.state, cfg.beamline.constants)
        : focus_triangular(p, cfg.state, cfg.beamline.constants);
    return f.z_f;
}

CommandResult cmd_refract(const RunConfig& cfg) {
    const Constants& c = cfg.beamline.constants;
    const PrismPairSpec& p = first_pair(cfg);
    const double dB = 2.0 * p.B1;  // hypotenuse discontinuity of the first prism
    CsvTable t;
    t.comments = {hash_comment(cfg), "single-boundary refraction sweep, dB = 2 B1"};
    t.columns = {"theta_in [rad]", "theta_out_up [rad]", "theta_out_down [rad]",
                 "v_out_up [m/s]", "v_out_down [m/s]",
                 "alpha_up_exact [rad]", "alpha_down_exact [rad]",
                 "alpha_up_first [rad]", "alpha_down_first [rad]"};
    for (int i = 0; i <= 80; ++i) {
        const double th = i * M_PI / 180.0;
        const auto up = refract_exact(th, cfg.state.v0, mu_sigma(Spin::Up, c), dB, c);
        const auto dn = refract_exact(th, cfg.state.v0, mu_sigma(Spin::Down, c), dB, c);
        t.rows.push_back({th, up.theta_out, dn.theta_out, up.v_out, dn.v_out,
                          up.theta_out - th, dn.theta_out - th,
                          deflection_first_order(th, cfg.state.v0, mu_sigma(Spin::Up, c), dB, c),
                          deflection_first_order(th, cfg.state.v0, mu_sigma(Spin::Down, c), dB, c)});
    }
    CommandResult r;
    const std::string path = out_path(cfg, "refract.csv");
    write_csv(path, t);
    r.files.push_back(path);
    write_sidecar(cfg, "refract", r.files);
    r.summary = "refract: wrote " + path;
    return r;
}

CommandResult cmd_trace(const RunConfig& cfg) {
    const Constants& c = cfg.beamline.constants;
    const TraceResult tr = trace_exact(cfg.beamline, cfg.state, c);
    CsvTable t;
    t.comments = {hash_comment(cfg), "exact two-path trace segments"};
    t.columns = {"spin (+1 up)", "segment", "y0 [m]", "z0 [m]", "y1 [m]", "z1 [m]",
                 "angle [rad]", "speed [m/s]", "zeeman [J]", "dt [s]", "region"};
    auto emit = [&](const SpinPath& p, double s) {
        int k = 0;
        for (const auto& seg : p.segments)
            t.rows.push_back({s, (double)k++, seg.y0, seg.z0, seg.y1, seg.z1,
                              seg.angle, seg.speed, seg.zeeman, seg.dt, (double)seg.region});
    };
    emit(tr.up, +1.0);
    emit(tr.down, -1.0);
    CommandResult r;
    const std::string path = out_path(cfg, "trace.csv");
    write_csv(path, t);
    r.files.push_back(path);

    CsvTable s;
    s.comments = {hash_comment(cfg), "trace summary: focus, times, phases"};
    s.columns = {"y_f [m]", "z_f [m]", "x_f [m]", "t_f_up [s]", "t_f_down [s]",
                 "larmor_up [rad]", "larmor_down [rad]", "kinetic_up [rad]",
                 "kinetic_down [rad]"};
    s.rows.push_back({tr.y_f, tr.z_f, tr.x_f, tr.t_f_up, tr.t_f_down,
                      tr.larmor_up, tr.larmor_down, tr.kinetic_up, tr.kinetic_down});
    const std::string spath = out_path(cfg, "trace_summary.csv");
    write_csv(spath, s);
    r.files.push_back(spath);
    write_sidecar(cfg, "trace", r.files);
    std::ostringstream os;
    os << "trace: focus at (y=" << tr.y_f << ", z=" << tr.z_f << ")";
    r.summary = os.str();
    return r;
}

CommandResult cmd_focus(const RunConfig& cfg) {
    const Constants& c = cfg.beamline.constants;
    const PrismPairSpec& p = first_pair(cfg);
    const FocusPoint closed = p.geometry == Geometry::Parallelogram
        ? focus_parallelogram(p, cfg.state, c)
        : focus_triangular(p, cfg.state, c);
    const TraceResult tr = trace_exact(cfg.beamline, cfg.state, c);
    const double z_det = detector_z_or_focus(cfg);
    const double L1 = z_det - p.z_center1;
    const double L2 = L1 - p.prism_spacing();
    const double residual = p.B1 * L1 - p.B2 * L2;

    CsvTable t;
    t.comments = {hash_comment(cfg),
                  "closed-form vs exact-trace focus; residual = B1 L1 - B2 L2 at the detector"};
    t.columns = {"y_f_closed [m]", "z_f_closed [m]", "y_f_oracle [m]", "z_f_oracle [m]",
                 "focus_residual [T m]", "detector_z [m]"};
    t.rows.push_back({closed.y_f, closed.z_f, tr.y_f, tr.z_f, residual, z_det});
    CommandResult r;
    const std::string path = out_path(cfg, "focus.csv");
    write_csv(path, t);
    r.files.push_back(path);
    write_sidecar(cfg, "focus", r.files);
    std::ostringstream os;
    os << "focus: closed form z_f=" << closed.z_f << ", oracle z_f=" << tr.z_f
       << ", B1L1-B2L2=" << residual << " T m";
    r.summary = os.str();
    return r;
}

CommandResult cmd_phase(const RunConfig& cfg) {
    const Constants& c = cfg.beamline.constants;
    const PrismPairSpec& p = first_pair(cfg);
    const double z = detector_z_or_focus(cfg);
    const double period = fringe_period(cfg.state.wavelength, p.B1, p.B2, c);
    const double phi = cfg.state.divergence;
    const int n = cfg.grid_n;
    const bool focal_plane =
        cfg.beamline.detector_orientation == DetectorOrientation::FocusingPlane;
    CsvTable t;
    t.comments = {hash_comment(cfg),
                  focal_plane ? "phase profile along the focusing plane"
                              : "phase profiles across two fringe periods"};
    t.columns = {"y [m]", "phase_half [rad]", "Phi1 [rad]", "Phi2 [rad]",
                 "larmor [rad]", "kinetic [rad]"};
    for (int i = 0; i < n; ++i) {
        const double y = -period + 2.0 * period * i / (n - 1);
        const PhaseResult ph = focal_plane
            ? phase_on_focus(p, p.geometry, y, phi, cfg.state, c)
            : phase_off_focus(p, p.geometry, y, z, phi, cfg.state, c);
        const double p1 = focal_plane
            ? 2.0 * ph.phase
            : phase_first_order(p, p.geometry, y, z, phi, cfg.state, c);
        const double p2 = phase_second_order(p, p.geometry, y, z, phi, cfg.state, c);
        t.rows.push_back({y, ph.phase, p1, p2, ph.larmor, ph.kinetic});
    }
    CommandResult r;
    const std::string path = out_path(cfg, "phase.csv");
    write_csv(path, t);
    r.files.push_back(path);
    write_plot_script(cfg, "phase",
                      "set datafile separator ','\n"
                      "plot 'phase.csv' using 1:3 with lines title 'Phi1', \\\n"
                      "     'phase.csv' using 1:4 with lines title 'Phi2'\n",
                      r.files);
    write_sidecar(cfg, "phase", r.files);
    r.summary = "phase: wrote " + path;
    return r;
}

CommandResult cmd_fringe(const RunConfig& cfg) {
    const Constants& c = cfg.beamline.constants;
    const PrismPairSpec& p = first_pair(cfg);
    // a detector along the focusing plane sees the divergence-independent
    // focal-plane phase: model it by the phase-focused vertical plane
    const bool focal_plane =
        cfg.beamline.detector_orientation == DetectorOrientation::FocusingPlane
        && p.B1 != p.B2;
    const double z = focal_plane ? p.prism_spacing() * p.B2 / (p.B2 - p.B1)
                                 : detector_z_or_focus(cfg);
    // uniform +-5 mrad ensemble unless the beam is declared divergence-free
    std::vector<PhiSample> ensemble;
    const int m = 41;
    for (int i = 0; i < m; ++i) {
        const double w = 5e-3;
        ensemble.push_back({-w + 2.0 * w * i / (m - 1), 1.0 / m});
    }
    const FringeProfile fp = fringe_visibility(p, p.geometry, z, ensemble, cfg.state, c);
    CsvTable t;
    char vis[64];
    std::snprintf(vis, sizeof vis, "visibility=%.6f", fp.visibility);
    t.comments = {hash_comment(cfg), vis};
    t.columns = {"y [m]", "intensity"};
    for (size_t i = 0; i < fp.y.size(); ++i)
        t.rows.push_back({fp.y[i], fp.intensity[i]});
    CommandResult r;
    const std::string path = out_path(cfg, "fringe.csv");
    write_csv(path, t);
    r.files.push_back(path);
    write_plot_script(cfg, "fringe",
                      "set datafile separator ','\n"
                      "plot 'fringe.csv' using 1:2 with lines title 'I(y)'\n",
                      r.files);
    write_sidecar(cfg, "fringe", r.files);
    r.summary = std::string(vis);
    return r;
}

CommandResult cmd_solve_fields(const RunConfig& cfg) {
    const CheckerboardSolution sol = solve_checkerboard(cfg);
    CsvTable t;
    t.comments = {hash_comment(cfg), "checkerboard focusing fields"};
    t.columns = {"B1 [T]", "B2 [T]", "B3 [T]", "B4 [T]", "dB [T]",
                 "kappa [rad/m]", "period [m]", "r0 [m]"};
    t.rows.push_back({sol.fields.B1, sol.fields.B2, sol.fields.B3, sol.fields.B4,
                      sol.dB, sol.kappa, sol.period, sol.r0});
    CommandResult r;
    const std::string path = out_path(cfg, "solve_fields.csv");
    write_csv(path, t);
    r.files.push_back(path);
    write_sidecar(cfg, "solve-fields", r.files);
    std::ostringstream os;
    os << "solve-fields: B1=" << sol.fields.B1 << " T, B2=" << sol.fields.B2
       << " T, B3=" << sol.fields.B3 << " T, B4=" << sol.fields.B4
       << " T, period=" << sol.period << " m";
    r.summary = os.str();
    return r;
}

double config_kappa(const RunConfig& cfg) {
    if (cfg.checkerboard) return solve_checkerboard(cfg).kappa;
    const PrismPairSpec& p = first_pair(cfg);
    const Constants& c = cfg.beamline.constants;
    if (p.geometry == Geometry::Parallelogram)
        return kappa_parallelogram(p.B1, p.B2, cfg.state.divergence, cfg.state.v0, c);
    return kappa_triangular(p.B1, p.B2, cfg.state.divergence, cfg.state.v0, c);
}

CommandResult cmd_texture(const RunConfig& cfg) {
    const double kappa = config_kappa(cfg);
    GridSpec gs;
    gs.nx = gs.ny = cfg.grid_n;
    gs.cells = cfg.cells;
    if (kappa == 0.0) {
        gs.x_min = gs.y_min = -1e-3;
        gs.x_max = gs.y_max = 1e-3;
    }
    const FieldGrid g = spin_texture(kappa, cfg.state.theta_in, cfg.state.phi_in, gs);
    CsvTable t;
    t.comments = {hash_comment(cfg), "Bloch-vector texture over the detector plane"};
    t.columns = {"x [m]", "y [m]", "sx", "sy", "sz", "phase [rad]"};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const size_t at = (size_t)j * g.nx + i;
            const auto& b = g.bloch[at];
            t.rows.push_back({g.x[i], g.y[j], b[0], b[1], b[2], g.phase[at]});
        }
    CommandResult r;
    const std::string path = out_path(cfg, "texture.csv");
    write_csv(path, t);
    r.files.push_back(path);
    write_plot_script(cfg, "texture",
                      "set datafile separator ','\nset view map\n"
                      "splot 'texture.csv' using 1:2:5 with points pt 5 ps 0.4 palette "
                      "title 'sz'\n",
                      r.files);
    write_sidecar(cfg, "texture", r.files);
    std::ostringstream os;
    os << "texture: kappa=" << kappa << " rad/m, period=" << (kappa != 0.0 ? M_PI / kappa : 0.0)
       << " m, grid " << g.nx << "x" << g.ny;
    r.summary = os.str();
    return r;
}

CommandResult cmd_oam(const RunConfig& cfg) {
    const double kappa = config_kappa(cfg);
    const Constants& c = cfg.beamline.constants;
    const double k0z = c.m * cfg.state.v0 / c.hbar;
    GridSpec gs;
    gs.nx = gs.ny = cfg.grid_n;
    gs.cells = cfg.cells;
    const FieldGrid g = oam_density(kappa, k0z, cfg.state.theta_in, cfg.state.phi_in,
                                    cfg.state.divergence, gs, cfg.subtract_carrier);
    CsvTable t;
    t.comments = {hash_comment(cfg),
                  cfg.subtract_carrier ? "OAM density, carrier terms subtracted"
                                       : "OAM density including carrier terms"};
    t.columns = {"x [m]", "y [m]", "Lx [hbar]", "Ly [hbar]", "Lz [hbar]"};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const auto& L = g.oam[(size_t)j * g.nx + i];
            t.rows.push_back({g.x[i], g.y[j], L[0], L[1], L[2]});
        }
    CommandResult r;
    const std::string path = out_path(cfg, "oam.csv");
    write_csv(path, t);
    r.files.push_back(path);
    write_plot_script(cfg, "oam",
                      "set datafile separator ','\nset view map\n"
                      "splot 'oam.csv' using 1:2:5 with points pt 5 ps 0.4 palette "
                      "title 'Lz'\n",
                      r.files);
    write_sidecar(cfg, "oam", r.files);
    r.summary = "oam: wrote " + path;
    return r;
}

// randomized invariant battery for the `validate` subcommand
CommandResult cmd_validate(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const Constants& c = cfg.beamline.constants;
    std::ostringstream report;
    bool all_ok = true;
    auto check = [&](const std::string& name, bool ok) {
        report << (ok ? "PASS " : "FAIL ") << name << "\n";
        all_ok = all_ok && ok;
    };

    {
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            const double lambda = (0.2 + 2.0 * uni(rng)) * 1e-9;
            const double B1 = 0.2 * uni(rng), B2 = 0.2 * uni(rng) + 0.21;
            const double v0 = wavelength_to_speed(lambda, c);
            const double p = fringe_period(lambda, B1, B2, c);
            const double kappa = kappa_parallelogram(B1, B2, 0.0, v0, c);
            ok = std::fabs(p * kappa - M_PI) < 1e-10 * M_PI;
        }
        check("fringe_period * kappa == pi", ok);
    }
    {
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            const double lambda = (0.2 + 2.0 * uni(rng)) * 1e-9;
            const double B1 = 0.2 * uni(rng), B2 = 0.2 * uni(rng) + 0.21;
            const double Ls = 0.1 + 2.0 * uni(rng);
            const double xi = entanglement_length_semsans(lambda, B1, B2, Ls, c);
            const double p = fringe_period(lambda, B1, B2, c);
            ok = std::fabs(xi - lambda * Ls / p) < 1e-12 * xi;
        }
        check("xi_SEM == lambda Ls / period", ok);
    }
    {
        bool ok = true;
        for (int i = 0; i < 500 && ok; ++i) {
            const double th = 1.4 * uni(rng);
            const double v = 200.0 + 600.0 * uni(rng);
            const double dB = 0.4 * (uni(rng) - 0.5);
            const double mu_s = mu_sigma(uni(rng) < 0.5 ? Spin::Up : Spin::Down, c);
            const auto out = refract_exact(th, v, mu_s, dB, c);
            const double tang = v * std::sin(th) - out.v_out * std::sin(out.theta_out);
            const double e_in = 0.5 * c.m * v * v;
            const double e_out = 0.5 * c.m * out.v_out * out.v_out - mu_s * dB;
            ok = std::fabs(tang) < 1e-12 * v && std::fabs(e_in - e_out) < 1e-12 * e_in;
        }
        check("tangential velocity and energy conserved across boundaries", ok);
    }
    {
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            const SpinOperator u = u_pair(10.0 + uni(rng), 10.0 + uni(rng),
                                          uni(rng), uni(rng));
            ok = unitarity_check(u) < 1e-12;
        }
        check("u_pair unitary", ok);
    }
    {
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            const double kappa = 1.0 + 10.0 * uni(rng);
            const double th = M_PI * uni(rng), ph = 2.0 * M_PI * uni(rng);
            const double x = 2.0 * uni(rng) - 1.0, y = 2.0 * uni(rng) - 1.0;
            const auto closed = spin_texture_point(kappa, th, ph, x, y);
            const Spinor psi = (u_pair(kappa, kappa, x, y)) * (bloch_spinor(th, ph));
            const auto op = bloch_vector(psi);
            ok = std::fabs(closed[0] - op[0]) < 1e-12 && std::fabs(closed[1] - op[1]) < 1e-12
                 && std::fabs(closed[2] - op[2]) < 1e-12;
            const double norm = std::sqrt(closed[0] * closed[0] + closed[1] * closed[1]
                                          + closed[2] * closed[2]);
            ok = ok && std::fabs(norm - 1.0) < 1e-9;
        }
        check("spin texture closed form == operator form, Bloch norm 1", ok);
    }
    {
        bool ok = true;
        for (int i = 0; i < 100 && ok; ++i) {
            const double kx = 1.0 + 10.0 * uni(rng), ky = 1.0 + 10.0 * uni(rng);
            const Spinor psi = bloch_spinor(M_PI * uni(rng), 2.0 * M_PI * uni(rng));
            const auto kicks = momentum_kicks(kx, ky, psi);
            double prob = 0.0;
            for (const auto& k : kicks) prob += norm2(k.amplitude);
            ok = std::fabs(prob - 1.0) < 1e-12;
        }
        check("momentum kicks conserve probability", ok);
    }
    if (cfg.has_pairs) {
        bool ok = true;
        try {
            const TraceResult tr = trace_exact(cfg.beamline, cfg.state, c);
            for (const SpinPath* p : {&tr.up, &tr.down}) {
                for (size_t i = 1; i < p->segments.size(); ++i) {
                    const auto& a = p->segments[i - 1];
                    const auto& b = p->segments[i];
                    if (std::hypot(a.y1 - b.y0, a.z1 - b.z0) > 1e-12) ok = false;
                }
                const double E = 0.5 * c.m * cfg.state.v0 * cfg.state.v0;
                for (const auto& s : p->segments) {
                    const double e = 0.5 * c.m * s.speed * s.speed + s.zeeman;
                    if (std::fabs(e - E) > 1e-12 * E) ok = false;
                }
            }
        } catch (const Error&) {
            ok = false;
        }
        check("exact trace continuous and energy conserving", ok);
    }

    CommandResult r;
    const std::string path = out_path(cfg, "validate.txt");
    std::ofstream out(path);
    out << report.str();
    r.files.push_back(path);
    r.summary = report.str() + (all_ok ? "validate: all checks passed" : "validate: FAILURES");
    r.ok = all_ok;
    return r;
}

}  // namespace

CheckerboardSolution solve_checkerboard(const RunConfig& cfg) {
    if (!cfg.checkerboard)
        throw Error(ErrorCode::ValidationError, "config has no [checkerboard] section");
    const CheckerboardSetup& s = *cfg.checkerboard;
    const Constants& c = cfg.beamline.constants;
    CheckerboardSolution sol;
    sol.fields = s.capped ? solve_checkerboard_capped(s.field_cap, s.L1, s.L2, s.L3, s.L4)
                          : solve_checkerboard_fields(s.B1, s.L1, s.L2, s.L3, s.L4);
    sol.dB = std::fabs(sol.fields.B1 - sol.fields.B2);
    sol.kappa_spec = kappa_from_fields(sol.fields, Geometry::Parallelogram,
                                       cfg.state.divergence, cfg.state.v0, c);
    sol.kappa = kappa_parallelogram(sol.fields.B1, sol.fields.B2, 0.0, cfg.state.v0, c);
    sol.period = M_PI / sol.kappa;
    sol.r0 = texture_length_r0(cfg.state.v0, sol.dB, c);

    // first prism center at the origin; detector (common focus) at z = L1
    sol.beamline.constants = c;
    sol.beamline.detector_z = s.L1;
    PrismPairSpec p1;
    p1.a = s.a;
    p1.gap = s.L1 - s.L2 - s.a;
    p1.B1 = sol.fields.B1;
    p1.B2 = sol.fields.B2;
    p1.field_axis = {1.0, 0.0, 0.0};
    p1.z_center1 = 0.0;
    p1.L1 = s.L1;
    p1.L2 = s.L2;
    PrismPairSpec p2;
    p2.a = s.a;
    p2.gap = s.L3 - s.L4 - s.a;
    p2.B1 = sol.fields.B3;
    p2.B2 = sol.fields.B4;
    p2.field_axis = {0.0, 1.0, 0.0};
    p2.z_center1 = s.L1 - s.L3;
    p2.L1 = s.L3;
    p2.L2 = s.L4;
    sol.beamline.pairs = {p1, p2};
    return sol;
}

CommandResult run_command(const std::string& cmd, const RunConfig& cfg) {
    if (cfg.grid_n < 2)
        throw Error(ErrorCode::ValidationError, "--grid needs at least 2 samples");
    if (cfg.cells < 1)
        throw Error(ErrorCode::ValidationError, "--cells must be positive");
    if (cmd == "refract") return cmd_refract(cfg);
    if (cmd == "trace") return cmd_trace(cfg);
    if (cmd == "focus") return cmd_focus(cfg);
    if (cmd == "phase") return cmd_phase(cfg);
    if (cmd == "fringe") return cmd_fringe(cfg);
    if (cmd == "solve-fields") return cmd_solve_fields(cfg);
    if (cmd == "texture") return cmd_texture(cfg);
    if (cmd == "oam") return cmd_oam(cfg);
    if (cmd == "validate") return cmd_validate(cfg);
    throw Error(ErrorCode::ValidationError, "unknown command '" + cmd + "'");
}

}  // namespace semsans
