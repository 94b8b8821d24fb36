#include "pullin/cli.hpp"

#include "pullin/error.hpp"
#include "pullin/modal.hpp"
#include "pullin/numfmt.hpp"
#include "pullin/pullin.hpp"
#include "pullin/study_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <map>
#include <numbers>
#include <sstream>

namespace plab::cli {

using nlohmann::json;

namespace {

using RawFlags = std::map<std::string, std::vector<std::string>>;

constexpr double kStaticDefaultVoltage = 10.0;
constexpr double kModalDefaultVoltage = 0.0;
constexpr double kDynamicPeriods = 8.0;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot read config '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
}

void expect_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!obj.is_object()) {
        throw InvalidArgument("config: '" + where + "' must be an object");
    }
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return item.key() == k; }) == allowed.end()) {
            throw InvalidArgument("config: unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T>
void read_if(const json& obj, const char* key, T& target)
{
    if (obj.contains(key)) {
        target = obj.at(key).get<T>();
    }
}

// --- flags -----------------------------------------------------------------

struct FlagSpec {
    const char* name;  // without leading dashes
    const char* help;
    bool list;
};

const FlagSpec kBeamFlags[] = {
    {"length", "beam length L (m, or e.g. 300um)", false},
    {"width", "beam width b (m)", false},
    {"thickness", "beam thickness h (m)", false},
    {"gap", "initial gap G (m)", false},
    {"youngs", "Young's modulus E (Pa)", false},
    {"density", "density (kg/m^3)", false},
    {"tip-mass", "tip proof mass M (kg)", false},
    {"grid-n", "grid nodes including clamp and tip", false},
    {"rel-tol", "Picard relative tolerance", false},
};

void add_flag(CLI::App* sub, RawFlags& raw, const FlagSpec& f)
{
    const std::string key = f.name;
    if (f.list) {
        sub->add_option_function<std::vector<std::string>>(
               "--" + key, [&raw, key](const std::vector<std::string>& v) { raw[key] = v; }, f.help)
            ->delimiter(',');
    } else {
        sub->add_option_function<std::string>(
            "--" + key, [&raw, key](const std::string& v) { raw[key] = {v}; }, f.help);
    }
}

void add_common(CLI::App* sub, RawFlags& raw, bool beam)
{
    add_flag(sub, raw, {"config", "JSON config file; flags override it", false});
    add_flag(sub, raw, {"out", "directory for machine-readable output", false});
    if (beam) {
        for (const FlagSpec& f : kBeamFlags) {
            add_flag(sub, raw, f);
        }
    }
}

std::size_t parse_count(const std::string& text, const char* what)
{
    const double v = parse_quantity(text, false);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e9) {
        throw InvalidArgument(std::string(what) + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_list(const std::vector<std::string>& items, bool micrometres)
{
    std::vector<double> v;
    for (const std::string& s : items) {
        v.push_back(parse_quantity(s, micrometres));
    }
    return v;
}

void apply_flags(RunConfig& cfg, const RawFlags& raw, const std::string& command)
{
    const std::map<std::string, std::function<void(const std::vector<std::string>&)>> setters = {
        {"length", [&](auto& v) { cfg.beam.length_m = parse_quantity(v[0], true); }},
        {"width", [&](auto& v) { cfg.beam.width_m = parse_quantity(v[0], true); }},
        {"thickness", [&](auto& v) { cfg.beam.thickness_m = parse_quantity(v[0], true); }},
        {"gap",
         [&](auto& v) {
             const double g = parse_quantity(v[0], true);
             (command == "lumped" ? cfg.lumped.gap_m : cfg.beam.gap_m) = g;
         }},
        {"youngs", [&](auto& v) { cfg.beam.youngs_pa = parse_quantity(v[0], false); }},
        {"density", [&](auto& v) { cfg.beam.density_kg_m3 = parse_quantity(v[0], false); }},
        {"tip-mass", [&](auto& v) { cfg.beam.tip_mass_kg = parse_quantity(v[0], false); }},
        {"grid-n", [&](auto& v) { cfg.grid_n = parse_count(v[0], "--grid-n"); }},
        {"rel-tol", [&](auto& v) { cfg.opts.rel_tolerance = parse_quantity(v[0], false); }},
        {"voltage", [&](auto& v) { cfg.voltage = parse_quantity(v[0], false); }},
        {"tol", [&](auto& v) { cfg.pullin_tol = parse_quantity(v[0], false); }},
        {"vary", [&](auto& v) { cfg.vary = parse_study_parameter(v[0]); }},
        {"values", [&](auto& v) { cfg.values = parse_list(v, true); }},
        {"voltages", [&](auto& v) { cfg.voltages = parse_list(v, false); }},
        {"dc", [&](auto& v) { cfg.drive.dc_v = parse_quantity(v[0], false); }},
        {"ac-amplitude", [&](auto& v) { cfg.drive.ac_amplitude_v = parse_quantity(v[0], false); }},
        {"ac-frequency",
         [&](auto& v) { cfg.drive.ac_frequency_rad_s = parse_quantity(v[0], false); }},
        {"duration", [&](auto& v) { cfg.duration_s = parse_quantity(v[0], false); }},
        {"dt", [&](auto& v) { cfg.dt_s = parse_quantity(v[0], false); }},
        {"modes", [&](auto& v) { cfg.modes = parse_count(v[0], "--modes"); }},
        {"km", [&](auto& v) { cfg.lumped.spring_n_m = parse_quantity(v[0], false); }},
        {"area", [&](auto& v) { cfg.lumped.area_m2 = parse_quantity(v[0], false); }},
    };
    for (const auto& [key, values] : raw) {
        const auto it = setters.find(key);
        if (it != setters.end()) {
            it->second(values);
        }
    }
}

// --- subcommands -----------------------------------------------------------

struct Context {
    RunConfig cfg;
    std::optional<std::filesystem::path> out_dir;
    std::ostream& out;
    std::ostream& err;

    void emit(const char* name, const std::string& text) const
    {
        if (out_dir) {
            write_text(*out_dir / name, text);
        }
    }
};

Grid beam_grid(const Context& c)
{
    validate(c.cfg.beam);
    validate(c.cfg.opts);
    for (const std::string& w : warnings(c.cfg.beam)) {
        c.err << "warning: " << w << "\n";
    }
    return build_grid(c.cfg.grid_n, c.cfg.beam);
}

int cmd_static(const Context& c)
{
    const Grid grid = beam_grid(c);
    const double v = c.cfg.voltage.value_or(kStaticDefaultVoltage);
    const StaticSolution sol = solve_static(c.cfg.beam, v, grid, c.cfg.opts);
    if (!sol.converged) {
        throw PastPullInError("no static equilibrium at " + num(v) + " V (" +
                              std::string(to_string(sol.status)) + "); beyond pull-in");
    }
    std::string csv = "x_m,deflection_m\n";
    for (std::size_t i = 0; i < grid.n_nodes; ++i) {
        csv += format_double(grid.position(i)) + "," + format_double(sol.deflection_m[i]) + "\n";
    }
    c.emit("static.csv", csv);
    c.out << "static: tip deflection " << num(sol.tip()) << " m at " << num(v) << " V (tip/G "
          << num(sol.tip() / c.cfg.beam.gap_m) << ", " << sol.iterations << " iterations)\n";
    return 0;
}

int cmd_sweep(const Context& c)
{
    const Grid grid = beam_grid(c);
    std::vector<double> voltages;
    if (c.cfg.voltages) {
        voltages = *c.cfg.voltages;
    } else {
        const PullInResult pi = find_pullin(c.cfg.beam, pullin_seed_voltage(c.cfg.beam),
                                            c.cfg.pullin_tol, grid, c.cfg.opts);
        voltages = auto_voltage_grid(pi.v_lower);
    }
    const DeflectionCurve curve = sweep_voltage(c.cfg.beam, voltages, grid, c.cfg.opts);
    std::string csv = "voltage_V,tip_deflection_m,converged\n";
    std::size_t ok = 0;
    double tip_max = 0.0;
    for (const CurvePoint& p : curve.points) {
        csv += format_double(p.voltage) + "," + format_double(p.tip_deflection_m) + "," +
               (p.converged ? "true" : "false") + "\n";
        if (p.converged) {
            ++ok;
            tip_max = std::max(tip_max, p.tip_deflection_m);
        }
    }
    c.emit("sweep.csv", csv);
    c.out << "sweep: " << ok << " of " << curve.points.size()
          << " voltages converged, largest tip deflection " << num(tip_max) << " m\n";
    return 0;
}

int cmd_pullin(const Context& c)
{
    const Grid grid = beam_grid(c);
    const PullInResult r = find_pullin(c.cfg.beam, pullin_seed_voltage(c.cfg.beam),
                                       c.cfg.pullin_tol, grid, c.cfg.opts);
    const double ratio = compare_stability(r, c.cfg.beam);
    c.emit("pullin.csv", "v_lower_V,v_upper_V,tip_at_lower_m,tip_over_gap\n" +
                             format_double(r.v_lower) + "," + format_double(r.v_upper) + "," +
                             format_double(r.tip_at_lower_m) + "," + format_double(ratio) + "\n");
    c.out << "pullin: V_PI in [" << num(r.v_lower) << ", " << num(r.v_upper)
          << "] V, tip at lower " << num(r.tip_at_lower_m) << " m, tip_over_gap " << num(ratio)
          << " (1-DOF limit 0.333333)\n";
    return 0;
}

int cmd_modal(const Context& c)
{
    const Grid grid = beam_grid(c);
    const double v = c.cfg.voltage.value_or(kModalDefaultVoltage);
    const ModalResult r = modal_analysis(c.cfg.beam, v, grid, c.cfg.modes, c.cfg.opts);
    std::string freq = "mode,omega_rad_s,frequency_hz,residual\n";
    std::string shapes = "x_m";
    for (std::size_t k = 0; k < r.frequencies_rad_s.size(); ++k) {
        const double w = r.frequencies_rad_s[k];
        freq += std::to_string(k + 1) + "," + format_double(w) + "," +
                format_double(w / (2.0 * std::numbers::pi)) + "," +
                format_double(r.eigen_residuals[k]) + "\n";
        shapes += ",mode_" + std::to_string(k + 1);
    }
    shapes += "\n";
    for (std::size_t i = 0; i < grid.n_nodes; ++i) {
        shapes += format_double(grid.position(i));
        for (const auto& s : r.mode_shapes) {
            shapes += "," + format_double(s[i]);
        }
        shapes += "\n";
    }
    c.emit("modal.csv", freq);
    c.emit("modes.csv", shapes);
    c.out << "modal: omega_1 = " << num(r.frequencies_rad_s[0]) << " rad/s ("
          << num(r.frequencies_rad_s[0] / (2.0 * std::numbers::pi)) << " Hz) at " << num(v)
          << " V, " << r.frequencies_rad_s.size() << " modes\n";
    return 0;
}

int cmd_dynamic(const Context& c)
{
    const Grid grid = beam_grid(c);
    validate(c.cfg.drive);
    const double dt = c.cfg.dt_s > 0.0
                          ? c.cfg.dt_s
                          : recommended_time_step(c.cfg.beam, grid, c.cfg.drive.dc_v, c.cfg.opts);
    double duration = c.cfg.duration_s;
    if (!(duration > 0.0)) {
        double omega1 = 0.0;
        try {
            omega1 = modal_analysis(c.cfg.beam, c.cfg.drive.dc_v, grid, 1, c.cfg.opts)
                         .frequencies_rad_s[0];
        } catch (const PastPullInError&) {
            omega1 = modal_analysis(c.cfg.beam, 0.0, grid, 1, c.cfg.opts).frequencies_rad_s[0];
        }
        duration = kDynamicPeriods * 2.0 * std::numbers::pi / omega1;
    }
    const DynamicTrace trace = simulate(c.cfg.beam, c.cfg.drive, duration, dt, grid, c.cfg.opts);
    for (const std::string& w : trace.warnings) {
        c.err << "warning: " << w << "\n";
    }
    std::string csv = "time_s,tip_deflection_m\n";
    for (std::size_t j = 0; j < trace.times_s.size(); ++j) {
        csv += format_double(trace.times_s[j]) + "," + format_double(trace.tip_history_m[j]) + "\n";
    }
    c.emit("dynamic.csv", csv);
    if (trace.diverged_at) {
        c.out << "dynamic: pull-in at t = " << num(trace.times_s.back()) << " s (step "
              << *trace.diverged_at << ", dt " << num(dt) << " s)\n";
        return 1;
    }
    c.out << "dynamic: " << trace.times_s.size() << " steps of " << num(dt)
          << " s, tip midline " << num(oscillation_midline(trace.tip_history_m)) << " m, final tip "
          << num(trace.tip_history_m.back()) << " m\n";
    return 0;
}

int cmd_lumped(const Context& c)
{
    const LumpedModel& m = c.cfg.lumped;
    validate(m);
    const double v_pi = pullin_voltage_1d(m);
    const double y_pi = pullin_position(m);
    std::string csv = "v_pullin_V,y_pullin_m";
    std::string row = format_double(v_pi) + "," + format_double(y_pi);
    std::string extra;
    if (c.cfg.voltage) {
        const double y = equilibrium_1d(m, *c.cfg.voltage);
        csv += ",voltage_V,equilibrium_m";
        row += "," + format_double(*c.cfg.voltage) + "," + format_double(y);
        extra = ", equilibrium " + num(y) + " m at " + num(*c.cfg.voltage) + " V";
    }
    c.emit("lumped.csv", csv + "\n" + row + "\n");
    c.out << "lumped: pull-in voltage " << num(v_pi) << " V at y = " << num(y_pi) << " m (G/3)"
          << extra << "\n";
    return 0;
}

int cmd_study(const Context& c)
{
    validate(c.cfg.beam);
    StudySpec spec;
    spec.base = c.cfg.beam;
    spec.vary = c.cfg.vary;
    spec.values = c.cfg.values.empty() ? default_study_values(c.cfg.vary) : c.cfg.values;
    spec.voltages = c.cfg.voltages;
    spec.outputs = c.cfg.outputs;
    spec.profile_voltage = c.cfg.voltage.value_or(kStaticDefaultVoltage);
    spec.grid_n = c.cfg.grid_n;
    spec.opts = c.cfg.opts;
    spec.pullin_tol = c.cfg.pullin_tol;

    const StudyResult result = run_study(spec);
    if (c.out_dir) {
        for (ExportFormat f : {ExportFormat::csv, ExportFormat::svg, ExportFormat::json}) {
            export_study(result, f, *c.out_dir);
        }
    }
    std::size_t failed = 0;
    std::string vpi;
    for (const StudyEntry& e : result.entries) {
        if (!e.error.empty()) {
            ++failed;
            c.err << "warning: " << to_string(spec.vary) << " = " << num(e.value_m)
                  << " m failed: " << e.error << "\n";
        } else if (e.pullin) {
            vpi += (vpi.empty() ? "" : ", ") + num(e.pullin->v_lower);
        }
    }
    c.out << "study: vary " << to_string(spec.vary) << " over " << result.entries.size()
          << " values, " << failed << " failed" << (vpi.empty() ? "" : "; V_PI " + vpi + " V")
          << "\n";
    return failed == result.entries.size() ? 1 : 0;
}

}  // namespace

double parse_quantity(const std::string& text, bool allow_micrometres)
{
    std::string body = text;
    double scale = 1.0;
    if (body.size() > 2 && body.compare(body.size() - 2, 2, "um") == 0) {
        if (!allow_micrometres) {
            throw InvalidArgument("'" + text + "': the um suffix applies to lengths only");
        }
        body.resize(body.size() - 2);
        // "2.5um" parses as 2.5e-6 exactly, which 2.5 * 1e-6 is not.
        if (body.find_first_of("eE") == std::string::npos) {
            body += "e-6";
        } else {
            scale = 1e-6;
        }
    }
    const double v = parse_double(body) * scale;
    if (!std::isfinite(v)) {
        throw InvalidArgument("'" + text + "' is not finite");
    }
    return v;
}

RunConfig apply_config_json(std::string_view text, RunConfig cfg)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        expect_keys(doc,
                    {"beam", "grid_n", "solver", "voltage", "tol", "drive", "modes", "lumped",
                     "study", "sweep"},
                    "config");
        if (doc.contains("beam")) {
            const json& b = doc["beam"];
            expect_keys(b,
                        {"length_m", "width_m", "thickness_m", "gap_m", "youngs_pa",
                         "density_kg_m3", "permittivity_f_m", "tip_mass_kg"},
                        "beam");
            read_if(b, "length_m", cfg.beam.length_m);
            read_if(b, "width_m", cfg.beam.width_m);
            read_if(b, "thickness_m", cfg.beam.thickness_m);
            read_if(b, "gap_m", cfg.beam.gap_m);
            read_if(b, "youngs_pa", cfg.beam.youngs_pa);
            read_if(b, "density_kg_m3", cfg.beam.density_kg_m3);
            read_if(b, "permittivity_f_m", cfg.beam.permittivity_f_m);
            read_if(b, "tip_mass_kg", cfg.beam.tip_mass_kg);
        }
        read_if(doc, "grid_n", cfg.grid_n);
        if (doc.contains("solver")) {
            const json& s = doc["solver"];
            expect_keys(s, {"rel_tolerance", "max_iterations", "relaxation"}, "solver");
            read_if(s, "rel_tolerance", cfg.opts.rel_tolerance);
            read_if(s, "max_iterations", cfg.opts.max_iterations);
            read_if(s, "relaxation", cfg.opts.relaxation);
        }
        if (doc.contains("voltage")) {
            cfg.voltage = doc["voltage"].get<double>();
        }
        read_if(doc, "tol", cfg.pullin_tol);
        if (doc.contains("drive")) {
            const json& d = doc["drive"];
            expect_keys(d,
                        {"dc_v", "ac_amplitude_v", "ac_frequency_rad_s", "ac_phase_rad",
                         "duration_s", "dt_s"},
                        "drive");
            read_if(d, "dc_v", cfg.drive.dc_v);
            read_if(d, "ac_amplitude_v", cfg.drive.ac_amplitude_v);
            read_if(d, "ac_frequency_rad_s", cfg.drive.ac_frequency_rad_s);
            read_if(d, "ac_phase_rad", cfg.drive.ac_phase_rad);
            read_if(d, "duration_s", cfg.duration_s);
            read_if(d, "dt_s", cfg.dt_s);
        }
        read_if(doc, "modes", cfg.modes);
        if (doc.contains("lumped")) {
            const json& l = doc["lumped"];
            expect_keys(l, {"spring_n_m", "area_m2", "gap_m", "permittivity_f_m", "gamma"},
                        "lumped");
            read_if(l, "spring_n_m", cfg.lumped.spring_n_m);
            read_if(l, "area_m2", cfg.lumped.area_m2);
            read_if(l, "gap_m", cfg.lumped.gap_m);
            read_if(l, "permittivity_f_m", cfg.lumped.permittivity_f_m);
            read_if(l, "gamma", cfg.lumped.gamma);
        }
        auto read_voltages = [&](const json& j) {
            if (j.is_string() && j.get<std::string>() == "auto") {
                cfg.voltages.reset();
            } else {
                cfg.voltages = j.get<std::vector<double>>();
            }
        };
        if (doc.contains("sweep")) {
            const json& s = doc["sweep"];
            expect_keys(s, {"voltages"}, "sweep");
            if (s.contains("voltages")) {
                read_voltages(s["voltages"]);
            }
        }
        if (doc.contains("study")) {
            const json& s = doc["study"];
            expect_keys(s, {"vary", "values", "voltages", "outputs"}, "study");
            if (s.contains("vary")) {
                cfg.vary = parse_study_parameter(s["vary"].get<std::string>());
            }
            read_if(s, "values", cfg.values);
            if (s.contains("voltages")) {
                read_voltages(s["voltages"]);
            }
            if (s.contains("outputs")) {
                cfg.outputs = {false, false, false};
                for (const std::string& name : s["outputs"].get<std::vector<std::string>>()) {
                    if (name == "curves") cfg.outputs.curves = true;
                    else if (name == "pullin") cfg.outputs.pullin = true;
                    else if (name == "profile") cfg.outputs.profile = true;
                    else throw InvalidArgument("config: unknown study output '" + name + "'");
                }
            }
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    return cfg;
}

std::vector<double> default_study_values(StudyParameter p)
{
    switch (p) {
    case StudyParameter::length: return {200e-6, 225e-6, 250e-6, 275e-6, 300e-6};
    case StudyParameter::thickness:
    case StudyParameter::gap: return {2e-6, 2.5e-6, 3e-6, 3.5e-6, 4e-6};
    case StudyParameter::width: return {25e-6, 50e-6, 100e-6};
    }
    return {};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Static and dynamic solver for an electrostatically actuated cantilever",
                 "pullin_lab"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    RawFlags raw;

    CLI::App* s_static = app.add_subcommand("static", "static deflection at one voltage");
    add_common(s_static, raw, true);
    add_flag(s_static, raw, {"voltage", "DC voltage (V), default 10", false});

    CLI::App* s_sweep = app.add_subcommand("sweep", "tip deflection over a list of voltages");
    add_common(s_sweep, raw, true);
    add_flag(s_sweep, raw, {"voltages", "comma-separated volts; default: 40 up to pull-in", true});
    add_flag(s_sweep, raw, {"tol", "pull-in bracket width for the auto grid (V)", false});

    CLI::App* s_pullin = app.add_subcommand("pullin", "bracket the static pull-in voltage");
    add_common(s_pullin, raw, true);
    add_flag(s_pullin, raw, {"tol", "bracket width (V), default 0.01", false});

    CLI::App* s_modal = app.add_subcommand("modal", "natural frequencies about a DC bias");
    add_common(s_modal, raw, true);
    add_flag(s_modal, raw, {"voltage", "DC bias (V), default 0", false});
    add_flag(s_modal, raw, {"modes", "number of modes, 1..5 (default 3)", false});

    CLI::App* s_dynamic = app.add_subcommand("dynamic", "transient response to a DC + AC drive");
    add_common(s_dynamic, raw, true);
    add_flag(s_dynamic, raw, {"dc", "DC voltage (V), default 1", false});
    add_flag(s_dynamic, raw, {"ac-amplitude", "AC amplitude (V)", false});
    add_flag(s_dynamic, raw, {"ac-frequency", "AC angular frequency (rad/s)", false});
    add_flag(s_dynamic, raw, {"duration", "simulated time (s); default 8 periods of mode 1", false});
    add_flag(s_dynamic, raw, {"dt", "time step (s); default 1.4 / omega_2", false});

    CLI::App* s_lumped = app.add_subcommand("lumped", "1-DOF spring and parallel-plate model");
    add_common(s_lumped, raw, false);
    add_flag(s_lumped, raw, {"km", "spring constant (N/m)", false});
    add_flag(s_lumped, raw, {"area", "electrode area (m^2)", false});
    add_flag(s_lumped, raw, {"gap", "gap (m)", false});
    add_flag(s_lumped, raw, {"voltage", "also solve the equilibrium at this voltage", false});

    CLI::App* s_study = app.add_subcommand("study", "parametric study over one dimension");
    add_common(s_study, raw, true);
    add_flag(s_study, raw, {"vary", "length, thickness, gap or width", false});
    add_flag(s_study, raw, {"values", "comma-separated values (m or um)", true});
    add_flag(s_study, raw, {"voltages", "comma-separated volts; default: up to pull-in", true});
    add_flag(s_study, raw, {"voltage", "profile voltage (V), default 10", false});
    add_flag(s_study, raw, {"tol", "pull-in bracket width (V)", false});

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        RunConfig cfg;
        if (const auto it = raw.find("config"); it != raw.end()) {
            cfg = apply_config_json(read_text(it->second.front()), cfg);
        }
        apply_flags(cfg, raw, command);
        std::optional<std::filesystem::path> out_dir;
        if (const auto it = raw.find("out"); it != raw.end()) {
            out_dir = it->second.front();
        }
        const Context c{std::move(cfg), out_dir, out, err};
        if (command == "static") return cmd_static(c);
        if (command == "sweep") return cmd_sweep(c);
        if (command == "pullin") return cmd_pullin(c);
        if (command == "modal") return cmd_modal(c);
        if (command == "dynamic") return cmd_dynamic(c);
        if (command == "lumped") return cmd_lumped(c);
        return cmd_study(c);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace plab::cli
