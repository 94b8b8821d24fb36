#include "pullin/study.hpp"

#include "pullin/error.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <omp.h>

namespace plab {

namespace {

std::string utc_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buf;
}

StudyEntry run_entry(const StudySpec& spec, double value) noexcept
{
    StudyEntry entry;
    entry.value_m = value;
    try {
        const BeamParams params = with_parameter(spec.base, spec.vary, value);
        entry.gap_m = params.gap_m;
        entry.stability_limit_m = sdof_stability_limit(params.gap_m);
        const Grid grid = build_grid(spec.grid_n, params);

        if (spec.outputs.profile) {
            const StaticSolution sol = solve_static(params, spec.profile_voltage, grid, spec.opts);
            entry.profile_x_m.resize(grid.n_nodes);
            for (std::size_t i = 0; i < grid.n_nodes; ++i) {
                entry.profile_x_m[i] = grid.position(i);
            }
            if (sol.converged) {
                entry.profile_m = sol.deflection_m;
            }
        }

        if (spec.outputs.pullin || (spec.outputs.curves && !spec.voltages)) {
            entry.pullin = find_pullin(params, pullin_seed_voltage(params), spec.pullin_tol, grid,
                                       spec.opts);
        }
        if (spec.outputs.curves) {
            const std::vector<double> voltages =
                spec.voltages ? *spec.voltages : auto_voltage_grid(entry.pullin->v_lower);
            entry.curve = sweep_voltage(params, voltages, grid, spec.opts);
        }
        if (!spec.outputs.pullin) {
            entry.pullin.reset();
        }
    } catch (const std::exception& e) {
        entry.error = e.what();
    }
    return entry;
}

StudyResult prepare(const StudySpec& spec)
{
    validate(spec);
    StudyResult result;
    result.vary = spec.vary;
    result.base = spec.base;
    result.outputs = spec.outputs;
    result.entries.resize(spec.values.size());
    result.metadata.grid_n = spec.grid_n;
    result.metadata.opts = spec.opts;
    result.metadata.pullin_tol = spec.pullin_tol;
    result.metadata.profile_voltage = spec.profile_voltage;
    result.metadata.auto_voltages = !spec.voltages.has_value();
    result.metadata.created_utc = utc_now();
    return result;
}

}  // namespace

std::string_view to_string(StudyParameter p)
{
    switch (p) {
    case StudyParameter::length: return "length";
    case StudyParameter::thickness: return "thickness";
    case StudyParameter::gap: return "gap";
    case StudyParameter::width: return "width";
    }
    return "unknown";
}

StudyParameter parse_study_parameter(std::string_view name)
{
    for (StudyParameter p : {StudyParameter::length, StudyParameter::thickness,
                             StudyParameter::gap, StudyParameter::width}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    throw InvalidArgument("cannot vary '" + std::string(name) +
                          "'; expected length, thickness, gap or width");
}

BeamParams with_parameter(BeamParams base, StudyParameter p, double value_m)
{
    switch (p) {
    case StudyParameter::length: base.length_m = value_m; break;
    case StudyParameter::thickness: base.thickness_m = value_m; break;
    case StudyParameter::gap: base.gap_m = value_m; break;
    case StudyParameter::width: base.width_m = value_m; break;
    }
    return base;
}

void validate(const StudySpec& spec)
{
    validate(spec.base);
    validate(spec.opts);
    if (spec.values.empty()) {
        throw InvalidArgument("study needs at least one parameter value");
    }
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        if (!(spec.values[i] > 0.0) || !std::isfinite(spec.values[i])) {
            throw InvalidArgument("study values must be positive");
        }
        if (i > 0 && !(spec.values[i] > spec.values[i - 1])) {
            throw InvalidArgument("study values must be strictly ascending");
        }
    }
    if (spec.voltages && spec.voltages->empty()) {
        throw InvalidArgument("explicit voltage list is empty");
    }
    if (spec.grid_n < kMinGridNodes) {
        throw InvalidArgument("grid needs at least " + std::to_string(kMinGridNodes) + " nodes");
    }
    if (!(spec.pullin_tol > 0.0)) {
        throw InvalidArgument("pull-in tolerance must be positive");
    }
    if (!std::isfinite(spec.profile_voltage)) {
        throw InvalidArgument("profile voltage must be finite");
    }
}

std::vector<double> auto_voltage_grid(double v_top, std::size_t count, double ratio)
{
    if (count < 2 || !(ratio > 0.0 && ratio < 1.0)) {
        throw InvalidArgument("auto voltage grid needs count >= 2 and ratio in (0, 1)");
    }
    std::vector<double> v(count);
    const double denom = 1.0 - std::pow(ratio, static_cast<double>(count - 1));
    for (std::size_t k = 0; k < count; ++k) {
        v[k] = v_top * (1.0 - std::pow(ratio, static_cast<double>(k))) / denom;
    }
    v.back() = v_top;
    return v;
}

int study_thread_limit()
{
    const char* env = std::getenv("PULLIN_LAB_THREADS");
    if (env == nullptr) {
        return 0;
    }
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n <= 0) {
        return 0;
    }
    return static_cast<int>(n);
}

StudyResult run_study(const StudySpec& spec, int threads)
{
    StudyResult result = prepare(spec);
    int team = threads > 0 ? threads : study_thread_limit();
    if (team <= 0) {
        team = omp_get_max_threads();
    }
    const auto count = static_cast<std::ptrdiff_t>(spec.values.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        result.entries[i] = run_entry(spec, spec.values[i]);
    }
    return result;
}

StudyResult run_study_serial(const StudySpec& spec)
{
    StudyResult result = prepare(spec);
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        result.entries[i] = run_entry(spec, spec.values[i]);
    }
    return result;
}

}  // namespace plab
