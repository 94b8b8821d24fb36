#include "pullin/pullin.hpp"

#include "pullin/error.hpp"
#include "pullin/lumped.hpp"

#include <cmath>
#include <omp.h>
#include <string>

namespace plab {

DeflectionCurve sweep_voltage(const BeamParams& params, std::span<const double> voltages,
                              const Grid& grid, const SolverOptions& opts)
{
    const StaticSolver solver(params, grid, opts);
    DeflectionCurve curve;
    curve.points.reserve(voltages.size());

    StaticSolution warm;
    bool have_warm = false;
    for (double v : voltages) {
        const bool use_warm = have_warm && std::abs(warm.voltage) <= std::abs(v);
        StaticSolution sol = use_warm ? solver.solve(v, warm.deflection_m) : solver.solve(v);
        curve.points.push_back({v, sol.tip(), sol.converged});
        if (sol.converged) {
            warm = std::move(sol);
            have_warm = true;
        }
    }
    return curve;
}

DeflectionCurve sweep_voltage_independent(const BeamParams& params,
                                          std::span<const double> voltages, const Grid& grid,
                                          const SolverOptions& opts, int threads)
{
    const StaticSolver solver(params, grid, opts);
    DeflectionCurve curve;
    curve.points.resize(voltages.size());
    const auto count = static_cast<std::ptrdiff_t>(voltages.size());

    if (threads == 1) {
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const StaticSolution sol = solver.solve(voltages[i]);
            curve.points[i] = {voltages[i], sol.tip(), sol.converged};
        }
        return curve;
    }

    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const StaticSolution sol = solver.solve(voltages[i]);
        curve.points[i] = {voltages[i], sol.tip(), sol.converged};
    }
    return curve;
}

double pullin_seed_voltage(const BeamParams& params)
{
    const SectionProps props = derived_properties(params);
    const double L = params.length_m;
    LumpedModel model;
    model.spring_n_m = 8.0 * props.bending_nm2 / (L * L * L);
    model.area_m2 = params.width_m * L;
    model.gap_m = params.gap_m;
    model.permittivity_f_m = params.permittivity_f_m;
    return pullin_voltage_1d(model);
}

PullInResult find_pullin(const BeamParams& params, double v_max_hint, double tol,
                         const Grid& grid, const SolverOptions& opts, std::size_t max_doublings)
{
    if (!(v_max_hint > 0.0) || !std::isfinite(v_max_hint)) {
        throw InvalidArgument("v_max_hint must be positive");
    }
    if (!(tol > 0.0)) {
        throw InvalidArgument("pull-in tolerance must be positive");
    }
    const StaticSolver solver(params, grid, opts);

    PullInResult result;
    double lower = 0.0;
    StaticSolution lower_sol = solver.solve(0.0);
    double upper = v_max_hint;

    std::size_t doublings = 0;
    while (true) {
        StaticSolution probe = solver.solve(upper, lower_sol.deflection_m);
        ++result.probes;
        if (!probe.converged) {
            break;
        }
        lower = upper;
        lower_sol = std::move(probe);
        if (doublings == max_doublings) {
            throw NoPullInError("static solutions converge up to " + std::to_string(upper) +
                                " V; no pull-in below the expanded ceiling");
        }
        upper *= 2.0;
        ++doublings;
    }

    while (upper - lower > tol) {
        const double mid = 0.5 * (lower + upper);
        StaticSolution probe = solver.solve(mid, lower_sol.deflection_m);
        ++result.probes;
        if (probe.converged) {
            lower = mid;
            lower_sol = std::move(probe);
        } else {
            upper = mid;
        }
    }

    result.v_lower = lower;
    result.v_upper = upper;
    result.tip_at_lower_m = lower_sol.tip();
    result.bracket_width = upper - lower;
    return result;
}

double sdof_stability_limit(double gap_m)
{
    if (!(gap_m > 0.0)) {
        throw InvalidArgument("gap must be positive");
    }
    return gap_m / 3.0;
}

double compare_stability(const PullInResult& result, const BeamParams& params)
{
    validate(params);
    return result.tip_at_lower_m / params.gap_m;
}

}  // namespace plab
