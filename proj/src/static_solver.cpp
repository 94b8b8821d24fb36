#include "pullin/static_solver.hpp"

#include "pullin/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace plab {

namespace {

constexpr double kGapGuard = 0.99;
constexpr std::size_t kGrowthLimit = 10;

double max_abs(std::span<const double> v)
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

bool touches_gap(std::span<const double> w)
{
    for (double x : w) {
        if (!(x < kGapGuard)) {
            return true;
        }
    }
    return false;
}

}  // namespace

void validate(const SolverOptions& opts)
{
    if (!(opts.rel_tolerance > 0.0)) {
        throw InvalidArgument("rel_tolerance must be positive");
    }
    if (opts.max_iterations < 1) {
        throw InvalidArgument("max_iterations must be at least 1");
    }
    if (!(opts.relaxation > 0.0 && opts.relaxation <= 1.0)) {
        throw InvalidArgument("relaxation must lie in (0, 1]");
    }
}

std::string_view to_string(StaticStatus status)
{
    switch (status) {
    case StaticStatus::converged: return "converged";
    case StaticStatus::gap_crossed: return "gap_crossed";
    case StaticStatus::diverging: return "diverging";
    case StaticStatus::max_iterations: return "max_iterations";
    }
    return "unknown";
}

StaticSolver::StaticSolver(const BeamParams& params, const Grid& grid, const SolverOptions& opts)
    : params_(params),
      grid_(grid),
      opts_(opts),
      load_scale_((validate(params), validate(opts), load_scale(params))),
      bending_(assemble_unit_bending(grid)),
      factored_(bending_)
{
}

StaticSolution StaticSolver::solve(double voltage, std::span<const double> initial_guess) const
{
    if (!std::isfinite(voltage)) {
        throw InvalidArgument("voltage must be finite");
    }
    const std::size_t n = grid_.n_nodes - 1;
    const double gap = params_.gap_m;
    const double lambda = load_scale_ * voltage * voltage;

    std::vector<double> w(n, 0.0);
    if (!initial_guess.empty()) {
        if (initial_guess.size() != grid_.n_nodes) {
            throw InvalidArgument("initial guess length does not match grid");
        }
        for (std::size_t u = 0; u < n; ++u) {
            w[u] = initial_guess[u + 1] / gap;
        }
    }

    StaticSolution sol;
    sol.voltage = voltage;
    sol.status = StaticStatus::max_iterations;

    std::vector<double> next(n);
    double previous_change = std::numeric_limits<double>::infinity();
    std::size_t growth_run = 0;

    if (touches_gap(w)) {
        sol.status = StaticStatus::gap_crossed;
    } else {
        for (std::size_t it = 1; it <= opts_.max_iterations; ++it) {
            sol.iterations = it;
            for (std::size_t u = 0; u < n; ++u) {
                const double d = 1.0 - w[u];
                next[u] = lambda / (d * d);
            }
            factored_.solve(std::span<double>(next));
            if (opts_.relaxation < 1.0) {
                for (std::size_t u = 0; u < n; ++u) {
                    next[u] = w[u] + opts_.relaxation * (next[u] - w[u]);
                }
            }

            double diff = 0.0;
            for (std::size_t u = 0; u < n; ++u) {
                diff = std::max(diff, std::abs(next[u] - w[u]));
            }
            const double scale = max_abs(next);
            const double change = diff == 0.0 ? 0.0 : diff / scale;
            w.swap(next);
            sol.final_relative_change = change;

            if (touches_gap(w)) {
                sol.status = StaticStatus::gap_crossed;
                break;
            }
            if (change < opts_.rel_tolerance) {
                sol.status = StaticStatus::converged;
                sol.converged = true;
                break;
            }
            growth_run = change > previous_change ? growth_run + 1 : 0;
            previous_change = change;
            if (growth_run >= kGrowthLimit) {
                sol.status = StaticStatus::diverging;
                break;
            }
        }
    }

    sol.deflection_m.assign(grid_.n_nodes, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        sol.deflection_m[u + 1] = gap * w[u];
    }
    return sol;
}

StaticSolution solve_static(const BeamParams& params, double voltage, const Grid& grid,
                            const SolverOptions& opts, std::span<const double> initial_guess)
{
    return StaticSolver(params, grid, opts).solve(voltage, initial_guess);
}

double residual_norm(const StaticSolution& sol, const BeamParams& params, const Grid& grid)
{
    if (sol.deflection_m.size() != grid.n_nodes) {
        throw InvalidArgument("solution length does not match grid");
    }
    const std::size_t n = grid.n_nodes - 1;
    const double lambda = load_scale(params) * sol.voltage * sol.voltage;
    std::vector<double> w(n);
    for (std::size_t u = 0; u < n; ++u) {
        w[u] = sol.deflection_m[u + 1] / params.gap_m;
    }
    const std::vector<double> kw = assemble_unit_bending(grid).multiply(w);
    double worst = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        const double d = 1.0 - w[u];
        if (!(d > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        worst = std::max(worst, std::abs(kw[u] - lambda / (d * d)));
    }
    return worst;
}

}  // namespace plab
