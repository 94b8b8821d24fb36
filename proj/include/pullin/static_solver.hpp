#pragma once

#include "pullin/banded.hpp"
#include "pullin/grid.hpp"
#include "pullin/model.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace plab {

struct SolverOptions {
    double rel_tolerance = 1e-3;  ///< stop when successive iterates differ by < 0.1%
    std::size_t max_iterations = 500;
    double relaxation = 1.0;      ///< under-relaxation factor in (0, 1]

    bool operator==(const SolverOptions&) const = default;
};

void validate(const SolverOptions& opts);

enum class StaticStatus {
    converged,
    gap_crossed,     ///< an iterate reached 0.99 G
    diverging,       ///< relative change grew for 10 consecutive iterations
    max_iterations,
};

std::string_view to_string(StaticStatus status);

struct StaticSolution {
    std::vector<double> deflection_m;  ///< y_s at every physical node, clamp first
    double voltage = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double final_relative_change = 0.0;
    StaticStatus status = StaticStatus::max_iterations;

    double tip() const { return deflection_m.empty() ? 0.0 : deflection_m.back(); }
    bool operator==(const StaticSolution&) const = default;
};

/// Picard solver for EI y'''' = eps b V^2 / (2 (G - y)^2) on a clamped-free beam.
///
/// Works on w = y/G over the unit interval. Each sweep freezes the load at the
/// previous iterate and solves the banded bending system exactly; the bending
/// operator is factored once per instance. Non-convergence is reported through
/// StaticSolution::converged, never thrown: near the fold it is the pull-in signal.
class StaticSolver {
public:
    StaticSolver(const BeamParams& params, const Grid& grid, const SolverOptions& opts = {});

    /// `initial_guess` is a deflection field in metres over the physical nodes
    /// (empty: start from zero).
    StaticSolution solve(double voltage, std::span<const double> initial_guess = {}) const;

    const BeamParams& params() const { return params_; }
    const Grid& grid() const { return grid_; }
    const SolverOptions& options() const { return opts_; }

private:
    BeamParams params_;
    Grid grid_;
    SolverOptions opts_;
    double load_scale_;
    BandedMatrix bending_;
    BandedLU factored_;
};

StaticSolution solve_static(const BeamParams& params, double voltage, const Grid& grid,
                            const SolverOptions& opts = {},
                            std::span<const double> initial_guess = {});

/// Max-norm of w'''' - lambda / (1 - w)^2 over the unknown nodes, in units of
/// the nondimensional load (so a zero field at load lambda gives lambda).
double residual_norm(const StaticSolution& sol, const BeamParams& params, const Grid& grid);

}  // namespace plab
