#pragma once

#include "pullin/banded.hpp"
#include "pullin/grid.hpp"
#include "pullin/model.hpp"
#include "pullin/static_solver.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plab {

/// V(t) = dc + amplitude * sin(frequency * t + phase)
struct Drive {
    double dc_v = 0.0;
    double ac_amplitude_v = 0.0;
    double ac_frequency_rad_s = 0.0;
    double ac_phase_rad = 0.0;

    double voltage(double t_s) const;
    bool operator==(const Drive&) const = default;
};

void validate(const Drive& drive);

/// (11 y_{j-4} - 56 y_{j-3} + 114 y_{j-2} - 104 y_{j-1} + 35 y_j) / (12 k^2),
/// history ordered oldest first.
double backward_second_derivative(std::span<const double, 5> history, double step_s);

struct StepOutcome {
    std::vector<double> row;  ///< deflection over physical nodes, metres
    std::size_t iterations = 0;
    bool converged = false;
};

/// Implicit time stepper for EI y'''' + m y_tt = eps b V(t)^2 / (2 (G - y)^2)
/// with the 5-level backward stencil for y_tt.
///
/// The linear part (bending + 35 m / (12 k^2) mass, tip mass included) is
/// factored once; the load at the new level is resolved by fixed-point
/// iteration to the solver's relative tolerance.
class TransientStepper {
public:
    TransientStepper(const BeamParams& params, const Grid& grid, double step_s,
                     const SolverOptions& opts = {});

    /// `history` holds rows j-4 .. j-1 (oldest first) in metres.
    StepOutcome advance(const std::array<std::span<const double>, 4>& history,
                        double voltage) const;

    double step() const { return step_s_; }

private:
    BeamParams params_;
    Grid grid_;
    SolverOptions opts_;
    double step_s_;
    double load_scale_;
    double history_weight_;  // 1 / (12 kappa^2), kappa = k / t_star
    BandedMatrix mass_;
    BandedLU system_;
};

/// One step from the four previous rows; builds a stepper per call.
StepOutcome advance_step(const std::array<std::span<const double>, 4>& history, const Drive& drive,
                         double t_j, const BeamParams& params, const Grid& grid, double step_s,
                         const SolverOptions& opts = {});

struct DynamicTrace {
    std::vector<double> times_s;
    std::vector<double> tip_history_m;
    std::vector<std::size_t> snapshot_steps;
    std::vector<std::vector<double>> snapshots;  ///< full rows at snapshot_steps
    std::vector<std::size_t> iterations;         ///< fixed-point iterations per step (0 for startup rows)
    double step_dt_s = 0.0;
    std::optional<std::size_t> diverged_at;
    std::vector<std::string> warnings;
};

/// Number of leading rows held at zero: the beam is at rest and undeflected
/// there, so the drive effectively acts from row kStartupRows on.
inline constexpr std::size_t kStartupRows = 5;

/// Steps t_j = j dt for j = 0 .. floor(duration / dt). Stops early and sets
/// diverged_at when a step fails to converge or reaches 0.99 G.
/// snapshot_every = 0 keeps no snapshots.
DynamicTrace simulate(const BeamParams& params, const Drive& drive, double duration_s,
                      double step_s, const Grid& grid, const SolverOptions& opts = {},
                      std::size_t snapshot_every = 0);

/// Default step 1.4 / omega_2 at the DC bias (at zero bias if the DC level
/// has no static equilibrium).
///
/// The backward stencil amplifies modes with omega k below sqrt(5/3); this
/// puts mode 2 and above in the damped range and leaves mode 1 growing by
/// about 3% per period.
double recommended_time_step(const BeamParams& params, const Grid& grid, double dc_v,
                             const SolverOptions& opts = {});

/// Mean of `signal` between its first and last upward crossing of the overall
/// mean, i.e. over whole oscillation cycles. Falls back to the plain mean when
/// fewer than two crossings exist.
double oscillation_midline(std::span<const double> signal);

}  // namespace plab
