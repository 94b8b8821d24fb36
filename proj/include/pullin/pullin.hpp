#pragma once

#include "pullin/grid.hpp"
#include "pullin/model.hpp"
#include "pullin/static_solver.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace plab {

struct CurvePoint {
    double voltage = 0.0;
    double tip_deflection_m = 0.0;
    bool converged = false;

    bool operator==(const CurvePoint&) const = default;
};

/// Tip deflection against DC voltage, one point per requested voltage.
struct DeflectionCurve {
    std::vector<CurvePoint> points;

    bool operator==(const DeflectionCurve&) const = default;
};

struct PullInResult {
    double v_lower = 0.0;         ///< highest voltage with a converged static solution
    double v_upper = 0.0;         ///< lowest voltage found without one
    double tip_at_lower_m = 0.0;
    double bracket_width = 0.0;
    std::size_t probes = 0;       ///< static solves spent

    bool operator==(const PullInResult&) const = default;
};

inline constexpr std::size_t kDefaultMaxDoublings = 8;

/// Solves at each voltage in order, warm-starting from the last converged
/// solution whose voltage magnitude does not exceed the current one.
DeflectionCurve sweep_voltage(const BeamParams& params, std::span<const double> voltages,
                              const Grid& grid, const SolverOptions& opts = {});

/// Cold-started sweep with the points distributed over up to `threads`
/// OpenMP threads (0: runtime default). threads == 1 runs the plain serial
/// loop; results do not depend on the thread count.
DeflectionCurve sweep_voltage_independent(const BeamParams& params,
                                          std::span<const double> voltages, const Grid& grid,
                                          const SolverOptions& opts = {}, int threads = 0);

/// 1-DOF estimate of the pull-in voltage with K_m = 8 EI / L^3 and A = b L,
/// the tip stiffness of a uniformly loaded cantilever. Used to seed the bracket.
double pullin_seed_voltage(const BeamParams& params);

/// Brackets the static pull-in voltage.
///
/// Starts from [0, v_max_hint], doubling the upper probe (at most
/// `max_doublings` times) while it still converges, then bisects until the
/// bracket is no wider than `tol`. Each probe is warm-started from the
/// converged solution at the current lower bound.
/// Throws NoPullInError when every probe up to the expanded ceiling converges.
PullInResult find_pullin(const BeamParams& params, double v_max_hint, double tol,
                         const Grid& grid, const SolverOptions& opts = {},
                         std::size_t max_doublings = kDefaultMaxDoublings);

/// Single-degree-of-freedom stability limit, G / 3.
double sdof_stability_limit(double gap_m);

/// tip_at_lower / G, to be read against the 1-DOF value 1/3.
double compare_stability(const PullInResult& result, const BeamParams& params);

}  // namespace plab
