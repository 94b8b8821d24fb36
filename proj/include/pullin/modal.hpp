#pragma once

#include "pullin/banded.hpp"
#include "pullin/grid.hpp"
#include "pullin/model.hpp"
#include "pullin/static_solver.hpp"

#include <cstddef>
#include <vector>

namespace plab {

/// Linearized dynamics about a static equilibrium, K u + M u_tt = 0, on the
/// unknown nodes 1 .. n_nodes - 1 (SI units).
///
/// K is the ghost-eliminated bending operator EI D4 minus the electrostatic
/// softening eps b V^2 / (G - y_s)^3 on the diagonal. M is the line mass m
/// per node; a tip mass adds inertia to the last two rows through the shear
/// boundary condition EI y''' = M y_tt.
struct ModalSystem {
    BandedMatrix stiffness;
    BandedMatrix mass;
    std::vector<double> softening;  ///< N/m^2 at each unknown node
    double bias_voltage = 0.0;
    std::size_t n_nodes = 0;
};

struct ModalResult {
    std::vector<double> frequencies_rad_s;         ///< ascending
    std::vector<std::vector<double>> mode_shapes;  ///< over physical nodes, max |u| = 1
    std::vector<double> eigen_residuals;           ///< ||K u - w^2 M u|| / ((||K|| + w^2 ||M||) ||u||)
    double bias_voltage = 0.0;
};

inline constexpr std::size_t kMaxModes = 5;

/// Throws InvalidArgument when `sol` did not converge.
ModalSystem assemble_modal_system(const StaticSolution& sol, const BeamParams& params,
                                  const Grid& grid);

/// The `n_modes` (1..5) lowest eigenpairs by shift-invert power iteration at
/// zero shift with biorthogonal deflation. Throws PastPullInError when the
/// smallest eigenvalue is not positive.
ModalResult lowest_modes(const ModalSystem& system, std::size_t n_modes);

/// Static solve at `bias_voltage` followed by lowest_modes.
/// Throws PastPullInError when the static solve does not converge.
ModalResult modal_analysis(const BeamParams& params, double bias_voltage, const Grid& grid,
                           std::size_t n_modes, const SolverOptions& opts = {});

}  // namespace plab
