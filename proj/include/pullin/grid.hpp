#pragma once

#include "pullin/banded.hpp"
#include "pullin/model.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace plab {

/// Uniform finite-difference grid over the beam, clamp (node 0) to tip
/// (node n_nodes - 1), with two ghost nodes beyond each end.
struct Grid {
    std::size_t n_nodes = 0;
    double length_m = 0.0;
    double spacing_m = 0.0;

    static constexpr std::size_t ghosts_per_side = 2;

    std::size_t total_nodes() const { return n_nodes + 2 * ghosts_per_side; }
    std::size_t tip() const { return n_nodes - 1; }
    /// Spacing of the unit interval [0, 1], 1 / (n_nodes - 1).
    double unit_spacing() const { return 1.0 / static_cast<double>(n_nodes - 1); }
    double position(std::size_t node) const { return spacing_m * static_cast<double>(node); }
};

inline constexpr std::size_t kMinGridNodes = 7;
inline constexpr std::size_t kDefaultGridNodes = 201;

/// Throws InvalidArgument for n_nodes < 7.
Grid build_grid(std::size_t n_nodes, const BeamParams& params);

/// Nodal values plus two ghost values on each side.
///
/// Storage index 2 is the clamp; ghost(-2), ghost(-1) precede it and
/// node n_nodes, n_nodes + 1 follow the tip.
class GhostedField {
public:
    explicit GhostedField(std::size_t n_nodes) : values_(n_nodes + 4, 0.0) {}
    GhostedField(std::span<const double> nodes);

    std::size_t n_nodes() const { return values_.size() - 4; }

    /// Node i in [-2, n_nodes + 1].
    double& operator[](std::ptrdiff_t i) { return values_[static_cast<std::size_t>(i + 2)]; }
    double operator[](std::ptrdiff_t i) const { return values_[static_cast<std::size_t>(i + 2)]; }

    std::span<const double> storage() const { return values_; }
    std::span<const double> physical() const { return std::span(values_).subspan(2, n_nodes()); }

private:
    std::vector<double> values_;
};

/// Ghost values in storage order: left outer, left inner, right inner, right outer.
using GhostValues = std::array<double, 4>;

/// Ghost values that satisfy the discrete boundary conditions for `nodes`.
///
/// Clamp: y = 0 with the ghosts reflected evenly, y(-h) = y(h), y(-2h) = y(2h),
/// which zeroes both the 2-point and the 4-point central slope stencils.
/// Tip: zero moment (5-point second difference) and, statically, zero shear
/// (central third difference), solved jointly for the two tip ghosts.
GhostValues eliminate_ghosts(std::span<const double> nodes, const BeamParams& params,
                             const Grid& grid);

/// Copies `nodes` into a ghosted field and fills the ghosts.
GhostedField with_ghosts(std::span<const double> nodes, const BeamParams& params,
                         const Grid& grid);

/// Discrete fourth derivative (y_{i-2} - 4y_{i-1} + 6y_i - 4y_{i+1} + y_{i+2}) / h^4
/// at every physical node. Ghosts must already be filled.
std::vector<double> apply_bending_operator(const GhostedField& field, const Grid& grid);

/// Bending operator on the unknowns (nodes 1 .. n_nodes - 1) of the unit
/// interval with ghosts eliminated; kl = ku = 2.
BandedMatrix assemble_unit_bending(const Grid& grid);

/// Nondimensional mass operator on the same unknowns: identity plus the
/// tip-mass inertia that enters through the shear boundary condition
/// w''' = mu * w_tt. With mu = 0 this is the identity.
BandedMatrix assemble_unit_mass(const Grid& grid, double mu);

}  // namespace plab
