#pragma once

#include <string>
#include <vector>

namespace plab {

/// Geometry, material and tip mass of the actuated cantilever. SI units.
///
/// Defaults are the silicon microbeam used throughout the parametric
/// studies: 300 x 50 x 3 um beam over a 3 um gap, E = 160 GPa.
struct BeamParams {
    double length_m = 300e-6;
    double width_m = 50e-6;
    double thickness_m = 3e-6;
    double gap_m = 3e-6;
    double youngs_pa = 160e9;
    double density_kg_m3 = 2330.0;
    double permittivity_f_m = 8.8541878e-12;
    double tip_mass_kg = 0.0;

    bool operator==(const BeamParams&) const = default;
};

struct SectionProps {
    double inertia_m4;     ///< I = b h^3 / 12
    double line_mass_kg_m; ///< m = rho b h
    double bending_nm2;    ///< EI
};

/// Nondimensional groups of the electrostatic beam problem.
///
/// With w = y/G and xi = x/L the static equation becomes
/// w'''' = lambda / (1 - w)^2; time is scaled by t_star.
struct DimensionlessGroup {
    double lambda;   ///< eps b L^4 V^2 / (2 EI G^3)
    double mu;       ///< M / (m L)
    double t_star_s; ///< L^2 sqrt(m / EI)
};

/// Throws InvalidArgument unless L, b, h, G, E, rho, eps > 0 and M >= 0.
void validate(const BeamParams& params);

/// Non-fatal diagnostics (currently: beam not slender, h >= L).
std::vector<std::string> warnings(const BeamParams& params);

SectionProps derived_properties(const BeamParams& params);

/// Electrostatic force per unit length at deflection y, eps b V^2 / (2 (G - y)^2).
/// Throws GapClosedError when y >= G.
double electrostatic_load(double y_m, double voltage, const BeamParams& params);

/// Coefficient of u in the linearized dynamic equation, eps b V^2 / (G - y)^3.
/// Throws GapClosedError when y >= G.
double linearized_stiffness_density(double y_m, double voltage, const BeamParams& params);

DimensionlessGroup nondimensionalize(const BeamParams& params, double voltage);

/// lambda per V^2; lambda(V) = load_scale(params) * V^2.
double load_scale(const BeamParams& params);

}  // namespace plab
