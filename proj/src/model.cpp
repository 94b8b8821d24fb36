#include "pullin/model.hpp"

#include "pullin/error.hpp"

#include <cmath>
#include <string>

namespace plab {

namespace {

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidArgument(std::string(name) + " must be positive and finite, got " +
                              std::to_string(value));
    }
}

double remaining_gap(double y_m, const BeamParams& params)
{
    const double remaining = params.gap_m - y_m;
    if (!(remaining > 0.0)) {
        throw GapClosedError("deflection " + std::to_string(y_m) + " m closes the gap " +
                             std::to_string(params.gap_m) + " m");
    }
    return remaining;
}

}  // namespace

void validate(const BeamParams& params)
{
    require_positive(params.length_m, "length");
    require_positive(params.width_m, "width");
    require_positive(params.thickness_m, "thickness");
    require_positive(params.gap_m, "gap");
    require_positive(params.youngs_pa, "youngs modulus");
    require_positive(params.density_kg_m3, "density");
    require_positive(params.permittivity_f_m, "permittivity");
    if (!(params.tip_mass_kg >= 0.0) || !std::isfinite(params.tip_mass_kg)) {
        throw InvalidArgument("tip mass must be non-negative and finite");
    }
}

std::vector<std::string> warnings(const BeamParams& params)
{
    std::vector<std::string> out;
    if (params.thickness_m >= params.length_m) {
        out.emplace_back("thickness is not small against length; beam theory is questionable");
    }
    return out;
}

SectionProps derived_properties(const BeamParams& params)
{
    validate(params);
    const double h = params.thickness_m;
    SectionProps props{};
    props.inertia_m4 = params.width_m * h * h * h / 12.0;
    props.line_mass_kg_m = params.density_kg_m3 * params.width_m * h;
    props.bending_nm2 = params.youngs_pa * props.inertia_m4;
    return props;
}

double electrostatic_load(double y_m, double voltage, const BeamParams& params)
{
    const double d = remaining_gap(y_m, params);
    return params.permittivity_f_m * params.width_m * voltage * voltage / (2.0 * d * d);
}

double linearized_stiffness_density(double y_m, double voltage, const BeamParams& params)
{
    const double d = remaining_gap(y_m, params);
    return params.permittivity_f_m * params.width_m * voltage * voltage / (d * d * d);
}

double load_scale(const BeamParams& params)
{
    const SectionProps props = derived_properties(params);
    const double L2 = params.length_m * params.length_m;
    const double G3 = params.gap_m * params.gap_m * params.gap_m;
    return params.permittivity_f_m * params.width_m * L2 * L2 / (2.0 * props.bending_nm2 * G3);
}

DimensionlessGroup nondimensionalize(const BeamParams& params, double voltage)
{
    const SectionProps props = derived_properties(params);
    DimensionlessGroup group{};
    group.lambda = load_scale(params) * voltage * voltage;
    group.mu = params.tip_mass_kg / (props.line_mass_kg_m * params.length_m);
    group.t_star_s = params.length_m * params.length_m *
                     std::sqrt(props.line_mass_kg_m / props.bending_nm2);
    return group;
}

}  // namespace plab
