#include "pullin/lumped.hpp"

#include "pullin/error.hpp"

#include <cmath>
#include <string>

namespace plab {

void validate(const LumpedModel& model)
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidArgument(std::string(name) + " must be positive and finite");
        }
    };
    positive(model.spring_n_m, "spring constant");
    positive(model.area_m2, "electrode area");
    positive(model.gap_m, "gap");
    positive(model.permittivity_f_m, "permittivity");
    positive(model.gamma, "gamma");
}

ElectricForce electric_force_and_stiffness(const LumpedModel& model, double voltage, double y_m)
{
    validate(model);
    const double d = model.gap_m - y_m;
    if (!(d > 0.0)) {
        throw GapClosedError("lumped model: displacement closes the gap");
    }
    const double c = model.permittivity_f_m * model.area_m2 * voltage * voltage;
    return {0.5 * c / (d * d), c / (d * d * d)};
}

double pullin_position(const LumpedModel& model)
{
    validate(model);
    if (model.gamma != 1.0) {
        throw UnsupportedError("pull-in position is only defined here for linear springs (gamma = 1)");
    }
    return model.gap_m / 3.0;
}

double pullin_voltage_1d(const LumpedModel& model)
{
    validate(model);
    const double g3 = model.gap_m * model.gap_m * model.gap_m;
    return std::sqrt(8.0 / 27.0 * g3 * model.spring_n_m /
                     (model.permittivity_f_m * model.area_m2));
}

double equilibrium_1d(const LumpedModel& model, double voltage)
{
    validate(model);
    if (!std::isfinite(voltage)) {
        throw InvalidArgument("voltage must be finite");
    }
    const double v_pi = pullin_voltage_1d(model);
    const double v = std::abs(voltage);
    if (v > v_pi * (1.0 + 1e-12)) {
        throw PastPullInError("V = " + std::to_string(voltage) + " exceeds the 1-DOF pull-in voltage " +
                              std::to_string(v_pi) + " V");
    }
    if (v == 0.0) {
        return 0.0;
    }

    const double G = model.gap_m;
    const double target = 0.5 * model.permittivity_f_m * model.area_m2 * v * v;
    // K_m y (G - y)^2 increases monotonically on [0, G/3].
    auto imbalance = [&](double y) { return model.spring_n_m * y * (G - y) * (G - y) - target; };

    double lo = 0.0;
    double hi = G / 3.0;
    if (imbalance(hi) <= 0.0) {
        return hi;
    }
    const double tol = 1e-12 * G;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (imbalance(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace plab
