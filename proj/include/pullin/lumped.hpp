#pragma once

namespace plab {

/// Parallel-plate capacitor on a linear spring.
struct LumpedModel {
    double spring_n_m = 1.0;      ///< K_m
    double area_m2 = 1e-8;        ///< A
    double gap_m = 2e-6;          ///< G
    double permittivity_f_m = 8.8541878e-12;
    double gamma = 1.0;           ///< elastic nonlinearity factor; only 1 is supported

    bool operator==(const LumpedModel&) const = default;
};

struct ElectricForce {
    double force_n;      ///< F_e = eps A V^2 / (2 (G - y)^2)
    double stiffness_n_m; ///< K_e = dF_e/dy = eps A V^2 / (G - y)^3
};

void validate(const LumpedModel& model);

/// Throws GapClosedError when y >= G.
ElectricForce electric_force_and_stiffness(const LumpedModel& model, double voltage, double y_m);

/// G / 3 for a linear spring. Throws UnsupportedError when gamma != 1.
double pullin_position(const LumpedModel& model);

/// sqrt(8 G^3 K_m / (27 eps A)).
double pullin_voltage_1d(const LumpedModel& model);

/// Stable equilibrium: the root of K_m y (G - y)^2 = eps A V^2 / 2 on [0, G/3],
/// found by bisection to 1e-12 G. Throws PastPullInError for V > V_PI.
double equilibrium_1d(const LumpedModel& model, double voltage);

}  // namespace plab
