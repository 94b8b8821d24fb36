#include "pullin/modal.hpp"

#include "pullin/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace plab {

namespace {

constexpr double kEigenTolerance = 1e-10;
constexpr double kResidualTarget = 1e-12;
constexpr double kResidualAccept = 1e-9;
constexpr std::size_t kMaxPowerIterations = 5000;

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void scale_to_unit(std::vector<double>& v)
{
    const double n = norm2(v);
    for (double& x : v) {
        x /= n;
    }
}

struct Eigenpair {
    double value;
    std::vector<double> right;  // K v = value M v
    std::vector<double> left;   // K^T w = value M^T w
    double left_mass_right;     // w^T M v
    double residual;
};

double row_sum_norm(const BandedMatrix& a)
{
    double best = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i > a.lower() ? i - a.lower() : 0;
        const std::size_t hi = std::min(n - 1, i + a.upper());
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            sum += std::abs(a(i, j));
        }
        best = std::max(best, sum);
    }
    return best;
}

// Normwise backward error ||K v - value M v|| / ((||K|| + |value| ||M||) ||v||), infinity norms.
double backward_error(const ModalSystem& sys, const std::vector<double>& v, double value,
                      double k_norm, double m_norm)
{
    const std::vector<double> kv = sys.stiffness.multiply(v);
    const std::vector<double> mv = sys.mass.multiply(v);
    double r = 0.0;
    double vmax = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        r = std::max(r, std::abs(kv[i] - value * mv[i]));
        vmax = std::max(vmax, std::abs(v[i]));
    }
    return r / ((k_norm + std::abs(value) * m_norm) * vmax);
}

}  // namespace

ModalSystem assemble_modal_system(const StaticSolution& sol, const BeamParams& params,
                                  const Grid& grid)
{
    if (!sol.converged) {
        throw InvalidArgument("modal system needs a converged static solution");
    }
    if (sol.deflection_m.size() != grid.n_nodes) {
        throw InvalidArgument("static solution does not match grid");
    }
    const SectionProps props = derived_properties(params);
    const DimensionlessGroup group = nondimensionalize(params, sol.voltage);
    const double L2 = params.length_m * params.length_m;
    const double bending_scale = props.bending_nm2 / (L2 * L2);

    ModalSystem sys;
    sys.bias_voltage = sol.voltage;
    sys.n_nodes = grid.n_nodes;
    sys.stiffness = combine(assemble_unit_bending(grid), bending_scale,
                            BandedMatrix(grid.n_nodes - 1, 0, 0), 0.0);
    sys.mass = combine(assemble_unit_mass(grid, group.mu), props.line_mass_kg_m,
                       BandedMatrix(grid.n_nodes - 1, 0, 0), 0.0);

    sys.softening.resize(grid.n_nodes - 1);
    for (std::size_t u = 0; u + 1 < grid.n_nodes; ++u) {
        const double ke = linearized_stiffness_density(sol.deflection_m[u + 1], sol.voltage, params);
        sys.softening[u] = ke;
        sys.stiffness.add(u, u, -ke);
    }
    return sys;
}

ModalResult lowest_modes(const ModalSystem& sys, std::size_t n_modes)
{
    const std::size_t n = sys.stiffness.size();
    if (n_modes < 1 || n_modes > kMaxModes || n_modes > n) {
        throw InvalidArgument("n_modes must lie in [1, " + std::to_string(kMaxModes) + "]");
    }

    const BandedLU factored(sys.stiffness);
    const double k_norm = row_sum_norm(sys.stiffness);
    const double m_norm = row_sum_norm(sys.mass);
    std::mt19937 rng(20240611u);
    std::uniform_real_distribution<double> dist(0.5, 1.5);

    std::vector<Eigenpair> found;
    for (std::size_t k = 0; k < n_modes; ++k) {
        std::vector<double> x(n);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = dist(rng);
            y[i] = dist(rng);
        }

        auto deflate_right = [&](std::vector<double>& v) {
            const std::vector<double> mv = sys.mass.multiply(v);
            for (const Eigenpair& p : found) {
                const double c = dot(p.left, mv) / p.left_mass_right;
                for (std::size_t i = 0; i < n; ++i) {
                    v[i] -= c * p.right[i];
                }
            }
        };
        auto deflate_left = [&](std::vector<double>& w) {
            for (const Eigenpair& p : found) {
                const double c = dot(sys.mass.multiply(p.right), w) / p.left_mass_right;
                for (std::size_t i = 0; i < n; ++i) {
                    w[i] -= c * p.left[i];
                }
            }
        };

        deflate_right(x);
        deflate_left(y);
        scale_to_unit(x);
        scale_to_unit(y);

        double value = 0.0;
        double previous = std::numeric_limits<double>::infinity();
        double residual = std::numeric_limits<double>::infinity();
        for (std::size_t it = 0; it < kMaxPowerIterations; ++it) {
            const std::vector<double> mx = sys.mass.multiply(x);
            x = mx;
            factored.solve(std::span<double>(x));
            deflate_right(x);

            y = sys.mass.multiply_transpose(y);
            factored.solve_transpose(std::span<double>(y));
            deflate_left(y);
            scale_to_unit(y);

            // K x_new = M x_old, so y^T M x_old / y^T M x_new is the two-sided
            // Rayleigh quotient without the cancellation of forming K x.
            value = dot(y, mx) / dot(y, sys.mass.multiply(x));
            scale_to_unit(x);
            residual = backward_error(sys, x, value, k_norm, m_norm);
            const bool settled = std::abs(value - previous) <= kEigenTolerance * std::abs(value);
            previous = value;
            if (settled && residual <= kResidualTarget) {
                break;
            }
        }
        if (!(residual <= kResidualAccept)) {
            throw Error("modal power iteration did not converge for mode " + std::to_string(k + 1));
        }
        if (!(value > 0.0)) {
            throw PastPullInError("linearized stiffness is not positive definite at V = " +
                                  std::to_string(sys.bias_voltage) +
                                  " V; the equilibrium is unstable");
        }
        const double wmx = dot(y, sys.mass.multiply(x));
        found.push_back({value, x, y, wmx, residual});
    }

    std::sort(found.begin(), found.end(),
              [](const Eigenpair& a, const Eigenpair& b) { return a.value < b.value; });

    ModalResult result;
    result.bias_voltage = sys.bias_voltage;
    for (const Eigenpair& p : found) {
        result.frequencies_rad_s.push_back(std::sqrt(p.value));
        result.eigen_residuals.push_back(p.residual);

        std::vector<double> shape(sys.n_nodes, 0.0);
        std::copy(p.right.begin(), p.right.end(), shape.begin() + 1);
        const auto peak = std::max_element(shape.begin(), shape.end(), [](double a, double b) {
            return std::abs(a) < std::abs(b);
        });
        const double s = *peak;
        for (double& v : shape) {
            v = v / s + 0.0;  // no negative zeros
        }
        result.mode_shapes.push_back(std::move(shape));
    }
    return result;
}

ModalResult modal_analysis(const BeamParams& params, double bias_voltage, const Grid& grid,
                           std::size_t n_modes, const SolverOptions& opts)
{
    const StaticSolution sol = solve_static(params, bias_voltage, grid, opts);
    if (!sol.converged) {
        throw PastPullInError("no static equilibrium at V = " + std::to_string(bias_voltage) +
                              " V (" + std::string(to_string(sol.status)) + ")");
    }
    return lowest_modes(assemble_modal_system(sol, params, grid), n_modes);
}

}  // namespace plab
