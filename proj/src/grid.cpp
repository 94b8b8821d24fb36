#include "pullin/grid.hpp"

#include "pullin/error.hpp"

#include <algorithm>
#include <string>

namespace plab {

namespace {

// Tip ghosts as combinations of w_{t-2}, w_{t-1}, w_t plus a multiple of the
// shear-inertia term s = 2 h^3 (M/EI) y_tt(tip) (zero statically):
//   -w_{t-2} + 16 w_{t-1} - 30 w_t + 16 g1 - g2 = 0   (zero moment)
//   -w_{t-2} +  2 w_{t-1}          -  2 g1 + g2 = s   (shear balance)
struct TipRule {
    std::array<double, 3> node_coeffs;  // on t-2, t-1, t
    double inertia_coeff;
};

constexpr TipRule kTipInner{{1.0 / 7.0, -9.0 / 7.0, 15.0 / 7.0}, 1.0 / 14.0};
constexpr TipRule kTipOuter{{9.0 / 7.0, -32.0 / 7.0, 30.0 / 7.0}, 8.0 / 7.0};

constexpr std::array<double, 5> kFourthDiff{1.0, -4.0, 6.0, -4.0, 1.0};

double apply_rule(const TipRule& rule, std::span<const double> nodes)
{
    const std::size_t t = nodes.size() - 1;
    return rule.node_coeffs[0] * nodes[t - 2] + rule.node_coeffs[1] * nodes[t - 1] +
           rule.node_coeffs[2] * nodes[t];
}

}  // namespace

Grid build_grid(std::size_t n_nodes, const BeamParams& params)
{
    if (n_nodes < kMinGridNodes) {
        throw InvalidArgument("grid needs at least " + std::to_string(kMinGridNodes) +
                              " nodes for stencil support, got " + std::to_string(n_nodes));
    }
    validate(params);
    Grid grid;
    grid.n_nodes = n_nodes;
    grid.length_m = params.length_m;
    grid.spacing_m = params.length_m / static_cast<double>(n_nodes - 1);
    return grid;
}

GhostedField::GhostedField(std::span<const double> nodes) : values_(nodes.size() + 4, 0.0)
{
    std::copy(nodes.begin(), nodes.end(), values_.begin() + 2);
}

GhostValues eliminate_ghosts(std::span<const double> nodes, const BeamParams& /*params*/,
                             const Grid& grid)
{
    if (nodes.size() != grid.n_nodes) {
        throw InvalidArgument("field length does not match grid");
    }
    return {nodes[2], nodes[1], apply_rule(kTipInner, nodes), apply_rule(kTipOuter, nodes)};
}

GhostedField with_ghosts(std::span<const double> nodes, const BeamParams& params,
                         const Grid& grid)
{
    GhostedField field(nodes);
    const GhostValues g = eliminate_ghosts(nodes, params, grid);
    const auto n = static_cast<std::ptrdiff_t>(grid.n_nodes);
    field[-2] = g[0];
    field[-1] = g[1];
    field[n] = g[2];
    field[n + 1] = g[3];
    return field;
}

std::vector<double> apply_bending_operator(const GhostedField& field, const Grid& grid)
{
    const double h = grid.spacing_m;
    const double inv_h4 = 1.0 / (h * h * h * h);
    const auto n = static_cast<std::ptrdiff_t>(grid.n_nodes);
    std::vector<double> out(grid.n_nodes);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::ptrdiff_t o = -2; o <= 2; ++o) {
            sum += kFourthDiff[static_cast<std::size_t>(o + 2)] * field[i + o];
        }
        out[static_cast<std::size_t>(i)] = sum * inv_h4;
    }
    return out;
}

BandedMatrix assemble_unit_bending(const Grid& grid)
{
    const std::size_t n_unknowns = grid.n_nodes - 1;
    const std::size_t t = grid.tip();
    const double h = grid.unit_spacing();
    const double inv_h4 = 1.0 / (h * h * h * h);
    BandedMatrix k(n_unknowns, 2, 2);

    // Unknown u holds node u + 1; the clamp node is fixed at zero.
    auto add_node = [&](std::size_t row, std::ptrdiff_t node, double c) {
        const auto nn = static_cast<std::ptrdiff_t>(grid.n_nodes);
        if (node == 0) {
            return;
        }
        if (node < 0) {
            node = -node;
        }
        if (node < nn) {
            k.add(row, static_cast<std::size_t>(node) - 1, c);
            return;
        }
        const TipRule& rule = node == nn ? kTipInner : kTipOuter;
        for (std::size_t q = 0; q < 3; ++q) {
            k.add(row, t - 2 + q - 1, c * rule.node_coeffs[q]);
        }
    };

    for (std::size_t node = 1; node <= t; ++node) {
        for (std::ptrdiff_t o = -2; o <= 2; ++o) {
            add_node(node - 1, static_cast<std::ptrdiff_t>(node) + o,
                     kFourthDiff[static_cast<std::size_t>(o + 2)] * inv_h4);
        }
    }
    return k;
}

BandedMatrix assemble_unit_mass(const Grid& grid, double mu)
{
    const std::size_t n_unknowns = grid.n_nodes - 1;
    BandedMatrix m(n_unknowns, 2, 2);
    for (std::size_t u = 0; u < n_unknowns; ++u) {
        m.at(u, u) = 1.0;
    }
    if (mu > 0.0) {
        // Inertia enters each row through the tip ghosts with weight
        // (stencil coeff) * inertia_coeff * 2 h^3 mu / h^4.
        const double h = grid.unit_spacing();
        const double s = 2.0 * mu / h;
        const std::size_t tip_u = n_unknowns - 1;
        // row t-1 sees g1 with coefficient +1; row t sees g1 with -4 and g2 with +1
        m.add(tip_u - 1, tip_u, kTipInner.inertia_coeff * s);
        m.add(tip_u, tip_u,
              (-4.0 * kTipInner.inertia_coeff + kTipOuter.inertia_coeff) * s);
    }
    return m;
}

}  // namespace plab
