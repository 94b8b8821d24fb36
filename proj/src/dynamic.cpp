#include "pullin/dynamic.hpp"

#include "pullin/error.hpp"
#include "pullin/modal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace plab {

namespace {

constexpr double kGapGuard = 0.99;
constexpr std::array<double, 4> kHistoryCoeffs{11.0, -56.0, 114.0, -104.0};
constexpr double kCurrentCoeff = 35.0;
constexpr double kStepFactor = 1.4;
constexpr std::size_t kRisingWindow = 5;

}  // namespace

double Drive::voltage(double t_s) const
{
    return dc_v + ac_amplitude_v * std::sin(ac_frequency_rad_s * t_s + ac_phase_rad);
}

void validate(const Drive& drive)
{
    if (!(drive.dc_v >= 0.0) || !std::isfinite(drive.dc_v)) {
        throw InvalidArgument("dc voltage must be non-negative");
    }
    if (!(drive.ac_amplitude_v >= 0.0) || !std::isfinite(drive.ac_amplitude_v)) {
        throw InvalidArgument("ac amplitude must be non-negative");
    }
    if (!std::isfinite(drive.ac_frequency_rad_s) || !std::isfinite(drive.ac_phase_rad)) {
        throw InvalidArgument("ac frequency and phase must be finite");
    }
}

double backward_second_derivative(std::span<const double, 5> history, double step_s)
{
    double sum = kCurrentCoeff * history[4];
    for (std::size_t q = 0; q < 4; ++q) {
        sum += kHistoryCoeffs[q] * history[q];
    }
    return sum / (12.0 * step_s * step_s);
}

TransientStepper::TransientStepper(const BeamParams& params, const Grid& grid, double step_s,
                                   const SolverOptions& opts)
    : params_(params), grid_(grid), opts_(opts), step_s_(step_s)
{
    validate(params);
    validate(opts);
    if (!(step_s > 0.0) || !std::isfinite(step_s)) {
        throw InvalidArgument("time step must be positive");
    }
    const DimensionlessGroup group = nondimensionalize(params, 0.0);
    const double kappa = step_s / group.t_star_s;
    load_scale_ = load_scale(params);
    history_weight_ = 1.0 / (12.0 * kappa * kappa);
    mass_ = assemble_unit_mass(grid, group.mu);
    system_ = BandedLU(combine(assemble_unit_bending(grid), 1.0, mass_,
                               kCurrentCoeff * history_weight_));
}

StepOutcome TransientStepper::advance(const std::array<std::span<const double>, 4>& history,
                                      double voltage) const
{
    const std::size_t n = grid_.n_nodes - 1;
    const double gap = params_.gap_m;
    const double lambda = load_scale_ * voltage * voltage;

    // Mass-weighted contribution of the four known levels, moved to the right.
    std::vector<double> past(n, 0.0);
    for (std::size_t q = 0; q < 4; ++q) {
        if (history[q].size() != grid_.n_nodes) {
            throw InvalidArgument("history row does not match grid");
        }
        for (std::size_t u = 0; u < n; ++u) {
            past[u] += kHistoryCoeffs[q] * history[q][u + 1] / gap;
        }
    }
    std::vector<double> past_force = mass_.multiply(past);
    for (double& v : past_force) {
        v *= history_weight_;
    }

    StepOutcome out;
    std::vector<double> w(n);
    for (std::size_t u = 0; u < n; ++u) {
        w[u] = history[3][u + 1] / gap;
    }
    std::vector<double> next(n);

    for (std::size_t it = 1; it <= opts_.max_iterations; ++it) {
        out.iterations = it;
        for (std::size_t u = 0; u < n; ++u) {
            const double d = 1.0 - w[u];
            next[u] = lambda / (d * d) - past_force[u];
        }
        system_.solve(std::span<double>(next));

        double diff = 0.0;
        double scale = 0.0;
        bool finite = true;
        for (std::size_t u = 0; u < n; ++u) {
            diff = std::max(diff, std::abs(next[u] - w[u]));
            scale = std::max(scale, std::abs(next[u]));
            finite = finite && std::isfinite(next[u]);
        }
        w.swap(next);
        if (!finite || *std::max_element(w.begin(), w.end()) >= kGapGuard) {
            break;
        }
        // The first sweep measures the motion over the step, not the load error.
        if (it >= 2 && (diff == 0.0 || diff < opts_.rel_tolerance * scale)) {
            out.converged = true;
            break;
        }
    }

    out.row.assign(grid_.n_nodes, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        out.row[u + 1] = gap * w[u];
    }
    return out;
}

StepOutcome advance_step(const std::array<std::span<const double>, 4>& history, const Drive& drive,
                         double t_j, const BeamParams& params, const Grid& grid, double step_s,
                         const SolverOptions& opts)
{
    validate(drive);
    return TransientStepper(params, grid, step_s, opts).advance(history, drive.voltage(t_j));
}

DynamicTrace simulate(const BeamParams& params, const Drive& drive, double duration_s,
                      double step_s, const Grid& grid, const SolverOptions& opts,
                      std::size_t snapshot_every)
{
    validate(drive);
    if (!(step_s > 0.0)) {
        throw InvalidArgument("time step must be positive");
    }
    if (!(duration_s >= 5.0 * step_s * (1.0 - 1e-12))) {
        throw InvalidArgument("duration must cover at least 5 time steps");
    }
    const TransientStepper stepper(params, grid, step_s, opts);
    const auto last = static_cast<std::size_t>(std::floor(duration_s / step_s + 1e-9));

    DynamicTrace trace;
    trace.step_dt_s = step_s;
    trace.times_s.reserve(last + 1);
    trace.tip_history_m.reserve(last + 1);

    std::array<std::vector<double>, 4> ring;
    ring.fill(std::vector<double>(grid.n_nodes, 0.0));
    std::size_t oldest = 0;

    auto record = [&](std::size_t j, const std::vector<double>& row, std::size_t iterations) {
        trace.times_s.push_back(static_cast<double>(j) * step_s);
        trace.tip_history_m.push_back(row.back());
        trace.iterations.push_back(iterations);
        if (snapshot_every > 0 && j % snapshot_every == 0) {
            trace.snapshot_steps.push_back(j);
            trace.snapshots.push_back(row);
        }
    };

    const std::vector<double> rest(grid.n_nodes, 0.0);
    for (std::size_t j = 0; j < kStartupRows && j <= last; ++j) {
        record(j, rest, 0);
    }

    bool warned = false;
    for (std::size_t j = kStartupRows; j <= last; ++j) {
        const std::array<std::span<const double>, 4> history{
            ring[oldest], ring[(oldest + 1) % 4], ring[(oldest + 2) % 4], ring[(oldest + 3) % 4]};
        const double t = static_cast<double>(j) * step_s;
        StepOutcome step = stepper.advance(history, drive.voltage(t));
        record(j, step.row, step.iterations);
        if (!step.converged) {
            trace.diverged_at = j;
            break;
        }
        ring[oldest] = std::move(step.row);
        oldest = (oldest + 1) % 4;

        if (!warned && trace.iterations.size() > kRisingWindow) {
            const auto tail = trace.iterations.end() - static_cast<std::ptrdiff_t>(kRisingWindow);
            if (std::adjacent_find(tail, trace.iterations.end(), std::greater_equal<>()) ==
                trace.iterations.end()) {
                trace.warnings.push_back("fixed-point iterations per step rising at step " +
                                         std::to_string(j) + "; time step may be too large");
                warned = true;
            }
        }
    }
    return trace;
}

double recommended_time_step(const BeamParams& params, const Grid& grid, double dc_v,
                             const SolverOptions& opts)
{
    double omega2 = 0.0;
    try {
        omega2 = modal_analysis(params, dc_v, grid, 2, opts).frequencies_rad_s[1];
    } catch (const PastPullInError&) {
        omega2 = modal_analysis(params, 0.0, grid, 2, opts).frequencies_rad_s[1];
    }
    return kStepFactor / omega2;
}

double oscillation_midline(std::span<const double> signal)
{
    if (signal.empty()) {
        throw InvalidArgument("empty signal");
    }
    const double mean =
        std::accumulate(signal.begin(), signal.end(), 0.0) / static_cast<double>(signal.size());
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t crossings = 0;
    for (std::size_t i = 1; i < signal.size(); ++i) {
        if (signal[i - 1] < mean && signal[i] >= mean) {
            if (crossings == 0) {
                first = i;
            }
            last = i;
            ++crossings;
        }
    }
    if (crossings < 2) {
        return mean;
    }
    return std::accumulate(signal.begin() + static_cast<std::ptrdiff_t>(first),
                           signal.begin() + static_cast<std::ptrdiff_t>(last), 0.0) /
           static_cast<double>(last - first);
}

}  // namespace plab
