// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "oracles/fold_oracle.hpp"

#include "pullin/dynamic.hpp"
#include "pullin/error.hpp"
#include "pullin/lumped.hpp"
#include "pullin/modal.hpp"
#include "pullin/pullin.hpp"
#include "pullin/static_solver.hpp"
#include "pullin/study.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace plab;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

double spread(const std::vector<double>& v)
{
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) {
        mean += x / static_cast<double>(v.size());
    }
    return (*hi - *lo) / mean;
}

bool strictly(const std::vector<double>& v, bool increasing)
{
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (increasing ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) {
            return false;
        }
    }
    return true;
}

PullInResult default_pullin(const BeamParams& b, std::size_t n = kDefaultGridNodes)
{
    return find_pullin(b, pullin_seed_voltage(b), 0.01, build_grid(n, b));
}

std::vector<StudyEntry> study(StudyParameter p, std::vector<double> values,
                              std::optional<std::vector<double>> voltages, bool pullin)
{
    StudySpec s;
    s.vary = p;
    s.values = std::move(values);
    s.voltages = std::move(voltages);
    s.outputs = {true, pullin, false};
    const StudyResult r = run_study(s);
    for (const StudyEntry& e : r.entries) {
        if (!e.error.empty()) {
            throw Error("study value failed: " + e.error);
        }
    }
    return r.entries;
}

const std::vector<double> kLengths{200e-6, 225e-6, 250e-6, 275e-6, 300e-6};
const std::vector<double> kMicroSteps{2e-6, 2.5e-6, 3e-6, 3.5e-6, 4e-6};

Verdict one_dof()
{
    const LumpedModel m{1.0, 1e-8, 2e-6, 8.8541878e-12, 1.0};
    const double v = pullin_voltage_1d(m);
    const double closed = std::sqrt(8.0 * 8e-18 * 1.0 / (27.0 * 8.8541878e-12 * 1e-8));
    const bool position = pullin_position(m) == m.gap_m / 3.0;
    const double err = relative(v, closed);
    return {position && err <= 1e-6 && std::abs(v - 5.174) < 5e-4,
            fmt("V_PI = %.7f V (rel. err %.1e vs closed form)", v, err) +
                (position ? ", y_PI = G/3 exactly" : ", y_PI != G/3")};
}

Verdict low_voltage()
{
    const BeamParams b;
    const double tip = solve_static(b, 1.0, build_grid(kDefaultGridNodes, b)).tip();
    const double q = electrostatic_load(0.0, 1.0, b);
    const double closed = q * std::pow(b.length_m, 4) / (8.0 * derived_properties(b).bending_nm2);
    const double err = relative(tip, closed);
    return {err <= 0.02 && relative(tip, 1.384e-9) <= 0.02,
            fmt("tip %.5g m vs q L^4/(8EI) = %.5g m", tip, closed) + fmt(" (%.3f%%)", 100 * err)};
}

Verdict width_independence()
{
    BeamParams b;
    const Grid g = build_grid(kDefaultGridNodes, b);
    std::vector<std::vector<double>> shapes;
    std::vector<double> vpi;
    for (double w : {25e-6, 50e-6, 100e-6}) {
        b.width_m = w;
        shapes.push_back(solve_static(b, 15.0, g).deflection_m);
        vpi.push_back(find_pullin(b, 20.0, 0.01, g).v_lower);
    }
    double worst = 0.0;
    for (const auto& s : shapes) {
        for (std::size_t i = 1; i < s.size(); ++i) {
            worst = std::max(worst, relative(s[i], shapes[1][i]));
        }
    }
    const double dv = *std::max_element(vpi.begin(), vpi.end()) -
                      *std::min_element(vpi.begin(), vpi.end());
    return {worst <= 1e-10 && dv <= 0.01,
            fmt("max rel. difference of profiles %.1e, V_PI spread %.3g V (tol 0.01 V)", worst, dv)};
}

Verdict monotonicity()
{
    std::vector<double> by_length;
    for (const StudyEntry& e : study(StudyParameter::length, kLengths, std::vector<double>{0.0}, true)) {
        by_length.push_back(e.pullin->v_lower);
    }
    std::vector<double> by_thickness;
    for (const StudyEntry& e :
         study(StudyParameter::thickness, kMicroSteps, std::vector<double>{0.0}, true)) {
        by_thickness.push_back(e.pullin->v_lower);
    }
    std::vector<double> by_gap;
    for (const StudyEntry& e : study(StudyParameter::gap, kMicroSteps, std::vector<double>{10.0}, false)) {
        by_gap.push_back(e.curve.points[0].tip_deflection_m);
    }
    const bool a = strictly(by_length, false);
    const bool b = strictly(by_thickness, true);
    const bool c = strictly(by_gap, false);
    return {a && b && c,
            std::string("V_PI(L) decreasing: ") + (a ? "yes" : "no") +
                ", V_PI(h) increasing: " + (b ? "yes" : "no") +
                ", tip(G) at 10 V decreasing: " + (c ? "yes" : "no") +
                fmt(" [V_PI %.2f .. %.2f V over L]", by_length.front(), by_length.back())};
}

Verdict sdof_error()
{
    std::vector<double> ratio;
    bool above = true;
    for (const StudyEntry& e : study(StudyParameter::length, kLengths, std::vector<double>{0.0}, true)) {
        above = above && e.pullin->tip_at_lower_m > e.stability_limit_m;
        ratio.push_back(e.pullin->tip_at_lower_m / e.gap_m);
    }
    const double s = spread(ratio);
    return {above && s <= 0.05,
            std::string(above ? "tip > G/3 for all lengths" : "tip <= G/3 somewhere") +
                fmt(", tip/G = %.4f .. ", *std::min_element(ratio.begin(), ratio.end())) +
                fmt("%.4f, spread %.2f%%", *std::max_element(ratio.begin(), ratio.end()), 100 * s)};
}

Verdict grid_convergence()
{
    const BeamParams b;
    std::array<double, 3> tip{};
    const std::array<std::size_t, 3> sizes{101, 201, 401};
    for (std::size_t k = 0; k < 3; ++k) {
        tip[k] = solve_static(b, 10.0, build_grid(sizes[k], b)).tip();
    }
    const double order = std::log2((tip[0] - tip[1]) / (tip[1] - tip[2]));
    const double v201 = default_pullin(b, 201).v_lower;
    const double v401 = default_pullin(b, 401).v_lower;
    const double dv = relative(v201, v401);
    return {order >= 1.8 && dv <= 0.01,
            fmt("Richardson order %.3f, V_PI(201) vs V_PI(401) differ by %.3f%%", order, 100 * dv)};
}

Verdict modal_anchor()
{
    const BeamParams b;
    const Grid g = build_grid(kDefaultGridNodes, b);
    const SectionProps p = derived_properties(b);
    const double analytic =
        std::pow(1.875104, 2) * std::sqrt(p.bending_nm2 / (p.line_mass_kg_m * std::pow(b.length_m, 4)));
    std::vector<double> w1;
    for (double v : {0.0, 5.0, 10.0, 15.0}) {
        w1.push_back(modal_analysis(b, v, g, 1).frequencies_rad_s[0]);
    }
    const double err = relative(w1[0], analytic);
    const bool falling = strictly(w1, false);
    return {err <= 0.01 && falling,
            fmt("omega_1(0 V) = %.6g rad/s, analytic %.6g", w1[0], analytic) +
                fmt(" (%.3f%%), falling with bias: ", 100 * err) + (falling ? "yes" : "no")};
}

Verdict dynamic_consistency()
{
    const BeamParams b;
    const Grid g = build_grid(kDefaultGridNodes, b);

    const double dt0 = recommended_time_step(b, g, 0.0);
    const DynamicTrace rest = simulate(b, Drive{}, 2000 * dt0, dt0, g);
    const bool zero = !rest.diverged_at &&
                      std::all_of(rest.tip_history_m.begin(), rest.tip_history_m.end(),
                                  [](double y) { return y == 0.0; });

    const double dt = recommended_time_step(b, g, 1.0);
    const double period = 2.0 * std::numbers::pi / modal_analysis(b, 1.0, g, 1).frequencies_rad_s[0];
    const DynamicTrace trace = simulate(b, Drive{1.0, 0.0, 0.0, 0.0}, 8.0 * period, dt, g);
    const double midline = oscillation_midline(trace.tip_history_m);
    const double static_tip = solve_static(b, 1.0, g).tip();
    const double err = relative(midline, static_tip);

    const std::array<double, 5> squares{16.0, 9.0, 4.0, 1.0, 0.0};
    const double d2 = backward_second_derivative(squares, 1.0);
    return {zero && !trace.diverged_at && err <= 0.01 && d2 == 2.0,
            std::string(zero ? "V=0 stays exactly 0" : "V=0 drifts") +
                fmt(", 1 V midline/static = %.4f, stencil on squares = %g", midline / static_tip, d2)};
}

Verdict cross_solver()
{
    const BeamParams b;
    const PullInResult pipeline = default_pullin(b);
    const double lambda_oracle = oracle::fold_point(801).lambda;
    const double v_oracle = std::sqrt(lambda_oracle / load_scale(b));
    const double err = relative(pipeline.v_lower, v_oracle);

    std::vector<BeamParams> geometries(1, b);
    for (double L : {200e-6, 250e-6}) {
        geometries.push_back(with_parameter(b, StudyParameter::length, L));
    }
    for (double h : {2e-6, 4e-6}) {
        geometries.push_back(with_parameter(b, StudyParameter::thickness, h));
    }
    for (double G : {2e-6, 4e-6}) {
        geometries.push_back(with_parameter(b, StudyParameter::gap, G));
    }
    std::vector<double> lambda_pipeline;
    std::vector<double> lambda_reference;
    for (const BeamParams& p : geometries) {
        const double v = default_pullin(p).v_lower;
        lambda_pipeline.push_back(load_scale(p) * v * v);
        const double vo = std::sqrt(lambda_oracle / load_scale(p));
        lambda_reference.push_back(load_scale(p) * vo * vo);
    }
    const double s_pipe = spread(lambda_pipeline);
    const double s_ref = spread(lambda_reference);
    return {err <= 0.02 && s_pipe <= 0.01 && s_ref <= 0.01,
            fmt("V_PI %.4f V vs oracle %.4f V", pipeline.v_lower, v_oracle) +
                fmt(" (%.3f%%); lambda_PI spread %.3f%%", 100 * err, 100 * s_pipe) +
                fmt(" pipeline, %.1e oracle", s_ref)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"1-DOF closed forms", one_dof},
        {"low-voltage analytic tip", low_voltage},
        {"width independence", width_independence},
        {"parametric monotonicity", monotonicity},
        {"fold beyond the 1-DOF G/3 limit", sdof_error},
        {"grid convergence", grid_convergence},
        {"modal anchor and softening", modal_anchor},
        {"dynamic consistency", dynamic_consistency},
        {"cross-solver pull-in", cross_solver},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu %s: %s - %s [%.2f s]\n", i + 1, v.pass ? "PASS" : "FAIL",
                    criteria[i].first, v.detail.c_str(), secs);
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
