#include "pullin/error.hpp"
#include "pullin/static_solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace plab;

namespace {

double uniform_load_tip(const BeamParams& b, double v)
{
    return electrostatic_load(0.0, v, b) * std::pow(b.length_m, 4) /
           (8.0 * derived_properties(b).bending_nm2);
}

}  // namespace

TEST_CASE("zero voltage gives zero deflection")
{
    const BeamParams b;
    const StaticSolution s = solve_static(b, 0.0, build_grid(201, b));
    CHECK(s.converged);
    CHECK(s.status == StaticStatus::converged);
    CHECK(s.iterations == 1);
    for (double y : s.deflection_m) {
        CHECK(y == 0.0);
    }
}

TEST_CASE("low voltage matches the uniform-load cantilever")
{
    const BeamParams b;
    const StaticSolution s = solve_static(b, 1.0, build_grid(201, b));
    REQUIRE(s.converged);
    CHECK(uniform_load_tip(b, 1.0) == doctest::Approx(1.38347e-9).epsilon(1e-5));
    CHECK(s.tip() == doctest::Approx(uniform_load_tip(b, 1.0)).epsilon(0.02));
    CHECK(s.deflection_m.front() == 0.0);
}

TEST_CASE("converged solution satisfies the discrete equation")
{
    const BeamParams b;
    const SolverOptions opts;
    const Grid g = build_grid(201, b);
    const StaticSolution s = solve_static(b, 10.0, g, opts);
    REQUIRE(s.converged);
    CHECK(s.final_relative_change < opts.rel_tolerance);
    CHECK(residual_norm(s, b, g) <= 10.0 * opts.rel_tolerance);

    SolverOptions tight;
    tight.rel_tolerance = 1e-12;
    const StaticSolution t = solve_static(b, 10.0, g, tight);
    CHECK(residual_norm(t, b, g) < 1e-6);  // h^-4 roundoff floor
    CHECK(s.tip() == doctest::Approx(t.tip()).epsilon(10.0 * opts.rel_tolerance));
}

TEST_CASE("deflection grows with voltage")
{
    const BeamParams b;
    const StaticSolver solver(b, build_grid(101, b));
    double previous = 0.0;
    for (double v : {2.0, 6.0, 10.0, 14.0, 18.0, 21.0}) {
        const StaticSolution s = solver.solve(v);
        REQUIRE(s.converged);
        CHECK(s.tip() > previous);
        previous = s.tip();
    }
}

TEST_CASE("beyond pull-in is reported, not thrown")
{
    const BeamParams b;
    const StaticSolution s = solve_static(b, 30.0, build_grid(201, b));
    CHECK_FALSE(s.converged);
    CHECK(s.status != StaticStatus::converged);
}

TEST_CASE("warm start converges to the same branch in fewer iterations")
{
    const BeamParams b;
    const StaticSolver solver(b, build_grid(201, b));
    const StaticSolution cold = solver.solve(20.0);
    const StaticSolution warm = solver.solve(20.0, solver.solve(19.9).deflection_m);
    REQUIRE(cold.converged);
    REQUIRE(warm.converged);
    CHECK(warm.iterations < cold.iterations);
    CHECK(warm.tip() == doctest::Approx(cold.tip()).epsilon(0.01));
    const std::vector<double> wrong(7, 0.0);
    CHECK_THROWS_AS(solver.solve(1.0, wrong), InvalidArgument);
}

TEST_CASE("under-relaxation reaches the same solution")
{
    const BeamParams b;
    const Grid g = build_grid(101, b);
    SolverOptions relaxed;
    relaxed.relaxation = 0.5;
    relaxed.rel_tolerance = 1e-10;
    SolverOptions plain;
    plain.rel_tolerance = 1e-10;
    const StaticSolution r = solve_static(b, 15.0, g, relaxed);
    const StaticSolution p = solve_static(b, 15.0, g, plain);
    REQUIRE(r.converged);
    CHECK(r.tip() == doctest::Approx(p.tip()).epsilon(1e-8));
}

TEST_CASE("width has no influence")
{
    BeamParams b;
    const Grid g = build_grid(201, b);
    const StaticSolution ref = solve_static(b, 15.0, g);
    for (double width : {25e-6, 100e-6}) {
        b.width_m = width;
        const StaticSolution s = solve_static(b, 15.0, g);
        for (std::size_t i = 0; i < s.deflection_m.size(); ++i) {
            CHECK(s.deflection_m[i] == doctest::Approx(ref.deflection_m[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("option validation")
{
    SolverOptions o;
    o.rel_tolerance = 0.0;
    CHECK_THROWS_AS(validate(o), InvalidArgument);
    o = SolverOptions{};
    o.max_iterations = 0;
    CHECK_THROWS_AS(validate(o), InvalidArgument);
    o = SolverOptions{};
    o.relaxation = 1.5;
    CHECK_THROWS_AS(validate(o), InvalidArgument);
    CHECK_THROWS_AS(solve_static(BeamParams{}, std::nan(""), build_grid(21, BeamParams{})),
                    InvalidArgument);
}
