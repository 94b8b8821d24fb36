#include "oracles/fold_oracle.hpp"

#include "pullin/error.hpp"
#include "pullin/pullin.hpp"

#include <doctest.h>

#include <cmath>

using namespace plab;

namespace {

double oracle_pullin_voltage(const BeamParams& b, int n_nodes = 801)
{
    static const double lambda = oracle::fold_point(n_nodes).lambda;
    return std::sqrt(lambda / load_scale(b));
}

}  // namespace

TEST_CASE("stock beam pull-in matches the refined-grid oracle")
{
    const BeamParams b;
    const PullInResult r = find_pullin(b, pullin_seed_voltage(b), 0.01, build_grid(201, b));
    CHECK(r.v_lower < r.v_upper);
    CHECK(r.bracket_width <= 0.01);
    CHECK(r.bracket_width == doctest::Approx(r.v_upper - r.v_lower));
    const double reference = oracle_pullin_voltage(b);
    CHECK(reference == doctest::Approx(21.3449).epsilon(1e-4));
    CHECK(r.v_lower == doctest::Approx(reference).epsilon(0.005));
    CHECK(r.tip_at_lower_m > sdof_stability_limit(b.gap_m));
    CHECK(compare_stability(r, b) == doctest::Approx(0.4465).epsilon(0.02));
}

TEST_CASE("grid resolutions agree")
{
    const BeamParams b;
    const double v201 = find_pullin(b, 20.0, 0.01, build_grid(201, b)).v_lower;
    const double v401 = find_pullin(b, 20.0, 0.01, build_grid(401, b)).v_lower;
    CHECK(v201 == doctest::Approx(v401).epsilon(0.005));
}

TEST_CASE("low hint is doubled, zero doublings refuse")
{
    const BeamParams b;
    const Grid g = build_grid(101, b);
    const PullInResult r = find_pullin(b, 1.0, 0.01, g);
    CHECK(r.v_lower == doctest::Approx(21.35).epsilon(0.005));
    CHECK_THROWS_AS(find_pullin(b, 1.0, 0.01, g, {}, 0), NoPullInError);
    CHECK_THROWS_AS(find_pullin(b, 0.0, 0.01, g), InvalidArgument);
    CHECK_THROWS_AS(find_pullin(b, 20.0, 0.0, g), InvalidArgument);
}

TEST_CASE("seed stays below pull-in")
{
    const BeamParams b;
    const double seed = pullin_seed_voltage(b);
    CHECK(load_scale(b) * seed * seed == doctest::Approx(1.185).epsilon(0.01));
    CHECK(seed < oracle_pullin_voltage(b));
}

TEST_CASE("width invariance of pull-in")
{
    BeamParams b;
    const Grid g = build_grid(201, b);
    const PullInResult ref = find_pullin(b, 20.0, 0.01, g);
    for (double width : {25e-6, 100e-6}) {
        b.width_m = width;
        const PullInResult r = find_pullin(b, 20.0, 0.01, g);
        CHECK(std::abs(r.v_lower - ref.v_lower) <= 0.01);
    }
}

TEST_CASE("sweeps keep every point")
{
    const BeamParams b;
    const Grid g = build_grid(101, b);
    const std::vector<double> volts{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    const DeflectionCurve chained = sweep_voltage(b, volts, g);
    REQUIRE(chained.points.size() == volts.size());
    for (std::size_t i = 0; i < volts.size(); ++i) {
        CHECK(chained.points[i].voltage == volts[i]);
        CHECK(chained.points[i].converged == (volts[i] < 21.0));
    }

    const DeflectionCurve serial = sweep_voltage_independent(b, volts, g, {}, 1);
    const DeflectionCurve threaded = sweep_voltage_independent(b, volts, g, {}, 3);
    CHECK(serial == threaded);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(serial.points[i].tip_deflection_m ==
              doctest::Approx(chained.points[i].tip_deflection_m).epsilon(0.01));
    }
}

TEST_CASE("single-degree-of-freedom limit")
{
    CHECK(sdof_stability_limit(3e-6) == 1e-6);
    CHECK_THROWS_AS(sdof_stability_limit(0.0), InvalidArgument);
}
