#include "pullin/banded.hpp"
#include "pullin/error.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <random>

using namespace plab;

namespace {

BandedMatrix random_band(std::size_t n, std::size_t kl, std::size_t ku, std::mt19937& rng,
                         double diagonal)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    BandedMatrix a(n, kl, ku);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (a.in_band(i, j)) {
                a.at(i, j) = d(rng) + (i == j ? diagonal : 0.0);
            }
        }
    }
    return a;
}

Eigen::MatrixXd dense(const BandedMatrix& a)
{
    Eigen::MatrixXd m(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            m(i, j) = a(i, j);
        }
    }
    return m;
}

Eigen::VectorXd as_eigen(const std::vector<double>& v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST_CASE("band access")
{
    BandedMatrix a(5, 1, 2);
    CHECK(a.in_band(0, 2));
    CHECK_FALSE(a.in_band(0, 3));
    CHECK(a.in_band(3, 2));
    CHECK_FALSE(a.in_band(3, 1));
    a.at(1, 3) = 4.0;
    a.add(1, 3, 1.0);
    CHECK(a(1, 3) == 5.0);
    CHECK(a(4, 0) == 0.0);
    CHECK_THROWS_AS(a.at(4, 0), InvalidArgument);
}

TEST_CASE("products match a dense oracle")
{
    std::mt19937 rng(7);
    for (auto [kl, ku] : {std::pair<std::size_t, std::size_t>{2, 2}, {1, 3}, {3, 0}}) {
        const BandedMatrix a = random_band(12, kl, ku, rng, 0.0);
        std::vector<double> x(12);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = 0.3 * static_cast<double>(i) - 1.0;
        }
        const Eigen::MatrixXd m = dense(a);
        CHECK((as_eigen(a.multiply(x)) - m * as_eigen(x)).norm() < 1e-12);
        CHECK((as_eigen(a.multiply_transpose(x)) - m.transpose() * as_eigen(x)).norm() < 1e-12);
    }
}

TEST_CASE("combine takes the union band")
{
    std::mt19937 rng(11);
    const BandedMatrix a = random_band(9, 2, 1, rng, 0.0);
    const BandedMatrix b = random_band(9, 0, 3, rng, 0.0);
    const BandedMatrix c = combine(a, 2.0, b, -0.5);
    CHECK(c.lower() == 2);
    CHECK(c.upper() == 3);
    CHECK((dense(c) - (2.0 * dense(a) - 0.5 * dense(b))).norm() < 1e-14);
}

TEST_CASE("LU solves match a dense oracle, including pivoting")
{
    std::mt19937 rng(3);
    for (double diagonal : {6.0, 0.0}) {
        const BandedMatrix a = random_band(40, 2, 2, rng, diagonal);
        std::vector<double> b(40);
        for (std::size_t i = 0; i < b.size(); ++i) {
            b[i] = std::sin(0.7 * static_cast<double>(i));
        }
        const BandedLU lu(a);
        const Eigen::MatrixXd m = dense(a);
        const Eigen::VectorXd ref = m.fullPivLu().solve(as_eigen(b));
        const Eigen::VectorXd ref_t = m.transpose().fullPivLu().solve(as_eigen(b));

        CHECK((as_eigen(lu.solve(std::span<const double>(b))) - ref).norm() <= 1e-9 * ref.norm());
        std::vector<double> t = b;
        lu.solve_transpose(std::span<double>(t));
        CHECK((as_eigen(t) - ref_t).norm() <= 1e-9 * ref_t.norm());
    }
}

TEST_CASE("singular matrix is rejected")
{
    BandedMatrix a(3, 1, 1);
    a.at(0, 0) = 1.0;
    a.at(1, 1) = 1.0;
    CHECK_THROWS_AS(BandedLU{a}, InvalidArgument);
}
