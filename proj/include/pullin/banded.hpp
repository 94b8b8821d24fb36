#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace plab {

/// Square banded matrix with kl sub- and ku super-diagonals.
///
/// Row-major band storage; each row reserves kl extra super-diagonal slots
/// so the LU factorization with partial pivoting can fill in place.
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const { return n_; }
    std::size_t lower() const { return kl_; }
    std::size_t upper() const { return ku_; }

    bool in_band(std::size_t i, std::size_t j) const;

    /// Entry (i, j); zero outside the band.
    double operator()(std::size_t i, std::size_t j) const;

    /// Mutable entry (i, j). Throws InvalidArgument outside the band.
    double& at(std::size_t i, std::size_t j);

    void add(std::size_t i, std::size_t j, double value) { at(i, j) += value; }

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    /// y = A^T x
    std::vector<double> multiply_transpose(std::span<const double> x) const;

    /// Sum of two matrices of equal size; the band is the union of both bands.
    friend BandedMatrix combine(const BandedMatrix& a, double alpha, const BandedMatrix& b,
                                double beta);

private:
    friend class BandedLU;

    std::size_t width() const { return 2 * kl_ + ku_ + 1; }
    std::size_t slot(std::size_t i, std::size_t j) const { return i * width() + (j + kl_ - i); }

    std::size_t n_ = 0;
    std::size_t kl_ = 0;
    std::size_t ku_ = 0;
    std::vector<double> data_;
};

/// alpha A + beta B
BandedMatrix combine(const BandedMatrix& a, double alpha, const BandedMatrix& b, double beta);

/// Gaussian elimination with partial pivoting restricted to the band.
class BandedLU {
public:
    BandedLU() = default;

    /// Throws InvalidArgument when a zero pivot is met.
    explicit BandedLU(BandedMatrix matrix);

    std::size_t size() const { return lu_.n_; }

    /// Solves A x = b in place.
    void solve(std::span<double> rhs) const;

    /// Solves A^T x = b in place.
    void solve_transpose(std::span<double> rhs) const;

    std::vector<double> solve(std::span<const double> rhs) const;

private:
    BandedMatrix lu_;
    std::vector<std::size_t> pivots_;
};

}  // namespace plab
