#include "pullin/banded.hpp"

#include "pullin/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace plab {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), data_(n * (2 * kl + ku + 1), 0.0)
{
}

bool BandedMatrix::in_band(std::size_t i, std::size_t j) const
{
    return i < n_ && j < n_ && j + kl_ >= i && j <= i + ku_;
}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const
{
    return in_band(i, j) ? data_[slot(i, j)] : 0.0;
}

double& BandedMatrix::at(std::size_t i, std::size_t j)
{
    if (!in_band(i, j)) {
        throw InvalidArgument("banded matrix entry (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") is outside the band");
    }
    return data_[slot(i, j)];
}

void BandedMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j0 = i > kl_ ? i - kl_ : 0;
        const std::size_t j1 = std::min(n_ - 1, i + ku_);
        double sum = 0.0;
        for (std::size_t j = j0; j <= j1; ++j) {
            sum += data_[slot(i, j)] * x[j];
        }
        y[i] = sum;
    }
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const
{
    std::vector<double> y(n_);
    multiply(x, y);
    return y;
}

std::vector<double> BandedMatrix::multiply_transpose(std::span<const double> x) const
{
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j0 = i > kl_ ? i - kl_ : 0;
        const std::size_t j1 = std::min(n_ - 1, i + ku_);
        for (std::size_t j = j0; j <= j1; ++j) {
            y[j] += data_[slot(i, j)] * x[i];
        }
    }
    return y;
}

BandedMatrix combine(const BandedMatrix& a, double alpha, const BandedMatrix& b, double beta)
{
    if (a.size() != b.size()) {
        throw InvalidArgument("banded matrices differ in size");
    }
    BandedMatrix out(a.size(), std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t j0 = i > out.lower() ? i - out.lower() : 0;
        const std::size_t j1 = std::min(a.size() - 1, i + out.upper());
        for (std::size_t j = j0; j <= j1; ++j) {
            out.at(i, j) = alpha * a(i, j) + beta * b(i, j);
        }
    }
    return out;
}

BandedLU::BandedLU(BandedMatrix matrix) : lu_(std::move(matrix)), pivots_(lu_.n_)
{
    const std::size_t n = lu_.n_;
    const std::size_t kl = lu_.kl_;
    const std::size_t ku_fill = lu_.kl_ + lu_.ku_;

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t last_row = std::min(n - 1, k + kl);
        std::size_t p = k;
        double best = std::abs(lu_.data_[lu_.slot(k, k)]);
        for (std::size_t r = k + 1; r <= last_row; ++r) {
            const double v = std::abs(lu_.data_[lu_.slot(r, k)]);
            if (v > best) {
                best = v;
                p = r;
            }
        }
        pivots_[k] = p;
        if (best == 0.0) {
            throw InvalidArgument("banded LU: singular matrix (zero pivot at column " +
                                  std::to_string(k) + ")");
        }

        const std::size_t last_col = std::min(n - 1, k + ku_fill);
        if (p != k) {
            for (std::size_t c = k; c <= last_col; ++c) {
                std::swap(lu_.data_[lu_.slot(k, c)], lu_.data_[lu_.slot(p, c)]);
            }
        }

        const double pivot = lu_.data_[lu_.slot(k, k)];
        for (std::size_t r = k + 1; r <= last_row; ++r) {
            double& l = lu_.data_[lu_.slot(r, k)];
            if (l == 0.0) {
                continue;
            }
            l /= pivot;
            for (std::size_t c = k + 1; c <= last_col; ++c) {
                lu_.data_[lu_.slot(r, c)] -= l * lu_.data_[lu_.slot(k, c)];
            }
        }
    }
}

void BandedLU::solve(std::span<double> b) const
{
    const std::size_t n = lu_.n_;
    const std::size_t kl = lu_.kl_;
    const std::size_t ku_fill = lu_.kl_ + lu_.ku_;
    if (b.size() != n) {
        throw InvalidArgument("banded LU: right-hand side has wrong length");
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (pivots_[k] != k) {
            std::swap(b[k], b[pivots_[k]]);
        }
        const std::size_t last_row = std::min(n - 1, k + kl);
        for (std::size_t r = k + 1; r <= last_row; ++r) {
            b[r] -= lu_.data_[lu_.slot(r, k)] * b[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        const std::size_t last_col = std::min(n - 1, k + ku_fill);
        double sum = b[k];
        for (std::size_t c = k + 1; c <= last_col; ++c) {
            sum -= lu_.data_[lu_.slot(k, c)] * b[c];
        }
        b[k] = sum / lu_.data_[lu_.slot(k, k)];
    }
}

void BandedLU::solve_transpose(std::span<double> b) const
{
    const std::size_t n = lu_.n_;
    const std::size_t kl = lu_.kl_;
    const std::size_t ku_fill = lu_.kl_ + lu_.ku_;
    if (b.size() != n) {
        throw InvalidArgument("banded LU: right-hand side has wrong length");
    }

    // U^T z = b
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t first = k > ku_fill ? k - ku_fill : 0;
        double sum = b[k];
        for (std::size_t c = first; c < k; ++c) {
            sum -= lu_.data_[lu_.slot(c, k)] * b[c];
        }
        b[k] = sum / lu_.data_[lu_.slot(k, k)];
    }
    // x = P_0 L_0^T ... P_{n-1} L_{n-1}^T z
    for (std::size_t k = n; k-- > 0;) {
        const std::size_t last_row = std::min(n - 1, k + kl);
        double sum = b[k];
        for (std::size_t r = k + 1; r <= last_row; ++r) {
            sum -= lu_.data_[lu_.slot(r, k)] * b[r];
        }
        b[k] = sum;
        if (pivots_[k] != k) {
            std::swap(b[k], b[pivots_[k]]);
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const
{
    std::vector<double> x(rhs.begin(), rhs.end());
    solve(std::span<double>(x));
    return x;
}

}  // namespace plab
