#pragma once

// Reference fold of w'''' = lambda / (1 - w)^2 on a clamped-free unit beam,
// written separately from the library: Eigen sparse LU, Newton on the system
// augmented with lambda and a prescribed tip deflection, and the classical
// 3-point moment / central shear tip ghosts. lambda(tip) is maximised by a
// golden-section search.

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Fold {
    double lambda;
    double tip;  // w at the tip, i.e. tip deflection / gap
};

class FoldSolver {
public:
    explicit FoldSolver(int n_nodes) : n_(n_nodes - 1), h_(1.0 / (n_nodes - 1)) {}

    // Solves for (w, lambda) with w_tip = s, starting from `w` / `lambda`.
    bool solve_at_tip(double s, std::vector<double>& w, double& lambda) const
    {
        const int n = n_;
        double previous = 1.0;
        for (int it = 0; it < 50; ++it) {
            Eigen::VectorXd f(n + 1);
            std::vector<Eigen::Triplet<double>> jac;
            const std::vector<double> ext = extended(w);
            const double h4 = std::pow(h_, 4);
            for (int i = 1; i <= n; ++i) {
                const double d4 = (at(ext, i - 2) - 4 * at(ext, i - 1) + 6 * at(ext, i) -
                                   4 * at(ext, i + 1) + at(ext, i + 2)) / h4;
                const double gap = 1.0 - w[i - 1];
                f[i - 1] = d4 - lambda / (gap * gap);
                for (int k = -2; k <= 2; ++k) {
                    static const double c[] = {1, -4, 6, -4, 1};
                    add_dependency(jac, i - 1, i + k, c[k + 2] / h4);
                }
                jac.emplace_back(i - 1, i - 1, -2.0 * lambda / (gap * gap * gap));
                jac.emplace_back(i - 1, n, -1.0 / (gap * gap));
            }
            f[n] = w[n - 1] - s;
            jac.emplace_back(n, n - 1, 1.0);

            Eigen::SparseMatrix<double> J(n + 1, n + 1);
            J.setFromTriplets(jac.begin(), jac.end());
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
            lu.compute(J);
            if (lu.info() != Eigen::Success) {
                return false;
            }
            const Eigen::VectorXd step = lu.solve(-f);
            for (int u = 0; u < n; ++u) {
                w[u] += step[u];
            }
            lambda += step[n];
            // The h^-4 conditioning leaves a roundoff floor well above 1e-13
            // on fine grids; stop once the step no longer shrinks.
            const double size = step.cwiseAbs().maxCoeff();
            if (size < 1e-13 || (it >= 2 && size > 0.25 * previous && size < 1e-6)) {
                return true;
            }
            previous = size;
        }
        return false;
    }

    Fold fold() const
    {
        std::vector<double> w(n_, 0.0);
        double lambda = 0.0;
        std::vector<std::vector<double>> states;
        std::vector<double> lambdas;
        std::vector<double> tips;
        for (double s = 0.02; s < 0.9; s += 0.02) {
            if (!solve_at_tip(s, w, lambda)) {
                throw std::runtime_error("oracle continuation failed");
            }
            states.push_back(w);
            lambdas.push_back(lambda);
            tips.push_back(s);
            if (lambdas.size() >= 3 && lambdas[lambdas.size() - 1] < lambdas[lambdas.size() - 2]) {
                break;
            }
        }
        const std::size_t k = lambdas.size() - 2;  // the largest sample
        std::vector<double> ws = states[k];
        double ls = lambdas[k];
        auto lambda_at = [&](double s) {
            std::vector<double> wt = ws;
            double lt = ls;
            if (!solve_at_tip(s, wt, lt)) {
                throw std::runtime_error("oracle golden-section solve failed");
            }
            return lt;
        };
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = tips[k - 1];
        double b = tips[k + 1];
        double c = b - g * (b - a);
        double d = a + g * (b - a);
        double fc = lambda_at(c);
        double fd = lambda_at(d);
        while (b - a > 1e-7) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = lambda_at(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = lambda_at(d);
            }
        }
        const double s = 0.5 * (a + b);
        return {lambda_at(s), s};
    }

private:
    // Values at nodes -1 .. n + 2 (node 0 is the clamp); w holds nodes 1 .. n.
    std::vector<double> extended(const std::vector<double>& w) const
    {
        const int n = n_;
        std::vector<double> e(n + 5, 0.0);
        for (int i = 1; i <= n; ++i) {
            e[i + 1] = w[i - 1];
        }
        e[0] = w[0];  // w(-h) = w(h)
        const double g1 = 2 * w[n - 1] - w[n - 2];
        e[n + 2] = g1;
        e[n + 3] = 2 * g1 - 2 * w[n - 2] + w[n - 3];
        return e;
    }

    static double at(const std::vector<double>& e, int node) { return e[node + 1]; }

    // d(value at node)/d(w_u) expressed through the ghost rules.
    void add_dependency(std::vector<Eigen::Triplet<double>>& jac, int row, int node, double c) const
    {
        const int n = n_;
        auto unknown = [&](int m, double coef) {
            if (m >= 1 && m <= n) {
                jac.emplace_back(row, m - 1, coef);
            }
        };
        if (node == -1) {
            unknown(1, c);
        } else if (node == n + 1) {  // g1 = 2 w_n - w_{n-1}
            unknown(n, 2 * c);
            unknown(n - 1, -c);
        } else if (node == n + 2) {  // g2 = 2 g1 - 2 w_{n-1} + w_{n-2} = 4 w_n - 4 w_{n-1} + w_{n-2}
            unknown(n, 4 * c);
            unknown(n - 1, -4 * c);
            unknown(n - 2, c);
        } else {
            unknown(node, c);
        }
    }

    int n_;
    double h_;
};

inline Fold fold_point(int n_nodes) { return FoldSolver(n_nodes).fold(); }

}  // namespace oracle
