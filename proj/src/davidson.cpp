// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <span>

#include <Eigen/Eigenvalues>

#include "lucj/detci.hpp"
#include "lucj/kernels.hpp"

namespace lucj {

namespace {

std::span<const double> view(const VectorXd &v)
{
    return {v.data(), static_cast<std::size_t>(v.size())};
}
std::span<double> view(VectorXd &v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

EigenPair dense_lowest(const MatrixXd &m, const LinearMap &apply)
{
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (m + m.transpose()));
    EigenPair out;
    out.energy = eig.eigenvalues()(0);
    out.vector = eig.eigenvectors().col(0);
    VectorXd hv(out.vector.size());
    apply(out.vector, hv);
    out.residual_norm = (hv - out.energy * out.vector).norm();
    out.converged = true;
    out.iterations = 1;
    return out;
}

// Orthonormalize v against the first m columns of basis (two passes of
// classical Gram–Schmidt). Returns the norm left after projection.
double orthonormalize(const MatrixXd &basis, Eigen::Index m, VectorXd &v)
{
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index k = 0; k < m; ++k) {
            const VectorXd col = basis.col(k);
            const double c = kernels::dot(view(col), view(v));
            kernels::axpy(-c, view(col), view(v));
        }
    }
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    return norm;
}

} // namespace

EigenPair davidson_lowest(const LinearMap &apply, const VectorXd &diagonal, const DavidsonOptions &options)
{
    const Eigen::Index n = diagonal.size();
    if (n == 0) throw NumericalError("davidson_lowest: empty space");
    if (static_cast<std::size_t>(n) <= options.dense_threshold) {
        MatrixXd m(n, n);
        VectorXd e = VectorXd::Zero(n), col(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            e(k) = 1.0;
            apply(e, col);
            m.col(k) = col;
            e(k) = 0.0;
        }
        return dense_lowest(m, apply);
    }

    const Eigen::Index max_sub = std::max(4, options.max_subspace);
    MatrixXd v(n, max_sub);
    MatrixXd av(n, max_sub);
    Eigen::Index m = 0;

    Eigen::Index start = 0;
    diagonal.minCoeff(&start);
    VectorXd guess = VectorXd::Zero(n);
    guess(start) = 1.0;

    EigenPair best;
    best.vector = guess;
    best.energy = diagonal(start);
    best.residual_norm = std::numeric_limits<double>::infinity();
    VectorXd previous;

    VectorXd t = guess;
    VectorXd at(n);
    for (int iter = 1; iter <= options.max_iter; ++iter) {
        if (orthonormalize(v, m, t) < 1e-14) {
            // Correction fell inside the subspace; perturb with a fresh direction.
            t = VectorXd::Zero(n);
            t((start + iter) % n) = 1.0;
            if (orthonormalize(v, m, t) < 1e-14) break;
        }
        apply(t, at);
        v.col(m) = t;
        av.col(m) = at;
        ++m;

        const MatrixXd sub = v.leftCols(m).transpose() * av.leftCols(m);
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (sub + sub.transpose()));
        const double theta = eig.eigenvalues()(0);
        const VectorXd s = eig.eigenvectors().col(0);
        VectorXd x = v.leftCols(m) * s;
        const VectorXd ax = av.leftCols(m) * s;
        VectorXd r = ax - theta * x;
        const double rnorm = r.norm();

        // Ritz values never increase (restarts keep x), so the latest iterate is the best.
        best.iterations = iter;
        best.energy = theta;
        best.vector = x;
        best.residual_norm = rnorm;
        if (rnorm <= options.tol) {
            best.converged = true;
            return best;
        }

        for (Eigen::Index k = 0; k < n; ++k) {
            double den = theta - diagonal(k);
            if (std::abs(den) < 1e-8) den = den < 0 ? -1e-8 : 1e-8;
            r(k) /= den;
        }

        if (m == max_sub) {
            // Thick restart from the current Ritz vector and the previous one.
            v.col(0) = x;
            av.col(0) = ax;
            m = 1;
            if (previous.size() == n) {
                VectorXd p = previous;
                if (orthonormalize(v, m, p) > 1e-8) {
                    VectorXd ap(n);
                    apply(p, ap);
                    v.col(1) = p;
                    av.col(1) = ap;
                    m = 2;
                }
            }
        }
        previous = x;
        t = r;
    }
    return best;
}

EigenPair davidson_lowest(const HamiltonianMatrix &h, const DavidsonOptions &options)
{
    const auto &sparse = h.sparse();
    if (h.dimension() <= options.dense_threshold) {
        const MatrixXd dense = h.dense();
        return dense_lowest(dense, [&sparse](const VectorXd &x, VectorXd &y) { y = sparse * x; });
    }
    return davidson_lowest([&sparse](const VectorXd &x, VectorXd &y) { y = sparse * x; }, h.diagonal(),
                           options);
}

} // namespace lucj
