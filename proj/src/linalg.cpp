// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/linalg.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace lucj {

double unitarity_error(const MatrixXcd &u)
{
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    return (u.adjoint() * u - MatrixXcd::Identity(u.rows(), u.cols())).norm();
}

double symmetry_error(const MatrixXd &j)
{
    if (j.rows() != j.cols()) return std::numeric_limits<double>::infinity();
    return (j - j.transpose()).norm();
}

double uniform01(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64 &rng)
{
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

MatrixXcd random_unitary(int n, std::mt19937_64 &rng)
{
    MatrixXcd z(n, n);
    const double s = 1.0 / std::sqrt(2.0);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) z(r, c) = Complex(s * standard_normal(rng), s * standard_normal(rng));
    Eigen::HouseholderQR<MatrixXcd> qr(z);
    MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(n, n);
    const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

void pack_antihermitian(const MatrixXcd &k, std::span<double> out)
{
    const int n = static_cast<int>(k.rows());
    std::size_t pos = 0;
    for (int p = 0; p < n; ++p) out[pos++] = k(p, p).imag();
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            out[pos++] = k(p, q).real();
            out[pos++] = k(p, q).imag();
        }
}

MatrixXcd unpack_antihermitian(std::span<const double> coords, int n)
{
    MatrixXcd k = MatrixXcd::Zero(n, n);
    std::size_t pos = 0;
    for (int p = 0; p < n; ++p) k(p, p) = Complex(0.0, coords[pos++]);
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            const Complex v(coords[pos], coords[pos + 1]);
            pos += 2;
            k(p, q) = v;
            k(q, p) = -std::conj(v);
        }
    return k;
}

void antihermitian_gradient(const MatrixXcd &g, std::span<double> out)
{
    const int n = static_cast<int>(g.rows());
    std::size_t pos = 0;
    for (int p = 0; p < n; ++p) out[pos++] = g(p, p).imag();
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            out[pos++] = g(p, q).real() - g(q, p).real();
            out[pos++] = g(p, q).imag() + g(q, p).imag();
        }
}

AntihermitianExp::AntihermitianExp(const MatrixXcd &k)
{
    const MatrixXcd h = Complex(0.0, -1.0) * k;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(0.5 * (h + h.adjoint()));
    vectors_ = eig.eigenvectors();
    angles_ = eig.eigenvalues();
    VectorXcd phases(angles_.size());
    for (Eigen::Index p = 0; p < angles_.size(); ++p) phases(p) = std::polar(1.0, angles_(p));
    unitary_ = vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

MatrixXcd AntihermitianExp::pullback(const MatrixXcd &grad_u) const
{
    const Eigen::Index n = angles_.size();
    MatrixXcd g = vectors_.adjoint() * grad_u * vectors_;
    for (Eigen::Index q = 0; q < n; ++q)
        for (Eigen::Index p = 0; p < n; ++p) {
            // divided difference of exp at i·h_p, i·h_q, written stably
            const double half = 0.5 * (angles_(p) - angles_(q));
            const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
            const Complex phi = std::polar(sinc, 0.5 * (angles_(p) + angles_(q)));
            g(p, q) *= std::conj(phi);
        }
    return vectors_ * g * vectors_.adjoint();
}

MatrixXcd expm_antihermitian(const MatrixXcd &k) { return AntihermitianExp(k).unitary(); }

MatrixXcd logm_unitary(const MatrixXcd &u)
{
    const Eigen::Index n = u.rows();
    Eigen::ComplexSchur<MatrixXcd> schur(u);
    const MatrixXcd &q = schur.matrixU();
    const MatrixXcd &t = schur.matrixT();
    VectorXcd logs(n);
    for (Eigen::Index p = 0; p < n; ++p) logs(p) = Complex(0.0, std::arg(t(p, p)));
    MatrixXcd k = q * logs.asDiagonal() * q.adjoint();
    return 0.5 * (k - k.adjoint());
}

GivensDecomposition givens_decomposition(const MatrixXcd &u)
{
    const int n = static_cast<int>(u.rows());
    MatrixXcd w = u;
    GivensDecomposition out;
    // Left-multiply by adjacent-row rotations M_k to reach a diagonal D, so
    // U = M_0† M_1† ⋯ D. Entries above the diagonal vanish by unitarity.
    for (int col = 0; col + 1 < n; ++col) {
        for (int row = n - 1; row > col; --row) {
            const Complex x1 = w(row - 1, col);
            const Complex x2 = w(row, col);
            if (std::abs(x2) == 0.0) continue;
            const double r = std::hypot(std::abs(x1), std::abs(x2));
            const Complex a = std::conj(x1) / r, b = std::conj(x2) / r;
            const Complex c = -x2 / r, d = x1 / r;
            for (int k = 0; k < n; ++k) {
                const Complex top = w(row - 1, k);
                const Complex bot = w(row, k);
                w(row - 1, k) = a * top + b * bot;
                w(row, k) = c * top + d * bot;
            }
            out.steps.push_back({row - 1, std::conj(a), std::conj(c), std::conj(b), std::conj(d)});
        }
    }
    out.phases = w.diagonal();
    return out;
}

} // namespace lucj
