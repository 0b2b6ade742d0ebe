// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/models.hpp"

#include <Eigen/Eigenvalues>

#include "lucj/linalg.hpp"

namespace lucj {

Hamiltonian hubbard_chain(int nsites, double t, double u, int n_alpha, int n_beta)
{
    if (nsites < 1 || nsites > kMaxOrbitals) throw ParseError("hubbard_chain: invalid site count");
    MatrixXd hop = MatrixXd::Zero(nsites, nsites);
    for (int s = 0; s + 1 < nsites; ++s) hop(s, s + 1) = hop(s + 1, s) = -t;
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(hop);
    MatrixXd c = eig.eigenvectors();
    // Fix each orbital's sign so its largest-magnitude site coefficient is positive.
    for (int p = 0; p < nsites; ++p) {
        Eigen::Index k;
        c.col(p).cwiseAbs().maxCoeff(&k);
        if (c(k, p) < 0.0) c.col(p) *= -1.0;
    }

    Hamiltonian h;
    h.norb = nsites;
    h.n_alpha = n_alpha;
    h.n_beta = n_beta;
    h.ecore = 0.0;
    h.h1 = c.transpose() * hop * c;
    h.h1 = 0.5 * (h.h1 + h.h1.transpose()).eval();
    h.h2.assign(static_cast<std::size_t>(nsites) * nsites * nsites * nsites, 0.0);
    const int n = nsites;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    double v = 0.0;
                    for (int x = 0; x < n; ++x) v += c(x, p) * c(x, q) * c(x, r) * c(x, s);
                    h.h2[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s] = u * v;
                }
    h.validate();
    return h;
}

Hamiltonian random_hamiltonian(int norb, int n_alpha, int n_beta, std::mt19937_64 &rng)
{
    if (norb < 1 || norb > kMaxOrbitals) throw ParseError("random_hamiltonian: invalid orbital count");
    Hamiltonian h;
    h.norb = norb;
    h.n_alpha = n_alpha;
    h.n_beta = n_beta;
    h.ecore = standard_normal(rng);
    h.h1 = MatrixXd(norb, norb);
    for (int p = 0; p < norb; ++p)
        for (int q = 0; q <= p; ++q) h.h1(p, q) = h.h1(q, p) = standard_normal(rng) * (p == q ? 1.0 : 0.3);
    // (pq|rs) = Σ_k L_k,pq L_k,rs with symmetric L_k.
    const int npair = norb * norb;
    MatrixXd l = MatrixXd::Zero(npair, npair);
    for (int k = 0; k < npair; ++k)
        for (int p = 0; p < norb; ++p)
            for (int q = 0; q <= p; ++q) {
                const double v = 0.3 * standard_normal(rng);
                l(k, p * norb + q) = v;
                l(k, q * norb + p) = v;
            }
    const MatrixXd g = l.transpose() * l / npair;
    h.h2.assign(static_cast<std::size_t>(npair) * npair, 0.0);
    for (int a = 0; a < npair; ++a)
        for (int b = 0; b < npair; ++b) h.h2[static_cast<std::size_t>(a) * npair + b] = 0.5 * (g(a, b) + g(b, a));
    h.validate();
    return h;
}

} // namespace lucj
