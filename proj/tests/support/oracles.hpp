// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Independent reference implementations used only by tests. None of these
// share code paths with the library beyond plain data types.

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "lucj/chemio.hpp"
#include "lucj/compress.hpp"
#include "lucj/detci.hpp"
#include "lucj/ucjsim.hpp"

namespace lucj::oracle {

/// Sparse vector over Fock states. A Fock state is a bitmask over 2·norb
/// modes: mode p is alpha orbital p, mode norb + p is beta orbital p, and
/// |n⟩ = Π_k (a†_k)^{n_k} |vac⟩ with k ascending.
using FockVector = std::map<std::uint64_t, Complex>;

struct Fock {
    int norb;

    std::uint64_t mode(int p, int spin) const { return std::uint64_t{1} << (p + spin * norb); }
    std::uint64_t state(const Determinant &d) const { return d.alpha | (d.beta << norb); }

    /// a†_k a_l with Jordan–Wigner signs.
    FockVector hop(const FockVector &v, int k, int l) const;
    /// Σ_σ a†_pσ a_qσ
    FockVector excite(const FockVector &v, int p, int q) const;
    /// a†_k a†_l a_m a_n
    FockVector two_body(const FockVector &v, int k, int l, int m, int n) const;

    /// Second-quantized H = ecore + Σ h_pq a†_pσ a_qσ + ½ Σ (pq|rs) a†_pσ a†_rτ a_sτ a_qσ.
    FockVector apply_hamiltonian(const FockVector &v, const Hamiltonian &h) const;
};

void axpy(FockVector &y, Complex a, const FockVector &x);

/// ⟨bra|H|ket⟩ over a CI basis built from the Fock-space operator.
MatrixXd hamiltonian_matrix(const CIBasis &basis, const Hamiltonian &h);

/// ⟨S|𝒰|T⟩ = det U[S,T]_alpha · det U[S,T]_beta over the full sector.
MatrixXcd rotation_matrix(const MatrixXcd &u, int norb, int n_alpha, int n_beta);

/// exp(i 𝒥) with 𝒥 = ½ Σ_{ij,στ} J^{στ}_ij n_iσ n_jτ, J^{αα} = J^{ββ} = j_same,
/// J^{αβ} = J^{βα} = j_opposite.
VectorXcd coulomb_phases(const MatrixXd &j_same, const MatrixXd &j_opposite, int norb, int n_alpha,
                         int n_beta);

/// Dense sector unitary of the whole UCJ operator.
MatrixXcd ucj_matrix(const UCJOperator &op, int n_alpha, int n_beta);

/// Matrix exponential via Eigen's unsupported MatrixFunctions module.
MatrixXcd expm(const MatrixXcd &k);

/// Random t2 with t_ijab = t_jiba.
Tensor4 random_t2(int nocc, int nvir, std::mt19937_64 &rng, double scale = 1.0);

/// t̄_ijab = i Σ_μ Σ_pq J_pq U_ap conj(U_ip) U_bq conj(U_jq) by plain loops.
std::vector<Complex> reconstruct(const std::vector<MatrixXcd> &us, const std::vector<MatrixXd> &js, int nocc,
                                 int nvir);

/// ½ Σ|t̄ − t|² + λ |Σ‖J‖² − ref| from explicit U's and J's.
double direct_loss(const std::vector<MatrixXcd> &us, const std::vector<MatrixXd> &js, const Tensor4 &t2,
                   double lambda, double ref);

/// Central differences of f at x with step h.
VectorXd central_difference(const std::function<double(const VectorXd &)> &f, const VectorXd &x, double h);

/// Φ + T1 Φ + (T2 + ½ T1²) Φ with T1 = Σ t_ia E_ai and T2 = Σ t_ijab E_ai E_bj,
/// projected on the CI basis of the closed-shell sector.
CIVector ci_from_t(const Amplitudes &t, int norb);

/// Random real state on the sector basis, normalized.
VectorXcd random_state(std::size_t dim, std::mt19937_64 &rng);

} // namespace lucj::oracle
