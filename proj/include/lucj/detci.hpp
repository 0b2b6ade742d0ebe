// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

#include "lucj/chemio.hpp"
#include "lucj/determinant.hpp"
#include "lucj/tensor.hpp"

namespace lucj {

/// Ordered, duplicate-free set of determinants in one (n_alpha, n_beta)
/// sector, sorted by (alpha, beta) as integers.
class CIBasis {
public:
    CIBasis() = default;

    /// Sorts and deduplicates; throws ParseError on popcount or range violations.
    CIBasis(int norb, int n_alpha, int n_beta, std::vector<Determinant> dets);

    int norb() const { return norb_; }
    int n_alpha() const { return n_alpha_; }
    int n_beta() const { return n_beta_; }
    std::size_t size() const { return dets_.size(); }
    bool empty() const { return dets_.empty(); }

    const Determinant &operator[](std::size_t k) const { return dets_[k]; }
    std::span<const Determinant> determinants() const { return dets_; }
    auto begin() const { return dets_.begin(); }
    auto end() const { return dets_.end(); }

    std::optional<std::size_t> find(const Determinant &d) const;

    bool operator==(const CIBasis &other) const
    {
        return norb_ == other.norb_ && n_alpha_ == other.n_alpha_ && n_beta_ == other.n_beta_ &&
               dets_ == other.dets_;
    }

private:
    int norb_ = 0;
    int n_alpha_ = 0;
    int n_beta_ = 0;
    std::vector<Determinant> dets_;
    std::unordered_map<Determinant, std::size_t, DeterminantHash> index_;
};

/// Every determinant of the sector: C(norb, n_alpha)·C(norb, n_beta) entries.
CIBasis enumerate_basis(int norb, int n_alpha, int n_beta);

/// Determinant occupying the lowest n_alpha / n_beta orbitals.
Determinant hartree_fock_determinant(int n_alpha, int n_beta);

/// ⟨bra|H|ket⟩ by the Slater–Condon rules; diagonal includes ecore.
double hamiltonian_element(const Determinant &bra, const Determinant &ket, const Hamiltonian &h);

/// H projected onto a CIBasis, stored sparse (row-major).
class HamiltonianMatrix {
public:
    HamiltonianMatrix(const CIBasis &basis, const Hamiltonian &h);

    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    const VectorXd &diagonal() const { return diagonal_; }
    const Eigen::SparseMatrix<double, Eigen::RowMajor> &sparse() const { return matrix_; }

    VectorXd apply(const VectorXd &x) const { return matrix_ * x; }
    VectorXcd apply(const VectorXcd &x) const;
    MatrixXd dense() const { return MatrixXd(matrix_); }

private:
    Eigen::SparseMatrix<double, Eigen::RowMajor> matrix_;
    VectorXd diagonal_;
};

struct CIVector {
    CIBasis basis;
    VectorXd coeffs;
};

/// H v over v's basis. Throws ParseError if the basis sector disagrees with h.
CIVector apply_hamiltonian(const CIVector &v, const Hamiltonian &h);

struct DavidsonOptions {
    double tol = 1e-8;
    int max_iter = 200;
    int max_subspace = 40;
    std::size_t dense_threshold = 512;
};

/// Lowest eigenpair. When converged is false the best iterate is returned.
struct EigenPair {
    double energy = 0.0;
    VectorXd vector;
    bool converged = false;
    int iterations = 0;
    double residual_norm = 0.0;
};

using LinearMap = std::function<void(const VectorXd &, VectorXd &)>;

/// Davidson with diagonal preconditioning and thick restart; dimensions up
/// to dense_threshold are diagonalized densely instead.
EigenPair davidson_lowest(const LinearMap &apply, const VectorXd &diagonal,
                          const DavidsonOptions &options = {});
EigenPair davidson_lowest(const HamiltonianMatrix &h, const DavidsonOptions &options = {});

struct GroundState {
    double energy = 0.0;
    CIVector state;
    bool converged = false;
    double residual_norm = 0.0;
};

GroundState fci_ground_state(const Hamiltonian &h, const DavidsonOptions &options = {});

/// Linear CI coefficients in the restricted convention
///   Ψ = c0 Φ0 + Σ c1_ia E_ai Φ0 + Σ c2_ijab E_ai E_bj Φ0,  E_pq = Σ_σ a†_pσ a_qσ.
struct CISDCoefficients {
    double c0 = 0.0;
    MatrixXd c1;
    Tensor4 c2;
};

struct CISDResult {
    double energy = 0.0;
    CIVector state;
    CISDCoefficients coefficients;
    bool converged = false;
};

/// CISD over HF + all single and double excitations, closed shell only.
/// The eigenvector is normalized with its HF coefficient made positive.
CISDResult cisd_ground_state(const Hamiltonian &h, const DavidsonOptions &options = {});

/// Read (c0, c1, c2) off a closed-shell CI vector. c1 averages the alpha and
/// beta single excitations; c2 comes from the opposite-spin doubles.
CISDCoefficients extract_cisd_coefficients(const CIVector &v);

/// t1 = c1/c0, t2_ijab = c2_ijab/c0 − t1_ia t1_jb / 2. Throws NumericalError
/// when |c0| < 1e-8.
Amplitudes cisd_to_t_amplitudes(const CISDCoefficients &c);

} // namespace lucj
