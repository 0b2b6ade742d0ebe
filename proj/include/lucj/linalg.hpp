// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <span>
#include <vector>

#include "lucj/common.hpp"

namespace lucj {

/// ‖U†U − I‖_F
double unitarity_error(const MatrixXcd &u);

/// ‖J − Jᵀ‖_F
double symmetry_error(const MatrixXd &j);

/// Uniform double in [0, 1) with 53 random bits; identical across standard
/// library implementations, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64 &rng);

/// Standard normal deviate (Box–Muller on uniform01).
double standard_normal(std::mt19937_64 &rng);

/// Haar-distributed n×n unitary (QR of a complex Ginibre matrix with the
/// phases of R's diagonal absorbed into Q).
MatrixXcd random_unitary(int n, std::mt19937_64 &rng);

/// Number of real coordinates of an n×n antihermitian matrix.
constexpr int antihermitian_dof(int n) { return n * n; }

/// Real coordinates of an antihermitian matrix: Im K_pp for every p, then
/// (Re K_pq, Im K_pq) for p < q in row-major order.
void pack_antihermitian(const MatrixXcd &k, std::span<double> out);
MatrixXcd unpack_antihermitian(std::span<const double> coords, int n);

/// Given G with dL = Re tr(G† dK) over unconstrained complex K, write
/// dL/dcoords for the antihermitian coordinates of pack_antihermitian.
void antihermitian_gradient(const MatrixXcd &g, std::span<double> out);

/// exp(K) for antihermitian K via the eigendecomposition of the hermitian
/// matrix −iK, kept around to pull gradients back through the exponential.
class AntihermitianExp {
public:
    explicit AntihermitianExp(const MatrixXcd &k);

    const MatrixXcd &unitary() const { return unitary_; }

    /// Adjoint of the Fréchet derivative: if dL = Re tr(G† dU) then
    /// dL = Re tr(pullback(G)† dK).
    MatrixXcd pullback(const MatrixXcd &grad_u) const;

private:
    MatrixXcd vectors_;
    VectorXd angles_;
    MatrixXcd unitary_;
};

MatrixXcd expm_antihermitian(const MatrixXcd &k);

/// Principal logarithm of a unitary; result is antihermitian with
/// eigenvalues i·θ, θ ∈ (−π, π].
MatrixXcd logm_unitary(const MatrixXcd &u);

/// Elementary rotation on orbitals (p, p+1): as an n×n matrix it equals the
/// identity except for the 2×2 block {m00 m01; m10 m11} at rows/cols p, p+1.
struct GivensStep {
    int p;
    Complex m00, m01, m10, m11;
};

/// U = G_0 G_1 ⋯ G_{m−1} diag(phases). Acting on a state, apply the phases
/// first, then steps in reverse order.
struct GivensDecomposition {
    std::vector<GivensStep> steps;
    VectorXcd phases;
};

GivensDecomposition givens_decomposition(const MatrixXcd &u);

} // namespace lucj
