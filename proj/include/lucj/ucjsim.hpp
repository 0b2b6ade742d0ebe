// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Exact statevector simulation in a fixed (n_alpha, n_beta) sector.
//
// Amplitudes are stored as an (alpha string) × (beta string) row-major
// matrix with strings in ascending order, which coincides with the canonical
// CIBasis order of the full sector. An orbital rotation U acts as
// a†_q ↦ Σ_p U_pq a†_p on both spins.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "lucj/compress.hpp"
#include "lucj/detci.hpp"

namespace lucj {

struct UCJLayer {
    MatrixXcd U;
    MatrixXd J_same;
    MatrixXd J_opposite;
};

struct UCJOperator {
    int norb = 0;
    std::vector<UCJLayer> reps;
    std::optional<MatrixXcd> final_rotation;
};

/// Throws NumericalError on non-unitary U (1e-10) or asymmetric J (1e-12).
void validate(const UCJOperator &op);

class StateVector {
public:
    StateVector(int norb, int n_alpha, int n_beta);

    int norb() const { return norb_; }
    int n_alpha() const { return n_alpha_; }
    int n_beta() const { return n_beta_; }
    std::size_t dimension() const { return alpha_.size() * beta_.size(); }
    std::size_t alpha_count() const { return alpha_.size(); }
    std::size_t beta_count() const { return beta_.size(); }
    const std::vector<Bitmask> &alpha_strings() const { return alpha_; }
    const std::vector<Bitmask> &beta_strings() const { return beta_; }

    VectorXcd &amplitudes() { return amps_; }
    const VectorXcd &amplitudes() const { return amps_; }

    Determinant determinant(std::size_t index) const;
    std::optional<std::size_t> index(const Determinant &d) const;

    /// Full-sector CIBasis, in the same order as the amplitudes.
    CIBasis basis() const;

    double norm() const;

private:
    int norb_, n_alpha_, n_beta_;
    std::vector<Bitmask> alpha_, beta_;
    std::unordered_map<Bitmask, std::size_t> alpha_index_, beta_index_;
    VectorXcd amps_;
};

/// Unit amplitude on the determinant filling the lowest orbitals.
StateVector prepare_hartree_fock(int norb, int n_alpha, int n_beta);

/// Throws NumericalError if U is not unitary to 1e-8.
void apply_orbital_rotation(StateVector &state, const MatrixXcd &u);

/// exp(iθ(d)) per determinant with
/// θ = ½ Σ J_same_ij (nα_i nα_j + nβ_i nβ_j) + Σ J_opposite_ij nα_i nβ_j.
void apply_diagonal_coulomb(StateVector &state, const MatrixXd &j_same, const MatrixXd &j_opposite);

/// One layer per factorization term with J_same = J_opposite = J, masked per
/// block when a mask is given. With t1 the final rotation is exp(K1),
/// K1_ai = t1_ia, K1_ia = −t1_ia.
UCJOperator ucj_from_df(const DoubleFactorization &df, const std::optional<MatrixXd> &t1 = std::nullopt,
                        const std::optional<ConnectivityMask> &mask = std::nullopt);

/// For μ = 0..L−1: U_μ†, exp(iJ_μ), U_μ; then the final rotation.
void apply_ucj(StateVector &state, const UCJOperator &op);
StateVector prepare_ucj_state(const UCJOperator &op, const StateVector &reference);

/// Re ⟨Ψ|H|Ψ⟩. The imaginary residue is written to imag_residue if given.
double vqe_energy(const StateVector &state, const HamiltonianMatrix &h, double *imag_residue = nullptr);
double vqe_energy(const StateVector &state, const Hamiltonian &h, double *imag_residue = nullptr);

/// i.i.d. draws from |amp|² by inverse CDF over the canonical order. Throws
/// NumericalError if the state's norm differs from 1 by more than 1e-8.
SampleSet sample(const StateVector &state, std::size_t n_shots, std::uint64_t seed);

/// −Σ p ln p over basis probabilities.
double entropy(const StateVector &state);

/// Haar-random U's; J entries uniform in [−π, π] on the allowed pairs of each
/// block (all pairs without a mask).
UCJOperator random_ucj(int norb, int nreps, bool with_final_rotation, std::mt19937_64 &rng,
                       const std::optional<ConnectivityMask> &mask = std::nullopt);

/// "UCJ v1 norb nreps has_final", then per rep U (re im pairs), J_same,
/// J_opposite, then the final rotation if present.
UCJOperator parse_ucj(std::istream &in);
void format_ucj(const UCJOperator &op, std::ostream &out);
UCJOperator read_ucj(const std::filesystem::path &path);
void write_ucj(const UCJOperator &op, const std::filesystem::path &path);

} // namespace lucj
