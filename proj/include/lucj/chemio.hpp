// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lucj/common.hpp"
#include "lucj/determinant.hpp"
#include "lucj/tensor.hpp"

namespace lucj {

/// Active-space electronic Hamiltonian
///   H = ecore + Σ h1_pq E_pq + ½ Σ (pq|rs) Σ_στ a†_pσ a†_rτ a_sτ a_qσ
/// with dense chemists'-notation two-electron integrals (Hartree).
struct Hamiltonian {
    int norb = 0;
    MatrixXd h1;
    std::vector<double> h2;
    double ecore = 0.0;
    int n_alpha = 0;
    int n_beta = 0;

    Hamiltonian() = default;
    Hamiltonian(int norb, int n_alpha, int n_beta);

    double eri(int p, int q, int r, int s) const { return h2[index(p, q, r, s)]; }
    double &eri(int p, int q, int r, int s) { return h2[index(p, q, r, s)]; }

    /// Store v at all 8 permutation-equivalent positions of (pq|rs).
    void set_eri_symmetric(int p, int q, int r, int s, double v);

    /// Throws NumericalError when a structural invariant is violated.
    void validate() const;

private:
    std::size_t index(int p, int q, int r, int s) const
    {
        const auto n = static_cast<std::size_t>(norb);
        return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
    }
};

/// t1 (nocc×nvir) and t2 (nocc, nocc, nvir, nvir) cluster amplitudes in the
/// restricted spatial-orbital convention T2 = Σ t_ijab E_ai E_bj (no prefactor).
struct Amplitudes {
    int nocc = 0;
    int nvir = 0;
    MatrixXd t1;
    Tensor4 t2;

    Amplitudes() = default;
    Amplitudes(int nocc, int nvir);
};

/// max |t_ijab − t_jiba|
double t2_exchange_asymmetry(const Tensor4 &t2);

/// Molpro-style FCIDUMP. Header is a Fortran namelist (&FCI ... &END or /);
/// then "value p q r s" with 1-based indices; "p q 0 0" is one-electron,
/// "0 0 0 0" the core energy. Lines of the form "e p 0 0 0" (orbital
/// energies) are ignored.
Hamiltonian parse_fcidump(std::istream &in);
Hamiltonian read_fcidump(const std::filesystem::path &path);
void write_fcidump(const Hamiltonian &h, std::ostream &out, double threshold = 0.0);
void write_fcidump(const Hamiltonian &h, const std::filesystem::path &path, double threshold = 0.0);

/// "AMP v1 nocc nvir", then t1 rows, then t2 rows (last index fastest).
/// Values are written in shortest round-trip form, so write→read is bit-exact.
Amplitudes parse_amplitudes(std::istream &in);
void format_amplitudes(const Amplitudes &amps, std::ostream &out);
Amplitudes read_amplitudes(const std::filesystem::path &path);
void write_amplitudes(const Amplitudes &amps, const std::filesystem::path &path);

/// Bitstring files: one configuration per line, 2·norb characters of 0/1.
/// The first norb characters are the beta (spin-down) string and the last
/// norb the alpha (spin-up) string; within each half the rightmost character
/// is orbital 0. This matches the usual qubit order where qubit k is printed
/// k-th from the right and qubits [0, norb) hold alpha occupations.
SampleSet parse_bitstrings(std::istream &in, int norb);
SampleSet read_bitstrings(const std::filesystem::path &path, int norb);
std::string format_bitstring(const Configuration &c, int norb);
void write_bitstrings(const SampleSet &samples, std::ostream &out);
void write_bitstrings(const SampleSet &samples, const std::filesystem::path &path);

} // namespace lucj
