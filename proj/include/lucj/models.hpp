// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Small model Hamiltonians for tests and demonstrations.

#include <random>

#include "lucj/chemio.hpp"

namespace lucj {

/// Open Hubbard chain (hopping t, on-site U) expressed in the orbitals that
/// diagonalize the hopping term, ordered by orbital energy.
Hamiltonian hubbard_chain(int nsites, double t, double u, int n_alpha, int n_beta);

/// Random real Hamiltonian with the full 8-fold integral symmetry; h2 is
/// built as a positive semidefinite pair matrix so the model stays bounded.
Hamiltonian random_hamiltonian(int norb, int n_alpha, int n_beta, std::mt19937_64 &rng);

} // namespace lucj
