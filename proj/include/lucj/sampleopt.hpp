// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Derivative-free optimization of UCJ parameters against the QSCI energy of
// states sampled with a fixed seed.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lucj/numopt.hpp"
#include "lucj/qsci.hpp"
#include "lucj/ucjsim.hpp"

namespace lucj {

/// Flat coordinates of a UCJ operator: per rep the generator of U (norb²
/// reals), then allowed same-spin J entries and allowed opposite-spin J
/// entries (p ≤ q, row-major); then the final-rotation generator if present.
class AnsatzParameterization {
public:
    AnsatzParameterization(int norb, int nreps, bool has_final, const std::optional<ConnectivityMask> &mask);

    std::size_t size() const;
    int norb() const { return norb_; }
    int nreps() const { return nreps_; }
    bool has_final() const { return has_final_; }
    const std::vector<std::pair<int, int>> &same_entries() const { return same_; }
    const std::vector<std::pair<int, int>> &opposite_entries() const { return opposite_; }

    /// Entries outside the mask are dropped.
    VectorXd pack(const UCJOperator &op) const;
    UCJOperator unpack(std::span<const double> x) const;

private:
    int norb_, nreps_;
    bool has_final_;
    std::vector<std::pair<int, int>> same_, opposite_;
};

struct SampleOptConfig {
    std::size_t shots = 10000;
    std::uint64_t sampling_seed = 0;
    double davidson_tol = 1e-8;
    PatternSearchConfig optimizer;
    std::optional<ConnectivityMask> mask;
};

struct ObjectiveValue {
    double energy = 0.0;
    /// True when no valid sample survived and energy is +∞.
    bool empty_subspace = false;
    std::size_t dimension = 0;
};

/// prepare_ucj_state → sample(shots, sampling_seed) → build_subspace →
/// qsci_energy.
ObjectiveValue sample_energy_objective(const UCJOperator &op, const Hamiltonian &h, const StateVector &reference,
                                       const SampleOptConfig &config);

struct SampleOptResult {
    UCJOperator op;
    double initial_objective = 0.0;
    double final_objective = 0.0;
    PatternSearchResult search;
};

/// Pattern search over the parameterization of ucj_init. When no candidate
/// beats the initial objective, ucj_init is returned unchanged.
SampleOptResult optimize_sample_energy(const UCJOperator &ucj_init, const Hamiltonian &h,
                                       const StateVector &reference, const SampleOptConfig &config);

} // namespace lucj
