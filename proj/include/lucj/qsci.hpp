// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lucj/detci.hpp"
#include "lucj/ucjsim.hpp"

namespace lucj {

struct QsciConfig {
    int batches = 10;
    std::size_t batch_size = 4000;
    std::size_t total_samples = 100000;
    std::uint64_t seed = 0;
    double davidson_tol = 1e-8;
    /// Adds the Hartree–Fock determinant to every subspace.
    bool inject_hartree_fock = false;
    /// Worker threads for batches; 0 means the LUCJ_NUM_THREADS environment
    /// variable, falling back to the hardware concurrency.
    int threads = 0;
};

void validate(const QsciConfig &config);

struct FilterResult {
    SampleSet valid;
    std::size_t total = 0;
    double retained_fraction = 0.0;
};

/// Keeps draws with exactly n_alpha / n_beta electrons in their halves.
FilterResult filter_valid(const SampleSet &samples, int n_alpha, int n_beta);

/// With S the union of the sampled alpha and beta strings, the basis S × S.
/// Requires n_alpha == n_beta. Throws Error when S is empty.
CIBasis build_subspace(const SampleSet &samples, int norb, int n_alpha, int n_beta);

/// Distinct single-spin strings the subspace is built from.
std::vector<Bitmask> single_spin_strings(const SampleSet &samples, int n_alpha, int n_beta);

struct QsciEnergy {
    double energy = 0.0;
    CIVector vector;
    bool converged = false;
};

QsciEnergy qsci_energy(const CIBasis &basis, const Hamiltonian &h, double davidson_tol = 1e-8);

struct BatchRecord {
    int index = 0;
    std::size_t drawn = 0;
    std::size_t valid = 0;
    std::size_t strings = 0;
    std::size_t dimension = 0;
    double energy = 0.0;
    bool included = false;
    bool converged = false;
};

struct QsciResult {
    std::vector<BatchRecord> batches;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    /// Batches dropped for lack of valid samples.
    int excluded = 0;
    /// Ground vector of the lowest-energy batch.
    std::optional<CIVector> best_vector;

    bool empty() const { return excluded == static_cast<int>(batches.size()); }
};

/// Each batch subsamples batch_size draws without replacement (independently
/// across batches), then filter_valid, build_subspace and qsci_energy.
QsciResult batched_qsci(const SampleSet &samples, const Hamiltonian &h, const QsciConfig &config);

/// Draws total_samples from the state with config.seed first.
QsciResult batched_qsci(const StateVector &state, const Hamiltonian &h, const QsciConfig &config);

/// "batch valid strings dimension energy" rows, then a summary line.
void write_qsci_report(const QsciResult &result, std::ostream &out);

/// Thread count honouring QsciConfig::threads and LUCJ_NUM_THREADS.
int worker_threads(int requested);

} // namespace lucj
