// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "lucj/linalg.hpp"
#include "lucj/models.hpp"
#include "lucj/qsci.hpp"
#include "lucj/ucjsim.hpp"
#include "oracles.hpp"

namespace lucj {
namespace {

SampleSet make_samples(int norb, std::vector<Configuration> draws)
{
    SampleSet s;
    s.norb = norb;
    s.draws = std::move(draws);
    return s;
}

SampleSet random_valid_samples(int norb, int n, std::size_t count, std::mt19937_64 &rng)
{
    const auto strings = enumerate_strings(norb, n);
    SampleSet s;
    s.norb = norb;
    for (std::size_t k = 0; k < count; ++k) {
        const auto a = strings[rng() % strings.size()], b = strings[rng() % strings.size()];
        s.draws.push_back({a, b});
    }
    return s;
}

TEST(Filter, Examples)
{
    std::mt19937_64 rng(91);
    const StateVector st = prepare_ucj_state(random_ucj(4, 1, true, rng), prepare_hartree_fock(4, 2, 2));
    const FilterResult all = filter_valid(sample(st, 300, 1), 2, 2);
    EXPECT_EQ(all.valid.draws.size(), 300U);
    EXPECT_EQ(all.retained_fraction, 1.0);

    EXPECT_TRUE(filter_valid(make_samples(2, {{0, 0}}), 1, 1).valid.draws.empty());

    std::vector<Configuration> crafted = {{0b0011, 0b0101}, {0b1100, 0b1001}, {0b0110, 0b0110}};
    for (int k = 0; k < 7; ++k) crafted.push_back({0b0111, static_cast<Bitmask>(k % 2)});
    const FilterResult f = filter_valid(make_samples(4, crafted), 2, 2);
    EXPECT_EQ(f.valid.draws.size(), 3U);
    EXPECT_EQ(f.total, 10U);
    EXPECT_DOUBLE_EQ(f.retained_fraction, 0.3);
}

TEST(Subspace, Symmetrization)
{
    const Bitmask a = 0b011, b = 0b101;
    const CIBasis one = build_subspace(make_samples(3, {{a, a}}), 3, 2, 2);
    ASSERT_EQ(one.size(), 1U);
    EXPECT_EQ(one[0], (Determinant{a, a}));
    const CIBasis four = build_subspace(make_samples(3, {{a, b}}), 3, 2, 2);
    EXPECT_EQ(four, CIBasis(3, 2, 2, {{a, a}, {a, b}, {b, a}, {b, b}}));
    EXPECT_THROW(build_subspace(make_samples(3, {}), 3, 2, 2), Error);
    EXPECT_THROW(build_subspace(make_samples(3, {{a, 0b001}}), 3, 2, 1), Error);
}

TEST(Subspace, SetUnionOracle)
{
    std::mt19937_64 rng(92);
    const SampleSet s = random_valid_samples(6, 3, 1000, rng);
    std::set<Bitmask> oracle_set;
    for (const auto &d : s.draws) {
        oracle_set.insert(d.alpha);
        oracle_set.insert(d.beta);
    }
    const CIBasis basis = build_subspace(s, 6, 3, 3);
    EXPECT_EQ(basis.size(), oracle_set.size() * oracle_set.size());
    EXPECT_EQ(single_spin_strings(s, 3, 3).size(), oracle_set.size());
    for (const auto &d : basis) EXPECT_TRUE(basis.find({d.beta, d.alpha}));

    // Smaller draws leave room below the full sector.
    const SampleSet few = random_valid_samples(6, 3, 4, rng);
    const std::size_t m = single_spin_strings(few, 3, 3).size();
    EXPECT_EQ(build_subspace(few, 6, 3, 3).size(), m * m);
}

TEST(QsciEnergy, LimitsAndDenseProjection)
{
    std::mt19937_64 rng(93);
    const Hamiltonian h = random_hamiltonian(4, 2, 2, rng);
    const CIBasis full = enumerate_basis(4, 2, 2);
    EXPECT_LE(std::abs(qsci_energy(full, h, 1e-8).energy - fci_ground_state(h).energy), 2e-8);

    const Determinant hf = hartree_fock_determinant(2, 2);
    EXPECT_NEAR(qsci_energy(CIBasis(4, 2, 2, {hf}), h).energy, hamiltonian_element(hf, hf, h), 1e-12);

    std::vector<Determinant> half;
    for (std::size_t k = 0; k < full.size(); k += 2) half.push_back(full[k]);
    const CIBasis sub(4, 2, 2, half);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(oracle::hamiltonian_matrix(sub, h));
    EXPECT_NEAR(qsci_energy(sub, h).energy, es.eigenvalues()(0), 1e-9);
}

TEST(QsciEnergy, NestedSubspacesMonotone)
{
    std::mt19937_64 rng(94);
    const Hamiltonian h = random_hamiltonian(6, 3, 3, rng);
    const SampleSet all = random_valid_samples(6, 3, 40, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n : {1, 2, 4, 8, 16, 40}) {
        const SampleSet part = make_samples(6, {all.draws.begin(), all.draws.begin() + n});
        const double e = qsci_energy(build_subspace(part, 6, 3, 3), h).energy;
        EXPECT_LE(e, prev + 1e-10) << n;
        prev = e;
    }
}

TEST(Batched, SingleDeterminantState)
{
    std::mt19937_64 rng(95);
    const Hamiltonian h = random_hamiltonian(5, 2, 2, rng);
    QsciConfig cfg;
    cfg.batches = 4;
    cfg.batch_size = 50;
    cfg.total_samples = 500;
    const QsciResult r = batched_qsci(prepare_hartree_fock(5, 2, 2), h, cfg);
    const Determinant hf = hartree_fock_determinant(2, 2);
    EXPECT_NEAR(r.mean, hamiltonian_element(hf, hf, h), 1e-12);
    EXPECT_EQ(r.min, r.max);
    EXPECT_EQ(r.batches.size(), 4U);
    for (const auto &b : r.batches) {
        EXPECT_EQ(b.dimension, 1U);
        EXPECT_EQ(b.drawn, 50U);
    }
}

TEST(Batched, SandwichAndDeterminism)
{
    std::mt19937_64 rng(96);
    const Hamiltonian h = random_hamiltonian(6, 3, 3, rng);
    const double fci = fci_ground_state(h).energy;
    const Determinant hf = hartree_fock_determinant(3, 3);
    const double ehf = hamiltonian_element(hf, hf, h);
    const StateVector st = prepare_ucj_state(random_ucj(6, 1, true, rng), prepare_hartree_fock(6, 3, 3));
    QsciConfig cfg;
    cfg.batches = 6;
    cfg.batch_size = 40;
    cfg.total_samples = 2000;
    cfg.seed = 17;
    cfg.inject_hartree_fock = true;
    const QsciResult r = batched_qsci(st, h, cfg);
    for (const auto &b : r.batches) {
        EXPECT_GE(b.energy, fci - 1e-10);
        EXPECT_LE(b.energy, ehf + 1e-10);
    }
    EXPECT_LE(r.min, r.mean);
    EXPECT_LE(r.mean, r.max);

    cfg.threads = 1;
    const QsciResult serial = batched_qsci(st, h, cfg);
    cfg.threads = 3;
    const QsciResult parallel = batched_qsci(st, h, cfg);
    EXPECT_EQ(serial.mean, r.mean);
    EXPECT_EQ(parallel.mean, r.mean);
    EXPECT_EQ(parallel.min, r.min);
    EXPECT_EQ(parallel.max, r.max);
    std::ostringstream a, b;
    write_qsci_report(serial, a);
    write_qsci_report(parallel, b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Batched, ExcludesEmptyBatches)
{
    std::mt19937_64 rng(97);
    const Hamiltonian h = random_hamiltonian(3, 1, 1, rng);
    QsciConfig cfg;
    cfg.batches = 3;
    cfg.batch_size = 2;
    cfg.total_samples = 4;
    const SampleSet bad = make_samples(3, {{0, 0}, {0b11, 0b1}, {0, 0b1}, {0b111, 0}});
    const QsciResult r = batched_qsci(bad, h, cfg);
    EXPECT_TRUE(r.empty());
    EXPECT_EQ(r.excluded, 3);
    EXPECT_TRUE(std::isnan(r.mean));

    const SampleSet mixed = make_samples(3, {{0, 0}, {0b1, 0b1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}});
    cfg.batches = 8;
    cfg.batch_size = 1;
    cfg.total_samples = 6;
    const QsciResult m = batched_qsci(mixed, h, cfg);
    EXPECT_GT(m.excluded, 0);
    EXPECT_FALSE(m.empty());
    for (const auto &b : m.batches) EXPECT_EQ(b.included, b.valid > 0);
}

TEST(Config, Validation)
{
    QsciConfig cfg;
    cfg.batch_size = cfg.total_samples + 1;
    EXPECT_THROW(validate(cfg), ParseError);
    cfg = {};
    cfg.batches = 0;
    EXPECT_THROW(validate(cfg), ParseError);
    EXPECT_EQ(worker_threads(3), 3);
    EXPECT_GE(worker_threads(0), 1);
}

} // namespace
} // namespace lucj
