// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "lucj/dfcore.hpp"
#include "lucj/linalg.hpp"
#include "lucj/models.hpp"
#include "lucj/ucjsim.hpp"
#include "oracles.hpp"

namespace lucj {
namespace {

MatrixXd random_symmetric(int n, std::mt19937_64 &rng)
{
    MatrixXd j(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q) j(p, q) = j(q, p) = standard_normal(rng);
    return j;
}

StateVector random_state(int norb, int na, int nb, std::mt19937_64 &rng)
{
    StateVector s(norb, na, nb);
    s.amplitudes() = oracle::random_state(s.dimension(), rng);
    return s;
}

TEST(StateVector, HartreeFock)
{
    const StateVector s = prepare_hartree_fock(2, 1, 1);
    ASSERT_EQ(s.dimension(), 4U);
    const auto idx = s.index({0b01, 0b01});
    ASSERT_TRUE(idx);
    EXPECT_EQ(s.amplitudes()(static_cast<Eigen::Index>(*idx)), Complex(1.0, 0.0));
    EXPECT_DOUBLE_EQ(s.norm(), 1.0);

    std::mt19937_64 rng(71);
    const Hamiltonian h = random_hamiltonian(5, 2, 3, rng);
    const Determinant hf = hartree_fock_determinant(2, 3);
    EXPECT_NEAR(vqe_energy(prepare_hartree_fock(5, 2, 3), h), hamiltonian_element(hf, hf, h), 1e-12);
}

TEST(StateVector, BasisOrderMatchesIndexing)
{
    const StateVector s(5, 2, 3);
    const CIBasis b = s.basis();
    EXPECT_EQ(b, enumerate_basis(5, 2, 3));
    for (std::size_t k = 0; k < s.dimension(); ++k) {
        EXPECT_EQ(s.determinant(k), b[k]);
        EXPECT_EQ(s.index(b[k]), k);
    }
}

TEST(OrbitalRotation, IdentityAndInverse)
{
    std::mt19937_64 rng(72);
    const StateVector s = random_state(5, 2, 3, rng);
    StateVector t = s;
    apply_orbital_rotation(t, MatrixXcd::Identity(5, 5));
    EXPECT_LE((t.amplitudes() - s.amplitudes()).norm(), 1e-14);
    const MatrixXcd u = random_unitary(5, rng);
    apply_orbital_rotation(t, u);
    EXPECT_NEAR(t.norm(), 1.0, 1e-10);
    apply_orbital_rotation(t, u.adjoint());
    EXPECT_LE((t.amplitudes() - s.amplitudes()).norm(), 1e-10);
}

TEST(OrbitalRotation, MatchesMinorDeterminants)
{
    std::mt19937_64 rng(73);
    for (auto [n, na, nb] : {std::tuple{4, 2, 2}, std::tuple{5, 3, 1}, std::tuple{6, 3, 3}, std::tuple{3, 0, 2}}) {
        const MatrixXcd u = random_unitary(n, rng);
        const MatrixXcd ref = oracle::rotation_matrix(u, n, na, nb);
        StateVector s(n, na, nb);
        for (std::size_t col = 0; col < s.dimension(); ++col) {
            s.amplitudes().setZero();
            s.amplitudes()(static_cast<Eigen::Index>(col)) = 1.0;
            apply_orbital_rotation(s, u);
            ASSERT_LE((s.amplitudes() - ref.col(static_cast<Eigen::Index>(col))).norm(), 1e-10)
                << n << " " << na << " " << nb << " column " << col;
        }
    }
}

TEST(OrbitalRotation, RejectsNonUnitary)
{
    StateVector s = prepare_hartree_fock(3, 1, 1);
    MatrixXcd u = MatrixXcd::Identity(3, 3);
    u(0, 1) = 1e-3;
    EXPECT_THROW(apply_orbital_rotation(s, u), NumericalError);
}

TEST(DiagonalCoulomb, ZeroSinglePhaseAndProbabilities)
{
    std::mt19937_64 rng(74);
    StateVector s = random_state(4, 2, 2, rng);
    const VectorXcd before = s.amplitudes();
    apply_diagonal_coulomb(s, MatrixXd::Zero(4, 4), MatrixXd::Zero(4, 4));
    EXPECT_LE((s.amplitudes() - before).norm(), 1e-15);

    StateVector one = prepare_hartree_fock(1, 1, 0);
    apply_diagonal_coulomb(one, MatrixXd::Constant(1, 1, 0.9), MatrixXd::Zero(1, 1));
    EXPECT_LE(std::abs(one.amplitudes()(0) - std::polar(1.0, 0.45)), 1e-15);

    const MatrixXd js = random_symmetric(4, rng), jo = random_symmetric(4, rng);
    apply_diagonal_coulomb(s, js, jo);
    EXPECT_LE((s.amplitudes().cwiseAbs2() - before.cwiseAbs2()).norm(), 1e-14);
    const VectorXcd expect = oracle::coulomb_phases(js, jo, 4, 2, 2).cwiseProduct(before);
    EXPECT_LE((s.amplitudes() - expect).norm(), 1e-12);

    MatrixXd asym = js;
    asym(0, 1) += 0.1;
    EXPECT_THROW(apply_diagonal_coulomb(s, asym, jo), NumericalError);
}

TEST(UcjFromDf, EmptyAndT1)
{
    DoubleFactorization df;
    df.norb = 4;
    df.nocc = 2;
    df.nvir = 2;
    const UCJOperator op = ucj_from_df(df);
    EXPECT_TRUE(op.reps.empty());
    EXPECT_FALSE(op.final_rotation);
    const UCJOperator with = ucj_from_df(df, MatrixXd::Zero(2, 2));
    ASSERT_TRUE(with.final_rotation);
    EXPECT_LE((*with.final_rotation - MatrixXcd::Identity(4, 4)).norm(), 1e-15);
    EXPECT_THROW(ucj_from_df(df, MatrixXd::Zero(3, 2)), Error);
}

TEST(UcjFromDf, T1RotationIsExponential)
{
    std::mt19937_64 rng(75);
    DoubleFactorization df;
    df.norb = 5;
    df.nocc = 2;
    df.nvir = 3;
    MatrixXd t1(2, 3);
    for (int i = 0; i < 2; ++i)
        for (int a = 0; a < 3; ++a) t1(i, a) = 0.3 * standard_normal(rng);
    MatrixXcd k = MatrixXcd::Zero(5, 5);
    for (int i = 0; i < 2; ++i)
        for (int a = 0; a < 3; ++a) {
            k(2 + a, i) = t1(i, a);
            k(i, 2 + a) = -t1(i, a);
        }
    const UCJOperator op = ucj_from_df(df, t1);
    EXPECT_LE((*op.final_rotation - oracle::expm(k)).norm(), 1e-12);
}

TEST(UcjFromDf, MaskPerBlock)
{
    std::mt19937_64 rng(76);
    const DoubleFactorization df = double_factorize_t2(oracle::random_t2(2, 3, rng));
    const UCJOperator plain = ucj_from_df(df);
    const UCJOperator all = ucj_from_df(df, std::nullopt, mask_preset("all", 5));
    ASSERT_EQ(plain.reps.size(), df.size());
    for (std::size_t k = 0; k < df.size(); ++k) {
        EXPECT_EQ(plain.reps[k].J_same, df.terms[k].J);
        EXPECT_EQ(plain.reps[k].J_opposite, df.terms[k].J);
        EXPECT_EQ(all.reps[k].J_same, plain.reps[k].J_same);
        EXPECT_EQ(all.reps[k].J_opposite, plain.reps[k].J_opposite);
    }
    const ConnectivityMask hh = mask_preset("heavy-hex", 5);
    const UCJOperator lucj = ucj_from_df(df, std::nullopt, hh);
    for (std::size_t k = 0; k < df.size(); ++k) {
        const UCJLayer &rep = lucj.reps[k];
        EXPECT_EQ(rep.J_same, apply_mask(df.terms[k].J, hh.same_spin));
        EXPECT_EQ(rep.J_opposite, apply_mask(df.terms[k].J, hh.opposite_spin));
        for (int p = 0; p < 5; ++p)
            for (int q = 0; q < 5; ++q) {
                if (!hh.opposite_spin.count({p, q})) {
                    EXPECT_EQ(rep.J_opposite(p, q), 0.0);
                }
                if (!hh.same_spin.count({p, q})) {
                    EXPECT_EQ(rep.J_same(p, q), 0.0);
                }
            }
    }
}

TEST(Ucj, TrivialOperators)
{
    std::mt19937_64 rng(77);
    const StateVector ref = prepare_hartree_fock(4, 2, 2);
    UCJOperator op;
    op.norb = 4;
    EXPECT_LE((prepare_ucj_state(op, ref).amplitudes() - ref.amplitudes()).norm(), 1e-15);
    op.reps.push_back({random_unitary(4, rng), MatrixXd::Zero(4, 4), MatrixXd::Zero(4, 4)});
    op.reps.push_back({random_unitary(4, rng), MatrixXd::Zero(4, 4), MatrixXd::Zero(4, 4)});
    EXPECT_LE((prepare_ucj_state(op, ref).amplitudes() - ref.amplitudes()).norm(), 1e-12);
}

TEST(Ucj, MatchesDenseOracle)
{
    std::mt19937_64 rng(78);
    for (auto [n, na, nb, reps, fin] :
         {std::tuple{4, 2, 2, 1, false}, std::tuple{4, 2, 2, 3, true}, std::tuple{5, 2, 1, 2, true},
          std::tuple{6, 3, 3, 2, false}}) {
        const UCJOperator op = random_ucj(n, reps, fin, rng);
        const StateVector ref = random_state(n, na, nb, rng);
        const VectorXcd expect = oracle::ucj_matrix(op, na, nb) * ref.amplitudes();
        const StateVector got = prepare_ucj_state(op, ref);
        EXPECT_LE((got.amplitudes() - expect).norm(), 1e-8);
        EXPECT_NEAR(got.norm(), 1.0, 1e-10);
    }
}

TEST(Ucj, NormDriftOverTwentyReps)
{
    std::mt19937_64 rng(79);
    const UCJOperator op = random_ucj(6, 20, true, rng, mask_preset("square", 6));
    const StateVector s = prepare_ucj_state(op, prepare_hartree_fock(6, 3, 3));
    EXPECT_LE(std::abs(s.norm() - 1.0), 1e-8);
}

TEST(Ucj, SpinSwapSymmetry)
{
    std::mt19937_64 rng(80);
    const UCJOperator op = random_ucj(5, 3, true, rng);
    const StateVector s = prepare_ucj_state(op, prepare_hartree_fock(5, 2, 2));
    for (std::size_t k = 0; k < s.dimension(); ++k) {
        const Determinant d = s.determinant(k);
        const auto swapped = s.index({d.beta, d.alpha});
        ASSERT_TRUE(swapped);
        EXPECT_LE(std::abs(s.amplitudes()(static_cast<Eigen::Index>(k)) -
                           s.amplitudes()(static_cast<Eigen::Index>(*swapped))),
                  1e-10);
    }
}

TEST(Vqe, ReferencesAndBound)
{
    std::mt19937_64 rng(81);
    const Hamiltonian h = random_hamiltonian(4, 2, 2, rng);
    const GroundState gs = fci_ground_state(h);
    StateVector s(4, 2, 2);
    for (std::size_t k = 0; k < gs.state.basis.size(); ++k)
        s.amplitudes()(static_cast<Eigen::Index>(*s.index(gs.state.basis[k]))) = gs.state.coeffs(static_cast<Eigen::Index>(k));
    double imag = 1.0;
    EXPECT_NEAR(vqe_energy(s, h, &imag), gs.energy, 1e-10);
    EXPECT_LE(imag, 1e-10);
    for (int trial = 0; trial < 5; ++trial) {
        const StateVector r = prepare_ucj_state(random_ucj(4, 2, true, rng), prepare_hartree_fock(4, 2, 2));
        EXPECT_GE(vqe_energy(r, HamiltonianMatrix(r.basis(), h), &imag), gs.energy - 1e-10);
        EXPECT_LE(imag, 1e-10);
    }
}

TEST(Sampling, SingleDeterminantAndSeeds)
{
    const StateVector hf = prepare_hartree_fock(4, 2, 1);
    const SampleSet s = sample(hf, 500, 3);
    ASSERT_EQ(s.draws.size(), 500U);
    for (const auto &d : s.draws) EXPECT_EQ(d, (Determinant{0b11, 0b1}));
    EXPECT_EQ(s.source_size, hf.dimension());

    std::mt19937_64 rng(82);
    const StateVector r = random_state(4, 2, 2, rng);
    EXPECT_EQ(sample(r, 1000, 9).draws, sample(r, 1000, 9).draws);
    EXPECT_NE(sample(r, 1000, 9).draws, sample(r, 1000, 10).draws);

    StateVector bad = r;
    bad.amplitudes() *= 1.01;
    EXPECT_THROW(sample(bad, 10, 1), NumericalError);
}

TEST(Sampling, BinomialBound)
{
    StateVector s(2, 1, 0);
    s.amplitudes()(0) = Complex(1.0, 0.0) / std::sqrt(2.0);
    s.amplitudes()(1) = Complex(0.0, -1.0) / std::sqrt(2.0);
    const std::size_t n = 100000;
    const SampleSet draws = sample(s, n, 5);
    std::size_t first = 0;
    for (const auto &d : draws.draws) first += d == s.determinant(0);
    const double sigma = std::sqrt(n * 0.25);
    EXPECT_LE(std::abs(static_cast<double>(first) - n / 2.0), 5 * sigma);
    EXPECT_LE(std::abs(static_cast<double>(n - first) - n / 2.0), 5 * sigma);
}

TEST(Sampling, FrequenciesFollowProbabilities)
{
    std::mt19937_64 rng(83);
    const StateVector s = random_state(3, 1, 1, rng);
    const std::size_t n = 200000;
    std::map<Determinant, std::size_t> counts;
    for (const auto &d : sample(s, n, 6).draws) ++counts[d];
    std::size_t total = 0;
    for (std::size_t k = 0; k < s.dimension(); ++k) {
        const double p = std::norm(s.amplitudes()(static_cast<Eigen::Index>(k)));
        const double c = static_cast<double>(counts[s.determinant(k)]);
        total += counts[s.determinant(k)];
        EXPECT_LE(std::abs(c - n * p), 5 * std::sqrt(n * p * (1 - p)) + 1);
    }
    EXPECT_EQ(total, n);
}

TEST(Entropy, Examples)
{
    EXPECT_EQ(entropy(prepare_hartree_fock(4, 2, 2)), 0.0);
    for (int k : {2, 3, 7, 36}) {
        StateVector s(4, 2, 2);
        for (int m = 0; m < k; ++m) s.amplitudes()(m) = std::polar(1.0 / std::sqrt(k), 0.3 * m);
        EXPECT_NEAR(entropy(s), std::log(static_cast<double>(k)), 1e-12);
    }
    std::mt19937_64 rng(84);
    const StateVector r = random_state(5, 2, 2, rng);
    double naive = 0.0;
    for (Eigen::Index k = 0; k < r.amplitudes().size(); ++k) {
        const double p = std::norm(r.amplitudes()(k));
        if (p > 0) naive -= p * std::log(p);
    }
    EXPECT_NEAR(entropy(r), naive, 1e-12);
}

TEST(RandomUcj, Distribution)
{
    std::mt19937_64 rng(85);
    const ConnectivityMask mask = mask_preset("heavy-hex", 6);
    const UCJOperator op = random_ucj(6, 4, true, rng, mask);
    EXPECT_NO_THROW(validate(op));
    for (const auto &rep : op.reps) {
        EXPECT_LE(unitarity_error(rep.U), 1e-10);
        EXPECT_LE(rep.J_same.cwiseAbs().maxCoeff(), M_PI);
        EXPECT_LE(rep.J_opposite.cwiseAbs().maxCoeff(), M_PI);
        EXPECT_EQ(rep.J_same, apply_mask(rep.J_same, mask.same_spin));
        EXPECT_EQ(rep.J_opposite, apply_mask(rep.J_opposite, mask.opposite_spin));
        EXPECT_GT(rep.J_same.cwiseAbs().maxCoeff(), 0.0);
    }
    std::mt19937_64 a(1), b(1);
    const UCJOperator x = random_ucj(4, 2, true, a), y = random_ucj(4, 2, true, b);
    EXPECT_EQ(x.reps[1].U, y.reps[1].U);
    EXPECT_EQ(x.reps[1].J_same, y.reps[1].J_same);
}

TEST(Serialization, UcjRoundTripBitExact)
{
    std::mt19937_64 rng(86);
    const UCJOperator op = random_ucj(4, 3, true, rng);
    const auto path = std::filesystem::temp_directory_path() / "lucj_ucjsim_test.ucj";
    write_ucj(op, path);
    const UCJOperator back = read_ucj(path);
    ASSERT_EQ(back.reps.size(), 3U);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(back.reps[k].U, op.reps[k].U);
        EXPECT_EQ(back.reps[k].J_same, op.reps[k].J_same);
        EXPECT_EQ(back.reps[k].J_opposite, op.reps[k].J_opposite);
    }
    ASSERT_TRUE(back.final_rotation);
    EXPECT_EQ(*back.final_rotation, *op.final_rotation);
}

} // namespace
} // namespace lucj
