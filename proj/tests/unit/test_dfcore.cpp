// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "lucj/dfcore.hpp"
#include "lucj/linalg.hpp"
#include "oracles.hpp"

namespace lucj {
namespace {

double reconstruction_error(const DoubleFactorization &df, const Tensor4 &t2)
{
    return frobenius_distance(reconstruct_t2(df), t2);
}

TEST(DoubleFactorize, ZeroGivesEmpty)
{
    const DoubleFactorization df = double_factorize_t2(Tensor4(2, 2, 3, 3));
    EXPECT_EQ(df.size(), 0U);
    EXPECT_EQ(df.norb, 5);
    EXPECT_EQ(reconstruct_t2(df).frobenius_norm(), 0.0);
}

TEST(DoubleFactorize, ExactOnRandomInputs)
{
    std::mt19937_64 rng(31);
    for (auto [nocc, nvir] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 4}, std::pair{1, 5}}) {
        for (int trial = 0; trial < 3; ++trial) {
            const Tensor4 t2 = oracle::random_t2(nocc, nvir, rng);
            const DoubleFactorization df = double_factorize_t2(t2);
            EXPECT_LE(reconstruction_error(df, t2), 1e-10 * std::max(1.0, t2.frobenius_norm()));
            EXPECT_LE(df.size(), static_cast<std::size_t>(2 * nocc * nvir));
            for (std::size_t k = 0; k < df.size(); ++k) {
                EXPECT_LE(unitarity_error(df.terms[k].U), 1e-10);
                EXPECT_LE(symmetry_error(df.terms[k].J), 1e-12);
                EXPECT_GT(df.terms[k].J.norm(), 1e-12);
                if (k > 0) {
                    EXPECT_GE(df.terms[k - 1].J.norm(), df.terms[k].J.norm());
                }
            }
        }
    }
}

TEST(DoubleFactorize, ImaginaryResidueVanishes)
{
    std::mt19937_64 rng(32);
    const Tensor4 t2 = oracle::random_t2(3, 3, rng);
    double imag = 0.0;
    for (const Complex &c : reconstruct_t2_complex(double_factorize_t2(t2))) imag = std::max(imag, std::abs(c.imag()));
    EXPECT_LE(imag, 1e-10);
}

TEST(DoubleFactorize, ReconstructionMatchesLoopOracle)
{
    std::mt19937_64 rng(33);
    const Tensor4 t2 = oracle::random_t2(2, 3, rng);
    const DoubleFactorization df = double_factorize_t2(t2);
    std::vector<MatrixXcd> us;
    std::vector<MatrixXd> js;
    for (const auto &t : df.terms) {
        us.push_back(t.U);
        js.push_back(t.J);
    }
    const auto ref = oracle::reconstruct(us, js, 2, 3);
    const auto got = reconstruct_t2_complex(df);
    ASSERT_EQ(ref.size(), got.size());
    for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_LE(std::abs(ref[k] - got[k]), 1e-12);
}

TEST(DoubleFactorize, SingleKnownPair)
{
    // t2 from one (U, J) pair plus its complex conjugate partner, which keeps
    // the amplitudes real.
    std::mt19937_64 rng(34);
    const int nocc = 2, nvir = 3, n = 5;
    const MatrixXcd u = random_unitary(n, rng);
    MatrixXd j = MatrixXd::Random(n, n);
    j = 0.5 * (j + j.transpose()).eval();
    const auto part = oracle::reconstruct({u, u.conjugate()}, {j, -j}, nocc, nvir);
    Tensor4 t2(nocc, nocc, nvir, nvir);
    for (std::size_t k = 0; k < part.size(); ++k) {
        ASSERT_LE(std::abs(part[k].imag()), 1e-12);
        t2.data()[k] = part[k].real();
    }
    ASSERT_LE(t2_exchange_asymmetry(t2), 1e-12);
    const DoubleFactorization df = double_factorize_t2(t2);
    EXPECT_LE(reconstruction_error(df, t2), 1e-10 * std::max(1.0, t2.frobenius_norm()));
}

TEST(DoubleFactorize, RejectsAsymmetric)
{
    Tensor4 t2(2, 2, 2, 2);
    t2(0, 1, 0, 1) = 1.0;
    EXPECT_THROW(double_factorize_t2(t2), NumericalError);
}

TEST(Reconstruct, EmptyAndZeroJ)
{
    DoubleFactorization df;
    df.norb = 4;
    df.nocc = 2;
    df.nvir = 2;
    EXPECT_EQ(reconstruct_t2(df).frobenius_norm(), 0.0);
    std::mt19937_64 rng(35);
    df.terms.push_back({random_unitary(4, rng), MatrixXd::Zero(4, 4)});
    EXPECT_EQ(reconstruct_t2(df).frobenius_norm(), 0.0);
}

TEST(Truncate, EndpointsAndMonotoneError)
{
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 5; ++trial) {
        const Tensor4 t2 = oracle::random_t2(3, 4, rng);
        const DoubleFactorization df = double_factorize_t2(t2);
        EXPECT_EQ(truncate(df, 0).size(), 0U);
        const DoubleFactorization all = truncate(df, df.size());
        ASSERT_EQ(all.size(), df.size());
        for (std::size_t k = 0; k < df.size(); ++k) {
            EXPECT_EQ(all.terms[k].U, df.terms[k].U);
            EXPECT_EQ(all.terms[k].J, df.terms[k].J);
        }
        double prev = reconstruction_error(truncate(df, 0), t2);
        EXPECT_NEAR(prev, t2.frobenius_norm(), 1e-12);
        for (std::size_t l = 1; l <= df.size(); ++l) {
            const double e = reconstruction_error(truncate(df, l), t2);
            EXPECT_LE(e, prev + 1e-12) << "L=" << l;
            prev = e;
        }
        EXPECT_THROW(truncate(df, df.size() + 1), Error);
    }
}

TEST(Serialization, RoundTripBitExact)
{
    std::mt19937_64 rng(37);
    const DoubleFactorization df = double_factorize_t2(oracle::random_t2(2, 3, rng));
    const auto path = std::filesystem::temp_directory_path() / "lucj_dfcore_test.df";
    write_double_factorization(df, path);
    const DoubleFactorization back = read_double_factorization(path);
    EXPECT_EQ(back.norb, df.norb);
    EXPECT_EQ(back.nocc, df.nocc);
    EXPECT_EQ(back.nvir, df.nvir);
    ASSERT_EQ(back.size(), df.size());
    for (std::size_t k = 0; k < df.size(); ++k) {
        EXPECT_EQ(back.terms[k].U, df.terms[k].U);
        EXPECT_EQ(back.terms[k].J, df.terms[k].J);
    }
    std::istringstream bad("DF v1 3 1 2 1\n1 0\n");
    EXPECT_THROW(parse_double_factorization(bad), ParseError);
}

} // namespace
} // namespace lucj
