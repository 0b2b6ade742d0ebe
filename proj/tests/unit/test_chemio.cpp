// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "lucj/chemio.hpp"
#include "lucj/linalg.hpp"
#include "lucj/models.hpp"
#include "oracles.hpp"

namespace lucj {
namespace {

Hamiltonian parse(const std::string &text)
{
    std::istringstream in(text);
    return parse_fcidump(in);
}

std::filesystem::path scratch(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / "lucj_chemio_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

const char *kHeader = "&FCI NORB=2,NELEC=2,MS2=0,\n ORBSYM=1,1,\n ISYM=1,\n&END\n";

TEST(Fcidump, ConstantOnly)
{
    const Hamiltonian h = parse(std::string(kHeader) + "0.5 0 0 0 0\n");
    EXPECT_EQ(h.norb, 2);
    EXPECT_EQ(h.n_alpha, 1);
    EXPECT_EQ(h.n_beta, 1);
    EXPECT_EQ(h.ecore, 0.5);
    EXPECT_EQ(h.h1.norm(), 0.0);
    for (double v : h.h2) EXPECT_EQ(v, 0.0);
}

TEST(Fcidump, SymmetryExpansion)
{
    const Hamiltonian h = parse(std::string(kHeader) + "0.7 1 1 2 2\n");
    EXPECT_EQ(h.eri(0, 0, 1, 1), 0.7);
    EXPECT_EQ(h.eri(1, 1, 0, 0), 0.7);
    EXPECT_EQ(h.eri(0, 1, 0, 1), 0.0);
}

TEST(Fcidump, HandBuiltTwoOrbitalTable)
{
    const std::string text = std::string(kHeader) +
                             "  0.6746  1 1 1 1\n"
                             "  0.1813  1 2 1 2\n"
                             "  0.6636  1 1 2 2\n"
                             "  0.6975  2 2 2 2\n"
                             " -1.2528  1 1 0 0\n"
                             " -0.4756  2 2 0 0\n"
                             "  0.7137  0 0 0 0\n";
    const Hamiltonian h = parse(text);

    // Table entered by hand with every permutation spelled out.
    const double h1[2][2] = {{-1.2528, 0.0}, {0.0, -0.4756}};
    double g[2][2][2][2] = {};
    g[0][0][0][0] = 0.6746;
    g[1][1][1][1] = 0.6975;
    g[0][0][1][1] = g[1][1][0][0] = 0.6636;
    g[0][1][0][1] = g[1][0][1][0] = g[0][1][1][0] = g[1][0][0][1] = 0.1813;
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
            EXPECT_EQ(h.h1(p, q), h1[p][q]);
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s) EXPECT_EQ(h.eri(p, q, r, s), g[p][q][r][s]) << p << q << r << s;
        }
    EXPECT_EQ(h.ecore, 0.7137);
    EXPECT_NO_THROW(h.validate());
}

TEST(Fcidump, SlashTerminatorAndSpin)
{
    const Hamiltonian h = parse(" &FCI NORB=3, NELEC=3, MS2=1,\n ORBSYM=1,1,1,\n ISYM=1\n /\n 1.0 1 1 0 0\n");
    EXPECT_EQ(h.norb, 3);
    EXPECT_EQ(h.n_alpha, 2);
    EXPECT_EQ(h.n_beta, 1);
    EXPECT_EQ(h.h1(0, 0), 1.0);
}

TEST(Fcidump, Errors)
{
    EXPECT_THROW(parse("NORB=2\n"), ParseError);
    EXPECT_THROW(parse(std::string(kHeader) + "0.1 3 1 0 0\n"), ParseError);
    EXPECT_THROW(parse(std::string(kHeader) + "0.1 1 1\n"), ParseError);
    EXPECT_THROW(parse(std::string(kHeader) + "0.1 1 1 1 1\n0.2 1 1 1 1\n"), ParseError);
    EXPECT_NO_THROW(parse(std::string(kHeader) + "0.1 1 1 1 1\n0.1 1 1 1 1\n"));
}

TEST(Fcidump, LineOrderIndependent)
{
    std::mt19937_64 rng(11);
    const Hamiltonian h = random_hamiltonian(4, 2, 2, rng);
    std::ostringstream out;
    write_fcidump(h, out);
    std::istringstream lines_in(out.str());
    std::vector<std::string> header, body;
    std::string line;
    bool in_body = false;
    while (std::getline(lines_in, line)) {
        (in_body ? body : header).push_back(line);
        if (line.find("&END") != std::string::npos || line == "/" || line == " /") in_body = true;
    }
    ASSERT_FALSE(body.empty());
    const Hamiltonian ref = parse(out.str());
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(body.begin(), body.end(), rng);
        std::string text;
        for (const auto &l : header) text += l + "\n";
        for (const auto &l : body) text += l + "\n";
        const Hamiltonian h2 = parse(text);
        EXPECT_EQ(h2.h1, ref.h1);
        EXPECT_EQ(h2.h2, ref.h2);
        EXPECT_EQ(h2.ecore, ref.ecore);
    }
}

TEST(Fcidump, RoundTripBitExact)
{
    std::mt19937_64 rng(12);
    const Hamiltonian h = random_hamiltonian(5, 3, 2, rng);
    const auto path = scratch("rt.fcidump");
    write_fcidump(h, path);
    const Hamiltonian back = read_fcidump(path);
    EXPECT_EQ(back.norb, h.norb);
    EXPECT_EQ(back.n_alpha, h.n_alpha);
    EXPECT_EQ(back.n_beta, h.n_beta);
    EXPECT_EQ(back.h1, h.h1);
    EXPECT_EQ(back.h2, h.h2);
    EXPECT_EQ(back.ecore, h.ecore);
}

TEST(Amplitudes, ZeroRoundTrip)
{
    const Amplitudes a(2, 3);
    const auto path = scratch("zero.amp");
    write_amplitudes(a, path);
    const Amplitudes b = read_amplitudes(path);
    EXPECT_EQ(b.nocc, 2);
    EXPECT_EQ(b.nvir, 3);
    EXPECT_EQ(b.t1.norm(), 0.0);
    EXPECT_EQ(b.t2.frobenius_norm(), 0.0);
}

TEST(Amplitudes, RandomRoundTripBitExact)
{
    std::mt19937_64 rng(13);
    Amplitudes a(2, 3);
    a.t2 = oracle::random_t2(2, 3, rng);
    for (int i = 0; i < 2; ++i)
        for (int v = 0; v < 3; ++v) a.t1(i, v) = standard_normal(rng) * 1e-3;
    const auto path = scratch("rand.amp");
    write_amplitudes(a, path);
    const Amplitudes b = read_amplitudes(path);
    EXPECT_EQ(b.t1, a.t1);
    EXPECT_EQ(b.t2, a.t2);
}

TEST(Amplitudes, RejectsAsymmetricAndMalformed)
{
    Amplitudes a(2, 2);
    a.t2(0, 1, 0, 1) = 1.0;
    std::ostringstream out;
    format_amplitudes(a, out);
    std::istringstream in(out.str());
    EXPECT_THROW(parse_amplitudes(in), Error);

    std::istringstream bad("AMP v1 1 1\n0.0\n");
    EXPECT_THROW(parse_amplitudes(bad), ParseError);
    std::istringstream nan_in("AMP v1 1 1\nnan\n0.0\n");
    EXPECT_THROW(parse_amplitudes(nan_in), Error);
}

TEST(Bitstrings, EmptyAndIdentical)
{
    std::istringstream empty("");
    EXPECT_TRUE(parse_bitstrings(empty, 2).draws.empty());

    std::istringstream two("0101\n0101\n");
    const SampleSet s = parse_bitstrings(two, 2);
    ASSERT_EQ(s.draws.size(), 2U);
    EXPECT_EQ(s.draws[0], s.draws[1]);
    // Beta half first, rightmost character of each half is orbital 0.
    EXPECT_EQ(s.draws[0].alpha, 1U);
    EXPECT_EQ(s.draws[0].beta, 1U);

    std::istringstream mixed("0110\n");
    const SampleSet m = parse_bitstrings(mixed, 2);
    EXPECT_EQ(m.draws[0].beta, 0b01U);
    EXPECT_EQ(m.draws[0].alpha, 0b10U);
    EXPECT_EQ(format_bitstring(m.draws[0], 2), "0110");
}

TEST(Bitstrings, Errors)
{
    std::istringstream bad_char("01x1\n");
    EXPECT_THROW(parse_bitstrings(bad_char, 2), ParseError);
    std::istringstream bad_len("0101\n010\n");
    EXPECT_THROW(parse_bitstrings(bad_len, 2), ParseError);
}

TEST(Bitstrings, SeededMultisetPreserved)
{
    const int norb = 6;
    auto generate = [&] {
        std::mt19937_64 rng(14);
        std::vector<Configuration> draws;
        for (int k = 0; k < 1000; ++k)
            draws.push_back({rng() & lowest_bits(norb), rng() & lowest_bits(norb)});
        return draws;
    };
    SampleSet s;
    s.norb = norb;
    s.draws = generate();
    const auto path = scratch("samples.txt");
    write_bitstrings(s, path);
    SampleSet back = read_bitstrings(path, norb);
    auto expected = generate();
    ASSERT_EQ(back.draws.size(), 1000U);
    std::sort(expected.begin(), expected.end());
    std::sort(back.draws.begin(), back.draws.end());
    EXPECT_EQ(back.draws, expected);
}

} // namespace
} // namespace lucj
