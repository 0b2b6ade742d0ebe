// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Determinants and fermionic phase conventions.
//
// A determinant |a, b⟩ is the product of creation operators for the occupied
// alpha orbitals in ascending order followed by the occupied beta orbitals in
// ascending order, applied to the vacuum. Every phase in the library derives
// from this one ordering. When spin-orbitals need a flat index, spatial index
// is major and spin minor: 2p for alpha, 2p+1 for beta.

#include <bit>
#include <compare>
#include <cstddef>
#include <functional>
#include <vector>

#include "lucj/common.hpp"

namespace lucj {

struct Determinant {
    Bitmask alpha = 0;
    Bitmask beta = 0;

    auto operator<=>(const Determinant &) const = default;
};

struct DeterminantHash {
    std::size_t operator()(const Determinant &d) const noexcept
    {
        const std::uint64_t h = d.alpha * 0x9E3779B97F4A7C15ULL;
        return static_cast<std::size_t>(h ^ (d.beta + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2)));
    }
};

inline int popcount(Bitmask m) { return std::popcount(m); }

inline bool occupied(Bitmask m, int p) { return (m >> p) & 1U; }

/// Mask with the lowest n bits set.
inline Bitmask lowest_bits(int n) { return n >= 64 ? ~Bitmask{0} : ((Bitmask{1} << n) - 1); }

/// Indices of set bits, ascending.
std::vector<int> occupied_orbitals(Bitmask m);

/// Sign of a_q acting on a single-spin string m (q must be occupied):
/// (−1)^(number of occupied orbitals below q).
inline int annihilation_sign(Bitmask m, int q)
{
    return (std::popcount(m & lowest_bits(q)) & 1) ? -1 : 1;
}

/// Sign of a†_p a_q on string m (q occupied, p empty or p == q), i.e.
/// (−1)^(occupied orbitals strictly between p and q).
int excitation_sign(Bitmask m, int p, int q);

/// All n-particle single-spin strings over norb orbitals, ascending.
std::vector<Bitmask> enumerate_strings(int norb, int n);

/// One measured or sampled configuration; repeated draws appear repeatedly.
using Configuration = Determinant;

/// Raw draws of configurations, kept with multiplicity.
struct SampleSet {
    int norb = 0;
    std::vector<Configuration> draws;
    std::uint64_t seed = 0;
    /// Number of configurations in the space the draws came from (0 if unknown).
    std::size_t source_size = 0;
};

} // namespace lucj
