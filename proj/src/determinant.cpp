// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/determinant.hpp"

#include <algorithm>

namespace lucj {

std::vector<int> occupied_orbitals(Bitmask m)
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(std::popcount(m)));
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

int excitation_sign(Bitmask m, int p, int q)
{
    if (p == q) return 1;
    const int lo = std::min(p, q);
    const int hi = std::max(p, q);
    const Bitmask between = lowest_bits(hi) & ~lowest_bits(lo + 1);
    return (std::popcount(m & between) & 1) ? -1 : 1;
}

std::vector<Bitmask> enumerate_strings(int norb, int n)
{
    std::vector<Bitmask> out;
    if (n < 0 || n > norb) return out;
    if (n == 0) {
        out.push_back(0);
        return out;
    }
    // Gosper's hack walks n-subsets in increasing integer order.
    Bitmask s = lowest_bits(n);
    const Bitmask limit = Bitmask{1} << norb;
    while (s < limit) {
        out.push_back(s);
        const Bitmask c = s & (~s + 1);
        const Bitmask r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    return out;
}

} // namespace lucj
