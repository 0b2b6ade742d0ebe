// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/tensor.hpp"

#include <cmath>

namespace lucj {

double Tensor4::frobenius_norm() const
{
    double sum = 0.0;
    for (double v : data_) sum += v * v;
    return std::sqrt(sum);
}

double frobenius_distance(const Tensor4 &a, const Tensor4 &b)
{
    if (a.dims() != b.dims()) throw ParseError("tensor shape mismatch");
    double sum = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) {
        const double d = da[k] - db[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

MatrixXd pair_matrix(const Tensor4 &t2)
{
    const std::size_t nocc = t2.dim(0);
    const std::size_t nvir = t2.dim(2);
    const auto n = static_cast<Eigen::Index>(nocc * nvir);
    MatrixXd m(n, n);
    for (std::size_t i = 0; i < nocc; ++i)
        for (std::size_t a = 0; a < nvir; ++a)
            for (std::size_t j = 0; j < nocc; ++j)
                for (std::size_t b = 0; b < nvir; ++b)
                    m(i * nvir + a, j * nvir + b) = t2(i, j, a, b);
    return m;
}

Tensor4 from_pair_matrix(const MatrixXd &m, std::size_t nocc, std::size_t nvir)
{
    Tensor4 t2(nocc, nocc, nvir, nvir);
    for (std::size_t i = 0; i < nocc; ++i)
        for (std::size_t a = 0; a < nvir; ++a)
            for (std::size_t j = 0; j < nocc; ++j)
                for (std::size_t b = 0; b < nvir; ++b)
                    t2(i, j, a, b) = m(i * nvir + a, j * nvir + b);
    return t2;
}

} // namespace lucj
