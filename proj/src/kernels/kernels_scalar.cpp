// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/kernels.hpp"

#include <cassert>

namespace lucj::kernels::scalar {

void rotate_pair(std::span<Complex> x, std::span<Complex> y, const Rotation2 &g)
{
    assert(x.size() == y.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const Complex xv = x[k];
        const Complex yv = y[k];
        x[k] = g.m00 * xv + g.m01 * yv;
        y[k] = g.m10 * xv + g.m11 * yv;
    }
}

void scale(std::span<Complex> x, Complex s)
{
    for (auto &v : x) v *= s;
}

void multiply(std::span<Complex> x, std::span<const Complex> factors)
{
    assert(x.size() == factors.size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] *= factors[k];
}

void abs2(std::span<const Complex> x, std::span<double> out)
{
    assert(x.size() == out.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = std::norm(x[k]);
}

double squared_norm(std::span<const Complex> x)
{
    double sum = 0.0;
    for (const auto &v : x) sum += std::norm(v);
    return sum;
}

Complex cdot(std::span<const Complex> x, std::span<const Complex> y)
{
    assert(x.size() == y.size());
    Complex sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) sum += std::conj(x[k]) * y[k];
    return sum;
}

double dot(std::span<const double> x, std::span<const double> y)
{
    assert(x.size() == y.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) sum += x[k] * y[k];
    return sum;
}

void axpy(double a, std::span<const double> x, std::span<double> y)
{
    assert(x.size() == y.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] += a * x[k];
}

} // namespace lucj::kernels::scalar
