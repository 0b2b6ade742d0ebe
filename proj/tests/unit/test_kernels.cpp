// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "lucj/kernels.hpp"
#include "lucj/linalg.hpp"

namespace lucj {
namespace {

using kernels::Backend;

std::vector<Complex> random_complex(std::size_t n, std::mt19937_64 &rng)
{
    std::vector<Complex> v(n);
    for (auto &x : v) x = Complex(standard_normal(rng), standard_normal(rng));
    return v;
}

std::vector<double> random_real(std::size_t n, std::mt19937_64 &rng)
{
    std::vector<double> v(n);
    for (auto &x : v) x = standard_normal(rng);
    return v;
}

double max_diff(const std::vector<Complex> &a, const std::vector<Complex> &b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {
protected:
    void SetUp() override
    {
        if (!kernels::avx2_available()) GTEST_SKIP() << "AVX2 not available on this CPU";
    }
    const kernels::KernelTable &scalar = kernels::table(Backend::scalar);
    const kernels::KernelTable &simd = kernels::table(Backend::avx2);
};

TEST_P(KernelEquivalence, RotatePair)
{
    std::mt19937_64 rng(GetParam());
    const auto x = random_complex(GetParam(), rng), y = random_complex(GetParam(), rng);
    const MatrixXcd u = random_unitary(2, rng);
    const kernels::Rotation2 g{u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
    auto xs = x, ys = y, xv = x, yv = y;
    scalar.rotate_pair(xs, ys, g);
    simd.rotate_pair(xv, yv, g);
    EXPECT_LE(max_diff(xs, xv), 1e-14);
    EXPECT_LE(max_diff(ys, yv), 1e-14);
}

TEST_P(KernelEquivalence, ScaleAndMultiply)
{
    std::mt19937_64 rng(GetParam() + 1);
    const auto x = random_complex(GetParam(), rng), f = random_complex(GetParam(), rng);
    auto a = x, b = x;
    scalar.scale(a, Complex(0.3, -1.2));
    simd.scale(b, Complex(0.3, -1.2));
    EXPECT_LE(max_diff(a, b), 1e-14);
    a = x;
    b = x;
    scalar.multiply(a, f);
    simd.multiply(b, f);
    EXPECT_LE(max_diff(a, b), 1e-14);
}

TEST_P(KernelEquivalence, Reductions)
{
    std::mt19937_64 rng(GetParam() + 2);
    const auto x = random_complex(GetParam(), rng), y = random_complex(GetParam(), rng);
    std::vector<double> ps(x.size()), pv(x.size());
    scalar.abs2(x, ps);
    simd.abs2(x, pv);
    for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(ps[k], pv[k], 1e-14 * (1.0 + ps[k]));
    const double n = scalar.squared_norm(x);
    EXPECT_NEAR(n, simd.squared_norm(x), 1e-13 * (1.0 + n));
    EXPECT_LE(std::abs(scalar.cdot(x, y) - simd.cdot(x, y)), 1e-13 * (1.0 + n));

    const auto u = random_real(GetParam(), rng), v = random_real(GetParam(), rng);
    EXPECT_NEAR(scalar.dot(u, v), simd.dot(u, v), 1e-13 * (1.0 + static_cast<double>(u.size())));
    auto ys = v, yv = v;
    scalar.axpy(0.7, u, ys);
    simd.axpy(0.7, u, yv);
    for (std::size_t k = 0; k < u.size(); ++k) EXPECT_NEAR(ys[k], yv[k], 1e-14 * (1.0 + std::abs(ys[k])));
}

// Lengths straddle the vector width so both the packed loop and the tail run.
INSTANTIATE_TEST_SUITE_P(Lengths, KernelEquivalence, ::testing::Values(0, 1, 2, 3, 4, 5, 7, 8, 17, 64, 1001));

TEST(KernelDispatch, ScalarReference)
{
    const std::vector<Complex> x = {{1.0, 2.0}, {-3.0, 0.5}};
    const std::vector<Complex> y = {{0.0, 1.0}, {2.0, 2.0}};
    const auto &t = kernels::table(Backend::scalar);
    EXPECT_DOUBLE_EQ(t.squared_norm(x), 1.0 + 4.0 + 9.0 + 0.25);
    const Complex c = t.cdot(x, y);
    const Complex expect = std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1];
    EXPECT_DOUBLE_EQ(c.real(), expect.real());
    EXPECT_DOUBLE_EQ(c.imag(), expect.imag());
}

TEST(KernelDispatch, BackendSwitch)
{
    const Backend before = kernels::active_backend();
    kernels::set_backend(Backend::scalar);
    EXPECT_EQ(kernels::active_backend(), Backend::scalar);
    EXPECT_EQ(kernels::backend_name(Backend::scalar), "scalar");
    if (kernels::avx2_available()) {
        kernels::set_backend(Backend::avx2);
        EXPECT_EQ(kernels::active_backend(), Backend::avx2);
    } else {
        EXPECT_THROW(kernels::set_backend(Backend::avx2), Error);
    }
    kernels::set_backend(before);
}

} // namespace
} // namespace lucj
