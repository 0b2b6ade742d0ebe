// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Data-parallel inner loops used by the statevector simulator, the sampler
// and the Davidson solver. Each kernel has a portable scalar reference and an
// AVX2/FMA variant; the variant is picked once at startup from CPUID and can
// be overridden (tests pin both and compare them).

#include <span>
#include <string_view>

#include "lucj/common.hpp"

namespace lucj::kernels {

enum class Backend { scalar, avx2 };

/// 2x2 complex matrix acting on a pair of amplitude rows:
/// x' = m00 x + m01 y,  y' = m10 x + m11 y.
struct Rotation2 {
    Complex m00, m01, m10, m11;
};

struct KernelTable {
    void (*rotate_pair)(std::span<Complex> x, std::span<Complex> y, const Rotation2 &g);
    void (*scale)(std::span<Complex> x, Complex s);
    void (*multiply)(std::span<Complex> x, std::span<const Complex> factors);
    void (*abs2)(std::span<const Complex> x, std::span<double> out);
    double (*squared_norm)(std::span<const Complex> x);
    Complex (*cdot)(std::span<const Complex> x, std::span<const Complex> y);
    double (*dot)(std::span<const double> x, std::span<const double> y);
    void (*axpy)(double a, std::span<const double> x, std::span<double> y);
};

namespace scalar {
void rotate_pair(std::span<Complex> x, std::span<Complex> y, const Rotation2 &g);
void scale(std::span<Complex> x, Complex s);
void multiply(std::span<Complex> x, std::span<const Complex> factors);
void abs2(std::span<const Complex> x, std::span<double> out);
double squared_norm(std::span<const Complex> x);
Complex cdot(std::span<const Complex> x, std::span<const Complex> y);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
} // namespace scalar

namespace avx2 {
void rotate_pair(std::span<Complex> x, std::span<Complex> y, const Rotation2 &g);
void scale(std::span<Complex> x, Complex s);
void multiply(std::span<Complex> x, std::span<const Complex> factors);
void abs2(std::span<const Complex> x, std::span<double> out);
double squared_norm(std::span<const Complex> x);
Complex cdot(std::span<const Complex> x, std::span<const Complex> y);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
} // namespace avx2

/// True when the running CPU supports AVX2 and FMA.
bool avx2_available();

/// Backend used by the dispatching entry points below.
Backend active_backend();

/// Force a backend. Throws lucj::Error when the CPU lacks support.
void set_backend(Backend backend);

std::string_view backend_name(Backend backend);

const KernelTable &table(Backend backend);

// Dispatching entry points.
void rotate_pair(std::span<Complex> x, std::span<Complex> y, const Rotation2 &g);
void scale(std::span<Complex> x, Complex s);
void multiply(std::span<Complex> x, std::span<const Complex> factors);
void abs2(std::span<const Complex> x, std::span<double> out);
double squared_norm(std::span<const Complex> x);
/// sum_k conj(x_k) y_k
Complex cdot(std::span<const Complex> x, std::span<const Complex> y);
double dot(std::span<const double> x, std::span<const double> y);
/// y += a x
void axpy(double a, std::span<const double> x, std::span<double> y);

} // namespace lucj::kernels
