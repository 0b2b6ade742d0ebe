// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace lucj::kernels {

namespace {

constexpr KernelTable kScalarTable{
    scalar::rotate_pair, scalar::scale, scalar::multiply, scalar::abs2,
    scalar::squared_norm, scalar::cdot, scalar::dot, scalar::axpy,
};

constexpr KernelTable kAvx2Table{
    avx2::rotate_pair, avx2::scale, avx2::multiply, avx2::abs2,
    avx2::squared_norm, avx2::cdot, avx2::dot, avx2::axpy,
};

bool detect_avx2()
{
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend()
{
    // LUCJ_KERNELS=scalar pins the reference path, e.g. for bisecting.
    if (const char *env = std::getenv("LUCJ_KERNELS")) {
        if (std::string(env) == "scalar") return Backend::scalar;
    }
    return detect_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend> &active()
{
    static std::atomic<Backend> backend{initial_backend()};
    return backend;
}

const KernelTable &current() { return table(active().load(std::memory_order_relaxed)); }

} // namespace

bool avx2_available()
{
    static const bool available = detect_avx2();
    return available;
}

Backend active_backend() { return active().load(); }

void set_backend(Backend backend)
{
    if (backend == Backend::avx2 && !avx2_available()) {
        throw Error("AVX2 kernels requested but the CPU does not support AVX2/FMA");
    }
    active().store(backend);
}

std::string_view backend_name(Backend backend)
{
    return backend == Backend::avx2 ? "avx2" : "scalar";
}

const KernelTable &table(Backend backend)
{
    return backend == Backend::avx2 ? kAvx2Table : kScalarTable;
}

void rotate_pair(std::span<Complex> x, std::span<Complex> y, const Rotation2 &g)
{
    current().rotate_pair(x, y, g);
}
void scale(std::span<Complex> x, Complex s) { current().scale(x, s); }
void multiply(std::span<Complex> x, std::span<const Complex> factors)
{
    current().multiply(x, factors);
}
void abs2(std::span<const Complex> x, std::span<double> out) { current().abs2(x, out); }
double squared_norm(std::span<const Complex> x) { return current().squared_norm(x); }
Complex cdot(std::span<const Complex> x, std::span<const Complex> y) { return current().cdot(x, y); }
double dot(std::span<const double> x, std::span<const double> y) { return current().dot(x, y); }
void axpy(double a, std::span<const double> x, std::span<double> y) { current().axpy(a, x, y); }

} // namespace lucj::kernels
