// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

// AVX2/FMA variants. Each function is compiled for the avx2,fma target only,
// so the rest of the library stays baseline x86-64; dispatch.cpp guarantees
// these are never called on a CPU without the extensions.

#include "lucj/kernels.hpp"

#include <cassert>

#if defined(__x86_64__) || defined(_M_X64)
#define LUCJ_HAVE_X86 1
#include <immintrin.h>
#else
#define LUCJ_HAVE_X86 0
#endif

namespace lucj::kernels::avx2 {

#if LUCJ_HAVE_X86

#define LUCJ_AVX2 __attribute__((target("avx2,fma")))

namespace {

// [re0, im0, re1, im1] * (sr + i si) for two packed complex numbers.
LUCJ_AVX2 inline __m256d cmul_scalar(__m256d v, __m256d sr, __m256d si)
{
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmaddsub_pd(v, sr, _mm256_mul_pd(swapped, si));
}

// Elementwise product of two packed complex pairs.
LUCJ_AVX2 inline __m256d cmul(__m256d x, __m256d y)
{
    const __m256d yr = _mm256_movedup_pd(y);
    const __m256d yi = _mm256_permute_pd(y, 0b1111);
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);
    return _mm256_fmaddsub_pd(x, yr, _mm256_mul_pd(swapped, yi));
}

LUCJ_AVX2 inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double *raw(std::span<Complex> x) { return reinterpret_cast<double *>(x.data()); }
inline const double *raw(std::span<const Complex> x)
{
    return reinterpret_cast<const double *>(x.data());
}

} // namespace

LUCJ_AVX2 void rotate_pair(std::span<Complex> x, std::span<Complex> y, const Rotation2 &g)
{
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    double *px = raw(x);
    double *py = raw(y);
    const __m256d m00r = _mm256_set1_pd(g.m00.real()), m00i = _mm256_set1_pd(g.m00.imag());
    const __m256d m01r = _mm256_set1_pd(g.m01.real()), m01i = _mm256_set1_pd(g.m01.imag());
    const __m256d m10r = _mm256_set1_pd(g.m10.real()), m10i = _mm256_set1_pd(g.m10.imag());
    const __m256d m11r = _mm256_set1_pd(g.m11.real()), m11i = _mm256_set1_pd(g.m11.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d xv = _mm256_loadu_pd(px + 2 * k);
        const __m256d yv = _mm256_loadu_pd(py + 2 * k);
        const __m256d nx = _mm256_add_pd(cmul_scalar(xv, m00r, m00i), cmul_scalar(yv, m01r, m01i));
        const __m256d ny = _mm256_add_pd(cmul_scalar(xv, m10r, m10i), cmul_scalar(yv, m11r, m11i));
        _mm256_storeu_pd(px + 2 * k, nx);
        _mm256_storeu_pd(py + 2 * k, ny);
    }
    for (; k < n; ++k) {
        const Complex xv = x[k];
        const Complex yv = y[k];
        x[k] = g.m00 * xv + g.m01 * yv;
        y[k] = g.m10 * xv + g.m11 * yv;
    }
}

LUCJ_AVX2 void scale(std::span<Complex> x, Complex s)
{
    const std::size_t n = x.size();
    double *px = raw(x);
    const __m256d sr = _mm256_set1_pd(s.real());
    const __m256d si = _mm256_set1_pd(s.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        _mm256_storeu_pd(px + 2 * k, cmul_scalar(_mm256_loadu_pd(px + 2 * k), sr, si));
    }
    for (; k < n; ++k) x[k] *= s;
}

LUCJ_AVX2 void multiply(std::span<Complex> x, std::span<const Complex> factors)
{
    assert(x.size() == factors.size());
    const std::size_t n = x.size();
    double *px = raw(x);
    const double *pf = raw(factors);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d v = cmul(_mm256_loadu_pd(px + 2 * k), _mm256_loadu_pd(pf + 2 * k));
        _mm256_storeu_pd(px + 2 * k, v);
    }
    for (; k < n; ++k) x[k] *= factors[k];
}

LUCJ_AVX2 void abs2(std::span<const Complex> x, std::span<double> out)
{
    assert(x.size() == out.size());
    const std::size_t n = x.size();
    const double *px = raw(x);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d a = _mm256_loadu_pd(px + 2 * k);
        const __m256d b = _mm256_loadu_pd(px + 2 * k + 4);
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        _mm256_storeu_pd(out.data() + k, _mm256_permute4x64_pd(h, 0b11011000));
    }
    for (; k < n; ++k) out[k] = std::norm(x[k]);
}

LUCJ_AVX2 double squared_norm(std::span<const Complex> x)
{
    const std::size_t n = 2 * x.size();
    const double *px = raw(x);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        const __m256d a = _mm256_loadu_pd(px + k);
        const __m256d b = _mm256_loadu_pd(px + k + 4);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
        acc1 = _mm256_fmadd_pd(b, b, acc1);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) sum += px[k] * px[k];
    return sum;
}

LUCJ_AVX2 Complex cdot(std::span<const Complex> x, std::span<const Complex> y)
{
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    const double *px = raw(x);
    const double *py = raw(y);
    // re += xr*yr + xi*yi ; cross lanes hold [xr*yi, xi*yr] pairs.
    __m256d re = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d xv = _mm256_loadu_pd(px + 2 * k);
        const __m256d yv = _mm256_loadu_pd(py + 2 * k);
        re = _mm256_fmadd_pd(xv, yv, re);
        cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
    }
    alignas(32) double c[4];
    _mm256_store_pd(c, cross);
    Complex sum(hsum(re), (c[0] - c[1]) + (c[2] - c[3]));
    for (; k < n; ++k) sum += std::conj(x[k]) * y[k];
    return sum;
}

LUCJ_AVX2 double dot(std::span<const double> x, std::span<const double> y)
{
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + k), _mm256_loadu_pd(y.data() + k), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + k + 4), _mm256_loadu_pd(y.data() + k + 4),
                               acc1);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) sum += x[k] * y[k];
    return sum;
}

LUCJ_AVX2 void axpy(double a, std::span<const double> x, std::span<double> y)
{
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    const __m256d av = _mm256_set1_pd(a);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d r = _mm256_fmadd_pd(av, _mm256_loadu_pd(x.data() + k), _mm256_loadu_pd(y.data() + k));
        _mm256_storeu_pd(y.data() + k, r);
    }
    for (; k < n; ++k) y[k] += a * x[k];
}

#else // !LUCJ_HAVE_X86

// Non-x86 builds: the AVX2 table forwards to the scalar reference and
// avx2_available() reports false, so it is never selected.
void rotate_pair(std::span<Complex> x, std::span<Complex> y, const Rotation2 &g)
{
    scalar::rotate_pair(x, y, g);
}
void scale(std::span<Complex> x, Complex s) { scalar::scale(x, s); }
void multiply(std::span<Complex> x, std::span<const Complex> f) { scalar::multiply(x, f); }
void abs2(std::span<const Complex> x, std::span<double> out) { scalar::abs2(x, out); }
double squared_norm(std::span<const Complex> x) { return scalar::squared_norm(x); }
Complex cdot(std::span<const Complex> x, std::span<const Complex> y) { return scalar::cdot(x, y); }
double dot(std::span<const double> x, std::span<const double> y) { return scalar::dot(x, y); }
void axpy(double a, std::span<const double> x, std::span<double> y) { scalar::axpy(a, x, y); }

#endif

} // namespace lucj::kernels::avx2
