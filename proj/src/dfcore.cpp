// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/dfcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "io_util.hpp"
#include "lucj/chemio.hpp"
#include "lucj/linalg.hpp"

namespace lucj {

void sort_terms(DoubleFactorization &df)
{
    std::vector<double> norms(df.terms.size());
    for (std::size_t k = 0; k < df.terms.size(); ++k) norms[k] = df.terms[k].J.norm();
    std::vector<std::size_t> order(df.terms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
    std::vector<DFTerm> sorted;
    sorted.reserve(order.size());
    for (std::size_t k : order) sorted.push_back(std::move(df.terms[k]));
    df.terms = std::move(sorted);
}

void validate(const DoubleFactorization &df)
{
    if (df.norb != df.nocc + df.nvir || df.nocc < 0 || df.nvir < 0) {
        throw NumericalError("double factorization: inconsistent orbital counts");
    }
    for (const auto &term : df.terms) {
        if (term.U.rows() != df.norb || term.U.cols() != df.norb || term.J.rows() != df.norb ||
            term.J.cols() != df.norb) {
            throw NumericalError("double factorization: term has wrong shape");
        }
        if (unitarity_error(term.U) > 1e-10) throw NumericalError("double factorization: U not unitary");
        if (symmetry_error(term.J) > 1e-12) throw NumericalError("double factorization: J not symmetric");
    }
}

DoubleFactorization double_factorize_t2(const Tensor4 &t2)
{
    const int nocc = static_cast<int>(t2.dim(0));
    const int nvir = static_cast<int>(t2.dim(2));
    if (t2.dim(1) != t2.dim(0) || t2.dim(3) != t2.dim(2)) {
        throw NumericalError("double_factorize_t2: t2 must have shape (nocc, nocc, nvir, nvir)");
    }
    for (double v : t2.data())
        if (!std::isfinite(v)) throw NumericalError("double_factorize_t2: non-finite amplitude");
    const double scale = std::max(1.0, t2.frobenius_norm());
    if (t2_exchange_asymmetry(t2) > 1e-12 * scale) {
        throw NumericalError("double_factorize_t2: t2 violates t_ijab = t_jiba");
    }

    DoubleFactorization df;
    df.nocc = nocc;
    df.nvir = nvir;
    df.norb = nocc + nvir;
    if (nocc == 0 || nvir == 0) return df;

    const MatrixXd m = pair_matrix(t2);
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(0.5 * (m + m.transpose()));
    const int norb = df.norb;
    const Complex omega = std::polar(1.0, std::numbers::pi / 4.0);

    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        const double lambda = eig.eigenvalues()(k);
        if (std::abs(lambda) <= 1e-12) continue;
        const VectorXd v = eig.eigenvectors().col(k);
        MatrixXd z = MatrixXd::Zero(norb, norb);
        for (int i = 0; i < nocc; ++i)
            for (int a = 0; a < nvir; ++a) z(nocc + a, i) = v(i * nvir + a);
        // A± = ω^{±1} Z + h.c. has A±_ai = ω^{±1} v_ia, and i c A_ai A_bj is real
        // for c = ∓λ/2; the two terms sum to λ v_ia v_jb while their
        // excitation/de-excitation cross terms cancel.
        for (int sign : {+1, -1}) {
            const Complex w = sign > 0 ? omega : std::conj(omega);
            const MatrixXcd a = w * z.cast<Complex>() + std::conj(w) * z.transpose().cast<Complex>();
            Eigen::SelfAdjointEigenSolver<MatrixXcd> inner(a);
            const VectorXd d = inner.eigenvalues();
            const double coeff = -sign * 0.5 * lambda;
            DFTerm term{inner.eigenvectors(), coeff * d * d.transpose()};
            if (term.J.norm() <= 1e-12) continue;
            df.terms.push_back(std::move(term));
        }
    }
    sort_terms(df);
    return df;
}

std::vector<Complex> reconstruct_t2_complex(const DoubleFactorization &df)
{
    const int nocc = df.nocc;
    const int nvir = df.nvir;
    const Eigen::Index npair = static_cast<Eigen::Index>(nocc) * nvir;
    MatrixXcd total = MatrixXcd::Zero(npair, npair);
    for (const auto &term : df.terms) {
        // Y_(ia),p = U_ap conj(U_ip); the term is i · Y J Yᵀ in pair-matrix form.
        MatrixXcd y(npair, df.norb);
        for (int i = 0; i < nocc; ++i)
            for (int a = 0; a < nvir; ++a)
                for (int p = 0; p < df.norb; ++p)
                    y(i * nvir + a, p) = term.U(nocc + a, p) * std::conj(term.U(i, p));
        total += y * term.J.cast<Complex>() * y.transpose();
    }
    total *= Complex(0.0, 1.0);
    std::vector<Complex> out(static_cast<std::size_t>(npair * npair));
    for (int i = 0; i < nocc; ++i)
        for (int j = 0; j < nocc; ++j)
            for (int a = 0; a < nvir; ++a)
                for (int b = 0; b < nvir; ++b)
                    out[((static_cast<std::size_t>(i) * nocc + j) * nvir + a) * nvir + b] =
                        total(i * nvir + a, j * nvir + b);
    return out;
}

Tensor4 reconstruct_t2(const DoubleFactorization &df)
{
    const auto full = reconstruct_t2_complex(df);
    Tensor4 t2(df.nocc, df.nocc, df.nvir, df.nvir);
    auto data = t2.data();
    for (std::size_t k = 0; k < full.size(); ++k) data[k] = full[k].real();
    return t2;
}

DoubleFactorization truncate(const DoubleFactorization &df, std::size_t L)
{
    if (L > df.terms.size()) throw ParseError("truncate: L exceeds the number of terms");
    DoubleFactorization out{df.norb, df.nocc, df.nvir, {}};
    out.terms.assign(df.terms.begin(), df.terms.begin() + static_cast<std::ptrdiff_t>(L));
    return out;
}

double coulomb_norm_sum(const DoubleFactorization &df)
{
    double sum = 0.0;
    for (const auto &term : df.terms) sum += term.J.squaredNorm();
    return sum;
}

// ---------------------------------------------------------------------------
// Serialization

DoubleFactorization parse_double_factorization(std::istream &in)
{
    io::TokenReader tr(in, "DF file");
    tr.expect("DF");
    tr.expect("v1");
    DoubleFactorization df;
    df.norb = static_cast<int>(tr.integer());
    df.nocc = static_cast<int>(tr.integer());
    df.nvir = static_cast<int>(tr.integer());
    const long long nterms = tr.integer();
    if (df.norb < 0 || df.norb > kMaxOrbitals || df.nocc < 0 || df.nvir < 0 ||
        df.norb != df.nocc + df.nvir || nterms < 0) {
        throw ParseError("DF file: invalid header");
    }
    const int n = df.norb;
    for (long long t = 0; t < nterms; ++t) {
        DFTerm term{MatrixXcd(n, n), MatrixXd(n, n)};
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const double re = tr.finite();
                const double im = tr.finite();
                term.U(r, c) = Complex(re, im);
            }
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) term.J(r, c) = tr.finite();
        df.terms.push_back(std::move(term));
    }
    tr.expect_end();
    return df;
}

void format_double_factorization(const DoubleFactorization &df, std::ostream &out)
{
    out << "DF v1 " << df.norb << ' ' << df.nocc << ' ' << df.nvir << ' ' << df.terms.size() << '\n';
    for (const auto &term : df.terms) {
        for (int r = 0; r < df.norb; ++r) {
            for (int c = 0; c < df.norb; ++c) {
                if (c) out << ' ';
                out << io::format_double(term.U(r, c).real()) << ' '
                    << io::format_double(term.U(r, c).imag());
            }
            out << '\n';
        }
        for (int r = 0; r < df.norb; ++r) {
            for (int c = 0; c < df.norb; ++c) {
                if (c) out << ' ';
                out << io::format_double(term.J(r, c));
            }
            out << '\n';
        }
    }
}

DoubleFactorization read_double_factorization(const std::filesystem::path &path)
{
    auto in = io::open_input(path);
    return parse_double_factorization(in);
}

void write_double_factorization(const DoubleFactorization &df, const std::filesystem::path &path)
{
    auto out = io::open_output(path);
    format_double_factorization(df, out);
}

} // namespace lucj
