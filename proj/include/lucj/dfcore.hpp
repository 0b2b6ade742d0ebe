// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Double factorization of t2 amplitudes:
//
//   t_ijab = i Σ_μ Σ_pq J^μ_pq U^μ_ap conj(U^μ_ip) U^μ_bq conj(U^μ_jq)
//
// with i, j occupied (orbitals [0, nocc)), a, b virtual (offset by nocc),
// U^μ unitary and J^μ real symmetric. Each term is one orbital-rotated
// diagonal Coulomb operator of the corresponding UCJ layer.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "lucj/common.hpp"
#include "lucj/tensor.hpp"

namespace lucj {

struct DFTerm {
    MatrixXcd U;
    MatrixXd J;
};

struct DoubleFactorization {
    int norb = 0;
    int nocc = 0;
    int nvir = 0;
    /// Sorted by descending ‖J‖_F.
    std::vector<DFTerm> terms;

    std::size_t size() const { return terms.size(); }
};

/// Stable sort by descending ‖J‖_F; equal norms keep their current order.
void sort_terms(DoubleFactorization &df);

/// Throws NumericalError if a term is not unitary to 1e-10 or J is not
/// symmetric to 1e-12, or if shapes are inconsistent.
void validate(const DoubleFactorization &df);

/// Exact factorization. Eigendecompose the pair matrix M_(ia),(jb) = t_ijab;
/// each eigenpair (λ, v) with |λ| > 1e-12 gives two terms built from the
/// hermitian matrices e^{±iπ/4} Z + h.c., where Z holds v in its
/// virtual-occupied block. Throws NumericalError when t2 breaks the
/// t_ijab = t_jiba symmetry.
DoubleFactorization double_factorize_t2(const Tensor4 &t2);

/// Complex-valued evaluation of the factorized expression.
std::vector<Complex> reconstruct_t2_complex(const DoubleFactorization &df);

/// Real part of the factorized expression as an (nocc, nocc, nvir, nvir) tensor.
Tensor4 reconstruct_t2(const DoubleFactorization &df);

/// First L terms. Throws ParseError if L exceeds the term count.
DoubleFactorization truncate(const DoubleFactorization &df, std::size_t L);

/// Σ_μ ‖J^μ‖_F²
double coulomb_norm_sum(const DoubleFactorization &df);

/// "DF v1 norb nocc nvir nterms", then per term U as norb rows of
/// (re im) pairs and J as norb rows.
DoubleFactorization parse_double_factorization(std::istream &in);
void format_double_factorization(const DoubleFactorization &df, std::ostream &out);
DoubleFactorization read_double_factorization(const std::filesystem::path &path);
void write_double_factorization(const DoubleFactorization &df, const std::filesystem::path &path);

} // namespace lucj
