// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Compressed double factorization: re-optimize a truncated factorization so
// that its reconstruction best matches the target t2, optionally with
// sparsity masks on J and a penalty on the total Coulomb norm.

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lucj/dfcore.hpp"
#include "lucj/numopt.hpp"

namespace lucj {

using PairSet = std::set<std::pair<int, int>>;

/// Allowed J entries for same-spin and opposite-spin interactions. Pairs
/// are stored in both orientations.
struct ConnectivityMask {
    int norb = 0;
    PairSet same_spin;
    PairSet opposite_spin;
};

/// Adds (q, p) for every (p, q); throws ParseError for out-of-range pairs.
PairSet symmetrize(const PairSet &pairs, int norb);

/// Presets by name:
///   "square":    same-spin (p, p+1), opposite-spin (p, p)
///   "heavy-hex": same-spin (p, p+1), opposite-spin (p, p) for even p
///   "all":       every pair in both sets
///   "none":      both sets empty
/// Throws ParseError for unknown names.
ConnectivityMask mask_preset(std::string_view name, int norb);

PairSet all_pairs(int norb);

/// S_αα ∪ S_αβ, symmetrized.
PairSet mask_union(const ConnectivityMask &mask);

/// Zeroes the entries of J outside the allowed set.
MatrixXd apply_mask(const MatrixXd &j, const PairSet &allowed);

/// Which Σ‖J‖_F² the norm penalty compares against.
enum class ReferenceNorm { full_factorization, retained_terms };

struct CompressionConfig {
    /// Number of terms kept.
    int target_reps = 1;
    double lambda = 0.0;
    int max_iter = 100;
    /// Terms dropped per multi-stage iteration.
    int stage_step = 2;
    double grad_tol = 1e-8;
    double f_tol = 1e-12;
    ReferenceNorm reference = ReferenceNorm::full_factorization;
};

void validate(const CompressionConfig &config);

/// Flat optimization coordinates: per term the antihermitian generator of U
/// (norb² reals), then the allowed upper-triangular J entries (p ≤ q,
/// row-major).
class ParameterLayout {
public:
    ParameterLayout(int norb, int nocc, int nvir, int nterms, const PairSet &allowed);

    int norb() const { return norb_; }
    int nocc() const { return nocc_; }
    int nvir() const { return nvir_; }
    int nterms() const { return nterms_; }
    std::size_t size() const { return static_cast<std::size_t>(nterms_) * per_term_; }
    std::size_t per_term() const { return per_term_; }
    const std::vector<std::pair<int, int>> &j_entries() const { return j_entries_; }

    /// Generator from logm(U); J masked.
    VectorXd pack(const DoubleFactorization &df) const;
    DoubleFactorization unpack(std::span<const double> params) const;

private:
    int norb_, nocc_, nvir_, nterms_;
    std::size_t per_term_;
    std::vector<std::pair<int, int>> j_entries_;
};

/// Σ_μ ‖J^μ‖_F² of the full factorization of t2.
double reference_norm(const Tensor4 &t2);

/// ½ Σ|t̄ − t|² + λ |Σ‖J‖² − ref_norm|, t̄ taken with its imaginary part.
double loss(const ParameterLayout &layout, std::span<const double> params, const Tensor4 &t2,
            double lambda, double ref_norm);

/// Returns the loss and writes its gradient. The penalty contributes 0 at
/// its kink.
double loss_and_gradient(const ParameterLayout &layout, std::span<const double> params,
                         const Tensor4 &t2, double lambda, double ref_norm, std::span<double> grad);

VectorXd loss_gradient(const ParameterLayout &layout, std::span<const double> params, const Tensor4 &t2,
                       double lambda, double ref_norm);

/// Least-squares part only, for a factorization directly.
double reconstruction_loss(const DoubleFactorization &df, const Tensor4 &t2);

struct CompressionResult {
    DoubleFactorization df;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    /// Least-squares part of final_loss.
    double final_fit = 0.0;
    double ref_norm = 0.0;
    LbfgsStatus status = LbfgsStatus::converged;
    /// Set when the optimizer stopped on a line-search failure.
    bool warning = false;
    int iterations = 0;
    std::vector<double> loss_history;
};

/// L-BFGS from df_init (which must hold config.target_reps terms, with the
/// mask union applied to its J's). Masked J entries of the result are exactly
/// zero, U's come from exp of the optimized generators.
CompressionResult compress(const DoubleFactorization &df_init, const Tensor4 &t2,
                           const CompressionConfig &config, const ConnectivityMask &mask,
                           std::optional<double> ref_norm = std::nullopt);

struct StageRecord {
    int terms = 0;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    int iterations = 0;
};

struct MultistageResult {
    CompressionResult result;
    std::vector<StageRecord> stages;
};

/// Truncate df_full to start_reps terms and compress; then repeatedly drop
/// stage_step terms (never going below target_reps), compress and re-sort.
MultistageResult multistage_compress(const DoubleFactorization &df_full, const Tensor4 &t2,
                                     const CompressionConfig &config, const ConnectivityMask &mask,
                                     int start_reps);

} // namespace lucj
