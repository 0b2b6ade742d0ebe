// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/compress.hpp"

#include <algorithm>
#include <cmath>

#include "lucj/linalg.hpp"

namespace lucj {

PairSet symmetrize(const PairSet &pairs, int norb)
{
    PairSet out;
    for (auto [p, q] : pairs) {
        if (p < 0 || q < 0 || p >= norb || q >= norb) throw ParseError("mask pair out of range");
        out.emplace(p, q);
        out.emplace(q, p);
    }
    return out;
}

PairSet all_pairs(int norb)
{
    PairSet out;
    for (int p = 0; p < norb; ++p)
        for (int q = 0; q < norb; ++q) out.emplace(p, q);
    return out;
}

ConnectivityMask mask_preset(std::string_view name, int norb)
{
    ConnectivityMask mask;
    mask.norb = norb;
    if (name == "all") {
        mask.same_spin = all_pairs(norb);
        mask.opposite_spin = all_pairs(norb);
    } else if (name == "square" || name == "heavy-hex") {
        PairSet same, opposite;
        for (int p = 0; p + 1 < norb; ++p) same.emplace(p, p + 1);
        for (int p = 0; p < norb; ++p)
            if (name == "square" || p % 2 == 0) opposite.emplace(p, p);
        mask.same_spin = symmetrize(same, norb);
        mask.opposite_spin = symmetrize(opposite, norb);
    } else if (name != "none") {
        throw ParseError("unknown connectivity preset '" + std::string(name) + "'");
    }
    return mask;
}

PairSet mask_union(const ConnectivityMask &mask)
{
    PairSet out = symmetrize(mask.same_spin, mask.norb);
    for (const auto &pq : symmetrize(mask.opposite_spin, mask.norb)) out.insert(pq);
    return out;
}

MatrixXd apply_mask(const MatrixXd &j, const PairSet &allowed)
{
    MatrixXd out = MatrixXd::Zero(j.rows(), j.cols());
    for (auto [p, q] : allowed)
        if (p < j.rows() && q < j.cols()) out(p, q) = j(p, q);
    return out;
}

void validate(const CompressionConfig &c)
{
    if (c.target_reps < 1) throw ParseError("compression: target_reps must be at least 1");
    if (!(c.lambda >= 0.0)) throw ParseError("compression: lambda must be non-negative");
    if (c.stage_step < 1) throw ParseError("compression: stage_step must be at least 1");
    if (c.max_iter < 0) throw ParseError("compression: max_iter must be non-negative");
}

// ---------------------------------------------------------------------------
// Parameters

ParameterLayout::ParameterLayout(int norb, int nocc, int nvir, int nterms, const PairSet &allowed)
    : norb_(norb), nocc_(nocc), nvir_(nvir), nterms_(nterms)
{
    if (norb != nocc + nvir || nterms < 0) throw ParseError("ParameterLayout: inconsistent shape");
    for (auto [p, q] : allowed) {
        if (p < 0 || q < 0 || p >= norb || q >= norb) throw ParseError("ParameterLayout: pair out of range");
        if (p <= q) j_entries_.emplace_back(p, q);
    }
    per_term_ = static_cast<std::size_t>(antihermitian_dof(norb)) + j_entries_.size();
}

VectorXd ParameterLayout::pack(const DoubleFactorization &df) const
{
    if (df.norb != norb_ || static_cast<int>(df.size()) != nterms_) {
        throw ParseError("ParameterLayout::pack: factorization shape mismatch");
    }
    VectorXd x(static_cast<Eigen::Index>(size()));
    const std::size_t ndof = antihermitian_dof(norb_);
    for (int mu = 0; mu < nterms_; ++mu) {
        std::span<double> block(x.data() + mu * per_term_, per_term_);
        pack_antihermitian(logm_unitary(df.terms[mu].U), block.first(ndof));
        for (std::size_t k = 0; k < j_entries_.size(); ++k) {
            const auto [p, q] = j_entries_[k];
            block[ndof + k] = df.terms[mu].J(p, q);
        }
    }
    return x;
}

DoubleFactorization ParameterLayout::unpack(std::span<const double> params) const
{
    if (params.size() != size()) throw ParseError("ParameterLayout::unpack: wrong parameter count");
    DoubleFactorization df{norb_, nocc_, nvir_, {}};
    const std::size_t ndof = antihermitian_dof(norb_);
    for (int mu = 0; mu < nterms_; ++mu) {
        auto block = params.subspan(mu * per_term_, per_term_);
        DFTerm term{expm_antihermitian(unpack_antihermitian(block.first(ndof), norb_)),
                    MatrixXd::Zero(norb_, norb_)};
        for (std::size_t k = 0; k < j_entries_.size(); ++k) {
            const auto [p, q] = j_entries_[k];
            term.J(p, q) = block[ndof + k];
            term.J(q, p) = block[ndof + k];
        }
        df.terms.push_back(std::move(term));
    }
    return df;
}

double reference_norm(const Tensor4 &t2) { return coulomb_norm_sum(double_factorize_t2(t2)); }

// ---------------------------------------------------------------------------
// Objective

namespace {

// Y_(ia),p = U_ap conj(U_ip)
MatrixXcd pair_orbitals(const MatrixXcd &u, int nocc, int nvir)
{
    MatrixXcd y(static_cast<Eigen::Index>(nocc) * nvir, u.cols());
    for (int i = 0; i < nocc; ++i)
        for (int a = 0; a < nvir; ++a) y.row(i * nvir + a) = u.row(nocc + a).cwiseProduct(u.row(i).conjugate());
    return y;
}

double evaluate(const ParameterLayout &layout, std::span<const double> params, const Tensor4 &t2,
                double lambda, double ref_norm, std::span<double> grad)
{
    if (params.size() != layout.size()) throw ParseError("loss: wrong parameter count");
    for (double v : params)
        if (!std::isfinite(v)) throw NumericalError("loss: non-finite parameter");
    const int nocc = layout.nocc(), nvir = layout.nvir(), norb = layout.norb();
    if (static_cast<int>(t2.dim(0)) != nocc || static_cast<int>(t2.dim(2)) != nvir) {
        throw ParseError("loss: t2 shape does not match the parameter layout");
    }
    const std::size_t ndof = antihermitian_dof(norb);
    const auto &entries = layout.j_entries();
    const Complex iu(0.0, 1.0);

    std::vector<AntihermitianExp> exps;
    std::vector<MatrixXcd> ys;
    std::vector<MatrixXd> js;
    MatrixXcd total = MatrixXcd::Zero(static_cast<Eigen::Index>(nocc) * nvir, static_cast<Eigen::Index>(nocc) * nvir);
    double norm_sum = 0.0;
    for (int mu = 0; mu < layout.nterms(); ++mu) {
        auto block = params.subspan(mu * layout.per_term(), layout.per_term());
        exps.emplace_back(unpack_antihermitian(block.first(ndof), norb));
        MatrixXd j = MatrixXd::Zero(norb, norb);
        for (std::size_t k = 0; k < entries.size(); ++k) {
            j(entries[k].first, entries[k].second) = block[ndof + k];
            j(entries[k].second, entries[k].first) = block[ndof + k];
        }
        ys.push_back(pair_orbitals(exps.back().unitary(), nocc, nvir));
        total.noalias() += ys.back() * j.cast<Complex>() * ys.back().transpose();
        norm_sum += j.squaredNorm();
        js.push_back(std::move(j));
    }
    const MatrixXcd residual = iu * total - pair_matrix(t2).cast<Complex>();
    const double diff = norm_sum - ref_norm;
    const double value = 0.5 * residual.squaredNorm() + lambda * std::abs(diff);
    if (grad.empty()) return value;

    const double reg_sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    const MatrixXcd rc = residual.conjugate();
    for (int mu = 0; mu < layout.nterms(); ++mu) {
        auto out = grad.subspan(mu * layout.per_term(), layout.per_term());
        const MatrixXcd &y = ys[mu];
        const MatrixXcd &u = exps[mu].unitary();
        const MatrixXcd rcy = rc * y;

        const MatrixXd gj = (iu * (y.transpose() * rcy)).real();
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto [p, q] = entries[k];
            const double x = js[mu](p, q);
            double g = p == q ? gj(p, p) : gj(p, q) + gj(q, p);
            g += lambda * reg_sign * (p == q ? 2.0 * x : 4.0 * x);
            out[ndof + k] = g;
        }

        // dL = Re Σ 2i W_(ia),p dY_(ia),p with W = conj(R) Y J.
        const MatrixXcd w = rcy * js[mu].cast<Complex>();
        MatrixXcd gamma = MatrixXcd::Zero(norb, norb);
        for (int i = 0; i < nocc; ++i)
            for (int a = 0; a < nvir; ++a) {
                const auto wrow = w.row(i * nvir + a);
                gamma.row(i) += 2.0 * iu * wrow.cwiseProduct(u.row(nocc + a));
                gamma.row(nocc + a) -= 2.0 * iu * wrow.conjugate().cwiseProduct(u.row(i));
            }
        antihermitian_gradient(exps[mu].pullback(gamma), out.first(ndof));
    }
    return value;
}

} // namespace

double loss(const ParameterLayout &layout, std::span<const double> params, const Tensor4 &t2, double lambda,
            double ref_norm)
{
    return evaluate(layout, params, t2, lambda, ref_norm, {});
}

double loss_and_gradient(const ParameterLayout &layout, std::span<const double> params, const Tensor4 &t2,
                         double lambda, double ref_norm, std::span<double> grad)
{
    if (grad.size() != layout.size()) throw ParseError("loss_gradient: wrong gradient size");
    return evaluate(layout, params, t2, lambda, ref_norm, grad);
}

VectorXd loss_gradient(const ParameterLayout &layout, std::span<const double> params, const Tensor4 &t2,
                       double lambda, double ref_norm)
{
    VectorXd g(static_cast<Eigen::Index>(layout.size()));
    loss_and_gradient(layout, params, t2, lambda, ref_norm, {g.data(), layout.size()});
    return g;
}

double reconstruction_loss(const DoubleFactorization &df, const Tensor4 &t2)
{
    const auto full = reconstruct_t2_complex(df);
    const auto target = t2.data();
    if (full.size() != target.size()) throw ParseError("reconstruction_loss: shape mismatch");
    double sum = 0.0;
    for (std::size_t k = 0; k < full.size(); ++k) sum += std::norm(full[k] - target[k]);
    return 0.5 * sum;
}

// ---------------------------------------------------------------------------
// Drivers

CompressionResult compress(const DoubleFactorization &df_init, const Tensor4 &t2, const CompressionConfig &config,
                           const ConnectivityMask &mask, std::optional<double> ref_norm)
{
    validate(config);
    validate(df_init);
    if (static_cast<int>(df_init.size()) != config.target_reps) {
        throw ParseError("compress: initial factorization must hold exactly target_reps terms");
    }
    if (mask.norb != df_init.norb) throw ParseError("compress: mask orbital count mismatch");
    if (static_cast<int>(t2.dim(0)) != df_init.nocc || static_cast<int>(t2.dim(2)) != df_init.nvir) {
        throw ParseError("compress: t2 shape does not match the factorization");
    }

    CompressionResult result;
    result.ref_norm = ref_norm.value_or(config.reference == ReferenceNorm::full_factorization
                                            ? reference_norm(t2)
                                            : coulomb_norm_sum(df_init));
    const ParameterLayout layout(df_init.norb, df_init.nocc, df_init.nvir, config.target_reps, mask_union(mask));
    const VectorXd x0 = layout.pack(df_init);
    const std::size_t n = layout.size();

    LbfgsOptions options;
    options.max_iter = config.max_iter;
    options.grad_tol = config.grad_tol;
    options.f_tol = config.f_tol;
    const auto fg = [&](const VectorXd &x, VectorXd &g) {
        return loss_and_gradient(layout, {x.data(), n}, t2, config.lambda, result.ref_norm, {g.data(), n});
    };
    const LbfgsResult opt = lbfgs_minimize(fg, x0, options);

    result.initial_loss = opt.history.front();
    result.final_loss = opt.f;
    result.loss_history = opt.history;
    result.status = opt.status;
    result.warning = opt.status == LbfgsStatus::line_search_failure;
    result.iterations = opt.iterations;
    result.df = layout.unpack({opt.x.data(), n});
    result.final_fit = reconstruction_loss(result.df, t2);
    sort_terms(result.df);
    return result;
}

MultistageResult multistage_compress(const DoubleFactorization &df_full, const Tensor4 &t2,
                                     const CompressionConfig &config, const ConnectivityMask &mask, int start_reps)
{
    validate(config);
    const int target = config.target_reps;
    if (start_reps < target) throw ParseError("multistage_compress: start_reps below target_reps");
    if (start_reps > static_cast<int>(df_full.size())) {
        throw ParseError("multistage_compress: start_reps exceeds the number of terms");
    }
    const PairSet allowed = mask_union(mask);
    std::optional<double> ref;
    if (config.reference == ReferenceNorm::retained_terms) {
        ref = coulomb_norm_sum(truncate(df_full, static_cast<std::size_t>(target)));
    }

    MultistageResult out;
    DoubleFactorization current = truncate(df_full, static_cast<std::size_t>(start_reps));
    int terms = start_reps;
    while (true) {
        for (auto &term : current.terms) term.J = apply_mask(term.J, allowed);
        CompressionConfig stage = config;
        stage.target_reps = terms;
        CompressionResult res = compress(current, t2, stage, mask, ref);
        out.stages.push_back({terms, res.initial_loss, res.final_loss, res.iterations});
        if (terms == target) {
            out.result = std::move(res);
            break;
        }
        terms = std::max(target, terms - config.stage_step);
        current = truncate(res.df, static_cast<std::size_t>(terms));
    }
    return out;
}

} // namespace lucj
