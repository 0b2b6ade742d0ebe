// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/ucjsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "io_util.hpp"
#include "lucj/kernels.hpp"
#include "lucj/linalg.hpp"

namespace lucj {

void validate(const UCJOperator &op)
{
    auto check_u = [&](const MatrixXcd &u) {
        if (u.rows() != op.norb || u.cols() != op.norb) throw NumericalError("UCJ operator: wrong rotation shape");
        if (unitarity_error(u) > 1e-10) throw NumericalError("UCJ operator: rotation not unitary");
    };
    auto check_j = [&](const MatrixXd &j) {
        if (j.rows() != op.norb || j.cols() != op.norb) throw NumericalError("UCJ operator: wrong J shape");
        if (symmetry_error(j) > 1e-12) throw NumericalError("UCJ operator: J not symmetric");
    };
    for (const auto &layer : op.reps) {
        check_u(layer.U);
        check_j(layer.J_same);
        check_j(layer.J_opposite);
    }
    if (op.final_rotation) check_u(*op.final_rotation);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int norb, int n_alpha, int n_beta)
    : norb_(norb), n_alpha_(n_alpha), n_beta_(n_beta)
{
    if (norb < 0 || norb > kMaxOrbitals || n_alpha < 0 || n_beta < 0 || n_alpha > norb || n_beta > norb) {
        throw ParseError("StateVector: invalid sector");
    }
    alpha_ = enumerate_strings(norb, n_alpha);
    beta_ = enumerate_strings(norb, n_beta);
    for (std::size_t k = 0; k < alpha_.size(); ++k) alpha_index_.emplace(alpha_[k], k);
    for (std::size_t k = 0; k < beta_.size(); ++k) beta_index_.emplace(beta_[k], k);
    amps_ = VectorXcd::Zero(static_cast<Eigen::Index>(dimension()));
}

Determinant StateVector::determinant(std::size_t index) const
{
    return {alpha_[index / beta_.size()], beta_[index % beta_.size()]};
}

std::optional<std::size_t> StateVector::index(const Determinant &d) const
{
    const auto a = alpha_index_.find(d.alpha);
    const auto b = beta_index_.find(d.beta);
    if (a == alpha_index_.end() || b == beta_index_.end()) return std::nullopt;
    return a->second * beta_.size() + b->second;
}

CIBasis StateVector::basis() const { return enumerate_basis(norb_, n_alpha_, n_beta_); }

double StateVector::norm() const
{
    return std::sqrt(kernels::squared_norm({amps_.data(), static_cast<std::size_t>(amps_.size())}));
}

StateVector prepare_hartree_fock(int norb, int n_alpha, int n_beta)
{
    StateVector state(norb, n_alpha, n_beta);
    state.amplitudes()(static_cast<Eigen::Index>(*state.index(hartree_fock_determinant(n_alpha, n_beta)))) = 1.0;
    return state;
}

// ---------------------------------------------------------------------------
// Orbital rotations

namespace {

using Span = std::span<Complex>;

struct StepTable {
    // Strings with p occupied and p+1 empty, paired with the string that has
    // p+1 occupied instead.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> both;
};

std::vector<StepTable> step_tables(const std::vector<Bitmask> &strings, int norb)
{
    std::unordered_map<Bitmask, std::size_t> index;
    for (std::size_t k = 0; k < strings.size(); ++k) index.emplace(strings[k], k);
    std::vector<StepTable> tables(std::max(0, norb - 1));
    for (int p = 0; p + 1 < norb; ++p) {
        const Bitmask lo = Bitmask{1} << p;
        const Bitmask hi = Bitmask{1} << (p + 1);
        for (std::size_t k = 0; k < strings.size(); ++k) {
            const Bitmask s = strings[k];
            if ((s & lo) && (s & hi)) {
                tables[p].both.push_back(k);
            } else if (s & lo) {
                tables[p].pairs.emplace_back(k, index.at(s ^ lo ^ hi));
            }
        }
    }
    return tables;
}

// Applies the rotation to the spin whose strings index the rows of a
// rows × cols row-major block.
void rotate_rows(Complex *data, std::size_t cols, const std::vector<Bitmask> &strings, int norb,
                 const GivensDecomposition &dec)
{
    auto row = [&](std::size_t r) { return Span(data + r * cols, cols); };
    for (std::size_t r = 0; r < strings.size(); ++r) {
        Complex phase = 1.0;
        for (int p : occupied_orbitals(strings[r])) phase *= dec.phases(p);
        if (phase != Complex(1.0)) kernels::scale(row(r), phase);
    }
    const auto tables = step_tables(strings, norb);
    for (auto it = dec.steps.rbegin(); it != dec.steps.rend(); ++it) {
        const auto &table = tables[it->p];
        const kernels::Rotation2 g{it->m00, it->m01, it->m10, it->m11};
        for (auto [s, t] : table.pairs) kernels::rotate_pair(row(s), row(t), g);
        const Complex det = it->m00 * it->m11 - it->m01 * it->m10;
        for (std::size_t s : table.both) kernels::scale(row(s), det);
    }
}

} // namespace

void apply_orbital_rotation(StateVector &state, const MatrixXcd &u)
{
    const int n = state.norb();
    if (u.rows() != n || u.cols() != n) throw NumericalError("apply_orbital_rotation: wrong matrix shape");
    if (unitarity_error(u) > 1e-8) throw NumericalError("apply_orbital_rotation: matrix not unitary");
    if (state.dimension() == 0) return;
    const GivensDecomposition dec = givens_decomposition(u);
    const std::size_t na = state.alpha_count(), nb = state.beta_count();

    rotate_rows(state.amplitudes().data(), nb, state.alpha_strings(), n, dec);

    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<RowMajor> m(state.amplitudes().data(), static_cast<Eigen::Index>(na), static_cast<Eigen::Index>(nb));
    RowMajor t = m.transpose();
    rotate_rows(t.data(), na, state.beta_strings(), n, dec);
    m = t.transpose();
}

void apply_diagonal_coulomb(StateVector &state, const MatrixXd &j_same, const MatrixXd &j_opposite)
{
    const int n = state.norb();
    if (j_same.rows() != n || j_same.cols() != n || j_opposite.rows() != n || j_opposite.cols() != n) {
        throw NumericalError("apply_diagonal_coulomb: wrong matrix shape");
    }
    if (symmetry_error(j_same) > 1e-12 || symmetry_error(j_opposite) > 1e-12) {
        throw NumericalError("apply_diagonal_coulomb: J not symmetric");
    }
    auto occupations = [n](Bitmask s) {
        VectorXd occ = VectorXd::Zero(n);
        for (int p : occupied_orbitals(s)) occ(p) = 1.0;
        return occ;
    };
    const auto &alpha = state.alpha_strings();
    const auto &beta = state.beta_strings();
    std::vector<VectorXd> beta_occ;
    VectorXd beta_self(static_cast<Eigen::Index>(beta.size()));
    for (std::size_t b = 0; b < beta.size(); ++b) {
        beta_occ.push_back(occupations(beta[b]));
        beta_self(b) = 0.5 * beta_occ.back().dot(j_same * beta_occ.back());
    }
    std::vector<Complex> phases(beta.size());
    for (std::size_t a = 0; a < alpha.size(); ++a) {
        const VectorXd na = occupations(alpha[a]);
        const double alpha_self = 0.5 * na.dot(j_same * na);
        const VectorXd cross = j_opposite * na;
        for (std::size_t b = 0; b < beta.size(); ++b) {
            phases[b] = std::polar(1.0, alpha_self + beta_self(b) + cross.dot(beta_occ[b]));
        }
        kernels::multiply({state.amplitudes().data() + a * beta.size(), beta.size()}, phases);
    }
}

// ---------------------------------------------------------------------------
// UCJ operators

UCJOperator ucj_from_df(const DoubleFactorization &df, const std::optional<MatrixXd> &t1,
                        const std::optional<ConnectivityMask> &mask)
{
    UCJOperator op;
    op.norb = df.norb;
    std::optional<PairSet> same, opposite;
    if (mask) {
        if (mask->norb != df.norb) throw ParseError("ucj_from_df: mask orbital count mismatch");
        same = symmetrize(mask->same_spin, df.norb);
        opposite = symmetrize(mask->opposite_spin, df.norb);
    }
    for (const auto &term : df.terms) {
        if (term.U.rows() != df.norb || term.J.rows() != df.norb) throw ParseError("ucj_from_df: term shape mismatch");
        op.reps.push_back({term.U, same ? apply_mask(term.J, *same) : term.J,
                           opposite ? apply_mask(term.J, *opposite) : term.J});
    }
    if (t1) {
        if (t1->rows() != df.nocc || t1->cols() != df.nvir) throw ParseError("ucj_from_df: t1 shape mismatch");
        MatrixXcd k = MatrixXcd::Zero(df.norb, df.norb);
        for (int i = 0; i < df.nocc; ++i)
            for (int a = 0; a < df.nvir; ++a) {
                k(df.nocc + a, i) = (*t1)(i, a);
                k(i, df.nocc + a) = -(*t1)(i, a);
            }
        op.final_rotation = expm_antihermitian(k);
    }
    return op;
}

void apply_ucj(StateVector &state, const UCJOperator &op)
{
    if (op.norb != state.norb()) throw ParseError("apply_ucj: orbital count mismatch");
    for (const auto &layer : op.reps) {
        apply_orbital_rotation(state, layer.U.adjoint());
        apply_diagonal_coulomb(state, layer.J_same, layer.J_opposite);
        apply_orbital_rotation(state, layer.U);
    }
    if (op.final_rotation) apply_orbital_rotation(state, *op.final_rotation);
}

StateVector prepare_ucj_state(const UCJOperator &op, const StateVector &reference)
{
    StateVector state = reference;
    apply_ucj(state, op);
    return state;
}

double vqe_energy(const StateVector &state, const HamiltonianMatrix &h, double *imag_residue)
{
    if (h.dimension() != state.dimension()) throw ParseError("vqe_energy: basis mismatch");
    const VectorXcd &psi = state.amplitudes();
    const VectorXcd hpsi = h.apply(psi);
    const Complex e = kernels::cdot({psi.data(), static_cast<std::size_t>(psi.size())},
                                    {hpsi.data(), static_cast<std::size_t>(hpsi.size())});
    if (imag_residue) *imag_residue = std::abs(e.imag());
    return e.real();
}

double vqe_energy(const StateVector &state, const Hamiltonian &h, double *imag_residue)
{
    if (h.norb != state.norb() || h.n_alpha != state.n_alpha() || h.n_beta != state.n_beta()) {
        throw ParseError("vqe_energy: Hamiltonian sector mismatch");
    }
    return vqe_energy(state, HamiltonianMatrix(state.basis(), h), imag_residue);
}

SampleSet sample(const StateVector &state, std::size_t n_shots, std::uint64_t seed)
{
    const VectorXcd &psi = state.amplitudes();
    std::vector<double> cdf(static_cast<std::size_t>(psi.size()));
    kernels::abs2({psi.data(), cdf.size()}, cdf);
    double total = 0.0;
    for (double &p : cdf) {
        total += p;
        p = total;
    }
    if (cdf.empty() || std::abs(total - 1.0) > 1e-8) throw NumericalError("sample: state is not normalized");

    SampleSet out;
    out.norb = state.norb();
    out.seed = seed;
    out.source_size = state.dimension();
    out.draws.reserve(n_shots);
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < n_shots; ++s) {
        const double u = uniform01(rng) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        // Never land on a trailing zero-probability entry.
        if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), total);
        out.draws.push_back(state.determinant(static_cast<std::size_t>(it - cdf.begin())));
    }
    return out;
}

double entropy(const StateVector &state)
{
    const VectorXcd &psi = state.amplitudes();
    std::vector<double> probs(static_cast<std::size_t>(psi.size()));
    kernels::abs2({psi.data(), probs.size()}, probs);
    double s = 0.0;
    for (double p : probs)
        if (p > 0.0) s -= p * std::log(p);
    return s;
}

UCJOperator random_ucj(int norb, int nreps, bool with_final_rotation, std::mt19937_64 &rng,
                       const std::optional<ConnectivityMask> &mask)
{
    if (norb < 0 || norb > kMaxOrbitals || nreps < 0) throw ParseError("random_ucj: invalid shape");
    const PairSet same = mask ? symmetrize(mask->same_spin, norb) : all_pairs(norb);
    const PairSet opposite = mask ? symmetrize(mask->opposite_spin, norb) : all_pairs(norb);
    auto random_j = [&](const PairSet &allowed) {
        MatrixXd j = MatrixXd::Zero(norb, norb);
        for (auto [p, q] : allowed) {
            if (p > q) continue;
            const double v = std::numbers::pi * (2.0 * uniform01(rng) - 1.0);
            j(p, q) = v;
            j(q, p) = v;
        }
        return j;
    };
    UCJOperator op;
    op.norb = norb;
    for (int r = 0; r < nreps; ++r) {
        UCJLayer layer;
        layer.U = random_unitary(norb, rng);
        layer.J_same = random_j(same);
        layer.J_opposite = random_j(opposite);
        op.reps.push_back(std::move(layer));
    }
    if (with_final_rotation) op.final_rotation = random_unitary(norb, rng);
    return op;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

MatrixXcd read_complex(io::TokenReader &tr, int n)
{
    MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const double re = tr.finite();
            const double im = tr.finite();
            m(r, c) = Complex(re, im);
        }
    return m;
}

MatrixXd read_real(io::TokenReader &tr, int n)
{
    MatrixXd m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = tr.finite();
    return m;
}

void write_complex(const MatrixXcd &m, std::ostream &out)
{
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << io::format_double(m(r, c).real()) << ' ' << io::format_double(m(r, c).imag());
        }
        out << '\n';
    }
}

void write_real(const MatrixXd &m, std::ostream &out)
{
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << io::format_double(m(r, c));
        }
        out << '\n';
    }
}

} // namespace

UCJOperator parse_ucj(std::istream &in)
{
    io::TokenReader tr(in, "UCJ file");
    tr.expect("UCJ");
    tr.expect("v1");
    UCJOperator op;
    const long long norb = tr.integer();
    const long long nreps = tr.integer();
    const long long has_final = tr.integer();
    if (norb < 0 || norb > kMaxOrbitals || nreps < 0 || (has_final != 0 && has_final != 1)) {
        throw ParseError("UCJ file: invalid header");
    }
    op.norb = static_cast<int>(norb);
    for (long long r = 0; r < nreps; ++r) {
        UCJLayer layer;
        layer.U = read_complex(tr, op.norb);
        layer.J_same = read_real(tr, op.norb);
        layer.J_opposite = read_real(tr, op.norb);
        op.reps.push_back(std::move(layer));
    }
    if (has_final) op.final_rotation = read_complex(tr, op.norb);
    tr.expect_end();
    return op;
}

void format_ucj(const UCJOperator &op, std::ostream &out)
{
    out << "UCJ v1 " << op.norb << ' ' << op.reps.size() << ' ' << (op.final_rotation ? 1 : 0) << '\n';
    for (const auto &layer : op.reps) {
        write_complex(layer.U, out);
        write_real(layer.J_same, out);
        write_real(layer.J_opposite, out);
    }
    if (op.final_rotation) write_complex(*op.final_rotation, out);
}

UCJOperator read_ucj(const std::filesystem::path &path)
{
    auto in = io::open_input(path);
    return parse_ucj(in);
}

void write_ucj(const UCJOperator &op, const std::filesystem::path &path)
{
    auto out = io::open_output(path);
    format_ucj(op, out);
}

} // namespace lucj
