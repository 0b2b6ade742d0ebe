// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/detci.hpp"

#include <algorithm>
#include <cmath>

namespace lucj {

namespace {

inline Bitmask bit(int p) { return Bitmask{1} << p; }

double diagonal_element(const Determinant &d, const Hamiltonian &h)
{
    const auto occ_a = occupied_orbitals(d.alpha);
    const auto occ_b = occupied_orbitals(d.beta);
    double one = 0.0;
    for (int i : occ_a) one += h.h1(i, i);
    for (int i : occ_b) one += h.h1(i, i);
    double coulomb = 0.0;
    double exchange = 0.0;
    auto same_spin = [&](const std::vector<int> &occ) {
        for (int i : occ)
            for (int j : occ) {
                coulomb += h.eri(i, i, j, j);
                exchange += h.eri(i, j, j, i);
            }
    };
    same_spin(occ_a);
    same_spin(occ_b);
    for (int i : occ_a)
        for (int j : occ_b) coulomb += 2.0 * h.eri(i, i, j, j);
    return h.ecore + one + 0.5 * (coulomb - exchange);
}

double single_element(Bitmask ket_same, Bitmask ket_other, int p, int q, const Hamiltonian &h)
{
    double v = h.h1(p, q);
    for (int k : occupied_orbitals(ket_same)) v += h.eri(p, q, k, k) - h.eri(p, k, k, q);
    for (int k : occupied_orbitals(ket_other)) v += h.eri(p, q, k, k);
    return excitation_sign(ket_same, p, q) * v;
}

double same_spin_double(Bitmask bra, Bitmask ket, const Hamiltonian &h)
{
    const auto created = occupied_orbitals(bra & ~ket);
    const auto removed = occupied_orbitals(ket & ~bra);
    const int p1 = created[0], p2 = created[1];
    const int q1 = removed[0], q2 = removed[1];
    // ⟨bra| a†p1 a†p2 a_q2 a_q1 |ket⟩
    Bitmask m = ket;
    int sign = annihilation_sign(m, q1);
    m ^= bit(q1);
    sign *= annihilation_sign(m, q2);
    m ^= bit(q2);
    sign *= annihilation_sign(m, p2);
    m |= bit(p2);
    sign *= annihilation_sign(m, p1);
    return sign * (h.eri(p1, q1, p2, q2) - h.eri(p1, q2, p2, q1));
}

void excitations(Bitmask occ, int norb, std::vector<int> &occ_list, std::vector<int> &vir_list)
{
    occ_list = occupied_orbitals(occ);
    vir_list = occupied_orbitals(~occ & lowest_bits(norb));
}

} // namespace

CIBasis::CIBasis(int norb, int n_alpha, int n_beta, std::vector<Determinant> dets)
    : norb_(norb), n_alpha_(n_alpha), n_beta_(n_beta), dets_(std::move(dets))
{
    if (norb < 0 || norb > kMaxOrbitals || n_alpha < 0 || n_beta < 0 || n_alpha > norb ||
        n_beta > norb) {
        throw ParseError("CIBasis: sector out of range");
    }
    const Bitmask allowed = lowest_bits(norb);
    for (const auto &d : dets_) {
        if (popcount(d.alpha) != n_alpha || popcount(d.beta) != n_beta || (d.alpha & ~allowed) ||
            (d.beta & ~allowed)) {
            throw ParseError("CIBasis: determinant outside the sector");
        }
    }
    std::sort(dets_.begin(), dets_.end());
    dets_.erase(std::unique(dets_.begin(), dets_.end()), dets_.end());
    index_.reserve(dets_.size());
    for (std::size_t k = 0; k < dets_.size(); ++k) index_.emplace(dets_[k], k);
}

std::optional<std::size_t> CIBasis::find(const Determinant &d) const
{
    auto it = index_.find(d);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

CIBasis enumerate_basis(int norb, int n_alpha, int n_beta)
{
    if (norb < 0 || norb > kMaxOrbitals || n_alpha < 0 || n_beta < 0 || n_alpha > norb ||
        n_beta > norb) {
        throw ParseError("enumerate_basis: counts out of range");
    }
    const auto alphas = enumerate_strings(norb, n_alpha);
    const auto betas = enumerate_strings(norb, n_beta);
    std::vector<Determinant> dets;
    dets.reserve(alphas.size() * betas.size());
    for (Bitmask a : alphas)
        for (Bitmask b : betas) dets.push_back({a, b});
    return CIBasis(norb, n_alpha, n_beta, std::move(dets));
}

Determinant hartree_fock_determinant(int n_alpha, int n_beta)
{
    return {lowest_bits(n_alpha), lowest_bits(n_beta)};
}

double hamiltonian_element(const Determinant &bra, const Determinant &ket, const Hamiltonian &h)
{
    if (popcount(bra.alpha) != popcount(ket.alpha) || popcount(bra.beta) != popcount(ket.beta)) {
        return 0.0;
    }
    const int da = popcount(bra.alpha ^ ket.alpha) / 2;
    const int db = popcount(bra.beta ^ ket.beta) / 2;
    if (da + db > 2) return 0.0;
    if (da + db == 0) return diagonal_element(ket, h);
    if (da == 1 && db == 0) {
        const int p = std::countr_zero(bra.alpha & ~ket.alpha);
        const int q = std::countr_zero(ket.alpha & ~bra.alpha);
        return single_element(ket.alpha, ket.beta, p, q, h);
    }
    if (da == 0 && db == 1) {
        const int p = std::countr_zero(bra.beta & ~ket.beta);
        const int q = std::countr_zero(ket.beta & ~bra.beta);
        return single_element(ket.beta, ket.alpha, p, q, h);
    }
    if (da == 2) return same_spin_double(bra.alpha, ket.alpha, h);
    if (db == 2) return same_spin_double(bra.beta, ket.beta, h);
    const int p = std::countr_zero(bra.alpha & ~ket.alpha);
    const int q = std::countr_zero(ket.alpha & ~bra.alpha);
    const int r = std::countr_zero(bra.beta & ~ket.beta);
    const int s = std::countr_zero(ket.beta & ~bra.beta);
    return excitation_sign(ket.alpha, p, q) * excitation_sign(ket.beta, r, s) * h.eri(p, q, r, s);
}

HamiltonianMatrix::HamiltonianMatrix(const CIBasis &basis, const Hamiltonian &h)
{
    if (basis.norb() != h.norb || basis.n_alpha() != h.n_alpha || basis.n_beta() != h.n_beta) {
        throw ParseError("HamiltonianMatrix: basis sector does not match the Hamiltonian");
    }
    const auto dim = static_cast<Eigen::Index>(basis.size());
    const int norb = basis.norb();
    std::vector<Eigen::Triplet<double>> triplets;
    diagonal_ = VectorXd(dim);
    std::vector<int> occ_a, vir_a, occ_b, vir_b;

    for (Eigen::Index col = 0; col < dim; ++col) {
        const Determinant ket = basis[static_cast<std::size_t>(col)];
        diagonal_(col) = diagonal_element(ket, h);
        triplets.emplace_back(col, col, diagonal_(col));
        auto emit = [&](const Determinant &bra) {
            if (auto row = basis.find(bra)) {
                const double v = hamiltonian_element(bra, ket, h);
                if (v != 0.0) triplets.emplace_back(static_cast<Eigen::Index>(*row), col, v);
            }
        };
        excitations(ket.alpha, norb, occ_a, vir_a);
        excitations(ket.beta, norb, occ_b, vir_b);
        for (int i : occ_a)
            for (int a : vir_a) emit({ket.alpha ^ bit(i) ^ bit(a), ket.beta});
        for (int i : occ_b)
            for (int a : vir_b) emit({ket.alpha, ket.beta ^ bit(i) ^ bit(a)});
        auto same_spin_doubles = [&](const std::vector<int> &occ, const std::vector<int> &vir,
                                     bool alpha) {
            for (std::size_t x = 0; x < occ.size(); ++x)
                for (std::size_t y = x + 1; y < occ.size(); ++y)
                    for (std::size_t u = 0; u < vir.size(); ++u)
                        for (std::size_t w = u + 1; w < vir.size(); ++w) {
                            const Bitmask flip = bit(occ[x]) | bit(occ[y]) | bit(vir[u]) | bit(vir[w]);
                            emit(alpha ? Determinant{ket.alpha ^ flip, ket.beta}
                                       : Determinant{ket.alpha, ket.beta ^ flip});
                        }
        };
        same_spin_doubles(occ_a, vir_a, true);
        same_spin_doubles(occ_b, vir_b, false);
        for (int i : occ_a)
            for (int a : vir_a)
                for (int j : occ_b)
                    for (int b : vir_b) emit({ket.alpha ^ bit(i) ^ bit(a), ket.beta ^ bit(j) ^ bit(b)});
    }
    matrix_.resize(dim, dim);
    matrix_.setFromTriplets(triplets.begin(), triplets.end());
    matrix_.makeCompressed();
}

VectorXcd HamiltonianMatrix::apply(const VectorXcd &x) const
{
    const VectorXd re = matrix_ * x.real();
    const VectorXd im = matrix_ * x.imag();
    VectorXcd out(x.size());
    out.real() = re;
    out.imag() = im;
    return out;
}

CIVector apply_hamiltonian(const CIVector &v, const Hamiltonian &h)
{
    if (static_cast<std::size_t>(v.coeffs.size()) != v.basis.size()) {
        throw ParseError("apply_hamiltonian: coefficient count does not match the basis");
    }
    HamiltonianMatrix hm(v.basis, h);
    return {v.basis, hm.apply(v.coeffs)};
}

GroundState fci_ground_state(const Hamiltonian &h, const DavidsonOptions &options)
{
    CIBasis basis = enumerate_basis(h.norb, h.n_alpha, h.n_beta);
    HamiltonianMatrix hm(basis, h);
    EigenPair eig = davidson_lowest(hm, options);
    return {eig.energy, {std::move(basis), std::move(eig.vector)}, eig.converged, eig.residual_norm};
}

// ---------------------------------------------------------------------------
// CISD

namespace {

std::vector<Bitmask> strings_up_to_doubles(Bitmask reference, int norb, std::vector<int> &rank)
{
    std::vector<int> occ, vir;
    excitations(reference, norb, occ, vir);
    std::vector<Bitmask> out{reference};
    rank = {0};
    for (int i : occ)
        for (int a : vir) {
            out.push_back(reference ^ bit(i) ^ bit(a));
            rank.push_back(1);
        }
    for (std::size_t x = 0; x < occ.size(); ++x)
        for (std::size_t y = x + 1; y < occ.size(); ++y)
            for (std::size_t u = 0; u < vir.size(); ++u)
                for (std::size_t w = u + 1; w < vir.size(); ++w) {
                    out.push_back(reference ^ bit(occ[x]) ^ bit(occ[y]) ^ bit(vir[u]) ^ bit(vir[w]));
                    rank.push_back(2);
                }
    return out;
}

} // namespace

CISDResult cisd_ground_state(const Hamiltonian &h, const DavidsonOptions &options)
{
    if (h.n_alpha != h.n_beta) {
        throw ParseError("cisd_ground_state: closed-shell reference required (n_alpha == n_beta)");
    }
    const Determinant hf = hartree_fock_determinant(h.n_alpha, h.n_beta);
    std::vector<int> rank_a, rank_b;
    const auto alphas = strings_up_to_doubles(hf.alpha, h.norb, rank_a);
    const auto betas = strings_up_to_doubles(hf.beta, h.norb, rank_b);
    std::vector<Determinant> dets;
    for (std::size_t x = 0; x < alphas.size(); ++x)
        for (std::size_t y = 0; y < betas.size(); ++y)
            if (rank_a[x] + rank_b[y] <= 2) dets.push_back({alphas[x], betas[y]});
    CIBasis basis(h.norb, h.n_alpha, h.n_beta, std::move(dets));
    HamiltonianMatrix hm(basis, h);
    EigenPair eig = davidson_lowest(hm, options);
    VectorXd coeffs = eig.vector / eig.vector.norm();
    const std::size_t hf_index = *basis.find(hf);
    if (coeffs(static_cast<Eigen::Index>(hf_index)) < 0.0) coeffs = -coeffs;
    CIVector state{std::move(basis), std::move(coeffs)};
    CISDCoefficients c = extract_cisd_coefficients(state);
    return {eig.energy, std::move(state), std::move(c), eig.converged};
}

CISDCoefficients extract_cisd_coefficients(const CIVector &v)
{
    const CIBasis &basis = v.basis;
    if (basis.n_alpha() != basis.n_beta()) {
        throw ParseError("extract_cisd_coefficients: closed-shell reference required");
    }
    const int nocc = basis.n_alpha();
    const int nvir = basis.norb() - nocc;
    const Determinant hf = hartree_fock_determinant(nocc, nocc);
    auto coef = [&](const Determinant &d) {
        auto k = basis.find(d);
        return k ? v.coeffs(static_cast<Eigen::Index>(*k)) : 0.0;
    };
    CISDCoefficients c;
    c.c0 = coef(hf);
    c.c1 = MatrixXd::Zero(nocc, nvir);
    c.c2 = Tensor4(nocc, nocc, nvir, nvir);
    for (int i = 0; i < nocc; ++i)
        for (int a = 0; a < nvir; ++a) {
            const int pa = nocc + a;
            const Bitmask ex = hf.alpha ^ bit(i) ^ bit(pa);
            const double sign = excitation_sign(hf.alpha, pa, i);
            const double alpha_part = coef({ex, hf.beta}) * sign;
            const double beta_part = coef({hf.alpha, ex}) * sign;
            c.c1(i, a) = 0.5 * (alpha_part + beta_part);
        }
    for (int i = 0; i < nocc; ++i)
        for (int j = 0; j < nocc; ++j)
            for (int a = 0; a < nvir; ++a)
                for (int b = 0; b < nvir; ++b) {
                    const int pa = nocc + a;
                    const int pb = nocc + b;
                    const Determinant d{hf.alpha ^ bit(i) ^ bit(pa), hf.beta ^ bit(j) ^ bit(pb)};
                    const double sign = excitation_sign(hf.alpha, pa, i) * excitation_sign(hf.beta, pb, j);
                    // E_ai E_bj and E_bj E_ai both reach d: coefficient = 2 c2_ijab · sign
                    c.c2(i, j, a, b) = 0.5 * sign * coef(d);
                }
    return c;
}

Amplitudes cisd_to_t_amplitudes(const CISDCoefficients &c)
{
    if (!(std::abs(c.c0) >= 1e-8)) {
        throw NumericalError("cisd_to_t_amplitudes: |c0| < 1e-8, reference weight too small");
    }
    const int nocc = static_cast<int>(c.c1.rows());
    const int nvir = static_cast<int>(c.c1.cols());
    Amplitudes t(nocc, nvir);
    t.t1 = c.c1 / c.c0;
    for (int i = 0; i < nocc; ++i)
        for (int j = 0; j < nocc; ++j)
            for (int a = 0; a < nvir; ++a)
                for (int b = 0; b < nvir; ++b)
                    t.t2(i, j, a, b) = c.c2(i, j, a, b) / c.c0 - 0.5 * t.t1(i, a) * t.t1(j, b);
    return t;
}

} // namespace lucj
