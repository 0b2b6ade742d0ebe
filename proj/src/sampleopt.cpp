// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/sampleopt.hpp"

#include <limits>

#include "lucj/linalg.hpp"

namespace lucj {

namespace {

std::vector<std::pair<int, int>> upper_entries(const PairSet &pairs)
{
    std::vector<std::pair<int, int>> out;
    for (auto [p, q] : pairs)
        if (p <= q) out.emplace_back(p, q);
    return out;
}

} // namespace

AnsatzParameterization::AnsatzParameterization(int norb, int nreps, bool has_final,
                                               const std::optional<ConnectivityMask> &mask)
    : norb_(norb), nreps_(nreps), has_final_(has_final)
{
    if (norb < 0 || norb > kMaxOrbitals || nreps < 0) throw ParseError("AnsatzParameterization: invalid shape");
    if (mask && mask->norb != norb) throw ParseError("AnsatzParameterization: mask orbital count mismatch");
    same_ = upper_entries(mask ? symmetrize(mask->same_spin, norb) : all_pairs(norb));
    opposite_ = upper_entries(mask ? symmetrize(mask->opposite_spin, norb) : all_pairs(norb));
}

std::size_t AnsatzParameterization::size() const
{
    const std::size_t ndof = antihermitian_dof(norb_);
    return nreps_ * (ndof + same_.size() + opposite_.size()) + (has_final_ ? ndof : 0);
}

VectorXd AnsatzParameterization::pack(const UCJOperator &op) const
{
    if (op.norb != norb_ || static_cast<int>(op.reps.size()) != nreps_ || op.final_rotation.has_value() != has_final_) {
        throw ParseError("AnsatzParameterization::pack: operator shape mismatch");
    }
    VectorXd x(static_cast<Eigen::Index>(size()));
    const std::size_t ndof = antihermitian_dof(norb_);
    std::size_t pos = 0;
    for (const auto &layer : op.reps) {
        pack_antihermitian(logm_unitary(layer.U), {x.data() + pos, ndof});
        pos += ndof;
        for (auto [p, q] : same_) x(pos++) = layer.J_same(p, q);
        for (auto [p, q] : opposite_) x(pos++) = layer.J_opposite(p, q);
    }
    if (has_final_) pack_antihermitian(logm_unitary(*op.final_rotation), {x.data() + pos, ndof});
    return x;
}

UCJOperator AnsatzParameterization::unpack(std::span<const double> x) const
{
    if (x.size() != size()) throw ParseError("AnsatzParameterization::unpack: wrong parameter count");
    const std::size_t ndof = antihermitian_dof(norb_);
    UCJOperator op;
    op.norb = norb_;
    std::size_t pos = 0;
    auto read_j = [&](const std::vector<std::pair<int, int>> &entries) {
        MatrixXd j = MatrixXd::Zero(norb_, norb_);
        for (auto [p, q] : entries) {
            j(p, q) = x[pos];
            j(q, p) = x[pos];
            ++pos;
        }
        return j;
    };
    for (int r = 0; r < nreps_; ++r) {
        UCJLayer layer;
        layer.U = expm_antihermitian(unpack_antihermitian(x.subspan(pos, ndof), norb_));
        pos += ndof;
        layer.J_same = read_j(same_);
        layer.J_opposite = read_j(opposite_);
        op.reps.push_back(std::move(layer));
    }
    if (has_final_) op.final_rotation = expm_antihermitian(unpack_antihermitian(x.subspan(pos, ndof), norb_));
    return op;
}

ObjectiveValue sample_energy_objective(const UCJOperator &op, const Hamiltonian &h, const StateVector &reference,
                                       const SampleOptConfig &config)
{
    if (config.shots < 1) throw ParseError("sample_energy_objective: shots must be positive");
    const StateVector state = prepare_ucj_state(op, reference);
    const FilterResult filtered = filter_valid(sample(state, config.shots, config.sampling_seed), h.n_alpha, h.n_beta);
    ObjectiveValue out;
    if (filtered.valid.draws.empty()) {
        out.energy = std::numeric_limits<double>::infinity();
        out.empty_subspace = true;
        return out;
    }
    const CIBasis basis = build_subspace(filtered.valid, h.norb, h.n_alpha, h.n_beta);
    out.dimension = basis.size();
    out.energy = qsci_energy(basis, h, config.davidson_tol).energy;
    return out;
}

SampleOptResult optimize_sample_energy(const UCJOperator &ucj_init, const Hamiltonian &h,
                                       const StateVector &reference, const SampleOptConfig &config)
{
    validate(config.optimizer);
    const AnsatzParameterization param(ucj_init.norb, static_cast<int>(ucj_init.reps.size()),
                                       ucj_init.final_rotation.has_value(), config.mask);
    SampleOptResult result;
    result.op = ucj_init;
    result.initial_objective = sample_energy_objective(ucj_init, h, reference, config).energy;
    result.final_objective = result.initial_objective;

    const VectorXd x0 = param.pack(ucj_init);
    ObjectiveHandle handle(
        [&](const VectorXd &x) {
            return sample_energy_objective(param.unpack({x.data(), static_cast<std::size_t>(x.size())}), h,
                                           reference, config)
                .energy;
        },
        config.optimizer.total_budget);
    result.search = pattern_search_minimize(handle, x0, config.optimizer);
    if (result.search.evaluations > 0 && result.search.f < result.initial_objective) {
        result.op = param.unpack({result.search.x.data(), static_cast<std::size_t>(result.search.x.size())});
        result.final_objective = result.search.f;
    }
    return result;
}

} // namespace lucj
