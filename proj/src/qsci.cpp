// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include "lucj/qsci.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "io_util.hpp"
#include "lucj/linalg.hpp"

namespace lucj {

void validate(const QsciConfig &c)
{
    if (c.batches < 1) throw ParseError("qsci: batches must be at least 1");
    if (c.batch_size < 1 || c.batch_size > c.total_samples) {
        throw ParseError("qsci: batch_size must lie in [1, total_samples]");
    }
    if (!(c.davidson_tol > 0.0)) throw ParseError("qsci: davidson_tol must be positive");
}

FilterResult filter_valid(const SampleSet &samples, int n_alpha, int n_beta)
{
    FilterResult out;
    out.valid.norb = samples.norb;
    out.valid.seed = samples.seed;
    out.valid.source_size = samples.source_size;
    out.total = samples.draws.size();
    const Bitmask range = lowest_bits(samples.norb);
    for (const auto &d : samples.draws) {
        if ((d.alpha & ~range) || (d.beta & ~range)) continue;
        if (popcount(d.alpha) == n_alpha && popcount(d.beta) == n_beta) out.valid.draws.push_back(d);
    }
    out.retained_fraction = out.total ? static_cast<double>(out.valid.draws.size()) / static_cast<double>(out.total) : 0.0;
    return out;
}

std::vector<Bitmask> single_spin_strings(const SampleSet &samples, int n_alpha, int n_beta)
{
    std::vector<Bitmask> strings;
    for (const auto &d : samples.draws) {
        if (popcount(d.alpha) == n_alpha) strings.push_back(d.alpha);
        if (popcount(d.beta) == n_beta) strings.push_back(d.beta);
    }
    std::sort(strings.begin(), strings.end());
    strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
    return strings;
}

CIBasis build_subspace(const SampleSet &samples, int norb, int n_alpha, int n_beta)
{
    if (n_alpha != n_beta) throw Error("build_subspace: symmetrized subspaces need n_alpha == n_beta");
    const auto strings = single_spin_strings(samples, n_alpha, n_beta);
    if (strings.empty()) throw Error("build_subspace: no valid single-spin strings");
    std::vector<Determinant> dets;
    dets.reserve(strings.size() * strings.size());
    for (Bitmask a : strings)
        for (Bitmask b : strings) dets.push_back({a, b});
    return CIBasis(norb, n_alpha, n_beta, std::move(dets));
}

QsciEnergy qsci_energy(const CIBasis &basis, const Hamiltonian &h, double davidson_tol)
{
    if (basis.empty()) throw Error("qsci_energy: empty basis");
    DavidsonOptions options;
    options.tol = davidson_tol;
    const HamiltonianMatrix hm(basis, h);
    EigenPair eig = davidson_lowest(hm, options);
    return {eig.energy, CIVector{basis, std::move(eig.vector)}, eig.converged};
}

int worker_threads(int requested)
{
    if (requested > 0) return requested;
    if (const char *env = std::getenv("LUCJ_NUM_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

QsciResult batched_qsci(const SampleSet &samples, const Hamiltonian &h, const QsciConfig &config)
{
    if (config.batches < 1) throw ParseError("qsci: batches must be at least 1");
    if (config.batch_size < 1) throw ParseError("qsci: batch_size must be positive");
    const int nbatch = config.batches;
    const std::size_t n = samples.draws.size();
    const std::size_t take = std::min(config.batch_size, n);

    QsciResult result;
    result.batches.resize(nbatch);
    std::vector<std::optional<CIVector>> vectors(nbatch);

    auto run_batch = [&](int b) {
        BatchRecord &rec = result.batches[b];
        rec.index = b;
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(b)};
        std::mt19937_64 rng(seq);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        SampleSet batch;
        batch.norb = samples.norb;
        batch.seed = config.seed;
        for (std::size_t k = 0; k < take; ++k) {
            const std::size_t j = std::min(n - 1, k + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n - k)));
            std::swap(order[k], order[j]);
            batch.draws.push_back(samples.draws[order[k]]);
        }
        rec.drawn = batch.draws.size();
        FilterResult filtered = filter_valid(batch, h.n_alpha, h.n_beta);
        rec.valid = filtered.valid.draws.size();
        if (config.inject_hartree_fock) filtered.valid.draws.push_back(hartree_fock_determinant(h.n_alpha, h.n_beta));
        if (filtered.valid.draws.empty()) return;
        const CIBasis basis = build_subspace(filtered.valid, h.norb, h.n_alpha, h.n_beta);
        rec.strings = single_spin_strings(filtered.valid, h.n_alpha, h.n_beta).size();
        rec.dimension = basis.size();
        QsciEnergy e = qsci_energy(basis, h, config.davidson_tol);
        rec.energy = e.energy;
        rec.converged = e.converged;
        rec.included = true;
        vectors[b] = std::move(e.vector);
    };

    const int nthreads = std::min(worker_threads(config.threads), nbatch);
    if (nthreads <= 1) {
        for (int b = 0; b < nbatch; ++b) run_batch(b);
    } else {
        std::atomic<int> next{0};
        std::vector<std::exception_ptr> errors(nthreads);
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int b = next++; b < nbatch; b = next++) run_batch(b);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto &th : pool) th.join();
        for (auto &e : errors)
            if (e) std::rethrow_exception(e);
    }

    double sum = 0.0;
    int count = 0;
    result.min = std::numeric_limits<double>::infinity();
    result.max = -std::numeric_limits<double>::infinity();
    int best = -1;
    for (const auto &rec : result.batches) {
        if (!rec.included) {
            ++result.excluded;
            continue;
        }
        sum += rec.energy;
        ++count;
        if (rec.energy < result.min) {
            result.min = rec.energy;
            best = rec.index;
        }
        result.max = std::max(result.max, rec.energy);
    }
    if (count == 0) {
        result.mean = result.min = result.max = std::numeric_limits<double>::quiet_NaN();
    } else {
        result.mean = sum / count;
        result.best_vector = std::move(vectors[best]);
    }
    return result;
}

QsciResult batched_qsci(const StateVector &state, const Hamiltonian &h, const QsciConfig &config)
{
    validate(config);
    return batched_qsci(sample(state, config.total_samples, config.seed), h, config);
}

void write_qsci_report(const QsciResult &result, std::ostream &out)
{
    char buf[64];
    auto energy = [&](double e) {
        std::snprintf(buf, sizeof(buf), "%.10f", e);
        return std::string(buf);
    };
    out << "# batch valid strings dimension energy\n";
    for (const auto &rec : result.batches) {
        out << rec.index << ' ' << rec.valid << ' ' << rec.strings << ' ' << rec.dimension << ' '
            << (rec.included ? energy(rec.energy) : std::string("excluded")) << '\n';
    }
    if (result.empty()) {
        out << "# summary: no batch had valid samples\n";
    } else {
        out << "# summary mean " << energy(result.mean) << " min " << energy(result.min) << " max "
            << energy(result.max) << " excluded " << result.excluded << '\n';
    }
}

} // namespace lucj
