// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "io_util.hpp"
#include "lucj/linalg.hpp"
#include "lucj/numopt.hpp"

namespace lucj {

ObjectiveHandle::ObjectiveHandle(Function f, int budget) : f_(std::move(f)), budget_(std::max(0, budget)) {}

double ObjectiveHandle::operator()(const VectorXd &x)
{
    if (exhausted()) throw Error("objective evaluation budget exhausted");
    const double value = f_(x);
    const double prev_best = trace_.empty() ? std::numeric_limits<double>::infinity() : trace_.back().best;
    const bool improved = trace_.empty() ? !std::isnan(value) : value < prev_best;
    TraceEntry entry;
    entry.evaluation = evaluations();
    entry.value = value;
    entry.best = improved ? value : prev_best;
    entry.incumbent = improved;
    entry.x = x;
    trace_.push_back(std::move(entry));
    return value;
}

void validate(const PatternSearchConfig &c)
{
    if (c.total_budget < 0 || c.subproblem_size < 1 || c.subproblem_budget < 1 || !(c.initial_mesh > 0.0) ||
        !(c.mesh_contract > 0.0 && c.mesh_contract < 1.0) || !(c.mesh_expand >= 1.0) || !(c.mesh_floor > 0.0)) {
        throw ParseError("pattern search: invalid configuration");
    }
}

PatternSearchResult pattern_search_minimize(ObjectiveHandle &f, const VectorXd &x0,
                                            const PatternSearchConfig &config)
{
    validate(config);
    const int budget = std::min(config.total_budget, f.budget() - f.evaluations());
    const int start = f.evaluations();
    auto spent = [&] { return f.evaluations() - start; };

    PatternSearchResult result;
    result.x = x0;
    result.f = std::numeric_limits<double>::quiet_NaN();
    if (budget <= 0) return result;

    result.f = f(x0);
    if (!std::isfinite(result.f)) throw NumericalError("pattern_search_minimize: non-finite objective at x0");

    const int dim = static_cast<int>(x0.size());
    const int sub_size = std::min(config.subproblem_size, dim);
    VectorXd mesh = VectorXd::Constant(dim, config.initial_mesh);
    // Last successful direction per coordinate, polled first.
    VectorXd direction = VectorXd::Ones(dim);
    std::mt19937_64 rng(config.seed);
    std::vector<int> coords;
    std::deque<int> pending;

    while (dim > 0 && spent() < budget) {
        if (mesh.maxCoeff() <= config.mesh_floor) break;
        // Subsets are drawn from a seeded shuffle of the coordinates not
        // already waiting; coordinates left unpolled by a subproblem stay at
        // the front of the queue so every coordinate is visited evenly.
        if (static_cast<int>(pending.size()) < sub_size) {
            std::vector<char> waiting(dim, 0);
            for (int c : pending) waiting[c] = 1;
            coords.clear();
            for (int c = 0; c < dim; ++c)
                if (!waiting[c]) coords.push_back(c);
            for (std::size_t k = 0; k + 1 < coords.size(); ++k) {
                const std::size_t j = k + static_cast<std::size_t>(uniform01(rng) * (coords.size() - k));
                std::swap(coords[k], coords[std::min(j, coords.size() - 1)]);
            }
            pending.insert(pending.end(), coords.begin(), coords.end());
        }
        const std::vector<int> subset(pending.begin(), pending.begin() + sub_size);
        std::vector<char> polled(dim, 0);
        ++result.subproblems;

        // Coordinate poll: a coordinate's mesh expands when one of its two
        // directions improves and contracts when both fail.
        int sub_spent = 0;
        bool active = true;
        while (active && sub_spent < config.subproblem_budget && spent() < budget) {
            active = false;
            for (int c : subset) {
                if (mesh(c) <= config.mesh_floor) continue;
                active = true;
                polled[c] = 1;
                bool improved = false;
                bool complete = true;
                for (double sign : {direction(c), -direction(c)}) {
                    if (sub_spent >= config.subproblem_budget || spent() >= budget) {
                        complete = false;
                        break;
                    }
                    VectorXd trial = result.x;
                    trial(c) += sign * mesh(c);
                    const double value = f(trial);
                    ++sub_spent;
                    if (value < result.f) {
                        result.x = std::move(trial);
                        result.f = value;
                        direction(c) = sign;
                        improved = true;
                        break;
                    }
                }
                if (improved) {
                    mesh(c) *= config.mesh_expand;
                } else if (complete) {
                    mesh(c) = std::max(config.mesh_floor, mesh(c) * config.mesh_contract);
                }
                if (sub_spent >= config.subproblem_budget || spent() >= budget) break;
            }
        }
        std::erase_if(pending, [&](int c) { return polled[c] || mesh(c) <= config.mesh_floor; });
    }
    result.evaluations = spent();
    result.trace.assign(f.trace().begin() + start, f.trace().end());
    return result;
}

void write_trace(const std::vector<TraceEntry> &trace, std::ostream &out)
{
    out << "# evaluation value best incumbent\n";
    for (const auto &e : trace) {
        out << e.evaluation << ' ' << io::format_double(e.value) << ' ' << io::format_double(e.best) << ' '
            << (e.incumbent ? 1 : 0) << '\n';
    }
}

} // namespace lucj
