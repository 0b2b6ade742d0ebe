// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "lucj/common.hpp"

namespace lucj {

// ---------------------------------------------------------------------------
// L-BFGS

/// Returns f(x) and writes ∇f(x) into grad (already sized).
using ValueAndGradient = std::function<double(const VectorXd &x, VectorXd &grad)>;

struct LbfgsOptions {
    int max_iter = 100;
    int memory = 10;
    double grad_tol = 1e-8;
    double f_tol = 1e-12;
    int max_line_search = 40;
    /// Strong Wolfe constants.
    double c1 = 1e-4;
    double c2 = 0.9;
};

enum class LbfgsStatus { converged, max_iter, line_search_failure };

std::string_view to_string(LbfgsStatus status);

struct LbfgsResult {
    VectorXd x;
    double f = 0.0;
    LbfgsStatus status = LbfgsStatus::max_iter;
    int iterations = 0;
    int evaluations = 0;
    /// f at x0 followed by f after every accepted step.
    std::vector<double> history;
};

/// Accepted iterates are monotonically non-increasing in f. Throws
/// NumericalError when f or ∇f is non-finite at x0.
LbfgsResult lbfgs_minimize(const ValueAndGradient &fg, const VectorXd &x0,
                           const LbfgsOptions &options = {});

LbfgsResult lbfgs_minimize(const std::function<double(const VectorXd &)> &f,
                           const std::function<VectorXd(const VectorXd &)> &grad, const VectorXd &x0,
                           const LbfgsOptions &options = {});

// ---------------------------------------------------------------------------
// Pattern search

struct TraceEntry {
    int evaluation = 0;
    double value = 0.0;
    /// Best value seen up to and including this evaluation.
    double best = 0.0;
    /// True when this evaluation became the incumbent.
    bool incumbent = false;
    VectorXd x;
};

/// Budgeted objective wrapper; every call is recorded.
class ObjectiveHandle {
public:
    using Function = std::function<double(const VectorXd &)>;

    ObjectiveHandle(Function f, int budget);

    /// Throws Error once the budget is spent.
    double operator()(const VectorXd &x);

    int evaluations() const { return static_cast<int>(trace_.size()); }
    int budget() const { return budget_; }
    bool exhausted() const { return evaluations() >= budget_; }
    const std::vector<TraceEntry> &trace() const { return trace_; }

private:
    Function f_;
    int budget_;
    std::vector<TraceEntry> trace_;
};

struct PatternSearchConfig {
    int total_budget = 500;
    int subproblem_size = 20;
    int subproblem_budget = 20;
    double initial_mesh = 0.1;
    double mesh_contract = 0.5;
    double mesh_expand = 2.0;
    double mesh_floor = 1e-6;
    std::uint64_t seed = 0;
};

/// Throws ParseError on non-positive settings.
void validate(const PatternSearchConfig &config);

struct PatternSearchResult {
    VectorXd x;
    /// NaN when the budget allowed no evaluation.
    double f = 0.0;
    int evaluations = 0;
    int subproblems = 0;
    std::vector<TraceEntry> trace;
};

/// Sequential subproblem pattern search: each subproblem polls ±mesh along a
/// seeded random subset of coordinates, moving opportunistically on strict
/// improvement. Mesh steps are per coordinate. Throws NumericalError when
/// f(x0) is not finite.
PatternSearchResult pattern_search_minimize(ObjectiveHandle &f, const VectorXd &x0,
                                            const PatternSearchConfig &config = {});

/// One line per evaluation: "evaluation value best incumbent".
void write_trace(const std::vector<TraceEntry> &trace, std::ostream &out);

} // namespace lucj
