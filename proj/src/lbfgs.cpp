// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "lucj/numopt.hpp"

namespace lucj {

std::string_view to_string(LbfgsStatus status)
{
    switch (status) {
    case LbfgsStatus::converged: return "converged";
    case LbfgsStatus::max_iter: return "max_iter";
    case LbfgsStatus::line_search_failure: return "line_search_failure";
    }
    return "unknown";
}

namespace {

struct Point {
    double alpha;
    double f;
    double slope;
};

// Minimizer of the cubic interpolating (a, b), clamped into the interval's interior.
double interpolate(const Point &a, const Point &b)
{
    const double lo = std::min(a.alpha, b.alpha);
    const double hi = std::max(a.alpha, b.alpha);
    const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.slope * b.slope;
    double t = 0.5 * (a.alpha + b.alpha);
    if (disc >= 0.0) {
        const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
        const double denom = b.slope - a.slope + 2.0 * d2;
        if (denom != 0.0) t = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
    }
    const double margin = 0.1 * (hi - lo);
    if (!std::isfinite(t) || t < lo + margin || t > hi - margin) t = 0.5 * (lo + hi);
    return t;
}

class LineSearch {
public:
    LineSearch(const ValueAndGradient &fg, const LbfgsOptions &opt, const VectorXd &x, double f0,
               double slope0, const VectorXd &dir, int &evaluations)
        : fg_(fg), opt_(opt), x_(x), dir_(dir), f0_(f0), slope0_(slope0), evaluations_(evaluations)
    {
    }

    // Strong Wolfe search (Nocedal & Wright, Alg. 3.5/3.6). On success the
    // accepted point is left in x_new, f_new, g_new.
    bool run(double alpha0)
    {
        Point prev{0.0, f0_, slope0_};
        double alpha = alpha0;
        for (int k = 0; k < opt_.max_line_search; ++k) {
            const Point cur = evaluate(alpha);
            if (!std::isfinite(cur.f) || cur.f > f0_ + opt_.c1 * alpha * slope0_ ||
                (k > 0 && cur.f >= prev.f)) {
                return zoom(prev, cur, opt_.max_line_search - k - 1);
            }
            if (std::abs(cur.slope) <= -opt_.c2 * slope0_) return true;
            if (cur.slope >= 0.0) return zoom(cur, prev, opt_.max_line_search - k - 1);
            prev = cur;
            alpha *= 2.0;
        }
        return false;
    }

    VectorXd x_new, g_new;
    double f_new = 0.0;

private:
    Point evaluate(double alpha)
    {
        x_new = x_ + alpha * dir_;
        g_new.resize(x_.size());
        f_new = fg_(x_new, g_new);
        ++evaluations_;
        if (!g_new.allFinite()) f_new = std::numeric_limits<double>::infinity();
        return {alpha, f_new, std::isfinite(f_new) ? g_new.dot(dir_) : 0.0};
    }

    bool zoom(Point lo, Point hi, int budget)
    {
        for (int k = 0; k < budget; ++k) {
            const double alpha = std::isfinite(hi.f) ? interpolate(lo, hi) : 0.5 * (lo.alpha + hi.alpha);
            const Point cur = evaluate(alpha);
            if (!std::isfinite(cur.f) || cur.f > f0_ + opt_.c1 * alpha * slope0_ || cur.f >= lo.f) {
                hi = cur;
            } else {
                if (std::abs(cur.slope) <= -opt_.c2 * slope0_) return true;
                if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                lo = cur;
            }
            if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, lo.alpha)) break;
        }
        // Accept the best sufficient-decrease point found, if any.
        if (lo.alpha > 0.0 && lo.f < f0_) {
            evaluate(lo.alpha);
            return std::isfinite(f_new) && f_new < f0_;
        }
        return false;
    }

    const ValueAndGradient &fg_;
    const LbfgsOptions &opt_;
    const VectorXd &x_;
    const VectorXd &dir_;
    double f0_;
    double slope0_;
    int &evaluations_;
};

} // namespace

LbfgsResult lbfgs_minimize(const ValueAndGradient &fg, const VectorXd &x0, const LbfgsOptions &options)
{
    LbfgsResult result;
    result.x = x0;
    VectorXd g(x0.size());
    result.f = fg(result.x, g);
    result.evaluations = 1;
    if (!std::isfinite(result.f) || !g.allFinite()) {
        throw NumericalError("lbfgs_minimize: non-finite objective or gradient at x0");
    }
    result.history.push_back(result.f);
    if (x0.size() == 0 || g.lpNorm<Eigen::Infinity>() <= options.grad_tol) {
        result.status = LbfgsStatus::converged;
        return result;
    }

    std::deque<VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;
    for (int iter = 0; iter < options.max_iter; ++iter) {
        // Two-loop recursion.
        VectorXd q = g;
        std::vector<double> alphas(s_hist.size());
        for (std::size_t k = s_hist.size(); k-- > 0;) {
            alphas[k] = rho_hist[k] * s_hist[k].dot(q);
            q -= alphas[k] * y_hist[k];
        }
        if (!s_hist.empty()) q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * y_hist[k].dot(q);
            q += (alphas[k] - beta) * s_hist[k];
        }
        VectorXd dir = -q;
        double slope = g.dot(dir);
        if (!(slope < 0.0)) {
            // Curvature information went bad; restart from steepest descent.
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            dir = -g;
            slope = -g.squaredNorm();
        }
        const double alpha0 = s_hist.empty() ? std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>()) : 1.0;

        LineSearch ls(fg, options, result.x, result.f, slope, dir, result.evaluations);
        if (!ls.run(alpha0)) {
            result.status = LbfgsStatus::line_search_failure;
            return result;
        }
        const VectorXd s = ls.x_new - result.x;
        const VectorXd y = ls.g_new - g;
        const double f_prev = result.f;
        result.x = ls.x_new;
        result.f = ls.f_new;
        g = ls.g_new;
        result.iterations = iter + 1;
        result.history.push_back(result.f);

        const double sy = s.dot(y);
        if (sy > 1e-14 * s.norm() * y.norm()) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > options.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        if (g.lpNorm<Eigen::Infinity>() <= options.grad_tol ||
            (f_prev - result.f) <= options.f_tol * std::max(std::abs(f_prev), std::abs(result.f))) {
            result.status = LbfgsStatus::converged;
            return result;
        }
    }
    result.status = LbfgsStatus::max_iter;
    return result;
}

LbfgsResult lbfgs_minimize(const std::function<double(const VectorXd &)> &f,
                           const std::function<VectorXd(const VectorXd &)> &grad, const VectorXd &x0,
                           const LbfgsOptions &options)
{
    return lbfgs_minimize(
        [&](const VectorXd &x, VectorXd &g) {
            g = grad(x);
            return f(x);
        },
        x0, options);
}

} // namespace lucj
