#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace fermivqe {

/// Objective callback: fills the gradient and returns the value.
using ObjectiveFn = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Invoked after each accepted step with (iteration, x, value, gradient).
using IterationCallback =
    std::function<void(int, const Eigen::VectorXd&, double, const Eigen::VectorXd&)>;

struct BfgsOptions {
    int max_iterations = 150;
    double grad_tolerance = 1e-8;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    int max_line_evals = 60;
};

enum class BfgsStatus { converged, iteration_limit, line_search_failure };

struct BfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    int evaluations = 0;
    BfgsStatus status = BfgsStatus::iteration_limit;
};

namespace detail {

struct LinePoint {
    double alpha = 0.0;
    double value = 0.0;
    double slope = 0.0;
};

/// Minimizer of the cubic matching value and slope at both points.
/// NaN when the interpolation degenerates.
inline double cubic_minimizer(const LinePoint& a, const LinePoint& b) {
    const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.slope * b.slope;
    if (!(disc >= 0)) return std::numeric_limits<double>::quiet_NaN();
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom == 0) return std::numeric_limits<double>::quiet_NaN();
    return b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
}

}  // namespace detail

/// Quasi-Newton minimization with the inverse-Hessian BFGS update and a
/// strong-Wolfe line search (bracketing plus cubic-interpolated zoom with a
/// bisection safeguard). One iteration is one accepted step; evaluations
/// inside the line search are counted separately.
inline BfgsResult bfgs_minimize(const Eigen::VectorXd& x0, const ObjectiveFn& fg,
                                const BfgsOptions& opts = {},
                                const IterationCallback& on_iteration = {}) {
    const Eigen::Index n = x0.size();
    BfgsResult res;
    res.x = x0;
    Eigen::VectorXd g(n);
    res.value = fg(res.x, g);
    res.evaluations = 1;
    if (!std::isfinite(res.value) || !g.allFinite())
        throw std::runtime_error("bfgs_minimize: non-finite objective at the start point");
    res.grad_norm = g.lpNorm<Eigen::Infinity>();
    if (res.grad_norm <= opts.grad_tolerance) {
        res.status = BfgsStatus::converged;
        return res;
    }

    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd d(n), x_new(n), g_new(n), s(n), y(n), Hy(n);

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        d.noalias() = -(H * g);
        double slope0 = g.dot(d);
        if (!(slope0 < 0)) {
            H.setIdentity();
            d = -g;
            slope0 = g.dot(d);
        }

        const double f0 = res.value;
        const double c1 = opts.wolfe_c1, c2 = opts.wolfe_c2;
        int budget = opts.max_line_evals;

        const auto phi = [&](double alpha) {
            x_new = res.x + alpha * d;
            const double v = fg(x_new, g_new);
            ++res.evaluations;
            return detail::LinePoint{alpha, v, g_new.dot(d)};
        };
        const auto sufficient = [&](const detail::LinePoint& e) {
            return e.value <= f0 + c1 * e.alpha * slope0;
        };
        const auto curvature_ok = [&](const detail::LinePoint& e) {
            return std::abs(e.slope) <= -c2 * slope0;
        };

        bool accepted = false;
        detail::LinePoint acc;

        const auto zoom = [&](detail::LinePoint lo, detail::LinePoint hi) {
            while (budget-- > 0) {
                const double a_min = std::min(lo.alpha, hi.alpha);
                const double a_max = std::max(lo.alpha, hi.alpha);
                const double width = a_max - a_min;
                if (width <= 1e-16 * std::max(1.0, a_max)) return;
                double trial = detail::cubic_minimizer(lo, hi);
                if (!std::isfinite(trial) || trial < a_min + 0.1 * width ||
                    trial > a_max - 0.1 * width)
                    trial = 0.5 * (a_min + a_max);
                const auto e = phi(trial);
                if (!sufficient(e) || e.value >= lo.value) {
                    hi = e;
                } else {
                    if (curvature_ok(e)) {
                        accepted = true;
                        acc = e;
                        return;
                    }
                    if (e.slope * (hi.alpha - lo.alpha) >= 0) hi = lo;
                    lo = e;
                }
            }
        };

        detail::LinePoint prev{0.0, f0, slope0};
        double alpha = 1.0;
        while (budget-- > 0) {
            const auto e = phi(alpha);
            if (!sufficient(e) || (prev.alpha > 0 && e.value >= prev.value)) {
                zoom(prev, e);
                break;
            }
            if (curvature_ok(e)) {
                accepted = true;
                acc = e;
                break;
            }
            if (e.slope >= 0) {
                zoom(e, prev);
                break;
            }
            prev = e;
            alpha *= 2.0;
        }

        if (!accepted) {
            res.status = BfgsStatus::line_search_failure;
            return res;
        }

        s = x_new - res.x;
        y = g_new - g;
        const double ys = y.dot(s);
        res.x.swap(x_new);
        res.value = acc.value;
        g.swap(g_new);
        res.grad_norm = g.lpNorm<Eigen::Infinity>();
        ++res.iterations;
        if (on_iteration) on_iteration(res.iterations, res.x, res.value, g);
        if (res.grad_norm <= opts.grad_tolerance) {
            res.status = BfgsStatus::converged;
            return res;
        }

        if (ys > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / ys;
            Hy.noalias() = H * y;
            const double yHy = y.dot(Hy);
            H.noalias() -= rho * (s * Hy.transpose() + Hy * s.transpose());
            H.noalias() += (rho * rho * yHy + rho) * (s * s.transpose());
        }
    }
    res.status = BfgsStatus::iteration_limit;
    return res;
}

}  // namespace fermivqe
