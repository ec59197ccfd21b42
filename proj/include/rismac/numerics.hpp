/*
   Copyright 2026 The rismac Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rismac {

/// Fixed-order pairwise summation; the result depends only on the values and
/// their order, never on how they were produced.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) {
            s += x;
        }
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Roots of P_n by Newton iteration from the Chebyshev-like initial guess.
GaussLegendreRule make_gauss_legendre(std::size_t n);

/// Shared 15-point rule used by the adaptive integrator.
const GaussLegendreRule& gauss_legendre_15();

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

template <class F>
double gauss_legendre_panel(F& f, double a, double b, const GaussLegendreRule& rule) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

/// Adaptive bisection of [a, b]: a panel is accepted when the 15-point
/// estimate and the sum of its two halves agree to the panel's share of
/// abs_tol. Panels that hit max_depth are accepted and flagged.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    int max_depth = 48) {
    const GaussLegendreRule& rule = gauss_legendre_15();
    const std::size_t per_panel = rule.nodes.size();
    QuadratureResult out;
    if (!(b > a)) {
        return out;
    }

    struct Panel {
        double a, b, whole, tol;
        int depth;
    };
    std::vector<Panel> stack;
    stack.push_back({a, b, gauss_legendre_panel(f, a, b, rule), abs_tol, 0});
    out.evaluations += per_panel;

    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        const double left = gauss_legendre_panel(f, p.a, mid, rule);
        const double right = gauss_legendre_panel(f, mid, p.b, rule);
        out.evaluations += 2 * per_panel;
        const double err = std::abs(left + right - p.whole);
        if (err <= p.tol || p.depth >= max_depth || !(mid > p.a && mid < p.b)) {
            out.value += left + right;
            out.error += err;
            if (err > p.tol) {
                out.converged = false;
            }
            continue;
        }
        stack.push_back({mid, p.b, right, 0.5 * p.tol, p.depth + 1});
        stack.push_back({p.a, mid, left, 0.5 * p.tol, p.depth + 1});
    }
    return out;
}

/// For a predicate false at lo and true at hi, narrows the bracket until the
/// endpoints are adjacent doubles (or max_iter halvings). Returns {lo, hi}
/// with pred(lo) false and pred(hi) true.
template <class Pred>
std::pair<double, double> bisect_boundary(Pred&& pred, double lo, double hi, int max_iter = 2000) {
    for (int i = 0; i < max_iter; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {lo, hi};
}

/// Plain bisection for a sign change of f on [lo, hi]; stops once the
/// bracket is narrower than xtol.
template <class F>
double bisect_root(F&& f, double lo, double hi, double xtol, int max_iter = 400) {
    const bool lo_negative = f(lo) < 0.0;
    for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if ((f(mid) < 0.0) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace rismac
