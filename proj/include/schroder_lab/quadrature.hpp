#pragma once

#include "schroder_lab/algebra.hpp"
#include "schroder_lab/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace schroder_lab {

struct QuadratureResult {
    Real value = 0;
    Real difference = 0;  // |I_L - I_{L-1}| at the last level
    int levels = 0;
    long evaluations = 0;
};

struct TanhSinhOptions {
    Real agreement = 1e-9L;  // successive levels must agree to this (relative to max(1,|I|))
    Real accept = 1e-7L;     // accepted at max_level if the difference is below this
    int max_level = 12;
    int min_level = 3;
    Real t_max = 4.5L;
};

// Double-exponential quadrature of f over [a, b]. The integrand is called as
// f(x, d_lo, d_hi) where d_lo = x - a and d_hi = b - x are formed directly
// from the transformation, so they stay accurate at the endpoints.
// Throws NonConvergence when the levels never agree to `accept`.
template <class F>
QuadratureResult tanh_sinh(F&& f, Real a, Real b, const TanhSinhOptions& opt = {})
{
    QuadratureResult r;
    if (a == b) {
        return r;
    }
    constexpr Real half_pi = std::numbers::pi_v<Real> / 2;
    const Real c = (a + b) / 2;
    const Real h = (b - a) / 2;

    // Contribution of the node pair at +-t (or the centre when t = 0).
    auto node = [&](Real t) -> Real {
        const Real u = half_pi * std::sinh(t);
        const Real ch = std::cosh(u);
        const Real w = half_pi * std::cosh(t) / (ch * ch);
        if (t == 0) {
            ++r.evaluations;
            return w * f(c, h, h);
        }
        // 1 - tanh(u) = 2 / (1 + e^{2u}) avoids cancellation for large u.
        const Real d = 2 * h / (1 + std::exp(2 * u));
        if (!(d > 0)) {
            return 0;
        }
        r.evaluations += 2;
        return w * (f(a + d, d, 2 * h - d) + f(b - d, 2 * h - d, d));
    };

    Real sum = node(0);
    for (Real t = 1; t <= opt.t_max; t += 1) {
        sum += node(t);
    }
    Real step = 1;
    Real previous = h * step * sum;
    for (int level = 1; level <= opt.max_level; ++level) {
        step /= 2;
        for (Real t = step; t <= opt.t_max; t += 2 * step) {
            sum += node(t);
        }
        const Real current = h * step * sum;
        r.value = current;
        r.difference = std::fabs(current - previous);
        r.levels = level;
        if (level >= opt.min_level && r.difference <= opt.agreement * std::max<Real>(1, std::fabs(current))) {
            return r;
        }
        previous = current;
    }
    if (!(r.difference <= opt.accept * std::max<Real>(1, std::fabs(r.value)))) {
        throw NonConvergence("tanh-sinh: levels still differ by " + std::to_string(static_cast<double>(r.difference)) +
                             " at level " + std::to_string(opt.max_level));
    }
    return r;
}

// Integral of f over [a, inf) through y = a + w / (1 - w), w in [0, 1).
template <class F>
QuadratureResult tanh_sinh_half_line(F&& f, Real a, const TanhSinhOptions& opt = {})
{
    auto mapped = [&](Real w, Real, Real one_minus_w) -> Real {
        if (one_minus_w <= 0) {
            return 0;
        }
        const Real y = a + w / one_minus_w;
        const Real jac = 1 / (one_minus_w * one_minus_w);
        return f(y) * jac;
    };
    return tanh_sinh(mapped, 0, 1, opt);
}

}  // namespace schroder_lab
