#include "schroder_lab/asymptotics.hpp"

#include "schroder_lab/quadrature.hpp"
#include "schroder_lab/series.hpp"

#include <cmath>
#include <numbers>

namespace schroder_lab {

namespace {

Real log_abs(const Integer& z)
{
    long exp = 0;
    const double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(std::fabs(static_cast<Real>(m))) + static_cast<Real>(exp) * std::numbers::ln2_v<Real>;
}

Real log_abs(const Rational& q)
{
    return log_abs(q.get_num()) - log_abs(q.get_den());
}

// Least-squares slope of y against n = lo..hi.
template <class Y>
Real ls_slope(int lo, int hi, Y&& y)
{
    const Real count = static_cast<Real>(hi - lo + 1);
    Real sn = 0;
    Real sy = 0;
    for (int n = lo; n <= hi; ++n) {
        sn += n;
        sy += y(n);
    }
    const Real mn = sn / count;
    const Real my = sy / count;
    Real num = 0;
    Real den = 0;
    for (int n = lo; n <= hi; ++n) {
        num += (n - mn) * (y(n) - my);
        den += (n - mn) * (n - mn);
    }
    return num / den;
}

}  // namespace

Real log_f(int n)
{
    const Real nn = static_cast<Real>(n);
    return -nn / 2 * std::numbers::ln2_v<Real> - 1.5L * nn + std::lgamma(nn + 1);
}

GrowthDiagnostic growth_analysis(int N)
{
    if (N < 100) {
        throw std::invalid_argument("growth analysis needs N >= 100");
    }
    const PowerSeries<Rational> v = s1_coefficients(N);
    GrowthDiagnostic g;
    g.n_min = 1;
    g.n_max = N;
    for (int n = 1; n <= N; ++n) {
        const Rational c = s1_coefficient(v, n);
        const Real lc = sgn(c) == 0 ? -INFINITY : log_abs(c);
        const Real lf = log_f(n);
        g.log_abs_c.push_back(lc);
        g.log_f.push_back(lf);
        g.root.push_back(std::exp(lc / n));
        g.reference_root.push_back(std::exp(lf / n));
    }
    return g;
}

Real slope_ratio(const GrowthDiagnostic& g, int lo, int hi)
{
    const auto at = [&](const std::vector<Real>& v) {
        return [&v, &g](int n) { return v[static_cast<std::size_t>(n - g.n_min)]; };
    };
    return ls_slope(lo, hi, at(g.log_abs_c)) / ls_slope(lo, hi, at(g.log_f));
}

Real fitted_L(const GrowthDiagnostic& g, int lo, int hi)
{
    return std::exp(ls_slope(lo, hi, [&](int n) {
        const Real nn = static_cast<Real>(n);
        return g.log_abs_c[static_cast<std::size_t>(n - g.n_min)] - nn * std::log(nn);
    }));
}

Real pv_integral(Real x, const PvOptions& opt)
{
    const Real scale = std::sqrt(2 * std::exp(3.0L));
    const Real kappa = x / scale;

    if (kappa <= 0) {
        const Real k = -kappa;
        auto f = [k](Real y) { return std::exp(-y) / (1 + k * y); };
        if (opt.force_direct) {
            return tanh_sinh_half_line(f, 0).value;
        }
        // Same layout as the pole case: a finite piece, then the tail.
        const Real split = k > 0 ? std::min<Real>(2 / k, 40) : 40;
        const Real head = tanh_sinh([&](Real y, Real, Real) { return f(y); }, 0, split).value;
        return head + tanh_sinh_half_line(f, split).value;
    }
    if (opt.force_direct) {
        throw std::invalid_argument("the direct route has no pole treatment; it needs x <= 0");
    }

    // I = -(1/kappa) PV int_0^inf e^{-y} / (y - y0) dy, y0 = 1/kappa.
    const Real y0 = 1 / kappa;
    const Real eps = opt.excision * y0;

    // |u| < eps: e^{-y0} PV int e^{-u}/u du = -2 e^{-y0} Shi(eps).
    Real shi = 0;
    Real term = eps;
    for (int k = 0; k < 200; ++k) {
        const Real add = term / (2 * k + 1);
        shi += add;
        if (std::fabs(add) < 1e-30L * std::fabs(shi)) {
            break;
        }
        term *= eps * eps / ((2 * k + 2) * (2 * k + 3));
    }
    const Real inner = std::exp(-y0) * shi;

    // eps < u < y0 in v = y0 - u: e^{-v} (1 - e^{-2u}) / (2u).
    auto paired = [y0](Real v) {
        const Real u = y0 - v;
        return std::exp(-v) * -std::expm1(-2 * u) / (2 * u);
    };
    const Real vmax = y0 - eps;
    const Real vcut = std::min<Real>(60, vmax);
    Real outer = tanh_sinh([&](Real v, Real, Real) { return paired(v); }, 0, vcut).value;
    if (vmax > vcut) {
        outer += tanh_sinh([&](Real v, Real, Real) { return paired(v); }, vcut, vmax).value;
    }

    // y > 2 y0: e^{-2 y0} int_0^inf e^{-w} / (y0 + w) dw.
    const Real tail =
        std::exp(-2 * y0) * tanh_sinh_half_line([y0](Real w) { return std::exp(-w) / (y0 + w); }, 0).value;

    return y0 * (2 * (inner + outer) - tail);
}

}  // namespace schroder_lab
