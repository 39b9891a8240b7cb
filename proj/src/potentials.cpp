#include "schroder_lab/potentials.hpp"

#include "schroder_lab/dynamics.hpp"
#include "schroder_lab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace schroder_lab {

namespace {

// Radicand slack tolerated at turning points before declaring the argument
// complex; anything inside is rounding from the nested square roots.
constexpr Real kRadicandSlack = 1e-15L;

Real safe_sqrt(Real r, const char* what)
{
    if (r < 0.0L) {
        if (r < -kRadicandSlack) {
            throw ComplexValued(std::string(what) + ": negative radicand", r, r);
        }
        return 0.0L;
    }
    return std::sqrt(r);
}

const char* family_letter(int m)
{
    static const char* letters[] = {"V", "W", "X", "Y", "Z"};
    return m >= 0 && m < 5 ? letters[m] : nullptr;
}

}  // namespace

char sign_char(Sign s)
{
    return s == Sign::Plus ? '+' : '-';
}

std::string PotentialNode::name() const
{
    if (const char* letter = family_letter(family)) {
        return std::string(letter) + "_" + std::to_string(index);
    }
    return "F" + std::to_string(family) + "_" + std::to_string(index);
}

bool substitute_domain(const EvalDomain& inner, Sign sign, const Rational& s, EvalDomain& out)
{
    const Rational half(1, 2);
    if (sign == Sign::Plus) {
        // y = 1/2 + sqrt(...) covers [1/2, 1]; f decreases there.
        const Rational lo = std::max(inner.lo, half);
        if (lo >= inner.hi) {
            return false;
        }
        out.lo = logistic_map(inner.hi, s);
        out.hi = logistic_map(lo, s);
    } else {
        const Rational hi = std::min(inner.hi, half);
        if (inner.lo >= hi) {
            return false;
        }
        out.lo = logistic_map(inner.lo, s);
        out.hi = logistic_map(hi, s);
    }
    return out.lo < out.hi;
}

PotentialNode family_node(int m, int n, const Rational& s)
{
    if (m < 0 || n < 0) {
        throw std::invalid_argument("family and index must be non-negative");
    }
    if (m > 0 && n == 0) {
        throw std::invalid_argument("family " + std::to_string(m) +
                                    " starts at index 1 (index 0 coincides with an earlier node)");
    }
    if (sgn(s) <= 0 || s > 4 || s == 1) {
        throw DomainError("switchback nodes need 0 < s <= 4, s != 1");
    }
    PotentialNode node;
    node.family = m;
    node.index = n;
    node.s = s;
    node.recipe.assign(static_cast<std::size_t>(n), Sign::Plus);
    for (int k = 0; k < m; ++k) {
        node.recipe.push_back(k % 2 == 0 ? Sign::Minus : Sign::Plus);
    }
    node.domain = EvalDomain{Rational(0), Rational(s / 4)};
    for (const Sign sign : node.recipe) {
        EvalDomain next;
        if (!substitute_domain(node.domain, sign, s, next)) {
            throw ComplexValued(node.name() + " is complex-valued: the " + std::string(1, sign_char(sign)) +
                                    " substitution has no real preimage of [" + to_string(node.domain.lo) + ", " +
                                    to_string(node.domain.hi) + "]",
                                to_real(node.domain.lo), to_real(node.domain.hi));
        }
        node.domain = next;
    }
    return node;
}

// --- USeries ----------------------------------------------------------------

USeries::USeries(Real s, int N) : s_(s), N_(N), series_(u_coefficients(s, N)), radius_(guard_radius(s, N)) {}

Real USeries::U_unchecked(Real x) const
{
    return horner(series_.coefficients, x);
}

Real USeries::U(Real x) const
{
    if (std::fabs(x) > 0.99L * radius_) {
        throw OutOfRadius("U series evaluated at |x| = " + std::to_string(static_cast<double>(std::fabs(x))) +
                          " beyond 99% of the radius " + std::to_string(static_cast<double>(radius_)));
    }
    return U_unchecked(x);
}

Real USeries::U0(Real x) const
{
    const Real r = 1.0L - 4.0L * x / s_;
    if (r < 0.0L) {
        if (r < -kRadicandSlack) {
            throw DomainError("U0 needs x <= s/4");
        }
        return 0.0L;
    }
    const Real y = 0.5L - 0.5L * std::sqrt(r);
    return s_ * (s_ - 4.0L * x) * U(y);
}

Real USeries::U1(Real x) const
{
    const Real lo = s_ * s_ * (4.0L - s_) / 16.0L;
    const Real hi = s_ / 4.0L;
    const Real tol = 64 * std::numeric_limits<Real>::epsilon();
    if (x < lo - tol || x > hi + tol) {
        throw DomainError("U1 needs s^2(4-s)/16 <= x <= s/4");
    }
    x = std::clamp(x, lo, hi);
    const Real y = std::min(0.5L + 0.5L * std::sqrt(std::max(0.0L, 1.0L - 4.0L * x / s_)), hi);
    return s_ * (s_ - 4.0L * x) * U0(y);
}

// --- PotentialModel ---------------------------------------------------------

PotentialModel::PotentialModel(const Rational& s, int N)
    : s_exact_(s), series_(to_real(s), N), log2s_(std::log(to_real(s)) * std::log(to_real(s)))
{
}

NestedPoint PotentialModel::descend(const PotentialNode& node, Real x) const
{
    const Real s = series_.s();
    const Real lo = to_real(node.domain.lo);
    const Real hi = to_real(node.domain.hi);
    const Real tol = 64 * std::numeric_limits<Real>::epsilon() * std::max(1.0L, std::fabs(x));
    if (x < lo - tol || x > hi + tol) {
        const Real a = x < lo ? x : hi;
        const Real b = x < lo ? lo : x;
        throw ComplexValued(node.name() + " is complex-valued outside [" + to_string(node.domain.lo) + ", " +
                                to_string(node.domain.hi) + "]",
                            a, b);
    }
    NestedPoint p;
    p.y = std::clamp(x, lo, hi);
    for (auto it = node.recipe.rbegin(); it != node.recipe.rend(); ++it) {
        p.prefactor *= s * (s - 4.0L * p.y);
        const Real root = safe_sqrt(0.25L - p.y / s, "nested substitution");
        p.y = *it == Sign::Plus ? 0.5L + root : 0.5L - root;
        ++p.steps;
    }
    p.y = std::clamp(p.y, 0.0L, s / 4.0L);
    return p;
}

Real PotentialModel::node_U(const PotentialNode& node, Real x) const
{
    const NestedPoint p = descend(node, x);
    return p.prefactor * series_.U0(p.y);
}

Real PotentialModel::V(const PotentialNode& node, Real x) const
{
    return -log2s_ * node_U(node, x);
}

Real PotentialModel::minus_V_offset(const PotentialNode& node, bool from_lower, Real delta) const
{
    const Real x = from_lower ? to_real(node.domain.lo) + delta : to_real(node.domain.hi) - delta;
    return log2s_ * node_U(node, x);
}

// --- Scalar front ends -------------------------------------------------------

Scalar eval_U(const Scalar& x, const Scalar& s, int N)
{
    return Scalar(USeries(s.to_float(), N).U(x.to_float()));
}

Scalar eval_U0(const Scalar& x, const Scalar& s, int N)
{
    const Real sf = s.to_float();
    if (x.to_float() > sf / 4.0L) {
        throw DomainError("U0 needs x <= s/4");
    }
    return Scalar(USeries(sf, N).U0(x.to_float()));
}

Scalar eval_U1(const Scalar& x, const Scalar& s, int N)
{
    return Scalar(USeries(s.to_float(), N).U1(x.to_float()));
}

Real closed_form_U(Real x, int s)
{
    constexpr Real pi = std::numbers::pi_v<Real>;
    switch (s) {
    case 2: {
        if (x > 0.5L) {
            throw DomainError("closed form at s=2 needs x <= 1/2");
        }
        const Real w = 1.0L - 2.0L * x;
        if (w == 0.0L) {
            return 0.0L;
        }
        const Real l = std::log(w);
        return 0.25L * w * w * l * l;
    }
    case 4: {
        if (x < 0.0L || x > 1.0L) {
            throw DomainError("closed form at s=4 needs 0 <= x <= 1");
        }
        const Real a = std::asin(std::sqrt(x));
        return x * (1.0L - x) * a * a;
    }
    case -2: {
        if (x < -0.5L || x > 1.5L) {
            throw DomainError("closed form at s=-2 needs -1/2 <= x <= 3/2");
        }
        const Real b = 2.0L * pi - 3.0L * std::acos(x - 0.5L);
        return (1.0L + 2.0L * x) * (3.0L - 2.0L * x) * b * b / 36.0L;
    }
    default:
        throw DomainError("closed forms exist only for s = -2, 2, 4");
    }
}

Real closed_form_U4_arccos(Real x)
{
    constexpr Real pi = std::numbers::pi_v<Real>;
    if (x < 0.0L || x > 1.0L) {
        throw DomainError("closed form at s=4 needs 0 <= x <= 1");
    }
    const Real b = pi - std::acos(2.0L * x - 1.0L);
    return 0.25L * x * (1.0L - x) * b * b;
}

Scalar V_from_U(const Scalar& u, const Scalar& s)
{
    const Real sf = s.to_float();
    if (!(sf > 0.0L) || sf == 1.0L) {
        throw DomainError("V = -(ln s)^2 U needs s > 0, s != 1");
    }
    const Real l = std::log(sf);
    if (u.is_exact() && sgn(u.exact()) == 0) {
        return Scalar(Rational(0));
    }
    return Scalar(-l * l * u.to_float());
}

Real dual_transform_U(Real x, const Rational& s, int N)
{
    if (sgn(s) <= 0 || s >= 2 || s == 1) {
        throw DomainError("dual transform needs s in (0,1) or (1,2)");
    }
    const Real sf = to_real(s);
    const Real sd = 2.0L - sf;
    const Real factor = (sd * std::log(sd)) / (sf * std::log(sf));
    const Real arg = sf / sd * (x - (1.0L - 1.0L / sf));
    const USeries dual(sd, N);
    if (std::fabs(arg) > 0.99L * dual.radius()) {
        throw DomainError("dual argument " + std::to_string(static_cast<double>(arg)) +
                          " lies outside the dual series' radius");
    }
    return factor * factor * dual.U(arg);
}

}  // namespace schroder_lab
