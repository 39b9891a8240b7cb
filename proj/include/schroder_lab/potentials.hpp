#pragma once

#include "schroder_lab/algebra.hpp"
#include "schroder_lab/series.hpp"

#include <string>
#include <vector>

namespace schroder_lab {

enum class Sign { Plus, Minus };

char sign_char(Sign s);

// Closed interval with exact endpoints.
struct EvalDomain {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    Real width() const { return to_real(Rational(hi - lo)); }
};

// V_n^(m): family m (number of alternating-sign substitutions), index n
// (number of trailing '+' substitutions). The recipe lists the substitutions
// innermost first: n pluses, then -, +, -, ... for the m family steps.
//
// node(x) = prod_k s(s - 4 x_k) * U0(x_L),  x_0 = x,
// x_{k+1} = 1/2 + sigma_k sqrt(1/4 - x_k / s),
// with sigma_k read from the outermost end of the recipe.
struct PotentialNode {
    int family = 0;
    int index = 0;
    Rational s;
    std::vector<Sign> recipe;
    EvalDomain domain;  // [lower_tp, upper_tp]

    const Rational& lower_tp() const { return domain.lo; }
    const Rational& upper_tp() const { return domain.hi; }
    int depth() const { return static_cast<int>(recipe.size()); }

    // V, W, X, Y, Z for families 0..4; beyond that "F<m>".
    std::string name() const;
    // Families past Z follow the alternating pattern without a published check.
    bool extrapolated() const { return family > 4; }
};

// Builds V_n^(m) with exact turning points. Family m >= 1 needs n >= 1: a '-'
// substitution applied directly to V_0 reproduces V_0 itself.
// Throws ComplexValued when some nested radicand is negative on the whole
// candidate interval, DomainError for s outside (0, 4] or s = 1.
PotentialNode family_node(int m, int n, const Rational& s);

// The interval reached by one more substitution with the given sign; returns
// false when it is empty or a single point.
bool substitute_domain(const EvalDomain& inner, Sign sign, const Rational& s, EvalDomain& out);

// Result of walking x down a node's recipe.
struct NestedPoint {
    Real y = 0;          // argument handed to the primary branch
    Real prefactor = 1;  // prod s (s - 4 x_k)
    int steps = 0;
};

// Float-mode evaluator for U(x, s) = x^2 (1 + sum a_n x^n) at fixed s and order.
class USeries {
public:
    USeries(Real s, int N);

    Real s() const { return s_; }
    int order() const { return N_; }
    // Guard radius: the piecewise reference for 0 < s <= 4, else the
    // limsup-window estimate.
    Real radius() const { return radius_; }
    const PowerSeries<Real>& series() const { return series_; }

    // Throws OutOfRadius for |x| > 0.99 * radius().
    Real U(Real x) const;
    Real U_unchecked(Real x) const;

    // s (s - 4x) U(1/2 - 1/2 sqrt(1 - 4x/s)); x <= s/4.
    Real U0(Real x) const;
    // s (s - 4x) U0(1/2 + 1/2 sqrt(1 - 4x/s)); s^2 (4 - s)/16 <= x <= s/4.
    Real U1(Real x) const;

private:
    Real s_;
    int N_;
    PowerSeries<Real> series_;
    Real radius_;
};

// A family node bound to a U-series.
class PotentialModel {
public:
    PotentialModel(const Rational& s, int N);

    const Rational& s_exact() const { return s_exact_; }
    Real s() const { return series_.s(); }
    Real log_s_squared() const { return log2s_; }
    const USeries& useries() const { return series_; }

    NestedPoint descend(const PotentialNode& node, Real x) const;

    // U-form of the node (non-negative on its domain).
    Real node_U(const PotentialNode& node, Real x) const;
    // V = -(ln s)^2 node_U.
    Real V(const PotentialNode& node, Real x) const;

    // -V at lo + delta (from_lower) or hi - delta, with delta carried
    // separately from the endpoint so small offsets are not lost.
    Real minus_V_offset(const PotentialNode& node, bool from_lower, Real delta) const;

private:
    Rational s_exact_;
    USeries series_;
    Real log2s_;
};

// Scalar front ends. Float mode only; exact inputs are demoted.
Scalar eval_U(const Scalar& x, const Scalar& s, int N);
Scalar eval_U0(const Scalar& x, const Scalar& s, int N);
Scalar eval_U1(const Scalar& x, const Scalar& s, int N);

// s in {-2, 2, 4}; throws DomainError otherwise or outside the formula's
// real domain.
Real closed_form_U(Real x, int s);
// The s = 4 form written with arccos: x(1-x)(pi - arccos(2x - 1))^2 / 4.
Real closed_form_U4_arccos(Real x);

// -(ln s)^2 u. Throws DomainError for s <= 0 or s == 1.
Scalar V_from_U(const Scalar& u, const Scalar& s);

// U(x, s) computed through the dual parameter s* = 2 - s:
// ((s* ln s*)/(s ln s))^2 U(s/s* (x - (1 - 1/s)), s*).
// Throws DomainError for s outside (0,1) u (1,2) or a dual argument outside
// the dual series' guard radius.
Real dual_transform_U(Real x, const Rational& s, int N);

}  // namespace schroder_lab
