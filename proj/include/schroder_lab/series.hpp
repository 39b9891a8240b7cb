#pragma once

#include "schroder_lab/algebra.hpp"

#include <vector>

namespace schroder_lab {

// Truncated expansion sum_k coefficients[k] (x - center)^k, k = 0..order.
template <class T>
struct PowerSeries {
    T center{0};
    T s{0};
    std::vector<T> coefficients;
    int order = 0;

    const T& operator[](int k) const { return coefficients[static_cast<std::size_t>(k)]; }
};

// Coefficients of U(x,s) = x^2 (1 + sum_{n>=1} a_n x^n) about x = 0, order N+2
// (a_1..a_N populated). Throws DegenerateParameter naming k when 1 - s^k = 0.
//
// The float overloads run the recursion in MPFR with 20 + 0.32 N guard digits
// and round the result to Real: the U and Psi recursions lose about 0.18
// decimal digits per order for s > 1, so a plain long double run is garbage
// beyond order ~100.
PowerSeries<Rational> u_coefficients(const Rational& s, int N);
PowerSeries<Real> u_coefficients(Real s, int N);

// a_n read back out of a U-series (a_0 = 1).
template <class T>
const T& u_coefficient(const PowerSeries<T>& u, int n)
{
    return u[n + 2];
}

// Numerator polynomials p_0..p_N with a_n = p_n(s) / ((s-1)^2 [n]_s!);
// p_0 = (s-1)^2 is the normalisation of the leading x^2 term. Throws
// CancellationFailure if a (1 - s) division leaves a remainder.
std::vector<SPolynomial> p_polynomials(int N);

// Schroder series Psi(z) = z + ... for the quadratic map z -> lambda z + mu z^2,
// solving lambda Psi(z) = Psi(lambda z + mu z^2). Throws DegenerateParameter
// naming k when lambda - lambda^k = 0.
PowerSeries<Rational> schroder_quadratic_coefficients(const Rational& lambda, const Rational& mu, int N);
PowerSeries<Real> schroder_quadratic_coefficients(Real lambda, Real mu, int N);

// Inverse (Poincare) series Phi(z) = z + ... solving Phi(lambda z) = lambda Phi + mu Phi^2.
PowerSeries<Rational> poincare_quadratic_coefficients(const Rational& lambda, const Rational& mu, int N);
PowerSeries<Real> poincare_quadratic_coefficients(Real lambda, Real mu, int N);

// Psi about x = 0 for the logistic map: s Psi(x) = Psi(s x (1 - x)).
template <class T>
PowerSeries<T> psi_coefficients(const T& s, int N)
{
    return schroder_quadratic_coefficients(s, T(-s), N);
}

// Phi = Psi^{-1} about x = 0: Phi(s x) = s Phi(x) (1 - Phi(x)).
template <class T>
PowerSeries<T> phi_coefficients(const T& s, int N)
{
    return poincare_quadratic_coefficients(s, T(-s), N);
}

// Psi_* about the nontrivial fixed point, in the shifted variable z = x - (1 - 1/s):
// (2 - s) Psi_*(z) = Psi_*((2 - s) z - s z^2).
template <class T>
PowerSeries<T> psi_star_coefficients(const T& s, int N)
{
    PowerSeries<T> out = schroder_quadratic_coefficients(T(2 - s), T(-s), N);
    out.s = s;
    out.center = T(1 - T(1) / s);
    return out;
}

// V(x,1) = -x^4 (1 + sum_{n>=1} c_n x^n); the series holds V's coefficients
// up to x^{N+4}.
PowerSeries<Rational> s1_coefficients(int N);

inline Rational s1_coefficient(const PowerSeries<Rational>& v, int n)
{
    return Rational(-v[n + 4]);
}

struct RadiusEstimate {
    Real s = 0;
    Real estimate = 0;
    int n_used = 0;
    const char* method = "limsup-window";
};

// 1 / sup_{n in [N/2, N]} |a_n|^{1/n} from float-mode coefficients.
RadiusEstimate radius_estimate(Real s, int N);
RadiusEstimate radius_estimate(const PowerSeries<Real>& u);

// Mean of |a_{n-1}/a_n| over the last `window` coefficients; meaningful only
// where |a_n| is eventually monotone.
Real ratio_test_radius(const PowerSeries<Real>& u, int window = 10);

// Piecewise radius of the U (and Psi) series about 0 for 0 < s <= 4.
Real reference_radius(Real s);

// Radius used by the evaluation guards: reference_radius on (0, 4], the
// limsup-window estimate at order max(N, 100) elsewhere.
Real guard_radius(Real s, int N);

// Horner evaluation of sum c_k x^k and of its derivative.
Real horner(const std::vector<Real>& c, Real x);
Real horner_derivative(const std::vector<Real>& c, Real x);

PowerSeries<Real> demote(const PowerSeries<Rational>& p);

}  // namespace schroder_lab
