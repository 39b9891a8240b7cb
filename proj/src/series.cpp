#include "schroder_lab/series.hpp"

#include "schroder_lab/errors.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace schroder_lab {

namespace {

template <unsigned Digits10>
using Wide = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits10>,
                                           boost::multiprecision::et_off>;

template <class T>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static Rational binom(unsigned long n, unsigned long k) { return Rational(binomial(n, k)); }
    static bool is_zero(const Rational& q) { return sgn(q) == 0; }
    static Real to_real(const Rational& q) { return schroder_lab::to_real(q); }
};

template <unsigned D>
struct FieldOps<Wide<D>> {
    static Wide<D> binom(unsigned long n, unsigned long k)
    {
        Wide<D> r;
        mpfr_set_z(r.backend().data(), binomial(n, k).get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static bool is_zero(const Wide<D>& x) { return x == 0; }
    static Real to_real(const Wide<D>& x) { return x.template convert_to<Real>(); }
};

template <class T>
std::vector<T> powers(const T& base, int n)
{
    std::vector<T> out(static_cast<std::size_t>(n) + 1);
    out[0] = T(1);
    for (int i = 1; i <= n; ++i) {
        out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i) - 1] * base;
    }
    return out;
}

void require_order(int N, int minimum, const char* what)
{
    if (N < minimum) {
        throw std::invalid_argument(std::string(what) + ": order must be >= " + std::to_string(minimum));
    }
}

// Runs `f.template operator()<W>()` with the narrowest MPFR type carrying at
// least 20 + 0.32 N decimal digits.
template <class F>
auto with_guard_digits(int N, F&& f)
{
    const double needed = 20.0 + 0.32 * N;
    if (needed <= 50) {
        return f.template operator()<Wide<50>>();
    }
    if (needed <= 100) {
        return f.template operator()<Wide<100>>();
    }
    if (needed <= 200) {
        return f.template operator()<Wide<200>>();
    }
    if (needed <= 400) {
        return f.template operator()<Wide<400>>();
    }
    throw std::invalid_argument("float-mode order " + std::to_string(N) +
                                " exceeds the guarded range (N <= 1187); use exact mode");
}

template <class T>
PowerSeries<Real> round_to_real(const PowerSeries<T>& p)
{
    PowerSeries<Real> out;
    out.center = FieldOps<T>::to_real(p.center);
    out.s = FieldOps<T>::to_real(p.s);
    out.order = p.order;
    out.coefficients.reserve(p.coefficients.size());
    for (const auto& c : p.coefficients) {
        out.coefficients.push_back(FieldOps<T>::to_real(c));
    }
    return out;
}

template <class T>
PowerSeries<T> u_recursion(const T& s, int N)
{
    using Ops = FieldOps<T>;
    const std::vector<T> pw = powers(s, N);
    auto divisor = [&](int k) {
        T d = T(1) - pw[static_cast<std::size_t>(k)];
        if (Ops::is_zero(d)) {
            throw DegenerateParameter("U-series divisor 1 - s^" + std::to_string(k) + " vanishes", k);
        }
        return d;
    };

    std::vector<T> a(static_cast<std::size_t>(N) + 1);
    a[0] = T(1);
    a[1] = T(2) / divisor(1);
    {
        // (5 - 3s)/((s-1)^2 (s+1)) = (5 - 3s)/((1 - s)(1 - s^2))
        const T d2 = divisor(2);
        a[2] = T(T(5) - T(3) * s) / T(divisor(1) * d2);
    }
    for (int n = 1; n + 2 <= N; ++n) {
        const T div = divisor(n + 2);
        T acc = T(4) * a[static_cast<std::size_t>(n) + 1] - T(4) * a[static_cast<std::size_t>(n)];
        for (int j = 1 + (n - 1) / 2; j <= n + 1; ++j) {
            T term = a[static_cast<std::size_t>(j)] * pw[static_cast<std::size_t>(j)];
            term *= Ops::binom(static_cast<unsigned long>(j + 2), static_cast<unsigned long>(n + 2 - j));
            if ((n - j) % 2 == 0) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        a[static_cast<std::size_t>(n) + 2] = acc / div;
    }

    PowerSeries<T> out;
    out.center = T(0);
    out.s = s;
    out.order = N + 2;
    out.coefficients.assign(static_cast<std::size_t>(N) + 3, T(0));
    for (int n = 0; n <= N; ++n) {
        out.coefficients[static_cast<std::size_t>(n) + 2] = a[static_cast<std::size_t>(n)];
    }
    return out;
}

template <class T>
PowerSeries<T> schroder_recursion(const T& lambda, const T& mu, int N)
{
    using Ops = FieldOps<T>;
    const std::vector<T> lp = powers(lambda, N);
    const std::vector<T> mp = powers(mu, N);
    std::vector<T> b(static_cast<std::size_t>(N) + 1, T(0));
    b[1] = T(1);
    for (int m = 2; m <= N; ++m) {
        T div = lambda - lp[static_cast<std::size_t>(m)];
        if (Ops::is_zero(div)) {
            throw DegenerateParameter("Schroder divisor s - s^" + std::to_string(m) + " vanishes", m);
        }
        T acc(0);
        for (int k = (m + 1) / 2; k <= m - 1; ++k) {
            T term = b[static_cast<std::size_t>(k)] * lp[static_cast<std::size_t>(2 * k - m)];
            term *= mp[static_cast<std::size_t>(m - k)];
            term *= Ops::binom(static_cast<unsigned long>(k), static_cast<unsigned long>(m - k));
            acc += term;
        }
        b[static_cast<std::size_t>(m)] = acc / div;
    }
    PowerSeries<T> out;
    out.center = T(0);
    out.s = lambda;
    out.order = N;
    out.coefficients = std::move(b);
    return out;
}

template <class T>
PowerSeries<T> poincare_recursion(const T& lambda, const T& mu, int N)
{
    using Ops = FieldOps<T>;
    const std::vector<T> lp = powers(lambda, N);
    std::vector<T> d(static_cast<std::size_t>(N) + 1, T(0));
    d[1] = T(1);
    for (int m = 2; m <= N; ++m) {
        T div = lp[static_cast<std::size_t>(m)] - lambda;
        if (Ops::is_zero(div)) {
            throw DegenerateParameter("Poincare divisor s^" + std::to_string(m) + " - s vanishes", m);
        }
        T conv(0);
        for (int i = 1; i <= m - 1; ++i) {
            conv += d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(m - i)];
        }
        d[static_cast<std::size_t>(m)] = T(mu * conv) / div;
    }
    PowerSeries<T> out;
    out.center = T(0);
    out.s = lambda;
    out.order = N;
    out.coefficients = std::move(d);
    return out;
}

}  // namespace

PowerSeries<Rational> u_coefficients(const Rational& s, int N)
{
    require_order(N, 2, "u_coefficients");
    return u_recursion(s, N);
}

PowerSeries<Real> u_coefficients(Real s, int N)
{
    require_order(N, 2, "u_coefficients");
    PowerSeries<Real> out = with_guard_digits(N, [&]<class W>() { return round_to_real(u_recursion(W(s), N)); });
    out.s = s;
    return out;
}

PowerSeries<Rational> schroder_quadratic_coefficients(const Rational& lambda, const Rational& mu, int N)
{
    require_order(N, 1, "schroder_quadratic_coefficients");
    return schroder_recursion(lambda, mu, N);
}

PowerSeries<Real> schroder_quadratic_coefficients(Real lambda, Real mu, int N)
{
    require_order(N, 1, "schroder_quadratic_coefficients");
    PowerSeries<Real> out = with_guard_digits(
        N, [&]<class W>() { return round_to_real(schroder_recursion(W(lambda), W(mu), N)); });
    out.s = lambda;
    return out;
}

PowerSeries<Rational> poincare_quadratic_coefficients(const Rational& lambda, const Rational& mu, int N)
{
    require_order(N, 1, "poincare_quadratic_coefficients");
    return poincare_recursion(lambda, mu, N);
}

PowerSeries<Real> poincare_quadratic_coefficients(Real lambda, Real mu, int N)
{
    require_order(N, 1, "poincare_quadratic_coefficients");
    PowerSeries<Real> out = with_guard_digits(
        N, [&]<class W>() { return round_to_real(poincare_recursion(W(lambda), W(mu), N)); });
    out.s = lambda;
    return out;
}

std::vector<SPolynomial> p_polynomials(int N)
{
    require_order(N, 2, "p_polynomials");
    const SPolynomial one_minus_s({Rational(1), Rational(-1)});
    std::vector<SPolynomial> p(static_cast<std::size_t>(N) + 1);
    p[0] = one_minus_s * one_minus_s;
    p[1] = one_minus_s * Rational(2);
    p[2] = SPolynomial({Rational(5), Rational(-3)});

    std::vector<SPolynomial> bracket_int(static_cast<std::size_t>(N) + 1);
    for (int k = 1; k <= N; ++k) {
        bracket_int[static_cast<std::size_t>(k)] = deformed_integer_poly(k);
    }

    for (int n = 1; n + 2 <= N; ++n) {
        const auto un = static_cast<std::size_t>(n);
        SPolynomial bracket = p[un + 1] * Rational(4);
        bracket -= bracket_int[un + 1] * p[un] * Rational(4);

        // [n+1]! / [j]! = prod_{k=j+1}^{n+1} [k], built downward from j = n+1.
        SPolynomial ratio = SPolynomial::constant(1);
        const int j_lo = 1 + (n - 1) / 2;
        for (int j = n + 1; j >= j_lo; --j) {
            if (j < n + 1) {
                ratio = ratio * bracket_int[static_cast<std::size_t>(j) + 1];
            }
            Rational c(binomial(static_cast<unsigned long>(j + 2), static_cast<unsigned long>(n + 2 - j)));
            if ((n - j) % 2 != 0) {
                c = -c;
            }
            bracket += ratio * SPolynomial::monomial(j, c) * p[static_cast<std::size_t>(j)];
        }

        Rational remainder;
        SPolynomial quotient = bracket.divide_one_minus_s(remainder);
        if (sgn(remainder) != 0) {
            throw CancellationFailure("(1 - s) does not divide the bracket for p_" + std::to_string(n + 2), n + 2);
        }
        p[un + 2] = std::move(quotient);
    }
    return p;
}

PowerSeries<Rational> s1_coefficients(int N)
{
    require_order(N, 1, "s1_coefficients");
    // w_k: coefficients of W = -V = x^4 (1 + sum c_n x^n). Matching x^m in
    // W(x(1-x)) = (1-2x)^2 W(x) fixes w_{m-1} with the factor (5 - m).
    std::vector<Rational> w(static_cast<std::size_t>(N) + 5, Rational(0));
    w[4] = 1;
    for (int m = 6; m <= N + 5; ++m) {
        Rational acc = Rational(4) * w[static_cast<std::size_t>(m) - 2];
        for (int k = (m + 1) / 2; k <= m - 2; ++k) {
            if (sgn(w[static_cast<std::size_t>(k)]) == 0) {
                continue;
            }
            Rational term = w[static_cast<std::size_t>(k)];
            term *= Rational(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(m - k)));
            if ((m - k) % 2 == 0) {
                acc -= term;
            } else {
                acc += term;
            }
        }
        w[static_cast<std::size_t>(m) - 1] = acc / Rational(5 - m);
    }
    PowerSeries<Rational> out;
    out.center = 0;
    out.s = 1;
    out.order = N + 4;
    out.coefficients.resize(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        out.coefficients[k] = -w[k];
    }
    return out;
}

RadiusEstimate radius_estimate(const PowerSeries<Real>& u)
{
    const int N = u.order - 2;
    if (N < 100) {
        throw std::invalid_argument("radius_estimate: order must be >= 100");
    }
    Real best = -INFINITY;
    for (int n = N / 2; n <= N; ++n) {
        const Real a = std::fabs(u_coefficient(u, n));
        if (a == 0.0L) {
            continue;
        }
        best = std::max(best, std::log(a) / static_cast<Real>(n));
    }
    RadiusEstimate r;
    r.s = u.s;
    r.estimate = std::exp(-best);
    r.n_used = N;
    return r;
}

RadiusEstimate radius_estimate(Real s, int N)
{
    if (N < 100) {
        throw std::invalid_argument("radius_estimate: order must be >= 100");
    }
    return radius_estimate(u_coefficients(s, N));
}

Real ratio_test_radius(const PowerSeries<Real>& u, int window)
{
    const int N = u.order - 2;
    Real sum = 0;
    for (int n = N - window + 1; n <= N; ++n) {
        sum += std::fabs(u_coefficient(u, n - 1) / u_coefficient(u, n));
    }
    return sum / static_cast<Real>(window);
}

Real reference_radius(Real s)
{
    if (!(s > 0.0L) || s > 4.0L) {
        throw DomainError("reference radius is tabulated only for 0 < s <= 4");
    }
    if (s <= 2.0L / 3.0L) {
        return 0.5L;
    }
    if (s <= 2.0L) {
        return std::fabs(1.0L - 1.0L / s);
    }
    return s / 4.0L;
}

Real guard_radius(Real s, int N)
{
    if (s > 0.0L && s <= 4.0L) {
        return reference_radius(s);
    }
    return radius_estimate(s, std::max(N, 100)).estimate;
}

Real horner(const std::vector<Real>& c, Real x)
{
    Real acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Real horner_derivative(const std::vector<Real>& c, Real x)
{
    Real acc = 0;
    for (std::size_t k = c.size(); k-- > 1;) {
        acc = acc * x + static_cast<Real>(k) * c[k];
    }
    return acc;
}

PowerSeries<Real> demote(const PowerSeries<Rational>& p)
{
    PowerSeries<Real> out;
    out.center = to_real(p.center);
    out.s = to_real(p.s);
    out.order = p.order;
    out.coefficients.reserve(p.coefficients.size());
    for (const auto& c : p.coefficients) {
        out.coefficients.push_back(to_real(c));
    }
    return out;
}

}  // namespace schroder_lab
