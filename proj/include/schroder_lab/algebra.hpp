#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace schroder_lab {

using Rational = mpq_class;
using Integer = mpz_class;

// Float mode: x87 extended precision (64-bit mantissa, ~19 decimal digits).
// The coefficient recursions at order 400 reach magnitudes near 1e340,
// beyond the range of double.
using Real = long double;

Real to_real(const Rational& q);
inline Real to_real(Real x) { return x; }

// Exact "p/q" (or "p") rendering of a reduced rational.
std::string to_string(const Rational& q);

// Parses "p/q", an integer, or a decimal literal ("2.5", "-0.125", "1e-3")
// into an exact rational. Decimal digits are taken literally.
Rational parse_rational(std::string_view text);

// Integer power for either field type.
template <class T>
T ipow(const T& base, int k)
{
    T result(1);
    T b(base);
    while (k > 0) {
        if (k & 1) {
            result *= b;
        }
        k >>= 1;
        if (k > 0) {
            b *= b;
        }
    }
    return result;
}

Integer binomial(unsigned long n, unsigned long k);

// A number that is either an exact reduced rational or a float. Arithmetic
// never mixes modes; `demote()` is the only route from exact to float.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(const Rational& q) : value_(q) {}
    Scalar(Real x) : value_(x) {}
    static Scalar from_int(long v) { return Scalar(Rational(v)); }

    static Scalar parse(std::string_view text) { return Scalar(parse_rational(text)); }

    bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
    const Rational& exact() const;
    Real to_float() const;
    Scalar demote() const { return Scalar(to_float()); }

    std::string str() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    friend bool operator==(const Scalar& a, const Scalar& b);

private:
    std::variant<Rational, Real> value_;
};

// Polynomial in the map parameter s with exact coefficients, ascending degree.
class SPolynomial {
public:
    SPolynomial() = default;
    explicit SPolynomial(std::vector<Rational> coefficients);
    static SPolynomial constant(const Rational& c) { return SPolynomial({c}); }
    static SPolynomial monomial(int degree, const Rational& c = 1);

    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    Rational coefficient(int k) const;

    Rational eval(const Rational& s) const;
    Real eval(Real s) const;
    Scalar eval(const Scalar& s) const;

    SPolynomial& operator+=(const SPolynomial& o);
    SPolynomial& operator-=(const SPolynomial& o);
    SPolynomial& operator*=(const Rational& c);
    friend SPolynomial operator+(SPolynomial a, const SPolynomial& b) { return a += b; }
    friend SPolynomial operator-(SPolynomial a, const SPolynomial& b) { return a -= b; }
    friend SPolynomial operator*(SPolynomial a, const Rational& c) { return a *= c; }
    friend SPolynomial operator*(const SPolynomial& a, const SPolynomial& b);
    friend bool operator==(const SPolynomial& a, const SPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    // Synthetic division by (1 - s). Returns the quotient; the remainder
    // (which equals the value at s = 1) is written to `remainder`.
    SPolynomial divide_one_minus_s(Rational& remainder) const;

    std::string str() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

Real poly_eval(const SPolynomial& p, Real s);
Rational poly_eval(const SPolynomial& p, const Rational& s);
Scalar poly_eval(const SPolynomial& p, const Scalar& s);

// [k]_s = (s^k - 1)/(s - 1), with the limit k at s = 1.
template <class T>
T deformed_integer(int k, const T& s)
{
    // 1 + s + ... + s^{k-1} is exact for both modes and has the right limit.
    T sum(0);
    T power(1);
    for (int i = 0; i < k; ++i) {
        sum += power;
        power *= s;
    }
    return sum;
}

// [n]_s! = [1]_s [2]_s ... [n]_s
template <class T>
T deformed_factorial(int n, const T& s)
{
    T product(1);
    for (int k = 1; k <= n; ++k) {
        product *= deformed_integer(k, s);
    }
    return product;
}

Scalar deformed_integer(int k, const Scalar& s);
Scalar deformed_factorial(int n, const Scalar& s);

// [k]_s and [n]_s! as polynomials in s.
SPolynomial deformed_integer_poly(int k);
SPolynomial deformed_factorial_poly(int n);

}  // namespace schroder_lab
