#include "schroder_lab/algebra.hpp"

#include "schroder_lab/errors.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace schroder_lab {

Real to_real(const Rational& q)
{
    if (sgn(q) == 0) {
        return 0.0L;
    }
    Integer a = abs(q.get_num());
    Integer b = q.get_den();
    const long ea = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
    const long eb = static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
    // Scale so the integer quotient carries ~70 significant bits.
    const long shift = 70 - (ea - eb);
    if (shift > 0) {
        a <<= shift;
    } else if (shift < 0) {
        b <<= -shift;
    }
    Integer quotient = a / b;
    long extra = 0;
    const long bits = static_cast<long>(mpz_sizeinbase(quotient.get_mpz_t(), 2));
    if (bits > 64) {
        extra = bits - 64;
        quotient >>= extra;
    }
    const Real mantissa = static_cast<Real>(mpz_get_ui(quotient.get_mpz_t()));
    const Real value = std::ldexp(mantissa, static_cast<int>(extra - shift));
    return sgn(q) < 0 ? -value : value;
}

std::string to_string(const Rational& q)
{
    Rational r = q;
    r.canonicalize();
    return r.get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.erase(s.begin());
    }
    if (s.empty()) {
        throw std::invalid_argument("empty number");
    }

    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const Rational num = parse_rational(s.substr(0, slash));
        const Rational den = parse_rational(s.substr(slash + 1));
        if (sgn(den) == 0) {
            throw std::invalid_argument("zero denominator in '" + s + "'");
        }
        Rational q = num / den;
        q.canonicalize();
        return q;
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
        negative = s[i] == '-';
        ++i;
    }
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) {
                ++scale;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') {
            throw std::invalid_argument("not a number: '" + s + "'");
        }
        const std::string rest = s.substr(i + 1);
        std::size_t used = 0;
        try {
            exponent = std::stol(rest, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent in '" + s + "'");
        }
        if (used != rest.size()) {
            throw std::invalid_argument("bad exponent in '" + s + "'");
        }
    }
    Integer mantissa(digits, 10);
    const long power = exponent - scale;
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(power < 0 ? -power : power));
    Rational q = power >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

Integer binomial(unsigned long n, unsigned long k)
{
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return c;
}

// --- Scalar -----------------------------------------------------------------

const Rational& Scalar::exact() const
{
    if (!is_exact()) {
        throw ModeMismatch("scalar is in float mode, exact value requested");
    }
    return std::get<Rational>(value_);
}

Real Scalar::to_float() const
{
    if (is_exact()) {
        return to_real(std::get<Rational>(value_));
    }
    return std::get<Real>(value_);
}

std::string Scalar::str() const
{
    if (is_exact()) {
        return to_string(std::get<Rational>(value_));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17Lg", std::get<Real>(value_));
    return buf;
}

namespace {

void require_same_mode(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() != b.is_exact()) {
        throw ModeMismatch("mixed exact/float arithmetic; demote explicitly");
    }
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b)
{
    require_same_mode(a, b);
    if (a.is_exact()) {
        return Scalar(Rational(a.exact() + b.exact()));
    }
    return Scalar(a.to_float() + b.to_float());
}

Scalar operator-(const Scalar& a, const Scalar& b)
{
    require_same_mode(a, b);
    if (a.is_exact()) {
        return Scalar(Rational(a.exact() - b.exact()));
    }
    return Scalar(a.to_float() - b.to_float());
}

Scalar operator*(const Scalar& a, const Scalar& b)
{
    require_same_mode(a, b);
    if (a.is_exact()) {
        return Scalar(Rational(a.exact() * b.exact()));
    }
    return Scalar(a.to_float() * b.to_float());
}

Scalar operator/(const Scalar& a, const Scalar& b)
{
    require_same_mode(a, b);
    if (a.is_exact()) {
        if (sgn(b.exact()) == 0) {
            throw std::domain_error("division by exact zero");
        }
        return Scalar(Rational(a.exact() / b.exact()));
    }
    return Scalar(a.to_float() / b.to_float());
}

Scalar operator-(const Scalar& a)
{
    if (a.is_exact()) {
        return Scalar(Rational(-a.exact()));
    }
    return Scalar(-a.to_float());
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() != b.is_exact()) {
        return false;
    }
    if (a.is_exact()) {
        return a.exact() == b.exact();
    }
    return a.to_float() == b.to_float();
}

// --- SPolynomial ------------------------------------------------------------

SPolynomial::SPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients))
{
    trim();
}

SPolynomial SPolynomial::monomial(int degree, const Rational& c)
{
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
    v.back() = c;
    return SPolynomial(std::move(v));
}

void SPolynomial::trim()
{
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) {
        coeffs_.pop_back();
    }
}

Rational SPolynomial::coefficient(int k) const
{
    if (k < 0 || k > degree()) {
        return Rational(0);
    }
    return coeffs_[static_cast<std::size_t>(k)];
}

Rational SPolynomial::eval(const Rational& s) const
{
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

Real SPolynomial::eval(Real s) const
{
    Real acc = 0.0L;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * s + to_real(*it);
    }
    return acc;
}

Scalar SPolynomial::eval(const Scalar& s) const
{
    if (s.is_exact()) {
        return Scalar(eval(s.exact()));
    }
    return Scalar(eval(s.to_float()));
}

SPolynomial& SPolynomial::operator+=(const SPolynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size(), Rational(0));
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        coeffs_[i] += o.coeffs_[i];
    }
    trim();
    return *this;
}

SPolynomial& SPolynomial::operator-=(const SPolynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size(), Rational(0));
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
        coeffs_[i] -= o.coeffs_[i];
    }
    trim();
    return *this;
}

SPolynomial& SPolynomial::operator*=(const Rational& c)
{
    for (auto& x : coeffs_) {
        x *= c;
    }
    trim();
    return *this;
}

SPolynomial operator*(const SPolynomial& a, const SPolynomial& b)
{
    if (a.is_zero() || b.is_zero()) {
        return SPolynomial();
    }
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return SPolynomial(std::move(out));
}

SPolynomial SPolynomial::divide_one_minus_s(Rational& remainder) const
{
    // p(s) = (1 - s) q(s) + r. Dividing by (s - 1) and negating the quotient
    // leaves the remainder unchanged.
    if (coeffs_.empty()) {
        remainder = 0;
        return SPolynomial();
    }
    const std::size_t n = coeffs_.size();
    std::vector<Rational> q(n > 1 ? n - 1 : 0, Rational(0));
    Rational carry(0);
    for (std::size_t i = n; i-- > 0;) {
        carry = carry + coeffs_[i];
        if (i > 0) {
            q[i - 1] = carry;
        }
    }
    remainder = carry;
    for (auto& c : q) {
        c = -c;
    }
    return SPolynomial(std::move(q));
}

std::string SPolynomial::str() const
{
    if (coeffs_.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const int sign = sgn(coeffs_[i]);
        if (sign == 0) {
            continue;
        }
        if (out.empty()) {
            out += sign < 0 ? "-" : "";
        } else {
            out += sign < 0 ? " - " : " + ";
        }
        const Rational mag = abs(coeffs_[i]);
        if (i == 0) {
            out += to_string(mag);
            continue;
        }
        if (mag != 1) {
            out += to_string(mag) + "*";
        }
        out += "s";
        if (i > 1) {
            out += "^" + std::to_string(i);
        }
    }
    return out;
}

Real poly_eval(const SPolynomial& p, Real s) { return p.eval(s); }
Rational poly_eval(const SPolynomial& p, const Rational& s) { return p.eval(s); }
Scalar poly_eval(const SPolynomial& p, const Scalar& s) { return p.eval(s); }

Scalar deformed_integer(int k, const Scalar& s)
{
    if (s.is_exact()) {
        return Scalar(deformed_integer(k, s.exact()));
    }
    return Scalar(deformed_integer(k, s.to_float()));
}

Scalar deformed_factorial(int n, const Scalar& s)
{
    if (s.is_exact()) {
        return Scalar(deformed_factorial(n, s.exact()));
    }
    return Scalar(deformed_factorial(n, s.to_float()));
}

SPolynomial deformed_integer_poly(int k)
{
    return SPolynomial(std::vector<Rational>(static_cast<std::size_t>(k), Rational(1)));
}

SPolynomial deformed_factorial_poly(int n)
{
    SPolynomial p = SPolynomial::constant(1);
    for (int k = 1; k <= n; ++k) {
        p = p * deformed_integer_poly(k);
    }
    return p;
}

}  // namespace schroder_lab
