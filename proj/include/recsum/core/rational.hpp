#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace recsum {

/**
 * Exact rational number, always in lowest terms with a positive
 * denominator. Backed by GMP; arithmetic never rounds.
 */
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(int value) : value_(static_cast<long>(value)) {}
    Rational(const mpz_class& value) : value_(value) {}
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

    /// Accepts "p", "-p", "p/q" with decimal integers. Returns nullopt on
    /// malformed input or a zero denominator.
    static std::optional<Rational> parse(std::string_view text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& gmp() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    /// Value as a machine integer when it is an integer that fits.
    std::optional<long> to_long() const;
    double to_double() const { return value_.get_d(); }

    Rational abs() const { return Rational(::abs(value_)); }
    Rational inverse() const;
    Rational pow(long exponent) const;

    std::string str() const { return value_.get_str(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    mpq_class value_{0};
};

/// Exact base^exponent when the result is rational (integer exponent, or a
/// perfect power for fractional exponents); nullopt otherwise.
std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent);

/// Binomial coefficient C(n, k) as an exact integer; zero when k < 0 or k > n.
mpz_class binomial(long n, long k);

mpz_class factorial(long n);

} // namespace recsum
