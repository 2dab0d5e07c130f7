#include "recsum/core/rational.hpp"

#include "recsum/core/error.hpp"

#include <cctype>

namespace recsum {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0)
        throw Error(ErrorKind::DegenerateExpression, "rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero())
        throw Error(ErrorKind::DegenerateExpression, "division by zero");
    return Rational(mpq_class(a.value_ / b.value_));
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        return std::nullopt;
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        return std::nullopt;
    if (negative)
        n = -n;
    return Rational(n, d);
}

std::optional<long> Rational::to_long() const {
    if (!is_integer() || !value_.get_num().fits_slong_p())
        return std::nullopt;
    return value_.get_num().get_si();
}

Rational Rational::inverse() const {
    if (is_zero())
        throw Error(ErrorKind::DegenerateExpression, "inverse of zero");
    return Rational(value_.get_den(), value_.get_num());
}

Rational Rational::pow(long exponent) const {
    if (exponent < 0)
        return inverse().pow(-exponent);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(num, den);
}

namespace {

std::optional<mpz_class> exact_root(const mpz_class& value, unsigned long k) {
    if (value < 0) {
        if (k % 2 == 0)
            return std::nullopt;
        auto r = exact_root(-value, k);
        if (!r)
            return std::nullopt;
        return mpz_class(-*r);
    }
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), k) == 0)
        return std::nullopt;
    return root;
}

} // namespace

std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent) {
    if (exponent.is_integer()) {
        auto e = exponent.to_long();
        if (!e)
            return std::nullopt;
        if (*e < 0 && base.is_zero())
            return std::nullopt;
        return base.pow(*e);
    }
    if (base.is_zero())
        return exponent.sign() > 0 ? std::optional<Rational>(Rational(0)) : std::nullopt;
    if (!exponent.denominator().fits_ulong_p() || !exponent.numerator().fits_slong_p())
        return std::nullopt;
    const unsigned long k = exponent.denominator().get_ui();
    auto num = exact_root(base.numerator(), k);
    auto den = exact_root(base.denominator(), k);
    if (!num || !den)
        return std::nullopt;
    return Rational(*num, *den).pow(exponent.numerator().get_si());
}

mpz_class binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n)
        return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

mpz_class factorial(long n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return out;
}

} // namespace recsum
