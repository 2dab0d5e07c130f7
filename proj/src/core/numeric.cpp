#include "recsum/core/numeric.hpp"

#include "recsum/core/error.hpp"

#include <boost/math/constants/constants.hpp>

#include <cctype>
#include <cmath>

namespace recsum {

namespace {

unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

} // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
    if (bits < 64)
        bits = 64;
    Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

Real to_real(const Rational& value) { return Real(value.gmp().get_mpq_t()); }

std::string format_real(const Real& value, int digits) {
    return value.str(digits, std::ios_base::scientific);
}

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Real run() {
        Real v = expr();
        skip();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::SyntaxError,
                    "numeric expression '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Real expr() {
        Real v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    Real term() {
        Real v = unary();
        for (;;) {
            if (eat('*'))
                v *= unary();
            else if (eat('/')) {
                Real d = unary();
                if (d == 0)
                    fail("division by zero");
                v /= d;
            } else
                return v;
        }
    }

    Real unary() {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        Real base = primary();
        if (eat('^'))
            return pow(base, unary());
        return base;
    }

    Real primary() {
        skip();
        if (eat('(')) {
            Real v = expr();
            if (!eat(')'))
                fail("expected ')'");
            return v;
        }
        if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            return number();
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            return call();
        fail("expected a number, constant or function");
    }

    Real number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-'))
                ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        const std::string literal(text_.substr(start, pos_ - start));
        if (literal == ".")
            fail("malformed number");
        try {
            return Real(literal);
        } catch (const std::exception&) {
            fail("malformed number '" + literal + "'");
        }
    }

    Real call() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (name == "pi")
            return boost::math::constants::pi<Real>();
        if (name == "e")
            return exp(Real(1));
        if (!eat('('))
            fail("unknown constant '" + name + "'");
        Real arg = expr();
        if (!eat(')'))
            fail("expected ')'");
        if (name == "sqrt")
            return sqrt(arg);
        if (name == "exp")
            return exp(arg);
        if (name == "log")
            return log(arg);
        if (name == "cos")
            return cos(arg);
        if (name == "sin")
            return sin(arg);
        fail("unknown function '" + name + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Real parse_real_expression(std::string_view text) { return ExprParser(text).run(); }

} // namespace recsum
