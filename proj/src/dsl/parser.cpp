#include "recsum/dsl/recurrence.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

namespace recsum {

namespace {

enum class Tok { Ident, Int, Float, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
};

constexpr int kMaxNesting = 200;
constexpr long kMaxExponent = 256;
constexpr long kMaxShift = 10000;

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {
        line_starts_.push_back(0);
        for (std::size_t i = 0; i < text.size(); ++i)
            if (text[i] == '\n')
                line_starts_.push_back(i + 1);
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, "", span(pos_, pos_)});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    SourceSpan span(std::size_t begin, std::size_t end) const {
        auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), begin);
        const std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
        return {begin, end, static_cast<int>(line), static_cast<int>(begin - line_starts_[line - 1] + 1)};
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    static bool digit(char c) { return c >= '0' && c <= '9'; }
    static bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

    Token next() {
        const std::size_t begin = pos_;
        const char c = text_[pos_];
        if (ident_start(c)) {
            while (pos_ < text_.size() && (ident_start(text_[pos_]) || digit(text_[pos_])))
                ++pos_;
            return make(Tok::Ident, begin);
        }
        if (digit(c)) {
            while (pos_ < text_.size() && digit(text_[pos_]))
                ++pos_;
            bool is_float = false;
            if (pos_ + 1 < text_.size() && text_[pos_] == '.' && digit(text_[pos_ + 1])) {
                is_float = true;
                ++pos_;
                while (pos_ < text_.size() && digit(text_[pos_]))
                    ++pos_;
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t p = pos_ + 1;
                if (p < text_.size() && (text_[p] == '+' || text_[p] == '-'))
                    ++p;
                if (p < text_.size() && digit(text_[p])) {
                    is_float = true;
                    pos_ = p;
                    while (pos_ < text_.size() && digit(text_[pos_]))
                        ++pos_;
                }
            }
            return make(is_float ? Tok::Float : Tok::Int, begin);
        }
        if (text_.substr(pos_, 2) == ".." || text_.substr(pos_, 2) == ">=") {
            pos_ += 2;
            return make(Tok::Punct, begin);
        }
        static constexpr std::string_view kPunct = ";:[]()+-*/^=,";
        if (kPunct.find(c) != std::string_view::npos) {
            ++pos_;
            return make(Tok::Punct, begin);
        }
        throw ParseError(ErrorKind::SyntaxError, "unexpected character", span(begin, begin + 1));
    }

    Token make(Tok kind, std::size_t begin) const {
        return {kind, std::string(text_.substr(begin, pos_ - begin)), span(begin, pos_)};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<std::size_t> line_starts_;
};

struct SequenceDecl {
    bool external = false;
};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

    Recurrence run() {
        while (is_ident("seq") || is_ident("const"))
            parse_decl();
        expect_ident("rec");
        expect(":");
        parse_equation();
        expect(";");
        expect_ident("range");
        expect(":");
        parse_range();
        expect(";");
        if (is_ident("init")) {
            const SourceSpan begin = peek().span;
            advance();
            expect(":");
            parse_assignments();
            rec_.spans.init = join(begin, prev().span);
            expect(";");
        }
        if (is_ident("alias")) {
            const SourceSpan begin = peek().span;
            advance();
            expect(":");
            parse_aliases();
            rec_.spans.alias = join(begin, prev().span);
            expect(";");
        }
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "' after the last clause");
        finish();
        return std::move(rec_);
    }

private:
    // --- token helpers --------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& prev() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size())
            ++pos_;
        return t;
    }
    bool is_punct(std::string_view p, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
    }
    bool is_ident(std::string_view name) const { return peek().kind == Tok::Ident && peek().text == name; }

    [[noreturn]] void fail(const std::string& message, ErrorKind kind = ErrorKind::SyntaxError) const {
        throw ParseError(kind, message, peek().span);
    }
    [[noreturn]] void fail_at(const SourceSpan& span, const std::string& message,
                              ErrorKind kind = ErrorKind::SyntaxError) const {
        throw ParseError(kind, message, span);
    }

    static std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

    void expect(std::string_view p) {
        if (!is_punct(p))
            fail("expected '" + std::string(p) + "' but found " + describe(peek()));
        advance();
    }
    void expect_ident(std::string_view name) {
        if (!is_ident(name))
            fail("expected '" + std::string(name) + "' but found " + describe(peek()));
        advance();
    }
    std::string expect_name() {
        if (peek().kind != Tok::Ident)
            fail("expected an identifier but found " + describe(peek()));
        return advance().text;
    }

    long parse_long(const Token& t) const {
        if (t.text.size() > 18)
            fail_at(t.span, "integer '" + t.text + "' is out of range");
        return std::stol(t.text);
    }
    long expect_int() {
        if (peek().kind != Tok::Int)
            fail("expected an integer but found " + describe(peek()));
        return parse_long(advance());
    }
    long expect_signed_int() {
        int sign = 1;
        if (is_punct("-") || is_punct("+")) {
            sign = advance().text == "-" ? -1 : 1;
        }
        return sign * expect_int();
    }

    static SourceSpan join(const SourceSpan& a, const SourceSpan& b) { return {a.begin, b.end, a.line, a.column}; }

    // --- declarations ----------------------------------------------------

    void check_fresh(const Token& t) const {
        static const std::set<std::string, std::less<>> reserved = {
            "n", "N", "x", "t", "seq", "const", "external", "rec", "range", "init", "alias", "bilateral"};
        if (reserved.count(t.text))
            fail_at(t.span, "'" + t.text + "' is reserved");
        if (sequences_.count(t.text) || constants_.count(t.text))
            fail_at(t.span, "'" + t.text + "' is declared twice");
    }

    void parse_decl() {
        if (advance().text == "seq") {
            const Token& name = peek();
            check_fresh(name);
            expect_name();
            SequenceDecl decl;
            if (is_ident("external")) {
                advance();
                decl.external = true;
            }
            sequences_.emplace(name.text, decl);
            if (decl.external)
                rec_.external_sequences.push_back(name.text);
        } else {
            const Token& name = peek();
            check_fresh(name);
            expect_name();
            ConstAtom atom{name.text, std::nullopt};
            if (is_punct("=")) {
                advance();
                std::string hint;
                if (is_punct("-") || is_punct("+"))
                    hint = advance().text;
                if (peek().kind != Tok::Int && peek().kind != Tok::Float)
                    fail("expected a number but found " + describe(peek()));
                hint += advance().text;
                atom.numeric_hint = hint;
            }
            constants_.insert(name.text);
            rec_.atoms.push_back(atom);
        }
        expect(";");
    }

    // --- coefficient expressions ----------------------------------------

    // Polynomials in n over Q(atoms).
    Poly constant(const Coeff& c) const { return Poly::constant(c, "n"); }

    bool at_sequence_ref() const {
        return peek().kind == Tok::Ident && sequences_.count(peek().text) && is_punct("[", 1);
    }

    bool starts_factor() const {
        const Token& t = peek();
        if (t.kind == Tok::Int)
            return true;
        if (t.kind == Tok::Ident)
            return !at_sequence_ref();
        return is_punct("(");
    }

    Poly parse_expr(bool allow_n) {
        enter();
        Poly value = constant(Coeff(0));
        bool first = true;
        for (;;) {
            int sign = 1;
            if (is_punct("+") || is_punct("-")) {
                sign = advance().text == "-" ? -1 : 1;
            } else if (!first) {
                break;
            }
            Poly term = parse_product(allow_n);
            value = sign > 0 ? value + term : value - term;
            first = false;
        }
        leave();
        return value;
    }

    Poly parse_product(bool allow_n) {
        Poly value = parse_power(allow_n);
        for (;;) {
            if (is_punct("*")) {
                advance();
                value = value * parse_power(allow_n);
            } else if (is_punct("/")) {
                advance();
                const SourceSpan where = peek().span;
                value = divide(value, parse_power(allow_n), where);
            } else {
                break;
            }
        }
        return value;
    }

    Poly divide(const Poly& num, const Poly& den, const SourceSpan& where) const {
        if (den.degree() > 0)
            fail_at(where, "coefficients must be polynomials in n");
        if (den.is_zero())
            fail_at(where, "division by zero");
        try {
            return num.scaled(Coeff(1) / den.leading());
        } catch (const Error&) {
            fail_at(where, "division by zero");
        }
    }

    Poly parse_power(bool allow_n) {
        const SourceSpan where = peek().span;
        Poly base = parse_primary(allow_n);
        if (!is_punct("^"))
            return base;
        advance();
        const long e = expect_signed_int();
        if (e > kMaxExponent || e < -kMaxExponent)
            fail_at(prev().span, "exponent is too large");
        if (e < 0) {
            if (base.degree() > 0)
                fail_at(where, "coefficients must be polynomials in n");
            if (base.is_zero())
                fail_at(where, "division by zero");
            return constant(base.leading().pow(e));
        }
        Poly out = constant(Coeff(1));
        for (long i = 0; i < e; ++i)
            out = out * base;
        return out;
    }

    Poly parse_primary(bool allow_n) {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            advance();
            return constant(Coeff(*Rational::parse(t.text)));
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "n") {
                if (!allow_n)
                    fail("'n' is not allowed here");
                advance();
                return Poly::identity("n");
            }
            if (constants_.count(t.text)) {
                advance();
                return constant(Coeff::atom(t.text));
            }
            if (sequences_.count(t.text))
                fail("sequence '" + t.text + "' cannot appear inside a coefficient");
            if (is_punct("[", 1))
                fail("sequence '" + t.text + "' is not declared", ErrorKind::MissingSequenceDecl);
            fail("undeclared constant '" + t.text + "'");
        }
        if (is_punct("(")) {
            advance();
            Poly inner = parse_expr(allow_n);
            expect(")");
            return inner;
        }
        fail("expected a coefficient but found " + describe(t));
    }

    void enter() {
        if (++depth_ > kMaxNesting)
            fail("expression is nested too deeply");
    }
    void leave() { --depth_; }

    // --- equation ---------------------------------------------------------

    // IDENT "[" "n" (("+"|"-") INT)? "]"; returns the shift.
    long parse_shift_ref() {
        expect("[");
        if (!is_ident("n"))
            fail("expected 'n' but found " + describe(peek()));
        advance();
        long shift = 0;
        if (is_punct("+") || is_punct("-")) {
            const int sign = advance().text == "-" ? -1 : 1;
            shift = sign * expect_int();
            if (shift > kMaxShift || shift < -kMaxShift)
                fail_at(prev().span, "shift is too large");
        }
        expect("]");
        return shift;
    }

    void add_term(int sign, Poly coeff, long shift, const SourceSpan& span) {
        for (const auto& t : rec_.terms)
            if (t.shift == shift)
                fail_at(span, "shift " + std::to_string(shift) + " appears twice", ErrorKind::DuplicateShift);
        if (sign < 0)
            coeff = -coeff;
        rec_.terms.push_back({shift, std::move(coeff), span});
    }

    void parse_term(int sign, const SourceSpan& start) {
        Poly coeff = constant(Coeff(1));
        bool have_coeff = false;
        while (!at_sequence_ref()) {
            if (peek().kind == Tok::Ident && !constants_.count(peek().text) && peek().text != "n" &&
                is_punct("[", 1))
                fail("sequence '" + peek().text + "' is not declared", ErrorKind::MissingSequenceDecl);
            if (have_coeff && is_punct("*")) {
                advance();
                continue;
            }
            if (have_coeff && is_punct("/")) {
                advance();
                const SourceSpan where = peek().span;
                coeff = divide(coeff, parse_power(true), where);
                continue;
            }
            if (!starts_factor())
                fail("expected a term but found " + describe(peek()));
            coeff = coeff * parse_power(true);
            have_coeff = true;
        }
        const Token& name = advance();
        if (sequences_.at(name.text).external)
            fail_at(name.span, "external sequence '" + name.text + "' may only appear on the right-hand side");
        if (rec_.sequence.empty())
            rec_.sequence = name.text;
        else if (rec_.sequence != name.text)
            fail_at(name.span, "only one sequence may appear in the recurrence");
        const long shift = parse_shift_ref();
        add_term(sign, std::move(coeff), shift, join(start, prev().span));
    }

    void parse_equation() {
        const SourceSpan start = peek().span;
        bool first = true;
        for (;;) {
            int sign = 1;
            const SourceSpan term_start = peek().span;
            if (is_punct("+") || is_punct("-")) {
                sign = advance().text == "-" ? -1 : 1;
            } else if (!first) {
                break;
            }
            parse_term(sign, term_start);
            first = false;
        }
        expect("=");
        int sign = 1;
        if (is_punct("-")) {
            advance();
            sign = -1;
        }
        if (peek().kind == Tok::Int && peek().text == "0" && sign > 0) {
            advance();
        } else if (peek().kind == Tok::Ident) {
            const Token& name = advance();
            auto it = sequences_.find(name.text);
            if (it == sequences_.end())
                fail_at(name.span, "sequence '" + name.text + "' is not declared", ErrorKind::MissingSequenceDecl);
            if (!it->second.external)
                fail_at(name.span, "forcing sequence '" + name.text + "' must be declared external");
            const long shift = parse_shift_ref();
            if (shift != 0)
                fail_at(prev().span, "the forcing sequence must be indexed by [n]");
            rec_.forcing = Forcing{name.text, sign};
        } else {
            fail("expected '0' or a forcing sequence but found " + describe(peek()));
        }
        rec_.spans.equation = join(start, prev().span);
    }

    // --- range, init, alias -------------------------------------------------

    void parse_range() {
        const SourceSpan start = peek().span;
        if (is_ident("bilateral")) {
            advance();
            rec_.range = {RangeKind::Bilateral, 0};
        } else if (is_ident("n")) {
            advance();
            expect(">=");
            rec_.range = {RangeKind::OneSided, expect_signed_int()};
        } else {
            const long n0 = expect_signed_int();
            expect("..");
            expect_ident("N");
            rec_.range = {RangeKind::Finite, n0};
        }
        rec_.spans.range = join(start, prev().span);
    }

    long parse_index_ref() {
        const Token& name = peek();
        if (name.kind != Tok::Ident)
            fail("expected a sequence reference but found " + describe(name));
        if (!sequences_.count(name.text))
            fail("sequence '" + name.text + "' is not declared", ErrorKind::MissingSequenceDecl);
        if (name.text != rec_.sequence)
            fail("expected a value of '" + rec_.sequence + "'");
        advance();
        expect("[");
        const long index = expect_signed_int();
        expect("]");
        return index;
    }

    void parse_assignments() {
        for (;;) {
            const SourceSpan where = peek().span;
            const long index = parse_index_ref();
            expect("=");
            const Poly value = parse_expr(false);
            if (rec_.initial_values.count(index))
                fail_at(where, "initial value for index " + std::to_string(index) + " given twice");
            rec_.initial_values.emplace(index, value[0].to_expr());
            if (!is_punct(","))
                break;
            advance();
        }
    }

    void parse_aliases() {
        for (;;) {
            const SourceSpan where = peek().span;
            const long index = parse_index_ref();
            expect("=");
            int sign = 1;
            if (is_punct("-") || is_punct("+"))
                sign = advance().text == "-" ? -1 : 1;
            const long target = parse_index_ref();
            if (rec_.aliases.count(index))
                fail_at(where, "alias for index " + std::to_string(index) + " given twice");
            if (rec_.range.kind != RangeKind::Bilateral && index >= rec_.range.n0)
                fail_at(where, "aliases may only name indices below the range start");
            if (index == target)
                fail_at(where, "an alias cannot refer to itself");
            rec_.aliases.emplace(index, Alias{target, sign});
            if (!is_punct(","))
                break;
            advance();
        }
    }

    // --- invariants ---------------------------------------------------------

    void finish() {
        std::erase_if(rec_.terms, [](const RecurrenceTerm& t) { return t.coeff.is_zero(); });
        std::sort(rec_.terms.begin(), rec_.terms.end(),
                  [](const RecurrenceTerm& a, const RecurrenceTerm& b) { return a.shift > b.shift; });
        const bool enough = rec_.terms.size() >= 2 || (rec_.terms.size() == 1 && rec_.forcing);
        if (!enough)
            fail_at(rec_.spans.equation, "a recurrence needs two nonzero terms, or one term and a forcing sequence");
        if (rec_.terms.size() >= 2 && rec_.order() < 1)
            fail_at(rec_.spans.equation, "recurrence order must be at least 1");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    std::map<std::string, SequenceDecl, std::less<>> sequences_;
    std::set<std::string, std::less<>> constants_;
    Recurrence rec_;
};

} // namespace

std::string_view to_string(Severity severity) {
    switch (severity) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
    }
    return "error";
}

ParseError::ParseError(ErrorKind kind, const std::string& message, SourceSpan span)
    : Error(kind, std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
      span_(span),
      detail_(message) {}

int Recurrence::max_degree() const {
    int d = 0;
    for (const auto& t : terms)
        d = std::max(d, t.coeff.degree());
    return d;
}

const RecurrenceTerm* Recurrence::term(long shift) const {
    for (const auto& t : terms)
        if (t.shift == shift)
            return &t;
    return nullptr;
}

const ConstAtom* Recurrence::atom(std::string_view name) const {
    for (const auto& a : atoms)
        if (a.name == name)
            return &a;
    return nullptr;
}

std::string Recurrence::value_symbol(long index) const { return sequence + "[" + std::to_string(index) + "]"; }

std::optional<Coeff> Recurrence::initial_value(long index) const {
    auto it = initial_values.find(index);
    if (it == initial_values.end())
        return std::nullopt;
    return it->second.to_coeff();
}

bool operator==(const Recurrence& a, const Recurrence& b) {
    return a.sequence == b.sequence && a.external_sequences == b.external_sequences && a.atoms.size() == b.atoms.size() &&
           std::equal(a.atoms.begin(), a.atoms.end(), b.atoms.begin(),
                      [](const ConstAtom& x, const ConstAtom& y) {
                          return x.name == y.name && x.numeric_hint == y.numeric_hint;
                      }) &&
           a.terms == b.terms && a.forcing == b.forcing && a.range == b.range &&
           a.initial_values == b.initial_values && a.aliases == b.aliases;
}

Recurrence parse_recurrence(std::string_view text) {
    try {
        return Parser(text).run();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        // Arithmetic failures inside coefficients surface as syntax errors.
        throw ParseError(ErrorKind::SyntaxError, e.what(), SourceSpan{0, 0, 1, 1});
    }
}

ParseResult parse_with_diagnostics(std::string_view text) {
    ParseResult out;
    try {
        out.recurrence = parse_recurrence(text);
        out.diagnostics = validate(*out.recurrence);
    } catch (const ParseError& e) {
        out.recurrence.reset();
        out.diagnostics.push_back({Severity::Error, e.what(), e.span()});
    }
    return out;
}

} // namespace recsum
