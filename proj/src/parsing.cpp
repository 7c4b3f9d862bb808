#include "superline/parsing.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <variant>

namespace superline {

namespace {

struct Token {
    enum Kind { Ident, Int, Punct, End };
    Kind kind = End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(&src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok_.line, tok_.col);
    }

private:
    void advance() {
        const std::string& s = *src_;
        while (pos_ < s.size() &&
               (s[pos_] == ' ' || s[pos_] == '\t' || s[pos_] == '\n' ||
                s[pos_] == '\r')) {
            if (s[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s.size()) {
            tok_.kind = Token::End;
            tok_.text.clear();
            return;
        }
        char c = s[pos_];
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = pos_;
            while (pos_ < s.size() &&
                   (std::isalnum((unsigned char)s[pos_]) || s[pos_] == '_'))
                take();
            tok_.kind = Token::Ident;
            tok_.text = s.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos_;
            while (pos_ < s.size() && std::isdigit((unsigned char)s[pos_]))
                take();
            tok_.kind = Token::Int;
            tok_.text = s.substr(start, pos_ - start);
            return;
        }
        tok_.kind = Token::Punct;
        tok_.text = std::string(1, c);
        take();
    }

    void take() {
        ++pos_;
        ++col_;
    }

    const std::string* src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

// Rational literals are kept unmaterialized until they combine with a
// model-bearing value, so one parser serves both scalar models.
using Pending = std::variant<Rational, Scalar>;

class ExprParser {
public:
    ExprParser(const std::string& src, const Session& s) : lx_(src), s_(s) {}

    Scalar parse_scalar_all() {
        Scalar v = materialize(parse_sum());
        expect_end();
        return v;
    }

    std::vector<Scalar> parse_list_all() {
        std::vector<Scalar> v = parse_list();
        expect_end();
        return v;
    }

    SuperDiffOp parse_operator_all() {
        SuperDiffOp a = parse_opsum();
        expect_end();
        return a;
    }

    FormatMatrix parse_matrix_all() {
        FormatMatrix m = parse_matrix();
        expect_end();
        return m;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { lx_.fail(msg); }

    void expect_end() {
        if (lx_.peek().kind != Token::End) fail("trailing input after expression");
    }

    bool at_punct(const char* p) const {
        return lx_.peek().kind == Token::Punct && lx_.peek().text == p;
    }
    bool at_ident(const char* w) const {
        return lx_.peek().kind == Token::Ident && lx_.peek().text == w;
    }
    void eat_punct(const char* p) {
        if (!at_punct(p)) fail(std::string("expected '") + p + "'");
        lx_.next();
    }

    long parse_int() {
        bool neg = false;
        if (at_punct("-")) {
            lx_.next();
            neg = true;
        }
        if (lx_.peek().kind != Token::Int) fail("expected an integer");
        long v = std::stol(lx_.next().text);
        return neg ? -v : v;
    }

    // Every math failure while evaluating input is an input error, so it
    // carries a source position and maps to the parse exit code.
    template <typename F>
    auto guarded(F&& f) -> decltype(f()) {
        int line = lx_.peek().line, col = lx_.peek().col;
        try {
            return f();
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), line, col);
        }
    }

    Scalar materialize(const Pending& p) {
        if (std::holds_alternative<Scalar>(p)) return std::get<Scalar>(p);
        const Rational& q = std::get<Rational>(p);
        if (s_.symbolic()) return Scalar(SymbolicScalar::constant(q));
        return Scalar(SuperFunction::rational(q));
    }

    static Pending add(const Pending& a, const Pending& b) {
        if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
            return Rational(std::get<Rational>(a) + std::get<Rational>(b));
        if (std::holds_alternative<Rational>(a))
            return rational_like(std::get<Scalar>(b), std::get<Rational>(a)) +
                   std::get<Scalar>(b);
        if (std::holds_alternative<Rational>(b))
            return std::get<Scalar>(a) +
                   rational_like(std::get<Scalar>(a), std::get<Rational>(b));
        return std::get<Scalar>(a) + std::get<Scalar>(b);
    }

    static Pending mul(const Pending& a, const Pending& b) {
        if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
            return Rational(std::get<Rational>(a) * std::get<Rational>(b));
        if (std::holds_alternative<Rational>(a))
            return scaled(std::get<Scalar>(b), std::get<Rational>(a));
        if (std::holds_alternative<Rational>(b))
            return scaled(std::get<Scalar>(a), std::get<Rational>(b));
        return std::get<Scalar>(a) * std::get<Scalar>(b);
    }

    static Pending negate(const Pending& a) {
        if (std::holds_alternative<Rational>(a))
            return Rational(-std::get<Rational>(a));
        return -std::get<Scalar>(a);
    }

    Pending power(const Pending& a, long e) {
        if (std::holds_alternative<Rational>(a)) {
            const Rational& q = std::get<Rational>(a);
            if (e < 0) {
                if (q == 0) fail("zero has no inverse");
                Rational inv = Rational(1) / q;
                Rational r = 1;
                for (long i = 0; i < -e; ++i) r = r * inv;
                return r;
            }
            Rational r = 1;
            for (long i = 0; i < e; ++i) r = r * q;
            return r;
        }
        Scalar base = std::get<Scalar>(a);
        if (e < 0) {
            base = invert(base, s_.trunc);
            e = -e;
        }
        Scalar r = one_like(base);
        for (long i = 0; i < e; ++i) r = r * base;
        return r;
    }

    Pending parse_sum() {
        Pending v = parse_prod();
        while (at_punct("+") || at_punct("-")) {
            bool minus = lx_.next().text == "-";
            Pending w = parse_prod();
            if (minus) w = negate(w);
            v = guarded([&] { return add(v, w); });
        }
        return v;
    }

    Pending parse_prod() {
        Pending v = parse_unary();
        while (at_punct("*")) {
            lx_.next();
            Pending w = parse_unary();
            v = guarded([&] { return mul(v, w); });
        }
        return v;
    }

    Pending parse_unary() {
        if (at_punct("-")) {
            lx_.next();
            return negate(parse_unary());
        }
        return parse_pow();
    }

    Pending parse_pow() {
        Pending v = parse_atom();
        if (at_punct("^")) {
            lx_.next();
            long e = parse_int();
            v = guarded([&] { return power(v, e); });
        }
        return v;
    }

    void require_concrete(const char* what) {
        if (s_.symbolic())
            fail(std::string(what) + " cannot appear with declared symbols");
    }

    Pending parse_atom() {
        const Token& t = lx_.peek();
        if (t.kind == Token::Int) {
            Rational num(lx_.next().text);
            if (at_punct("/")) {
                lx_.next();
                if (lx_.peek().kind != Token::Int) fail("expected a denominator");
                Rational den(lx_.next().text);
                if (den == 0) fail("zero denominator");
                Rational q = num / den;
                q.canonicalize();
                return q;
            }
            return num;
        }
        if (at_punct("(")) {
            lx_.next();
            Pending v = parse_sum();
            eat_punct(")");
            return v;
        }
        if (t.kind != Token::Ident) fail("expected an expression");
        if (t.text == "D") return parse_jet();
        if (t.text == "O") return parse_trunc_marker();
        if (t.text == "x") {
            require_concrete("the coordinate x");
            lx_.next();
            return Scalar(SuperFunction::x());
        }
        if (t.text == "xi") {
            require_concrete("the coordinate xi");
            lx_.next();
            return Scalar(SuperFunction::xi());
        }
        std::string name = lx_.next().text;
        for (size_t i = 0; i < s_.gens.size(); ++i)
            if (s_.gens[i] == name)
                return Scalar(SuperFunction::constant(Grassmann::generator((int)i),
                                                      Parity::Odd));
        auto jt = s_.jets.find(name);
        if (jt != s_.jets.end())
            return Scalar(SymbolicScalar::jet(name, jt->second));
        if (s_.odd_consts.count(name))
            return Scalar(SymbolicScalar::odd_constant(name));
        fail("undeclared symbol " + name);
    }

    // D(f), D^k(f): derivative application.  A bare D is only meaningful
    // in operator context.
    Pending parse_jet() {
        lx_.next();
        long k = 1;
        if (at_punct("^")) {
            lx_.next();
            k = parse_int();
            if (k < 0) fail("negative derivative order");
        }
        if (!at_punct("("))
            fail("bare D is an operator; in scalar context write D(f)");
        eat_punct("(");
        Pending v = parse_sum();
        eat_punct(")");
        return guarded([&] {
            return Pending(superderivative(materialize(v), (int)k));
        });
    }

    // O(x^K) marks a series known through degree K-1.
    Pending parse_trunc_marker() {
        lx_.next();
        require_concrete("a truncation marker");
        eat_punct("(");
        if (!at_ident("x")) fail("expected x in O(...)");
        lx_.next();
        long k = 1;
        if (at_punct("^")) {
            lx_.next();
            k = parse_int();
        }
        if (k < 1) fail("truncation marker needs a positive power");
        eat_punct(")");
        return Scalar(SuperFunction(Parity::Even, Series::truncated({}, (int)k - 1),
                                    Series()));
    }

    std::vector<Scalar> parse_list() {
        eat_punct("[");
        std::vector<Scalar> v;
        if (!at_punct("]")) {
            v.push_back(materialize(parse_sum()));
            while (at_punct(",")) {
                lx_.next();
                v.push_back(materialize(parse_sum()));
            }
        }
        eat_punct("]");
        return v;
    }

    // Operators: sums of composition chains; a chain multiplies scalar
    // factors until an optional bare D power ends the term.
    SuperDiffOp parse_opsum() {
        SuperDiffOp a = parse_opcomp();
        while (at_punct("+") || at_punct("-")) {
            bool minus = lx_.next().text == "-";
            SuperDiffOp b = parse_opcomp();
            a = guarded([&] { return minus ? a - b : a + b; });
        }
        return a;
    }

    SuperDiffOp parse_opcomp() {
        SuperDiffOp a = parse_opterm();
        while (at_ident("o")) {
            lx_.next();
            SuperDiffOp b = parse_opterm();
            a = guarded([&] { return compose(a, b); });
        }
        return a;
    }

    bool at_bare_d() {
        if (!at_ident("D")) return false;
        // D followed by ( is a derivative application, not the operator
        Lexer save = lx_;
        save.next();
        if (save.peek().kind == Token::Punct && save.peek().text == "(") return false;
        if (save.peek().kind == Token::Punct && save.peek().text == "^") {
            save.next();
            if (save.peek().kind == Token::Int) {
                save.next();
                if (save.peek().kind == Token::Punct && save.peek().text == "(")
                    return false;
            }
        }
        return true;
    }

    // One summand: scalar factors joined by * until an optional operator
    // factor (a bare D power or a parenthesized operator) ends the term.
    SuperDiffOp parse_opterm() {
        if (at_punct("-")) {
            lx_.next();
            return -parse_opterm();
        }
        std::optional<Pending> coeff;
        while (true) {
            if (at_bare_d()) {
                lx_.next();
                long k = 1;
                if (at_punct("^")) {
                    lx_.next();
                    k = parse_int();
                    if (k < 0) fail("negative operator power");
                }
                Scalar one = s_.symbolic() ? Scalar(SymbolicScalar::one())
                                           : Scalar(SuperFunction::one());
                return finish_opterm(coeff, SuperDiffOp::monomial(one, (int)k));
            }
            if (at_punct("(")) {
                lx_.next();
                SuperDiffOp a = parse_opsum();
                eat_punct(")");
                if (a.order() > 0) {
                    if (at_punct("^"))
                        fail("operator powers are not supported; compose with o");
                    return finish_opterm(coeff, a);
                }
                Pending f = a.coeff(0);
                if (at_punct("^")) {
                    lx_.next();
                    long e = parse_int();
                    f = guarded([&] { return power(f, e); });
                }
                coeff = coeff ? guarded([&] { return mul(*coeff, f); }) : f;
            } else {
                Pending f = parse_pow();
                coeff = coeff ? guarded([&] { return mul(*coeff, f); }) : f;
            }
            if (at_punct("*")) {
                lx_.next();
                continue;
            }
            return SuperDiffOp::constant(materialize(*coeff));
        }
    }

    SuperDiffOp finish_opterm(const std::optional<Pending>& coeff, SuperDiffOp a) {
        if (at_punct("*"))
            fail("operators compose with o, not *");
        if (!coeff) return a;
        return guarded([&] { return a.scale_left(materialize(*coeff)); });
    }

    std::vector<Parity> parse_signs() {
        std::vector<Parity> v;
        while (at_punct("+") || at_punct("-"))
            v.push_back(lx_.next().text == "+" ? Parity::Even : Parity::Odd);
        if (v.empty()) fail("expected a +/- parity list");
        return v;
    }

    FormatMatrix parse_matrix() {
        if (!at_ident("format")) fail("matrix literal must start with 'format'");
        lx_.next();
        MatrixFormat fmt;
        Wrongness wrong = Wrongness::none();
        while (lx_.peek().kind == Token::Ident) {
            std::string key = lx_.next().text;
            eat_punct("=");
            if (key == "rows") {
                fmt.rows = parse_signs();
            } else if (key == "cols") {
                fmt.cols = parse_signs();
            } else if (key == "wrong") {
                if (!at_ident("row") && !at_ident("col"))
                    fail("wrong= takes row:i or col:j");
                bool is_row = lx_.next().text == "row";
                eat_punct(":");
                long idx = parse_int();
                wrong = is_row ? Wrongness::row((int)idx) : Wrongness::col((int)idx);
            } else {
                fail("unknown matrix header key " + key);
            }
        }
        if (fmt.rows.empty() || fmt.cols.empty())
            fail("matrix header needs rows= and cols=");
        int line = lx_.peek().line, col = lx_.peek().col;
        eat_punct("[");
        std::vector<std::vector<Scalar>> entries;
        entries.push_back(parse_list());
        while (at_punct(",")) {
            lx_.next();
            entries.push_back(parse_list());
        }
        eat_punct("]");
        try {
            return FormatMatrix(std::move(fmt), std::move(entries), wrong);
        } catch (const Error& e) {
            throw ParseError(e.what(), line, col);
        }
    }

    Lexer lx_;
    const Session& s_;
};

bool reserved_name(const std::string& n) {
    static const std::set<std::string> kw{"x",    "xi",   "D",    "o",
                                          "O",    "format", "rows", "cols",
                                          "wrong", "row",  "col"};
    return kw.count(n) != 0;
}

bool is_decl_line(const std::string& line, std::string& kw, std::istringstream& rest) {
    rest.str(line);
    rest.clear();
    if (!(rest >> kw)) {
        kw = "blank";
        return true; // blank lines between declarations are fine
    }
    if (kw[0] == '#') {
        kw = "blank";
        return true;
    }
    return kw == "truncation" || kw == "generators" || kw == "declare";
}

} // namespace

size_t parse_declarations(const std::vector<std::string>& lines, Session& s) {
    size_t i = 0;
    for (; i < lines.size(); ++i) {
        std::string kw;
        std::istringstream rest;
        if (!is_decl_line(lines[i], kw, rest)) break;
        if (kw == "blank") continue;
        int lineno = (int)i + 1;
        if (kw == "truncation") {
            int t;
            if (!(rest >> t) || t < 0)
                throw ParseError("truncation needs a nonnegative integer", lineno, 1);
            s.trunc = t;
        } else if (kw == "generators") {
            std::string name;
            while (rest >> name) {
                if (reserved_name(name))
                    throw ParseError("reserved name " + name, lineno, 1);
                s.gens.push_back(name);
            }
            if (s.gens.empty())
                throw ParseError("generators needs at least one name", lineno, 1);
        } else {
            std::string kind, name;
            if (!(rest >> kind))
                throw ParseError("declare needs odd|even|oddconst", lineno, 1);
            bool any = false;
            while (rest >> name) {
                any = true;
                if (reserved_name(name))
                    throw ParseError("reserved name " + name, lineno, 1);
                if (kind == "odd")
                    s.jets[name] = Parity::Odd;
                else if (kind == "even")
                    s.jets[name] = Parity::Even;
                else if (kind == "oddconst")
                    s.odd_consts.insert(name);
                else
                    throw ParseError("declare needs odd|even|oddconst", lineno, 1);
            }
            if (!any) throw ParseError("declare needs at least one name", lineno, 1);
        }
    }
    return i;
}

Scalar parse_scalar(const std::string& src, const Session& s) {
    return ExprParser(src, s).parse_scalar_all();
}

std::vector<Scalar> parse_scalar_list(const std::string& src, const Session& s) {
    return ExprParser(src, s).parse_list_all();
}

SuperDiffOp parse_operator(const std::string& src, const Session& s) {
    return ExprParser(src, s).parse_operator_all();
}

FormatMatrix parse_matrix(const std::string& src, const Session& s) {
    return ExprParser(src, s).parse_matrix_all();
}

} // namespace superline
