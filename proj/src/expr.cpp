#include "algfun/expr.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace algfun {

namespace {

struct Token {
    enum class Kind { Num, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };
    Kind kind;
    mpq_class num;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= s_.size()) return {Token::Kind::End, 0, "", line, col};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return number(line, col);
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                id.push_back(advance());
            return {Token::Kind::Ident, 0, id, line, col};
        }
        advance();
        switch (c) {
            case '+': return {Token::Kind::Plus, 0, "+", line, col};
            case '-': return {Token::Kind::Minus, 0, "-", line, col};
            case '*': return {Token::Kind::Star, 0, "*", line, col};
            case '^': return {Token::Kind::Caret, 0, "^", line, col};
            case '(': return {Token::Kind::LParen, 0, "(", line, col};
            case ')': return {Token::Kind::RParen, 0, ")", line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

private:
    char advance() {
        char c = s_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
    }

    Token number(int line, int col) {
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits.push_back(advance());
        // A '/' immediately followed by digits extends the token to a
        // rational literal; there is no division operator in the grammar.
        std::string den;
        if (pos_ + 1 < s_.size() && s_[pos_] == '/' &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            advance(); // '/'
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                den.push_back(advance());
        }
        // Base 10 explicitly: gmp string constructors default to base 0,
        // where a leading zero selects octal.
        mpq_class q;
        if (den.empty()) {
            q = mpq_class(digits, 10);
        } else {
            if (mpz_class(den, 10) == 0)
                throw ParseError("rational literal with zero denominator", line, col);
            q = mpq_class(digits + "/" + den, 10);
        }
        q.canonicalize();
        return {Token::Kind::Num, q, digits + (den.empty() ? "" : "/" + den), line, col};
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) { cur_ = lex_.next(); }

    ExprPtr parse() {
        ExprPtr e = expr();
        if (cur_.kind != Token::Kind::End)
            throw ParseError("unexpected trailing input '" + describe(cur_) + "'", cur_.line,
                             cur_.col);
        return e;
    }

private:
    static std::string describe(const Token& t) {
        return t.kind == Token::Kind::End ? "<end>" : t.text;
    }

    Token eat() {
        Token t = cur_;
        cur_ = lex_.next();
        return t;
    }

    static ExprPtr mk(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

    ExprPtr expr() {
        ExprPtr e = term();
        while (cur_.kind == Token::Kind::Plus || cur_.kind == Token::Kind::Minus) {
            Token op = eat();
            ExprPtr r = term();
            Expr n{op.kind == Token::Kind::Plus ? Expr::Kind::Add : Expr::Kind::Sub};
            n.lhs = e;
            n.rhs = r;
            n.line = op.line;
            n.col = op.col;
            e = mk(std::move(n));
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (cur_.kind == Token::Kind::Star) {
            Token op = eat();
            ExprPtr r = factor();
            Expr n{Expr::Kind::Mul};
            n.lhs = e;
            n.rhs = r;
            n.line = op.line;
            n.col = op.col;
            e = mk(std::move(n));
        }
        return e;
    }

    ExprPtr factor() {
        if (cur_.kind == Token::Kind::Minus) {
            Token op = eat();
            ExprPtr r = factor();
            Expr n{Expr::Kind::Neg};
            n.lhs = r;
            n.line = op.line;
            n.col = op.col;
            return mk(std::move(n));
        }
        ExprPtr base = atom();
        if (cur_.kind == Token::Kind::Caret) {
            Token op = eat();
            if (cur_.kind != Token::Kind::Num || cur_.num.get_den() != 1 || sgn(cur_.num) < 0)
                throw ParseError("exponent must be a nonnegative integer", cur_.line, cur_.col);
            Token e = eat();
            if (!e.num.get_num().fits_uint_p())
                throw ParseError("exponent too large", e.line, e.col);
            Expr n{Expr::Kind::Pow};
            n.lhs = base;
            n.exponent = static_cast<unsigned>(e.num.get_num().get_ui());
            n.line = op.line;
            n.col = op.col;
            return mk(std::move(n));
        }
        return base;
    }

    ExprPtr atom() {
        if (cur_.kind == Token::Kind::Num) {
            Token t = eat();
            Expr n{Expr::Kind::Rational};
            n.value = t.num;
            n.line = t.line;
            n.col = t.col;
            return mk(std::move(n));
        }
        if (cur_.kind == Token::Kind::Ident) {
            Token t = eat();
            Expr n{Expr::Kind::Var};
            n.name = t.text;
            n.line = t.line;
            n.col = t.col;
            return mk(std::move(n));
        }
        if (cur_.kind == Token::Kind::LParen) {
            eat();
            ExprPtr e = expr();
            if (cur_.kind != Token::Kind::RParen)
                throw ParseError("expected ')'", cur_.line, cur_.col);
            eat();
            return e;
        }
        throw ParseError("expected a number, identifier, or '('; got '" + describe(cur_) + "'",
                         cur_.line, cur_.col);
    }

    Lexer lex_;
    Token cur_;
};

// Coordinate names bound by the ring itself rather than polynomial vars.
std::optional<RingElement> bound_constant(const RingPtr& ring, const std::string& name) {
    switch (ring->kind) {
        case RingKind::Dual:
            if (name == "eps") return RingElement::dual_eps(ring);
            return std::nullopt;
        case RingKind::Quotient: {
            const auto& vs = ring->relation->vars();
            if (std::find(vs.begin(), vs.end(), name) != vs.end())
                return RingElement::make_quotient(ring,
                                                  MultiPoly::variable(ring->base, name));
            auto inner = bound_constant(ring->base, name);
            if (inner)
                return RingElement::make_quotient(ring, MultiPoly::constant(*inner));
            return std::nullopt;
        }
        case RingKind::Localization: {
            auto inner = bound_constant(ring->base, name);
            if (inner)
                return RingElement::make_fraction(ring, MultiPoly::constant(*inner), 0);
            // A variable of the base polynomial ring (e.g. the denominator's
            // variable) is a coordinate of the localization too.
            const auto& dv = ring->denom->vars();
            if (std::find(dv.begin(), dv.end(), name) != dv.end())
                return RingElement::make_fraction(ring, MultiPoly::variable(ring->base, name), 0);
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

MultiPoly to_poly_rec(const ExprPtr& e, const RingPtr& ring) {
    switch (e->kind) {
        case Expr::Kind::Rational:
            return MultiPoly::constant(RingElement::from_rational(ring, e->value));
        case Expr::Kind::Var: {
            auto bc = bound_constant(ring, e->name);
            if (bc) return MultiPoly::constant(*bc);
            if (e->name == "eps")
                throw ParseError("eps is reserved for dual-number rings", e->line, e->col);
            return MultiPoly::variable(ring, e->name);
        }
        case Expr::Kind::Add: return to_poly_rec(e->lhs, ring) + to_poly_rec(e->rhs, ring);
        case Expr::Kind::Sub: return to_poly_rec(e->lhs, ring) - to_poly_rec(e->rhs, ring);
        case Expr::Kind::Mul: return to_poly_rec(e->lhs, ring) * to_poly_rec(e->rhs, ring);
        case Expr::Kind::Neg: return -to_poly_rec(e->lhs, ring);
        case Expr::Kind::Pow: return to_poly_rec(e->lhs, ring).pow(e->exponent);
    }
    throw InternalInconsistencyError("to_poly: unknown node kind");
}

std::string print_coeff_factor(const RingElement& c);

// A monomial like T^2*X; empty for the constant term.
std::string monomial_str(const MultiPoly::Exp& e, const std::vector<std::string>& vars) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        os << vars[i];
        if (e[i] > 1) os << "^" << e[i];
        first = false;
    }
    return os.str();
}

std::string print_coeff_factor(const RingElement& c) {
    switch (c.ring()->kind) {
        case RingKind::Integers:
        case RingKind::Rationals: return c.to_string();
        case RingKind::Dual: {
            // Single monomial c*eps^k prints bare; sums need parentheses.
            const auto& cs = c.dual_coeffs();
            int nonzero = 0;
            for (const auto& q : cs)
                if (q != 0) ++nonzero;
            std::string body = c.to_string();
            return nonzero > 1 ? "(" + body + ")" : body;
        }
        case RingKind::Quotient: {
            const MultiPoly& rep = c.quotient_rep();
            std::string body = print_canonical(rep);
            return rep.terms().size() > 1 ? "(" + body + ")" : body;
        }
        default: return "(" + c.to_string() + ")"; // diagnostic only
    }
}

} // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

MultiPoly to_poly(const ExprPtr& ast, const RingPtr& ring) { return to_poly_rec(ast, ring); }

MultiPoly parse_poly(const std::string& text, const RingPtr& ring) {
    return to_poly(parse_expr(text), ring);
}

std::string print_canonical(const MultiPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    bool plain = p.ring()->kind == RingKind::Rationals || p.ring()->kind == RingKind::Integers;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [exp, coef] = *it;
        std::string mono = monomial_str(exp, p.vars());
        if (plain) {
            mpq_class q = coef.rational_value();
            bool negative = q < 0;
            mpq_class mag = negative ? mpq_class(-q) : q;
            if (first)
                os << (negative ? "-" : "");
            else
                os << (negative ? " - " : " + ");
            if (mono.empty())
                os << mag.get_str();
            else if (mag == 1)
                os << mono;
            else
                os << mag.get_str() << "*" << mono;
        } else {
            if (!first) os << " + ";
            std::string cf = print_coeff_factor(coef);
            if (mono.empty())
                os << cf;
            else if (coef.is_one())
                os << mono;
            else
                os << cf << "*" << mono;
        }
        first = false;
    }
    return os.str();
}

} // namespace algfun
