#pragma once

#include <memory>

#include "algfun/poly.hpp"

namespace algfun {

/// Parsed polynomial expression. Grammar (division-free; rationals are
/// single lexical tokens like 3/2):
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | atom ('^' nat)?
///   atom   := rational | identifier | '(' expr ')'
struct Expr {
    enum class Kind { Rational, Var, Add, Sub, Mul, Neg, Pow };
    Kind kind;
    mpq_class value;          // Rational
    std::string name;         // Var
    std::shared_ptr<const Expr> lhs, rhs;
    unsigned exponent = 0;    // Pow
    int line = 1, col = 1;    // position of the node's first token
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Throws ParseError with a 1-based position on any lexical/syntax error.
ExprPtr parse_expr(const std::string& text);

/// Identifier binding: eps is the nilpotent generator of a dual-number
/// ring; the variables of a quotient relation name that ring's coordinates
/// (recursively through localizations). Anything else is a polynomial
/// variable. eps under a non-dual ring is an error.
MultiPoly to_poly(const ExprPtr& ast, const RingPtr& ring);

/// parse + to_poly in one step.
MultiPoly parse_poly(const std::string& text, const RingPtr& ring);

/// Deterministic graded-lex printing (highest term first); for rational,
/// dual-number, and quotient coefficients, parse_poly(print_canonical(p))
/// returns p. Localization and product coefficients print in a diagnostic
/// form that is not re-parseable (their payloads travel as structured JSON).
std::string print_canonical(const MultiPoly& p);

} // namespace algfun
