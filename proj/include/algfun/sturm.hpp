#pragma once

#include <gmpxx.h>

#include <vector>

#include "algfun/errors.hpp"

namespace algfun {

/// Dense univariate polynomial over Q, lowest degree first. Trailing zeros
/// are trimmed by the operations below; the zero polynomial is {}.
using QPoly = std::vector<mpq_class>;

QPoly qp_trim(QPoly p);
bool qp_is_zero(const QPoly& p);
int qp_degree(const QPoly& p); // -1 for zero
mpq_class qp_eval(const QPoly& p, const mpq_class& x);
QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const mpq_class& c);
QPoly qp_derivative(const QPoly& p);
/// Remainder of a by b (b nonzero).
QPoly qp_rem(const QPoly& a, const QPoly& b);
/// Monic gcd; gcd(0,0) = 0.
QPoly qp_gcd(QPoly a, QPoly b);
/// p / gcd(p, p'): same real roots, all simple.
QPoly qp_squarefree(const QPoly& p);

/// Sturm chain of a squarefree polynomial.
struct SturmChain {
    std::vector<QPoly> chain;

    explicit SturmChain(const QPoly& squarefree);

    /// Sign variations of the chain evaluated at x.
    int variations_at(const mpq_class& x) const;
    /// Number of roots in the half-open interval (a, b].
    int count_roots(const mpq_class& a, const mpq_class& b) const;
};

/// Open isolating interval (lo, hi) for one simple root.
struct RootInterval {
    mpq_class lo, hi;
};

/// Isolating intervals for all roots of p in the open interval (a, b),
/// sorted; interval endpoints are never roots of p. Requires p(a) != 0 and
/// p(b) != 0.
std::vector<RootInterval> isolate_roots(const QPoly& p, const mpq_class& a, const mpq_class& b);

/// Shrink an isolating interval below `width` by bisection, keeping the
/// endpoints off the root.
RootInterval refine_root(const QPoly& squarefree, RootInterval iv, const mpq_class& width);

int sign_of(const mpq_class& x);

} // namespace algfun
