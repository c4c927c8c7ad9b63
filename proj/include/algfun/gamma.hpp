#pragma once

#include <optional>

#include "algfun/matrix.hpp"

namespace algfun {

/// Unimodular row (a, b) with a certifying witness a*b1 + b*b2 = 1.
struct UnimodRow {
    MultiPoly a, b;
    MultiPoly b1, b2;
};

/// Extended-Euclid witness for univariate (or constant) a, b over Q;
/// nullopt when the gcd is not a nonzero constant.
std::optional<std::pair<MultiPoly, MultiPoly>> euclid_witness(const MultiPoly& a,
                                                              const MultiPoly& b);

/// With a witness: checks the identity. Without: runs euclid_witness; a
/// failed search throws with an "unknown" message, never "not unimodular".
UnimodRow verify_unimodular(const MultiPoly& a, const MultiPoly& b,
                            std::optional<std::pair<MultiPoly, MultiPoly>> witness = std::nullopt);

/// sigma = [[a, -b2], [b, b1]]; det = a*b1 + b*b2 = 1.
Mat2 complete_row(const UnimodRow& r);

/// [a,b] * [c,d] = first column of complete_row(r) * complete_row(s), with
/// the witness read off the adjugate of the product.
UnimodRow gamma_product(const UnimodRow& r, const UnimodRow& s);

/// Witness that row_out = target * row_in with target connected to the
/// identity by the path beta (beta(0) = I, beta(1) = target, det beta = 1).
struct GammaEquivCert {
    Mat2 beta;
    std::string path_var = "T";
    Mat2 target;
    UnimodRow row_in, row_out;
};

VerifyReport gamma_equiv_verify(const GammaEquivCert& cert);

/// Splitting data over a domain: s*u + t*v = 1, sigma over the localization
/// at s*t with sigma(0) = I, psi1 over the localization at s, psi2 at t.
struct QuillenSplitData {
    RingPtr base;
    MultiPoly s, t, u, v;
    Mat2 sigma, psi1, psi2;
    std::string var = "X";
};

/// True iff the images of psi1 and psi2 in the localization at s*t multiply
/// to sigma, checked entrywise by cross-multiplied numerators; every failed
/// condition is itemized.
VerifyReport quillen_split_verify(const QuillenSplitData& d);

/// The circle coordinate rings: A = Q[x,y]/(x^2+y^2-1) with u = 1-y,
/// v = 1+y, the localizations A_u, A_v, A_uv, and the rational chart
/// A_u ~ Q[eta] localized at 1+eta^2, where eta = x/u.
struct CircleCharts {
    RingPtr A, A_u, A_v, A_uv;
    RingPtr eta_ring;
    RingElement u, v; // in A

    /// A_u -> eta chart: x -> 2 eta/(1+eta^2), y -> (eta^2-1)/(1+eta^2),
    /// 1/u -> (1+eta^2)/2.
    RingElement to_eta_chart(const RingElement& e) const;
    /// eta chart -> A_u: eta -> x/u, 1/(1+eta^2) -> u/2.
    RingElement from_eta_chart(const RingElement& e) const;
};

CircleCharts circle_charts();

/// Topological degree of the row (a, b) over the circle ring as a self-map
/// of the circle, via two rational charts and the quarter-turn walk.
long circle_degree(const UnimodRow& r);

} // namespace algfun
