#include "algfun/gamma.hpp"

#include "algfun/sturm.hpp"
#include "algfun/winding.hpp"

namespace algfun {

namespace {

// Extended Euclid on dense rational polynomials: returns (g, x, y) with
// a*x + b*y = g, g monic or zero.
struct ExtGcd {
    QPoly g, x, y;
};

ExtGcd qp_ext_gcd(QPoly a, QPoly b) {
    QPoly x0 = {1}, y0 = {}, x1 = {}, y1 = {1};
    a = qp_trim(std::move(a));
    b = qp_trim(std::move(b));
    while (!b.empty()) {
        // Quotient and remainder of a by b.
        QPoly q, r = a;
        q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 1, mpq_class(0));
        while (r.size() >= b.size()) {
            mpq_class c = r.back() / b.back();
            size_t shift = r.size() - b.size();
            q[shift] = c;
            for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
            r = qp_trim(std::move(r));
            if (r.empty()) break;
        }
        QPoly x2 = qp_sub(x0, qp_mul(q, x1));
        QPoly y2 = qp_sub(y0, qp_mul(q, y1));
        a = std::move(b);
        b = std::move(r);
        x0 = std::move(x1);
        x1 = std::move(x2);
        y0 = std::move(y1);
        y1 = std::move(y2);
    }
    return {a, x0, y0};
}

MultiPoly qpoly_to_multipoly(const QPoly& p, const RingPtr& ring, const std::string& var) {
    MultiPoly out = MultiPoly::zero(ring);
    MultiPoly t = MultiPoly::variable(ring, var);
    MultiPoly pw = MultiPoly::constant(ring, 1);
    for (const auto& c : p) {
        out = out + pw.scale(RingElement::from_rational(ring, c));
        pw = pw * t;
    }
    return out;
}

// The single variable mentioned by a or b, if any.
std::optional<std::string> shared_single_var(const MultiPoly& a, const MultiPoly& b) {
    std::set<std::string> vs(a.vars().begin(), a.vars().end());
    vs.insert(b.vars().begin(), b.vars().end());
    if (vs.size() > 1) return std::nullopt;
    if (vs.empty()) return std::string("T");
    return *vs.begin();
}

} // namespace

std::optional<std::pair<MultiPoly, MultiPoly>> euclid_witness(const MultiPoly& a,
                                                              const MultiPoly& b) {
    const RingPtr& ring = a.ring();
    if (ring->kind != RingKind::Rationals) return std::nullopt;
    auto var = shared_single_var(a, b);
    if (!var) return std::nullopt;
    QPoly qa = a.to_qpoly(*var), qb = b.to_qpoly(*var);
    ExtGcd e = qp_ext_gcd(qa, qb);
    if (qp_degree(e.g) != 0) return std::nullopt; // zero or nonconstant gcd
    mpq_class inv = 1 / e.g[0];
    return std::make_pair(qpoly_to_multipoly(qp_scale(e.x, inv), ring, *var),
                          qpoly_to_multipoly(qp_scale(e.y, inv), ring, *var));
}

UnimodRow verify_unimodular(const MultiPoly& a, const MultiPoly& b,
                            std::optional<std::pair<MultiPoly, MultiPoly>> witness) {
    require_same_ring(a.ring(), b.ring(), "verify_unimodular");
    if (!witness) {
        witness = euclid_witness(a, b);
        if (!witness)
            throw PreconditionError(
                "verify_unimodular: no witness supplied and the Euclid search does not apply; "
                "unimodularity is unknown (not disproved)");
    }
    const auto& [b1, b2] = *witness;
    MultiPoly one = MultiPoly::constant(a.ring(), 1);
    if (a * b1 + b * b2 != one)
        throw PreconditionError("verify_unimodular: witness identity a*b1 + b*b2 = 1 fails");
    return {a, b, b1, b2};
}

Mat2 complete_row(const UnimodRow& r) {
    Mat2 sigma{r.a, -r.b2, r.b, r.b1};
    if (det2(sigma) != MultiPoly::constant(r.a.ring(), 1))
        throw InternalInconsistencyError("complete_row: determinant is not 1");
    return sigma;
}

UnimodRow gamma_product(const UnimodRow& r, const UnimodRow& s) {
    require_same_ring(r.a.ring(), s.a.ring(), "gamma_product");
    Mat2 prod = complete_row(r) * complete_row(s);
    // det = 1, so the inverse's first row (e22, -e12) is a witness:
    // e11*e22 + e21*(-e12) = det = 1.
    UnimodRow out{prod.e11, prod.e21, prod.e22, -prod.e12};
    return verify_unimodular(out.a, out.b, std::make_pair(out.b1, out.b2));
}

VerifyReport gamma_equiv_verify(const GammaEquivCert& cert) {
    VerifyReport rep;
    const RingPtr& ring = cert.beta.ring();
    MultiPoly one = MultiPoly::constant(ring, 1);
    if (det2(cert.beta) != one) rep.fail("det(beta) != 1");
    if (!cert.beta.eval_at(cert.path_var, 0).is_identity()) rep.fail("beta(0) != I");
    if (cert.beta.eval_at(cert.path_var, 1) != cert.target) rep.fail("beta(1) != target");

    MultiPoly ca = cert.target.e11 * cert.row_in.a + cert.target.e12 * cert.row_in.b;
    MultiPoly cb = cert.target.e21 * cert.row_in.a + cert.target.e22 * cert.row_in.b;
    if (ca != cert.row_out.a || cb != cert.row_out.b)
        rep.fail("target * row_in != row_out");
    if (cert.row_in.a * cert.row_in.b1 + cert.row_in.b * cert.row_in.b2 != one)
        rep.fail("row_in witness identity fails");
    if (cert.row_out.a * cert.row_out.b1 + cert.row_out.b * cert.row_out.b2 != one)
        rep.fail("row_out witness identity fails");
    return rep;
}

VerifyReport quillen_split_verify(const QuillenSplitData& d) {
    VerifyReport rep;
    if (!d.base->is_domain()) {
        rep.fail("base ring is not an integral domain");
        return rep;
    }
    MultiPoly one_base = MultiPoly::constant(d.base, 1);
    if (d.s * d.u + d.t * d.v != one_base) rep.fail("comaximality witness s*u + t*v = 1 fails");

    RingPtr loc_s = RingDescriptor::localization(d.base, d.s);
    RingPtr loc_t = RingDescriptor::localization(d.base, d.t);
    RingPtr loc_st = RingDescriptor::localization(d.base, d.s * d.t);
    if (!same_ring(d.psi1.ring(), loc_s)) rep.fail("psi1 is not over the localization at s");
    if (!same_ring(d.psi2.ring(), loc_t)) rep.fail("psi2 is not over the localization at t");
    if (!same_ring(d.sigma.ring(), loc_st)) rep.fail("sigma is not over the localization at s*t");
    if (!rep.ok) return rep;

    if (!d.psi1.eval_at(d.var, 0).is_identity()) rep.fail("psi1(0) != I");
    if (!d.psi2.eval_at(d.var, 0).is_identity()) rep.fail("psi2(0) != I");
    if (!d.sigma.eval_at(d.var, 0).is_identity()) rep.fail("sigma(0) != I");

    auto det_is_unit = [](const Mat2& m, const char* who, VerifyReport& r) {
        MultiPoly dd = det2(m);
        if (!dd.is_constant() || !dd.constant_value().is_unit())
            r.fail(std::string("det(") + who + ") is not a unit constant");
    };
    det_is_unit(d.psi1, "psi1", rep);
    det_is_unit(d.psi2, "psi2", rep);
    det_is_unit(d.sigma, "sigma", rep);

    // Embed num/s^k -> num * t^k / (s t)^k and num/t^k -> num * s^k / (s t)^k.
    auto embed = [&](const Mat2& m, const MultiPoly& other) {
        auto f = [&](const RingElement& c) {
            unsigned k = c.fraction_power();
            return RingElement::make_fraction(loc_st, c.fraction_num() * other.pow(k), k);
        };
        return Mat2{m.e11.map_coeffs(loc_st, f), m.e12.map_coeffs(loc_st, f),
                    m.e21.map_coeffs(loc_st, f), m.e22.map_coeffs(loc_st, f)};
    };
    Mat2 lhs = embed(d.psi1, d.t) * embed(d.psi2, d.s);
    // Entry equality via the difference: a zero numerator after common-
    // denominator subtraction is exactly cross-multiplied equality.
    if (!((lhs.e11 - d.sigma.e11).is_zero() && (lhs.e12 - d.sigma.e12).is_zero() &&
          (lhs.e21 - d.sigma.e21).is_zero() && (lhs.e22 - d.sigma.e22).is_zero()))
        rep.fail("(psi1)_t * (psi2)_s != sigma in the localization at s*t");
    return rep;
}

CircleCharts circle_charts() {
    RingPtr Q = RingDescriptor::rationals();
    MultiPoly x = MultiPoly::variable(Q, "x");
    MultiPoly y = MultiPoly::variable(Q, "y");
    MultiPoly one = MultiPoly::constant(Q, 1);
    MultiPoly rel = x * x + y * y - one;

    CircleCharts c;
    c.A = RingDescriptor::quotient(Q, rel, "y", /*is_domain=*/true);
    c.u = RingElement::make_quotient(c.A, one - y);
    c.v = RingElement::make_quotient(c.A, one + y);
    c.A_u = RingDescriptor::localization(c.A, MultiPoly::constant(c.u));
    c.A_v = RingDescriptor::localization(c.A, MultiPoly::constant(c.v));
    c.A_uv = RingDescriptor::localization(c.A, MultiPoly::constant(c.u.mul(c.v)));

    MultiPoly eta = MultiPoly::variable(Q, "eta");
    c.eta_ring = RingDescriptor::localization(Q, eta * eta + one);
    return c;
}

RingElement CircleCharts::to_eta_chart(const RingElement& e) const {
    if (!same_ring(e.ring(), A_u))
        throw PreconditionError("to_eta_chart: element is not in A_u");
    const MultiPoly& num = e.fraction_num(); // over A
    if (!num.is_constant())
        throw PreconditionError("to_eta_chart: numerator mentions polynomial variables");

    RingPtr Q = RingDescriptor::rationals();
    MultiPoly eta = MultiPoly::variable(Q, "eta");
    MultiPoly one = MultiPoly::constant(Q, 1);
    RingElement x_img = RingElement::make_fraction(eta_ring, eta + eta, 1);
    RingElement y_img = RingElement::make_fraction(eta_ring, eta * eta - one, 1);
    RingElement uinv_img = RingElement::make_fraction(
        eta_ring, (eta * eta + one).scale(RingElement::from_rational(Q, mpq_class(1, 2))), 0);

    // The numerator is an element of A; push its reduced representative
    // through x, y -> rational functions of eta.
    const MultiPoly& rep = num.constant_value().quotient_rep(); // over Q in x, y
    RingElement acc = RingElement::zero(eta_ring);
    for (const auto& [exp, coef] : rep.terms()) {
        RingElement term = RingElement::from_rational(eta_ring, coef.rational_value());
        for (size_t i = 0; i < rep.vars().size(); ++i) {
            const RingElement& img = rep.vars()[i] == "x" ? x_img : y_img;
            for (unsigned k = 0; k < exp[i]; ++k) term = term.mul(img);
        }
        acc = acc.add(term);
    }
    for (unsigned k = 0; k < e.fraction_power(); ++k) acc = acc.mul(uinv_img);
    return acc;
}

RingElement CircleCharts::from_eta_chart(const RingElement& e) const {
    if (!same_ring(e.ring(), eta_ring))
        throw PreconditionError("from_eta_chart: element is not in the eta chart ring");
    const MultiPoly& num = e.fraction_num(); // over Q, in eta

    RingPtr Q = RingDescriptor::rationals();
    MultiPoly xq = MultiPoly::variable(Q, "x");
    RingElement x_in_A = RingElement::make_quotient(A, xq);
    RingElement eta_img = RingElement::make_fraction(A_u, MultiPoly::constant(x_in_A), 1);
    RingElement half_u = RingElement::make_fraction(
        A_u, MultiPoly::constant(u.mul(RingElement::from_rational(A, mpq_class(1, 2)))), 0);

    QPoly cs = num.to_qpoly("eta");
    RingElement acc = RingElement::zero(A_u);
    RingElement pw = RingElement::one(A_u);
    for (const auto& co : cs) {
        acc = acc.add(pw.mul(RingElement::from_rational(A_u, co)));
        pw = pw.mul(eta_img);
    }
    for (unsigned k = 0; k < e.fraction_power(); ++k) acc = acc.mul(half_u);
    return acc;
}

long circle_degree(const UnimodRow& r) {
    const RingPtr& ring = r.a.ring();
    if (ring->kind != RingKind::Quotient)
        throw PreconditionError("circle_degree: row is not over the circle ring");
    if (!r.a.is_constant() || !r.b.is_constant())
        throw PreconditionError("circle_degree: row entries mention polynomial variables");
    MultiPoly one = MultiPoly::constant(ring, 1);
    if (r.a * r.b1 + r.b * r.b2 != one)
        throw PreconditionError("circle_degree: witness identity fails");

    const MultiPoly& pa = r.a.constant_value().quotient_rep(); // over Q in x, y
    const MultiPoly& pb = r.b.constant_value().quotient_rep();
    unsigned N = std::max(pa.total_degree(), pb.total_degree());

    // Chart 1: (x, y) = ((1-t^2)/(1+t^2), 2t/(1+t^2)), t in [-1, 1], the
    // counterclockwise arc from (0,-1) through (1,0) to (0,1); chart 2 is
    // t -> -1/t, giving ((t^2-1)/(1+t^2), -2t/(1+t^2)) over the left arc.
    // Each coordinate is cleared by the positive factor (1+t^2)^N, the same
    // N for both charts so the pieces join exactly.
    QPoly den = {1, 0, 1}; // 1 + t^2
    auto chart_poly = [&](const MultiPoly& p, const QPoly& xnum, const QPoly& ynum) {
        QPoly acc;
        for (const auto& [exp, coef] : p.terms()) {
            unsigned dx = 0, dy = 0;
            for (size_t i = 0; i < p.vars().size(); ++i) {
                if (p.vars()[i] == "x") dx = exp[i];
                if (p.vars()[i] == "y") dy = exp[i];
            }
            QPoly term = {coef.rational_value()};
            for (unsigned k = 0; k < dx; ++k) term = qp_mul(term, xnum);
            for (unsigned k = 0; k < dy; ++k) term = qp_mul(term, ynum);
            for (unsigned k = dx + dy; k < N; ++k) term = qp_mul(term, den);
            acc = qp_add(acc, term);
        }
        return acc;
    };
    QPoly x1 = {1, 0, -1}, y1 = {0, 2};  // 1-t^2, 2t
    QPoly x2 = {-1, 0, 1}, y2 = {0, -2}; // t^2-1, -2t

    // A coordinate that is identically zero confines the path to one axis;
    // the other coordinate then has constant sign on the (connected) circle,
    // so the degree is 0 once nonvanishing is confirmed.
    auto no_roots_on = [](const QPoly& p) {
        QPoly q = qp_trim(p);
        if (q.empty()) return false;
        if (qp_eval(q, mpq_class(-1)) == 0 || qp_eval(q, mpq_class(1)) == 0) return false;
        if (q.size() == 1) return true;
        return SturmChain(qp_squarefree(q)).count_roots(-1, 1) == 0;
    };
    if (pa.is_zero() || pb.is_zero()) {
        const MultiPoly& live = pa.is_zero() ? pb : pa;
        if (!no_roots_on(chart_poly(live, x1, y1)) || !no_roots_on(chart_poly(live, x2, y2)))
            throw PreconditionError("circle_degree: row vanishes on the circle (bad witness?)");
        return 0;
    }

    std::vector<PlanePath> pieces = {
        {chart_poly(pa, x1, y1), chart_poly(pb, x1, y1), -1, 1},
        {chart_poly(pa, x2, y2), chart_poly(pb, x2, y2), -1, 1},
    };
    long q = signed_quarter_turns(pieces);
    if (q % 4 != 0)
        throw InternalInconsistencyError("circle_degree: quarter turns not divisible by 4");
    return q / 4;
}

} // namespace algfun
