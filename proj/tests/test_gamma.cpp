#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algfun/gamma.hpp"
#include "algfun/winding.hpp"
#include "helpers.hpp"

using namespace algfun;
using namespace testutil;

namespace {
RingPtr Q() { return RingDescriptor::rationals(); }

MultiPoly c(long v) { return MultiPoly::constant(Q(), v); }
MultiPoly T() { return MultiPoly::variable(Q(), "T"); }

UnimodRow row(const MultiPoly& a, const MultiPoly& b) { return verify_unimodular(a, b); }
} // namespace

TEST_CASE("extended euclid witnesses") {
    // (T, T+1): -T + (T+1) = 1.
    auto w = euclid_witness(T(), T() + c(1));
    REQUIRE(w.has_value());
    CHECK(T() * w->first + (T() + c(1)) * w->second == c(1));

    // gcd(T, T^2) = T: no witness.
    CHECK_FALSE(euclid_witness(T(), T() * T()).has_value());
    CHECK_FALSE(euclid_witness(MultiPoly::zero(Q()), MultiPoly::zero(Q())).has_value());

    // (2, 0): witness (1/2, 0).
    auto half = euclid_witness(c(2), MultiPoly::zero(Q()));
    REQUIRE(half.has_value());
    CHECK(c(2) * half->first == c(1));
}

TEST_CASE("verify_unimodular accepts rows and rejects bad witnesses") {
    UnimodRow r = verify_unimodular(c(1), MultiPoly::zero(Q()));
    CHECK(r.a * r.b1 + r.b * r.b2 == c(1));

    UnimodRow s = verify_unimodular(T(), c(1) - T());
    CHECK(s.a * s.b1 + s.b * s.b2 == c(1));

    // Supplied witness must satisfy the identity exactly.
    CHECK_THROWS_AS(verify_unimodular(c(2), c(3), std::make_pair(c(1), c(1))),
                    PreconditionError);

    // Failure with an inconclusive search mentions "unknown".
    try {
        verify_unimodular(T(), T() * T());
        CHECK(false);
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("unknown") != std::string::npos);
    }
}

TEST_CASE("complete_row produces a determinant-1 matrix with the row as first column") {
    UnimodRow r = verify_unimodular(c(2), c(3), std::make_pair(c(2), c(-1)));
    Mat2 m = complete_row(r);
    CHECK(m.e11 == c(2));
    CHECK(m.e21 == c(3));
    CHECK(det2(m) == c(1));

    UnimodRow s = verify_unimodular(c(4), c(5), std::make_pair(c(-1), c(1)));
    CHECK(det2(complete_row(s)) == c(1));
}

TEST_CASE("gamma product matches the anchor [2,3]*[4,5] = [13,22]") {
    UnimodRow r = verify_unimodular(c(2), c(3), std::make_pair(c(2), c(-1)));
    UnimodRow s = verify_unimodular(c(4), c(5), std::make_pair(c(-1), c(1)));
    UnimodRow p = gamma_product(r, s);
    CHECK(p.a == c(13));
    CHECK(p.b == c(22));
    CHECK(p.a * p.b1 + p.b * p.b2 == c(1));

    // Identity row is neutral: first column of complete_row(id) * sigma.
    UnimodRow id = verify_unimodular(c(1), MultiPoly::zero(Q()));
    UnimodRow q = gamma_product(id, r);
    CHECK(q.a == r.a);
    CHECK(q.b == r.b);
}

TEST_CASE("gamma product is witness-closed on 100 random rows over Q[T]") {
    std::mt19937 rng(61);
    int done = 0;
    while (done < 100) {
        MultiPoly a = rand_qpoly(rng, "T", 2);
        MultiPoly b = rand_qpoly(rng, "T", 2);
        auto w = euclid_witness(a, b);
        if (!w) continue;
        UnimodRow r = verify_unimodular(a, b, w);
        MultiPoly a2 = rand_qpoly(rng, "T", 2);
        MultiPoly b2 = rand_qpoly(rng, "T", 2);
        auto w2 = euclid_witness(a2, b2);
        if (!w2) continue;
        UnimodRow s = verify_unimodular(a2, b2, w2);
        UnimodRow p = gamma_product(r, s);
        CHECK(p.a * p.b1 + p.b * p.b2 == c(1));
        Mat2 expect = complete_row(r) * complete_row(s);
        CHECK(p.a == expect.e11);
        CHECK(p.b == expect.e21);
        ++done;
    }
}

TEST_CASE("gamma equivalence certificates verify and reject") {
    UnimodRow r = verify_unimodular(T() + c(2), c(1), std::make_pair(MultiPoly::zero(Q()), c(1)));

    SUBCASE("trivial path") {
        GammaEquivCert cert;
        cert.beta = Mat2::identity(Q());
        cert.path_var = "S";
        cert.target = Mat2::identity(Q());
        cert.row_in = r;
        cert.row_out = r;
        CHECK(gamma_equiv_verify(cert).ok);
    }

    SUBCASE("elementary action E21(S * p) moves the row") {
        MultiPoly p = T() * T() + c(1);
        Mat2 beta = elementary(ElemKind::E21, MultiPoly::variable(Q(), "S") * p);
        Mat2 target = beta.eval_at("S", 1);
        GammaEquivCert cert;
        cert.beta = beta;
        cert.path_var = "S";
        cert.target = target;
        cert.row_in = r;
        // target * (a, b)^T = (a, p*a + b).
        MultiPoly a_out = r.a;
        MultiPoly b_out = p * r.a + r.b;
        auto w = euclid_witness(a_out, b_out);
        REQUIRE(w.has_value());
        cert.row_out = verify_unimodular(a_out, b_out, w);
        CHECK(gamma_equiv_verify(cert).ok);

        // Corrupt the outgoing row: the report itemizes the failure.
        cert.row_out.b = cert.row_out.b + c(1);
        VerifyReport rep = gamma_equiv_verify(cert);
        CHECK_FALSE(rep.ok);
        CHECK_FALSE(rep.violations.empty());
    }

    SUBCASE("path not based at the identity is rejected") {
        GammaEquivCert cert;
        cert.beta = elementary(ElemKind::E12, c(1)); // constant, beta(0) != I
        cert.path_var = "S";
        cert.target = cert.beta;
        cert.row_in = r;
        cert.row_out = verify_unimodular(r.a + r.b, r.b);
        CHECK_FALSE(gamma_equiv_verify(cert).ok);
    }
}

TEST_CASE("quillen splitting of partial fractions over Q[y]") {
    // s = y, t = 1 - y, u = 1, v = 1: s*u + t*v = 1.
    RingPtr base = RingDescriptor::rationals();
    MultiPoly y = MultiPoly::variable(base, "y");
    MultiPoly one = MultiPoly::constant(base, 1);

    std::mt19937 rng(62);
    for (int i = 0; i < 20; ++i) {
        mpq_class cnum = rand_rational(rng);
        // sigma = E12(c * X / (s t)) splits as E12(c v X / s) * E12(c u X / t)
        // via c/(st) = c/s + c/t when u = v = 1... the toolkit checks the
        // product identity directly, so build psi1, psi2 from the partial
        // fraction decomposition 1/(y(1-y)) = 1/y + 1/(1-y).
        RingPtr loc_st = RingDescriptor::localization(base, y * (one - y));
        RingPtr loc_s = RingDescriptor::localization(base, y);
        RingPtr loc_t = RingDescriptor::localization(base, one - y);

        MultiPoly X_st = MultiPoly::variable(loc_st, "X");
        MultiPoly X_s = MultiPoly::variable(loc_s, "X");
        MultiPoly X_t = MultiPoly::variable(loc_t, "X");

        RingElement frac_st = RingElement::make_fraction(loc_st, MultiPoly::constant(
                                  RingElement::from_rational(base, cnum)), 1);
        RingElement frac_s = RingElement::make_fraction(loc_s, MultiPoly::constant(
                                 RingElement::from_rational(base, cnum)), 1);
        RingElement frac_t = RingElement::make_fraction(loc_t, MultiPoly::constant(
                                 RingElement::from_rational(base, cnum)), 1);

        QuillenSplitData d;
        d.base = base;
        d.s = y;
        d.t = one - y;
        d.u = one;
        d.v = one;
        d.var = "X";
        d.sigma = elementary(ElemKind::E12, X_st.scale(frac_st));
        d.psi1 = elementary(ElemKind::E12, X_s.scale(frac_s));
        d.psi2 = elementary(ElemKind::E12, X_t.scale(frac_t));
        CHECK(quillen_split_verify(d).ok);

        // Perturbing one factor breaks the product identity.
        QuillenSplitData bad = d;
        bad.psi2 = elementary(ElemKind::E12, X_t.scale(frac_t) + MultiPoly::constant(loc_t, 1) *
                                                 MultiPoly::variable(loc_t, "X") *
                                                 MultiPoly::variable(loc_t, "X"));
        CHECK_FALSE(quillen_split_verify(bad).ok);
    }
}

TEST_CASE("circle chart maps round-trip") {
    CircleCharts cc = circle_charts();

    // 1/u -> (1+eta^2)/2 and back.
    RingElement inv_u = RingElement::make_fraction(cc.A_u, MultiPoly::constant(cc.A, 1), 1);
    RingElement img = cc.to_eta_chart(inv_u);
    RingElement back = cc.from_eta_chart(img);
    CHECK(localization_equal(back, inv_u));

    std::mt19937 rng(63);
    for (int i = 0; i < 50; ++i) {
        // Random element of A_u: (polynomial in x, y reduced in A) / u^k.
        MultiPoly x = MultiPoly::variable(Q(), "x");
        MultiPoly yy = MultiPoly::variable(Q(), "y");
        MultiPoly acc = MultiPoly::zero(Q());
        for (int d1 = 0; d1 <= 2; ++d1)
            for (int d2 = 0; d2 <= 1; ++d2)
                acc = acc + (x.pow(d1) * yy.pow(d2)).scale(
                                RingElement::from_rational(Q(), rand_rational(rng)));
        RingElement a_elem = RingElement::make_quotient(cc.A, acc);
        unsigned k = rng() % 3;
        RingElement frac = RingElement::make_fraction(
            cc.A_u, MultiPoly::constant(a_elem), k);
        RingElement round = cc.from_eta_chart(cc.to_eta_chart(frac));
        CHECK(localization_equal(round, frac));
    }
}

TEST_CASE("circle degrees of the standard rows") {
    CircleCharts cc = circle_charts();
    MultiPoly x = MultiPoly::variable(Q(), "x");
    MultiPoly yy = MultiPoly::variable(Q(), "y");

    auto mk = [&](const MultiPoly& p) { return RingElement::make_quotient(cc.A, p); };
    auto crow = [&](const MultiPoly& a, const MultiPoly& b,
                    const MultiPoly& w1, const MultiPoly& w2) {
        UnimodRow r;
        r.a = MultiPoly::constant(mk(a));
        r.b = MultiPoly::constant(mk(b));
        r.b1 = MultiPoly::constant(mk(w1));
        r.b2 = MultiPoly::constant(mk(w2));
        return r;
    };

    MultiPoly one = MultiPoly::constant(Q(), 1);
    MultiPoly zero = MultiPoly::zero(Q());

    // Constant row: degree 0.
    CHECK(circle_degree(crow(one, zero, one, zero)) == 0);
    // Identity (x, y): degree 1.
    CHECK(circle_degree(crow(x, yy, x, yy)) == 1);
    // Double cover (x^2 - y^2, 2xy): degree 2.
    MultiPoly a2 = x * x - yy * yy;
    MultiPoly b2 = x * yy.scale(RingElement::from_int(Q(), 2));
    CHECK(circle_degree(crow(a2, b2, a2, b2)) == 2);

    // Degree is additive along complex multiplication:
    // (a, b) * (c, d) = (ac - bd, ad + bc).
    MultiPoly a3 = a2 * x - b2 * yy;
    MultiPoly b3 = a2 * yy + b2 * x;
    CHECK(circle_degree(crow(a3, b3, a3, b3)) == 3);
}
