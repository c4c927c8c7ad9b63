#include "algfun/job.hpp"

#include <functional>
#include <sstream>

#include "algfun/expr.hpp"

namespace algfun {

using nlohmann::json;

RingPtr ring_from_json(const json& j) {
    if (j.is_string()) {
        std::string k = j.get<std::string>();
        if (k == "rationals") return RingDescriptor::rationals();
        if (k == "integers") return RingDescriptor::integers();
        throw ParseError("unknown ring shorthand: " + k, 1, 1);
    }
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rationals") return RingDescriptor::rationals();
    if (kind == "integers") return RingDescriptor::integers();
    if (kind == "dual") return RingDescriptor::dual(j.at("order").get<int>());
    if (kind == "quotient") {
        RingPtr base = ring_from_json(j.at("base"));
        MultiPoly rel = parse_poly(j.at("relation").get<std::string>(), base);
        return RingDescriptor::quotient(base, rel, j.at("designated").get<std::string>(),
                                        j.value("domain", false));
    }
    if (kind == "localization") {
        RingPtr base = ring_from_json(j.at("base"));
        MultiPoly den = parse_poly(j.at("denominator").get<std::string>(), base);
        return RingDescriptor::localization(base, den);
    }
    if (kind == "product")
        return RingDescriptor::product(ring_from_json(j.at("left")),
                                       ring_from_json(j.at("right")));
    throw ParseError("unknown ring kind: " + kind, 1, 1);
}

json ring_to_json(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Rationals: return {{"kind", "rationals"}};
        case RingKind::Integers: return {{"kind", "integers"}};
        case RingKind::Dual: return {{"kind", "dual"}, {"order", r->dual_order}};
        case RingKind::Quotient:
            return {{"kind", "quotient"},
                    {"base", ring_to_json(r->base)},
                    {"relation", print_canonical(*r->relation)},
                    {"designated", r->designated},
                    {"domain", r->quotient_is_domain}};
        case RingKind::Localization:
            return {{"kind", "localization"},
                    {"base", ring_to_json(r->base)},
                    {"denominator", print_canonical(*r->denom)}};
        case RingKind::Product:
            return {{"kind", "product"},
                    {"left", ring_to_json(r->left)},
                    {"right", ring_to_json(r->right)}};
    }
    return nullptr;
}

MultiPoly poly_from_json(const json& j, const RingPtr& ring, const std::string& outer_var) {
    if (j.is_string()) return parse_poly(j.get<std::string>(), ring);
    if (j.is_number_integer())
        return MultiPoly::constant(ring, j.get<long>());
    if (j.is_object() && j.contains("num")) {
        if (ring->kind != RingKind::Localization)
            throw ParseError("num/den_power payloads require a localization ring", 1, 1);
        MultiPoly num = parse_poly(j.at("num").get<std::string>(), ring->base);
        unsigned k = j.value("den_power", 0u);
        MultiPoly out = MultiPoly::zero(ring);
        MultiPoly xv = MultiPoly::variable(ring, outer_var);
        auto coeffs = num.univariate_coeffs(outer_var);
        for (size_t i = 0; i < coeffs.size(); ++i) {
            RingElement c = RingElement::make_fraction(ring, coeffs[i], k);
            out = out + xv.pow(unsigned(i)).scale(c);
        }
        return out;
    }
    throw ParseError("expected an expression string or {num, den_power}", 1, 1);
}

json poly_to_json(const MultiPoly& p) {
    if (p.ring()->kind != RingKind::Localization) return print_canonical(p);
    // Recombine fraction coefficients over a common denominator power.
    unsigned k = 0;
    for (const auto& [e, c] : p.terms()) k = std::max(k, c.fraction_power());
    const MultiPoly& den = *p.ring()->denom;
    MultiPoly num = MultiPoly::zero(p.ring()->base);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly mono = MultiPoly::constant(p.ring()->base, 1);
        for (size_t i = 0; i < p.vars().size(); ++i)
            mono = mono * MultiPoly::variable(p.ring()->base, p.vars()[i]).pow(e[i]);
        num = num + mono * c.fraction_num() * den.pow(k - c.fraction_power());
    }
    return json{{"num", print_canonical(num)}, {"den_power", k}};
}

Mat2 mat_from_json(const json& j, const RingPtr& ring, const std::string& outer_var) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw ParseError("matrix must be [[e11,e12],[e21,e22]]", 1, 1);
    return Mat2{poly_from_json(j[0][0], ring, outer_var), poly_from_json(j[0][1], ring, outer_var),
                poly_from_json(j[1][0], ring, outer_var), poly_from_json(j[1][1], ring, outer_var)};
}

json mat_to_json(const Mat2& m) {
    return json::array({json::array({poly_to_json(m.e11), poly_to_json(m.e12)}),
                        json::array({poly_to_json(m.e21), poly_to_json(m.e22)})});
}

UnimodRow row_from_json(const json& j, const RingPtr& ring) {
    MultiPoly a = poly_from_json(j.at("a"), ring);
    MultiPoly b = poly_from_json(j.at("b"), ring);
    std::optional<std::pair<MultiPoly, MultiPoly>> witness;
    if (j.contains("witness")) {
        const auto& w = j.at("witness");
        if (!w.is_array() || w.size() != 2)
            throw ParseError("witness must be [b1, b2]", 1, 1);
        witness = std::make_pair(poly_from_json(w[0], ring), poly_from_json(w[1], ring));
    }
    return verify_unimodular(a, b, std::move(witness));
}

json row_to_json(const UnimodRow& r) {
    return json{{"a", poly_to_json(r.a)},
                {"b", poly_to_json(r.b)},
                {"witness", json::array({poly_to_json(r.b1), poly_to_json(r.b2)})}};
}

namespace {

HomotopyCert cert_from_json(const json& j, const RingPtr& ring) {
    std::string lv = j.value("loop_var", "T");
    std::string hv = j.value("homotopy_var", "S");
    Mat2 m = mat_from_json(j.at("matrix"), ring);
    LoopRep start = require_loop(mat_from_json(j.at("start"), ring), lv);
    LoopRep end = require_loop(mat_from_json(j.at("end"), ring), lv);
    return HomotopyCert{m, lv, hv, start, end};
}

json cert_to_json(const HomotopyCert& c) {
    return json{{"matrix", mat_to_json(c.matrix)},
                {"loop_var", c.loop_var},
                {"homotopy_var", c.homotopy_var},
                {"start", mat_to_json(c.start.matrix)},
                {"end", mat_to_json(c.end.matrix)}};
}

JobResult from_report(const VerifyReport& rep, json extra = json::object()) {
    JobResult res;
    res.exit_code = rep.ok ? 0 : 1;
    extra["ok"] = rep.ok;
    extra["violations"] = rep.violations;
    res.output = std::move(extra);
    res.summary = rep.ok ? "pass" : "FAIL: " + rep.to_string();
    return res;
}

JobResult handle(const json& job) {
    std::string cmd = job.at("command").get<std::string>();
    RingPtr ring = job.contains("ring") ? ring_from_json(job.at("ring"))
                                        : RingDescriptor::rationals();
    std::string lv = job.value("loop_var", "T");

    if (cmd == "verify-loop") {
        LoopCheck lc = verify_loop(mat_from_json(job.at("matrix"), ring), lv);
        return from_report(lc.report);
    }
    if (cmd == "verify-homotopy") {
        HomotopyCert c = cert_from_json(job, ring);
        return from_report(verify_homotopy(c));
    }
    if (cmd == "loop-mul") {
        LoopRep a = require_loop(mat_from_json(job.at("left"), ring), lv);
        LoopRep b = require_loop(mat_from_json(job.at("right"), ring), lv);
        LoopRep p = loop_product(a, b);
        return from_report({}, {{"product", mat_to_json(p.matrix)}});
    }
    if (cmd == "winding" || cmd == "oracle") {
        PlaneLoop l{poly_from_json(job.at("f1"), ring), poly_from_json(job.at("f2"), ring),
                    job.value("var", "T")};
        if (cmd == "winding") {
            long w = winding_number(l);
            JobResult res = from_report({}, {{"winding", w}});
            res.summary = "winding = " + std::to_string(w);
            return res;
        }
        int samples = job.value("samples", 4096);
        double v = numeric_winding_oracle(l, samples);
        JobResult res = from_report({}, {{"oracle", v}, {"samples", samples}});
        res.summary = "oracle = " + std::to_string(v);
        return res;
    }
    if (cmd == "eta") {
        LoopRep a = require_loop(mat_from_json(job.at("matrix"), ring), lv);
        long v = eta(a);
        JobResult res = from_report({}, {{"eta", v}});
        res.summary = "eta = " + std::to_string(v);
        return res;
    }
    if (cmd == "decompose-nil") {
        ElemFactorization f = elementary_decomposition(mat_from_json(job.at("matrix"), ring));
        json factors = json::array();
        for (const auto& [kind, arg] : f.factors)
            factors.push_back(json{{"kind", kind == ElemKind::E12 ? "E12" : "E21"},
                                   {"arg", poly_to_json(arg)}});
        return from_report({}, {{"factors", factors}, {"transposed_variant", f.transposed}});
    }
    if (cmd == "connect-identity") {
        Mat2 beta = connect_to_identity(mat_from_json(job.at("matrix"), ring),
                                        job.value("new_var", "X"));
        return from_report({}, {{"path", mat_to_json(beta)}});
    }
    if (cmd == "contract-nil") {
        LoopRep a = require_loop(mat_from_json(job.at("matrix"), ring), lv);
        HomotopyCert c = contract_nil_loop(a, job.value("homotopy_var", "S"));
        return from_report(verify_homotopy(c), {{"certificate", cert_to_json(c)}});
    }
    if (cmd == "lift-nil") {
        RingPtr q = RingDescriptor::rationals();
        LoopRep bar = require_loop(mat_from_json(job.at("loop"), q), lv);
        Mat2 lift = mat_from_json(job.at("lift"), ring);
        LoopRep out = lift_loop_mod_nil(bar, ring, lift);
        return from_report({}, {{"lifted", mat_to_json(out.matrix)}});
    }
    if (cmd == "injectivity-homotopy") {
        std::string param = job.value("param", "X");
        LoopRep a = require_loop(mat_from_json(job.at("a"), ring), lv);
        LoopRep b = require_loop(mat_from_json(job.at("b"), ring), lv);
        HomotopyCert theta = cert_from_json(job.at("theta"), ring);
        HomotopyCert m = polyring_injectivity_homotopy(a, b, theta, param);
        return from_report(verify_homotopy(m), {{"certificate", cert_to_json(m)}});
    }
    if (cmd == "swan-weibel") {
        LoopRep b = require_loop(mat_from_json(job.at("matrix"), ring), lv);
        GradedHomotopy g = graded_homotopy(b, job.value("t_var", "T") == lv ? "S"
                                                : job.value("t_var", "T"));
        return from_report(verify_homotopy(g.cert),
                           {{"certificate", cert_to_json(g.cert)},
                            {"degree_zero", mat_to_json(g.degree_zero.matrix)}});
    }
    if (cmd == "basepoint-shift") {
        LoopRep a = require_loop(mat_from_json(job.at("matrix"), ring), lv);
        HomotopyCert c =
            basepoint_shift_homotopy(a, job.value("param", "X"), job.value("s_var", "S"));
        return from_report(verify_homotopy(c), {{"certificate", cert_to_json(c)}});
    }
    if (cmd == "product-split") {
        LoopRep a = require_loop(mat_from_json(job.at("matrix"), ring), lv);
        auto [l, r] = product_split(a);
        return from_report({}, {{"left", mat_to_json(l.matrix)}, {"right", mat_to_json(r.matrix)}});
    }
    if (cmd == "gamma-mul") {
        UnimodRow a = row_from_json(job.at("left"), ring);
        UnimodRow b = row_from_json(job.at("right"), ring);
        UnimodRow p = gamma_product(a, b);
        JobResult res = from_report({}, {{"product", row_to_json(p)}});
        res.summary = "[" + print_canonical(p.a) + ", " + print_canonical(p.b) + "]";
        return res;
    }
    if (cmd == "complete") {
        UnimodRow r = row_from_json(job.at("row"), ring);
        return from_report({}, {{"completion", mat_to_json(complete_row(r))}});
    }
    if (cmd == "quillen-check") {
        QuillenSplitData d;
        d.base = ring;
        d.var = job.value("var", "X");
        d.s = poly_from_json(job.at("s"), ring);
        d.t = poly_from_json(job.at("t"), ring);
        d.u = poly_from_json(job.at("u"), ring);
        d.v = poly_from_json(job.at("v"), ring);
        RingPtr loc_s = RingDescriptor::localization(ring, d.s);
        RingPtr loc_t = RingDescriptor::localization(ring, d.t);
        RingPtr loc_st = RingDescriptor::localization(ring, d.s * d.t);
        d.sigma = mat_from_json(job.at("sigma"), loc_st, d.var);
        d.psi1 = mat_from_json(job.at("psi1"), loc_s, d.var);
        d.psi2 = mat_from_json(job.at("psi2"), loc_t, d.var);
        return from_report(quillen_split_verify(d));
    }
    if (cmd == "circle-degree") {
        CircleCharts cc = circle_charts();
        UnimodRow r = row_from_json(job.at("row"), cc.A);
        long d = circle_degree(r);
        JobResult res = from_report({}, {{"degree", d}});
        res.summary = "degree = " + std::to_string(d);
        return res;
    }
    if (cmd == "example-suite") return example_suite();

    throw ParseError("unknown command: " + cmd, 1, 1);
}

} // namespace

JobResult run_job(const json& job) {
    try {
        return handle(job);
    } catch (const ParseError& e) {
        return {2, {{"ok", false}, {"error", e.what()}}, std::string("parse error: ") + e.what()};
    } catch (const json::exception& e) {
        return {2, {{"ok", false}, {"error", e.what()}}, std::string("schema error: ") + e.what()};
    } catch (const PreconditionError& e) {
        return {3, {{"ok", false}, {"error", e.what()}}, std::string("precondition: ") + e.what()};
    } catch (const NotAUnitError& e) {
        return {3, {{"ok", false}, {"error", e.what()}}, std::string("precondition: ") + e.what()};
    } catch (const NotSpecialError& e) {
        return {3, {{"ok", false}, {"error", e.what()}}, std::string("precondition: ") + e.what()};
    } catch (const RingMismatchError& e) {
        return {3, {{"ok", false}, {"error", e.what()}}, std::string("precondition: ") + e.what()};
    } catch (const RefineNeeded& e) {
        return {3, {{"ok", false}, {"error", e.what()}}, std::string("refine needed: ") + e.what()};
    } catch (const Error& e) {
        return {1, {{"ok", false}, {"error", e.what()}}, std::string("failed: ") + e.what()};
    }
}

// ---------------------------------------------------------------------------
// Built-in example suite

namespace {

struct SuiteCase {
    std::string name;
    std::function<std::string()> run; // returns "" on pass, detail on failure
};

std::string check(bool ok, const std::string& why) { return ok ? "" : why; }

} // namespace

JobResult example_suite() {
    RingPtr Q = RingDescriptor::rationals();
    std::vector<SuiteCase> cases;

    cases.push_back({"generator: det 1 and identity endpoints", [&] {
        LoopRep g = generator_loop(); // require_loop already enforces both
        return check(det2(g.matrix) == MultiPoly::constant(Q, 1), "det != 1");
    }});
    cases.push_back({"generator: first column at T=1/2 is (-1/4, 0)", [&] {
        LoopRep g = generator_loop();
        Mat2 h = g.matrix.eval_at("T", mpq_class(1, 2));
        bool ok = h.e11 == MultiPoly::constant(RingElement::from_rational(Q, mpq_class(-1, 4))) &&
                  h.e21.is_zero();
        return check(ok, "unexpected column " + h.e11.to_string() + ", " + h.e21.to_string());
    }});
    cases.push_back({"generator: |eta| = 1 (source claims +1; toolkit reports the signed value)",
                     [&] {
        long v = eta(generator_loop());
        return check(v == 1 || v == -1, "eta = " + std::to_string(v));
    }});
    cases.push_back({"eta is additive on generator powers", [&] {
        LoopRep g = generator_loop();
        long e1 = eta(g);
        long e2 = eta(loop_product(g, g));
        long em1 = eta(loop_inverse(g));
        return check(e2 == 2 * e1 && em1 == -e1,
                     "eta(g^2) = " + std::to_string(e2) + ", eta(g^-1) = " + std::to_string(em1));
    }});
    cases.push_back({"six-factor decomposition over dual numbers", [&] {
        RingPtr D = RingDescriptor::dual(3);
        MultiPoly eps = MultiPoly::constant(RingElement::dual_eps(D));
        Mat2 alpha = elementary(ElemKind::E12, eps) * elementary(ElemKind::E21, eps);
        ElemFactorization f = elementary_decomposition(alpha); // self-verifying
        return check(f.factors.size() == 6, "wrong factor count");
    }});
    cases.push_back({"connecting path beta(0) = I, beta(1) = alpha", [&] {
        RingPtr D = RingDescriptor::dual(3);
        MultiPoly eps = MultiPoly::constant(RingElement::dual_eps(D));
        Mat2 alpha = elementary(ElemKind::E21, eps) * elementary(ElemKind::E12, -eps);
        Mat2 beta = connect_to_identity(alpha, "X"); // self-verifying
        return check(beta.eval_at("X", 1) == alpha, "beta(1) != alpha");
    }});
    cases.push_back({"injectivity certificate M(X)(T)(W)", [&] {
        MultiPoly X = MultiPoly::variable(Q, "X");
        MultiPoly T = MultiPoly::variable(Q, "T");
        MultiPoly one = MultiPoly::constant(Q, 1);
        LoopRep a = require_loop(elementary(ElemKind::E12, X * T * (T - one)), "T");
        LoopRep b = require_loop(elementary(ElemKind::E12, X * X * T * (T - one)), "T");
        HomotopyCert theta{Mat2::identity(Q), "T", "W", LoopRep::constant_identity(Q, "T"),
                           LoopRep::constant_identity(Q, "T")};
        HomotopyCert m = polyring_injectivity_homotopy(a, b, theta, "X");
        return check(verify_homotopy(m).ok, "certificate failed");
    }});
    cases.push_back({"graded scaling homotopy and degree-zero boundary", [&] {
        MultiPoly X = MultiPoly::variable(Q, "X");
        MultiPoly a = MultiPoly::variable(Q, "a");
        MultiPoly one = MultiPoly::constant(Q, 1);
        LoopRep b = require_loop(elementary(ElemKind::E12, a * X * (X - one)), "X");
        GradedHomotopy g = graded_homotopy(b, "T");
        return check(g.degree_zero.matrix.is_identity(),
                     "degree-zero part is not the identity loop");
    }});
    cases.push_back({"partial-fraction splitting over Q[y]", [&] {
        MultiPoly y = MultiPoly::variable(Q, "y");
        MultiPoly one = MultiPoly::constant(Q, 1);
        QuillenSplitData d;
        d.base = Q;
        d.s = y;
        d.t = one - y;
        d.u = one;
        d.v = one;
        RingPtr loc_s = RingDescriptor::localization(Q, d.s);
        RingPtr loc_t = RingDescriptor::localization(Q, d.t);
        RingPtr loc_st = RingDescriptor::localization(Q, d.s * d.t);
        auto e12x = [&](const RingPtr& r, unsigned pow) {
            RingElement c = RingElement::make_fraction(r, MultiPoly::constant(r->base, 1), pow);
            return elementary(ElemKind::E12, MultiPoly::variable(r, "X").scale(c));
        };
        d.sigma = e12x(loc_st, 1);
        d.psi1 = e12x(loc_s, 1);
        d.psi2 = e12x(loc_t, 1);
        VerifyReport ok = quillen_split_verify(d);
        // Perturbed split must be rejected.
        QuillenSplitData bad = d;
        RingElement two = RingElement::make_fraction(
            loc_t, MultiPoly::constant(Q, 2), 1);
        bad.psi2 = elementary(ElemKind::E12, MultiPoly::variable(loc_t, "X").scale(two));
        VerifyReport rej = quillen_split_verify(bad);
        return check(ok.ok && !rej.ok, ok.ok ? "perturbed split accepted" : ok.to_string());
    }});
    cases.push_back({"row product [2,3]*[4,5] = [13,22] and the identity row", [&] {
        auto cpoly = [&](long v) { return MultiPoly::constant(Q, v); };
        UnimodRow r = verify_unimodular(cpoly(2), cpoly(3), std::make_pair(cpoly(2), cpoly(-1)));
        UnimodRow s = verify_unimodular(cpoly(4), cpoly(5), std::make_pair(cpoly(-1), cpoly(1)));
        UnimodRow p = gamma_product(r, s);
        UnimodRow e = verify_unimodular(cpoly(1), cpoly(0), std::make_pair(cpoly(1), cpoly(0)));
        UnimodRow q = gamma_product(e, s);
        bool ok = p.a == cpoly(13) && p.b == cpoly(22) && q.a == s.a && q.b == s.b;
        return check(ok, "[2,3]*[4,5] = [" + p.a.to_string() + ", " + p.b.to_string() + "]");
    }});
    cases.push_back({"circle chart: 1/u maps to (1+eta^2)/2 and x = eta*u", [&] {
        CircleCharts cc = circle_charts();
        RingElement uinv = RingElement::make_fraction(
            cc.A_u, MultiPoly::constant(cc.A, 1), 1);
        RingElement img = cc.to_eta_chart(uinv);
        MultiPoly etav = MultiPoly::variable(Q, "eta");
        RingElement expect = RingElement::make_fraction(
            cc.eta_ring,
            (etav * etav + MultiPoly::constant(Q, 1))
                .scale(RingElement::from_rational(Q, mpq_class(1, 2))),
            0);
        if (!localization_equal(img, expect)) return std::string("1/u image mismatch");
        RingElement x_in_A = RingElement::make_quotient(cc.A, MultiPoly::variable(Q, "x"));
        RingElement x_loc = RingElement::make_fraction(cc.A_u, MultiPoly::constant(x_in_A), 0);
        RingElement eta_loc = RingElement::make_fraction(
            cc.A_u, MultiPoly::constant(x_in_A), 1); // eta = x/u
        RingElement u_loc = RingElement::make_fraction(cc.A_u, MultiPoly::constant(cc.u), 0);
        return check(localization_equal(eta_loc.mul(u_loc), x_loc), "x != eta*u in A_u");
    }});
    cases.push_back({"circle degrees 0, 1, 2", [&] {
        CircleCharts cc = circle_charts();
        auto q1 = [&](const char* s) {
            return MultiPoly::constant(RingElement::make_quotient(cc.A, parse_poly(s, Q)));
        };
        UnimodRow c0 = verify_unimodular(q1("1"), q1("0"), std::make_pair(q1("1"), q1("0")));
        UnimodRow c1 = verify_unimodular(q1("x"), q1("y"), std::make_pair(q1("x"), q1("y")));
        UnimodRow c2 = gamma_product(c1, c1);
        long d0 = circle_degree(c0), d1 = circle_degree(c1), d2 = circle_degree(c2);
        return check(d0 == 0 && d1 == 1 && d2 == 2,
                     "degrees " + std::to_string(d0) + ", " + std::to_string(d1) + ", " +
                         std::to_string(d2));
    }});

    JobResult res;
    json out = json::array();
    bool all_ok = true;
    std::ostringstream sum;
    for (const auto& c : cases) {
        std::string detail;
        try {
            detail = c.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        bool ok = detail.empty();
        all_ok = all_ok && ok;
        out.push_back({{"name", c.name}, {"ok", ok}, {"detail", detail}});
        sum << (ok ? "pass" : "FAIL") << "  " << c.name;
        if (!ok) sum << "  (" << detail << ")";
        sum << "\n";
    }
    res.exit_code = all_ok ? 0 : 1;
    res.output = {{"ok", all_ok}, {"cases", out}};
    res.summary = sum.str();
    return res;
}

} // namespace algfun
