#include "algfun/homotopy.hpp"

namespace algfun {

namespace {

bool is_identity_mod_nil(const Mat2& m) {
    RingPtr q = RingDescriptor::rationals();
    return m.e11.nilradical_reduce_coeffs() == MultiPoly::constant(q, 1) &&
           m.e22.nilradical_reduce_coeffs() == MultiPoly::constant(q, 1) &&
           m.e12.nilradical_reduce_coeffs().is_zero() &&
           m.e21.nilradical_reduce_coeffs().is_zero();
}

Mat2 product_of(const std::vector<std::pair<ElemKind, MultiPoly>>& factors, const RingPtr& ring) {
    Mat2 acc = Mat2::identity(ring);
    for (const auto& [kind, arg] : factors) acc = acc * elementary(kind, arg);
    return acc;
}

} // namespace

MultiPoly invert_one_plus_nilpotent(const MultiPoly& n) {
    if (!n.all_coeffs_nilpotent())
        throw PreconditionError("invert_one_plus_nilpotent: argument has a non-nilpotent coefficient");
    const RingPtr& ring = n.ring();
    MultiPoly acc = MultiPoly::constant(ring, 1);
    MultiPoly pw = MultiPoly::constant(ring, 1);
    MultiPoly mn = -n;
    int guard = ring->kind == RingKind::Dual ? ring->dual_order + 1 : 64;
    for (int j = 0; j < guard; ++j) {
        pw = pw * mn;
        if (pw.is_zero()) break;
        acc = acc + pw;
    }
    if (!((acc * (MultiPoly::constant(ring, 1) + n)) == MultiPoly::constant(ring, 1)))
        throw InternalInconsistencyError("invert_one_plus_nilpotent: series did not terminate");
    return acc;
}

LoopRep eval_loop_at(const LoopRep& a, const std::string& param, const MultiPoly& value) {
    if (!a.parameters.count(param))
        throw PreconditionError("eval_loop_at: " + param + " is not a parameter of the loop");
    Mat2 m = a.matrix.substitute({{param, value}});
    return require_loop(m, a.loop_var);
}

LoopRep eval_loop_at(const LoopRep& a, const std::string& param, const mpq_class& value) {
    return eval_loop_at(a, param,
                        MultiPoly::constant(RingElement::from_rational(a.matrix.ring(), value)));
}

HomotopyCert polyring_injectivity_homotopy(const LoopRep& a, const LoopRep& b,
                                           const HomotopyCert& theta, const std::string& param) {
    VerifyReport trep = verify_homotopy(theta);
    if (!trep.ok)
        throw PreconditionError("injectivity homotopy: theta is not a valid certificate: " +
                                trep.to_string());
    LoopRep a0 = eval_loop_at(a, param, mpq_class(0));
    LoopRep b0 = eval_loop_at(b, param, mpq_class(0));
    if (!(theta.start.matrix == a0.matrix) || !(theta.end.matrix == b0.matrix))
        throw PreconditionError(
            "injectivity homotopy: theta boundaries do not match the X=0 evaluations");

    const RingPtr& ring = a.matrix.ring();
    const std::string& w = theta.homotopy_var;
    MultiPoly X = MultiPoly::variable(ring, param);
    MultiPoly W = MultiPoly::variable(ring, w);
    MultiPoly one = MultiPoly::constant(ring, 1);

    Mat2 left = a.matrix.substitute({{param, X * (one - W)}});
    Mat2 mid = sl2_inverse(theta.matrix.substitute({{w, one - W}}));
    Mat2 right = b.matrix.substitute({{param, X * W}});
    Mat2 M = left * mid * right;

    HomotopyCert cert{M, a.loop_var, w, a, b};
    VerifyReport rep = verify_homotopy(cert);
    if (!rep.ok)
        throw InternalInconsistencyError(
            "injectivity homotopy: constructed certificate failed verification "
            "(caller data violates the construction hypotheses): " +
            rep.to_string());
    return cert;
}

ElemFactorization elementary_decomposition(const Mat2& alpha) {
    const RingPtr& ring = alpha.ring();
    MultiPoly one = MultiPoly::constant(ring, 1);
    if (!(det2(alpha) == one))
        throw PreconditionError("elementary_decomposition: determinant is not 1");
    MultiPoly a1 = alpha.e11 - one;
    MultiPoly a3 = alpha.e12;
    MultiPoly a2 = alpha.e21;
    MultiPoly a4 = alpha.e22 - one;
    for (const MultiPoly* p : {&a1, &a2, &a3, &a4})
        if (!p->all_coeffs_nilpotent())
            throw PreconditionError(
                "elementary_decomposition: matrix is not congruent to the identity mod nilpotents");

    MultiPoly inv14 = invert_one_plus_nilpotent(a4);
    MultiPoly x = (one + a1) - inv14 * a2 * a3;
    MultiPoly xinv = invert_one_plus_nilpotent(x - one);

    auto build = [&](const MultiPoly& c1, const MultiPoly& c2) {
        std::vector<std::pair<ElemKind, MultiPoly>> fs = {
            {ElemKind::E12, c1},       {ElemKind::E21, c2}, {ElemKind::E12, -x},
            {ElemKind::E21, a4},       {ElemKind::E12, one}, {ElemKind::E21, x - one}};
        return fs;
    };

    // The displayed formula, then its a2/a3-transposed variant; whichever
    // multiplies back to alpha exactly wins.
    auto verbatim = build(inv14 * a2, xinv * a3);
    if (product_of(verbatim, ring) == alpha) return {verbatim, alpha, false};
    auto swapped = build(inv14 * a3, xinv * a2);
    if (product_of(swapped, ring) == alpha) return {swapped, alpha, true};
    throw InternalInconsistencyError(
        "elementary_decomposition: neither factorization variant multiplies back to the input; "
        "input = " + alpha.to_string());
}

Mat2 connect_to_identity(const Mat2& alpha, const std::string& new_var) {
    const RingPtr& ring = alpha.ring();
    ElemFactorization f = elementary_decomposition(alpha);
    MultiPoly X = MultiPoly::variable(ring, new_var);
    MultiPoly one = MultiPoly::constant(ring, 1);
    // Scale the nilpotent arguments by X; the fixed E12(-1+...) / E12(1)
    // pair keeps its constants.
    Mat2 beta = elementary(ElemKind::E12, f.factors[0].second * X) *
                elementary(ElemKind::E21, f.factors[1].second * X) *
                elementary(ElemKind::E12, -one + (f.factors[2].second + one) * X) *
                elementary(ElemKind::E21, f.factors[3].second * X) *
                elementary(ElemKind::E12, one) *
                elementary(ElemKind::E21, f.factors[5].second * X);
    if (!beta.eval_at(new_var, 0).is_identity())
        throw InternalInconsistencyError("connect_to_identity: beta(0) != I");
    if (!(beta.eval_at(new_var, 1) == alpha))
        throw InternalInconsistencyError("connect_to_identity: beta(1) != alpha");
    if (!is_identity_mod_nil(beta))
        throw InternalInconsistencyError("connect_to_identity: beta not congruent to I mod nilpotents");
    return beta;
}

HomotopyCert contract_nil_loop(const LoopRep& a, const std::string& homotopy_var) {
    const RingPtr& ring = a.matrix.ring();
    if (!is_identity_mod_nil(a.matrix))
        throw PreconditionError("contract_nil_loop: loop is not congruent to I mod nilpotents");
    Mat2 beta = connect_to_identity(a.matrix, homotopy_var);
    // connect_to_identity scales factor arguments h_i by the homotopy
    // variable; h_i(0) = h_i(1) = 0 because the loop has identity endpoints,
    // which makes beta identity at loop_var in {0,1}.
    HomotopyCert cert{beta, a.loop_var, homotopy_var,
                      LoopRep::constant_identity(ring, a.loop_var), a};
    VerifyReport rep = verify_homotopy(cert);
    if (!rep.ok)
        throw InternalInconsistencyError("contract_nil_loop: certificate failed verification: " +
                                         rep.to_string());
    return cert;
}

LoopRep lift_loop_mod_nil(const LoopRep& beta_bar, const RingPtr& target, const Mat2& chosen_lift) {
    if (target->kind != RingKind::Dual)
        throw PreconditionError("lift_loop_mod_nil: target must be a dual-number ring");
    require_same_ring(target, chosen_lift.ring(), "lift_loop_mod_nil");
    Mat2 reduced{chosen_lift.e11.nilradical_reduce_coeffs(), chosen_lift.e12.nilradical_reduce_coeffs(),
                 chosen_lift.e21.nilradical_reduce_coeffs(), chosen_lift.e22.nilradical_reduce_coeffs()};
    if (!(reduced == beta_bar.matrix))
        throw PreconditionError("lift_loop_mod_nil: chosen lift does not reduce to the given loop");

    const RingPtr& ring = target;
    MultiPoly one = MultiPoly::constant(ring, 1);
    MultiPoly lambda = det2(chosen_lift) - one;
    if (!lambda.all_coeffs_nilpotent())
        throw PreconditionError("lift_loop_mod_nil: determinant is not 1 plus nilpotent");
    MultiPoly corr = invert_one_plus_nilpotent(lambda);
    Mat2 alpha{chosen_lift.e11 * corr, chosen_lift.e12, chosen_lift.e21 * corr, chosen_lift.e22};
    if (!(det2(alpha) == one))
        throw InternalInconsistencyError("lift_loop_mod_nil: column scaling did not fix det");

    const std::string& xv = beta_bar.loop_var;
    Mat2 theta1 = connect_to_identity(alpha.eval_at(xv, 0), xv);
    Mat2 theta2 = connect_to_identity(alpha.eval_at(xv, 1), xv);
    MultiPoly X = MultiPoly::variable(ring, xv);
    Mat2 gamma = sl2_inverse(theta1.substitute({{xv, one - X}})) * alpha * sl2_inverse(theta2);

    LoopRep out = require_loop(gamma, xv);
    Mat2 back{gamma.e11.nilradical_reduce_coeffs(), gamma.e12.nilradical_reduce_coeffs(),
              gamma.e21.nilradical_reduce_coeffs(), gamma.e22.nilradical_reduce_coeffs()};
    if (!(back == beta_bar.matrix))
        throw InternalInconsistencyError("lift_loop_mod_nil: lifted loop does not reduce back");
    return out;
}

HomotopyCert kernel_contraction(const LoopRep& a, const Mat2& beta, const std::string& homotopy_var) {
    const RingPtr& ring = a.matrix.ring();
    MultiPoly one = MultiPoly::constant(ring, 1);
    const std::string& xv = a.loop_var;
    const std::string& tv = homotopy_var;

    std::vector<std::string> errs;
    if (!(det2(beta) == one)) errs.push_back("det(beta) != 1");
    if (!beta.eval_at(xv, 0).is_identity()) errs.push_back("beta(0, T) != I");
    if (!beta.eval_at(xv, 1).is_identity()) errs.push_back("beta(1, T) != I");
    Mat2 q0 = beta.eval_at(tv, 0) * sl2_inverse(a.matrix);
    Mat2 q1 = beta.eval_at(tv, 1);
    if (!is_identity_mod_nil(q0)) errs.push_back("beta(X, 0) a(X)^-1 not congruent to I mod nilpotents");
    if (!is_identity_mod_nil(q1)) errs.push_back("beta(X, 1) not congruent to I mod nilpotents");
    if (!q0.eval_at(xv, 0).is_identity() || !q0.eval_at(xv, 1).is_identity())
        errs.push_back("beta(X, 0) a(X)^-1 lacks identity endpoints");
    if (!q1.eval_at(xv, 0).is_identity() || !q1.eval_at(xv, 1).is_identity())
        errs.push_back("beta(X, 1) lacks identity endpoints");
    if (!errs.empty()) {
        std::string msg = "kernel_contraction preconditions failed:";
        for (const auto& e : errs) msg += "\n  - " + e;
        throw PreconditionError(msg);
    }

    Mat2 gamma1 = contract_nil_loop(require_loop(q0, xv), tv).matrix;
    Mat2 gamma2 = contract_nil_loop(require_loop(q1, xv), tv).matrix;

    MultiPoly T = MultiPoly::variable(ring, tv);
    Mat2 big = sl2_inverse(gamma1.substitute({{tv, one - T}})) * beta * sl2_inverse(gamma2);

    HomotopyCert cert{big, xv, tv, a, LoopRep::constant_identity(ring, xv)};
    VerifyReport rep = verify_homotopy(cert);
    if (!rep.ok)
        throw InternalInconsistencyError("kernel_contraction: certificate failed verification: " +
                                         rep.to_string());
    return cert;
}

MultiPoly swan_weibel_map(const MultiPoly& p, const std::string& t_var,
                          const std::set<std::string>& graded_vars) {
    const RingPtr& ring = p.ring();
    MultiPoly T = MultiPoly::variable(ring, t_var);
    MultiPoly out = MultiPoly::zero(ring);
    for (const auto& [e, c] : p.terms()) {
        unsigned d = MultiPoly::degree_in_set(e, p.vars(), graded_vars);
        MultiPoly term = MultiPoly::from_terms(ring, p.vars(), {{e, c}});
        out = out + term * T.pow(d);
    }
    return out;
}

GradedHomotopy graded_homotopy(const LoopRep& b, const std::string& t_var) {
    const RingPtr& ring = b.matrix.ring();
    if (ring->kind != RingKind::Rationals)
        throw PreconditionError("graded_homotopy: loop must be over rational coefficients");
    std::set<std::string> graded = b.parameters; // everything but the loop variable
    graded.erase(t_var);

    auto h = [&](const MultiPoly& p) { return swan_weibel_map(p, t_var, graded); };
    Mat2 gamma{h(b.matrix.e11), h(b.matrix.e12), h(b.matrix.e21), h(b.matrix.e22)};

    // h(T) is a ring homomorphism, so det should survive; verified rather
    // than assumed.
    LoopRep beta0 = require_loop(gamma.eval_at(t_var, 0), b.loop_var);
    for (const MultiPoly* p : {&beta0.matrix.e11, &beta0.matrix.e12, &beta0.matrix.e21,
                               &beta0.matrix.e22})
        for (const auto& v : p->vars())
            if (graded.count(v))
                throw InternalInconsistencyError(
                    "graded_homotopy: T=0 boundary escapes the degree-0 subring");

    HomotopyCert cert{gamma, b.loop_var, t_var, beta0, b};
    VerifyReport rep = verify_homotopy(cert);
    if (!rep.ok)
        throw InternalInconsistencyError("graded_homotopy: certificate failed verification: " +
                                         rep.to_string());
    return {cert, beta0};
}

std::pair<LoopRep, LoopRep> product_split(const LoopRep& a) {
    const RingPtr& ring = a.matrix.ring();
    if (ring->kind != RingKind::Product)
        throw PreconditionError("product_split: loop is not over a product ring");
    auto proj = [&](const RingPtr& comp, bool first) {
        auto f = [first](const RingElement& c) {
            return first ? c.pair_first() : c.pair_second();
        };
        Mat2 m{a.matrix.e11.map_coeffs(comp, f), a.matrix.e12.map_coeffs(comp, f),
               a.matrix.e21.map_coeffs(comp, f), a.matrix.e22.map_coeffs(comp, f)};
        return require_loop(m, a.loop_var);
    };
    return {proj(ring->left, true), proj(ring->right, false)};
}

LoopRep product_join(const LoopRep& left, const LoopRep& right, const RingPtr& product_ring) {
    if (product_ring->kind != RingKind::Product)
        throw PreconditionError("product_join: target is not a product ring");
    require_same_ring(product_ring->left, left.matrix.ring(), "product_join left");
    require_same_ring(product_ring->right, right.matrix.ring(), "product_join right");
    if (left.loop_var != right.loop_var)
        throw PreconditionError("product_join: loop variables differ");

    auto embed_left = [&](const MultiPoly& p) {
        return p.map_coeffs(product_ring, [&](const RingElement& c) {
            return RingElement::make_pair(product_ring, c, RingElement::zero(product_ring->right));
        });
    };
    auto embed_right = [&](const MultiPoly& p) {
        return p.map_coeffs(product_ring, [&](const RingElement& c) {
            return RingElement::make_pair(product_ring, RingElement::zero(product_ring->left), c);
        });
    };
    Mat2 m{embed_left(left.matrix.e11) + embed_right(right.matrix.e11),
           embed_left(left.matrix.e12) + embed_right(right.matrix.e12),
           embed_left(left.matrix.e21) + embed_right(right.matrix.e21),
           embed_left(left.matrix.e22) + embed_right(right.matrix.e22)};
    return require_loop(m, left.loop_var);
}

HomotopyCert basepoint_shift_homotopy(const LoopRep& a, const std::string& param,
                                      const std::string& s_var) {
    const RingPtr& ring = a.matrix.ring();
    MultiPoly X = MultiPoly::variable(ring, param);
    MultiPoly S = MultiPoly::variable(ring, s_var);
    MultiPoly one = MultiPoly::constant(ring, 1);
    Mat2 g = a.matrix.substitute({{param, (X - one) * S + one}});
    LoopRep at1 = require_loop(a.matrix.eval_at(param, 1), a.loop_var);
    HomotopyCert cert{g, a.loop_var, s_var, at1, a};
    VerifyReport rep = verify_homotopy(cert);
    if (!rep.ok)
        throw InternalInconsistencyError("basepoint_shift_homotopy: verification failed: " +
                                         rep.to_string());
    return cert;
}

} // namespace algfun
