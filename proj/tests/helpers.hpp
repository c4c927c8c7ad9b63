#pragma once

#include <random>

#include "algfun/homotopy.hpp"

namespace testutil {

using namespace algfun;

inline mpq_class rand_rational(std::mt19937& rng, int span = 9) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, 5);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline MultiPoly rand_qpoly(std::mt19937& rng, const std::string& var, int max_deg = 3) {
    RingPtr Q = RingDescriptor::rationals();
    std::uniform_int_distribution<int> deg(0, max_deg);
    MultiPoly out = MultiPoly::zero(Q);
    MultiPoly t = MultiPoly::variable(Q, var);
    MultiPoly pw = MultiPoly::constant(Q, 1);
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) {
        out = out + pw.scale(RingElement::from_rational(Q, rand_rational(rng)));
        pw = pw * t;
    }
    return out;
}

// p with p(0) = p(1) = 0: T(T-1) times a random polynomial.
inline MultiPoly rand_vanishing(std::mt19937& rng, const std::string& var, int max_deg = 2) {
    RingPtr Q = RingDescriptor::rationals();
    MultiPoly t = MultiPoly::variable(Q, var);
    MultiPoly one = MultiPoly::constant(Q, 1);
    return t * (t - one) * rand_qpoly(rng, var, max_deg);
}

// Random loop: a product of elementary matrices with arguments vanishing at
// the endpoints.
inline LoopRep rand_elem_loop(std::mt19937& rng, const std::string& var = "T", int factors = 3) {
    RingPtr Q = RingDescriptor::rationals();
    Mat2 m = Mat2::identity(Q);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < factors; ++i) {
        ElemKind k = coin(rng) ? ElemKind::E12 : ElemKind::E21;
        m = m * elementary(k, rand_vanishing(rng, var, 1));
    }
    return require_loop(m, var);
}

// Random dual-number polynomial with every coefficient nilpotent.
inline MultiPoly rand_nil_poly(std::mt19937& rng, const RingPtr& dual_ring,
                               const std::vector<std::string>& vars, int max_deg = 2) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> pw(1, dual_ring->dual_order - 1);
    std::uniform_int_distribution<size_t> pick(0, vars.empty() ? 0 : vars.size() - 1);
    MultiPoly out = MultiPoly::zero(dual_ring);
    int terms = deg(rng) + 1;
    for (int i = 0; i < terms; ++i) {
        RingElement c =
            RingElement::dual_eps(dual_ring, pw(rng)).mul(RingElement::from_rational(
                dual_ring, rand_rational(rng)));
        MultiPoly term = MultiPoly::constant(c);
        if (!vars.empty()) {
            const std::string& v = vars[pick(rng)];
            int d = deg(rng);
            term = term * MultiPoly::variable(dual_ring, v).pow(unsigned(d));
        }
        out = out + term;
    }
    return out;
}

// Random SL2 matrix congruent to the identity mod nilpotents.
inline Mat2 rand_nil_matrix(std::mt19937& rng, const RingPtr& dual_ring,
                            const std::vector<std::string>& vars = {}, int factors = 4) {
    Mat2 m = Mat2::identity(dual_ring);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < factors; ++i) {
        ElemKind k = coin(rng) ? ElemKind::E12 : ElemKind::E21;
        m = m * elementary(k, rand_nil_poly(rng, dual_ring, vars));
    }
    return m;
}

} // namespace testutil
