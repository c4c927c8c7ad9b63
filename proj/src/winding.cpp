#include "algfun/winding.hpp"

#include <cmath>

namespace algfun {

namespace {

// (+,+) -> 0, (-,+) -> 1, (-,-) -> 2, (+,-) -> 3 (counterclockwise order).
int quadrant(int sx, int sy) {
    if (sx > 0) return sy > 0 ? 0 : 3;
    return sy > 0 ? 1 : 2;
}

// Largest e <= span/2 with no roots of `chain` in (base, base+e].
mpq_class root_free_above(const SturmChain& chain, const mpq_class& base, const mpq_class& span) {
    mpq_class e = span / 2;
    while (chain.count_roots(base, base + e) > 0) e /= 2;
    return e;
}

struct SegmentWalk {
    std::vector<int> quadrants; // at samples in increasing order of t
};

// A piece runs along a coordinate axis; the caller rotates the whole path
// by an exact rational rotation and retries.
struct NeedsRotation {};

SegmentWalk walk_segment(const PlanePath& seg) {
    QPoly x = qp_trim(seg.x), y = qp_trim(seg.y);
    if (x.empty() && y.empty())
        throw PreconditionError("quarter-turn walk: a piece sits at the origin");
    if (x.empty() || y.empty()) throw NeedsRotation{};
    if (!(seg.lo < seg.hi))
        throw PreconditionError("quarter-turn walk: empty parameter interval");

    // Common roots = origin hits.
    QPoly g = qp_gcd(x, y);
    if (qp_degree(g) >= 1) {
        if (qp_eval(g, seg.lo) == 0 || qp_eval(g, seg.hi) == 0)
            throw PreconditionError("quarter-turn walk: path meets the origin at a piece endpoint");
        SturmChain gchain(qp_squarefree(g));
        if (gchain.count_roots(seg.lo, seg.hi) > 0)
            throw PreconditionError("quarter-turn walk: path meets the origin inside a piece");
    }

    QPoly p = qp_squarefree(qp_mul(x, y));
    SturmChain chain(p);
    mpq_class span = seg.hi - seg.lo;

    mpq_class lo2 = seg.lo;
    if (qp_eval(p, lo2) == 0) lo2 = seg.lo + root_free_above(chain, seg.lo, span);
    mpq_class hi2 = seg.hi;
    if (qp_eval(p, hi2) == 0) {
        // Largest e with no roots in [hi-e, hi): count on (hi-e, hi] is then
        // exactly the root at hi, and hi-e itself is not a root. Starting
        // from span/4 keeps hi2 strictly above lo2 (which moved by at most
        // span/2) even when p has roots only at the two endpoints.
        mpq_class e = span / 4;
        while (chain.count_roots(seg.hi - e, seg.hi) != 1 || qp_eval(p, seg.hi - e) == 0) e /= 2;
        hi2 = seg.hi - e;
    }
    if (!(lo2 < hi2))
        throw InternalInconsistencyError("quarter-turn walk: interior sample window collapsed");

    std::vector<RootInterval> roots = isolate_roots(p, lo2, hi2);
    std::vector<mpq_class> samples;
    samples.push_back(lo2);
    for (size_t i = 0; i + 1 < roots.size(); ++i)
        samples.push_back((roots[i].hi + roots[i + 1].lo) / 2);
    if (!roots.empty()) samples.push_back(hi2);
    if (roots.empty() && samples.size() == 1) samples.push_back(hi2);

    SegmentWalk w;
    for (const auto& t : samples) {
        int sx = sign_of(qp_eval(x, t));
        int sy = sign_of(qp_eval(y, t));
        if (sx == 0 || sy == 0)
            throw InternalInconsistencyError("quarter-turn walk: sample landed on an axis");
        w.quadrants.push_back(quadrant(sx, sy));
    }
    return w;
}

// Exact rotation by the rational circle point (3/5, 4/5). Its angle is an
// irrational multiple of pi, so repeated application moves any fixed line
// direction off the coordinate axes after finitely many steps.
std::vector<PlanePath> rotate_pieces(const std::vector<PlanePath>& pieces) {
    mpq_class c(3, 5), s(4, 5);
    std::vector<PlanePath> out;
    out.reserve(pieces.size());
    for (const auto& p : pieces)
        out.push_back({qp_sub(qp_scale(p.x, c), qp_scale(p.y, s)),
                       qp_add(qp_scale(p.x, s), qp_scale(p.y, c)), p.lo, p.hi});
    return out;
}

} // namespace

long signed_quarter_turns(const std::vector<PlanePath>& pieces) {
    if (pieces.empty()) throw PreconditionError("quarter-turn walk: empty path");

    // Junction values must match exactly and avoid the origin.
    for (size_t i = 0; i < pieces.size(); ++i) {
        const PlanePath& cur = pieces[i];
        const PlanePath& nxt = pieces[(i + 1) % pieces.size()];
        mpq_class xe = qp_eval(cur.x, cur.hi), ye = qp_eval(cur.y, cur.hi);
        mpq_class xs = qp_eval(nxt.x, nxt.lo), ys = qp_eval(nxt.y, nxt.lo);
        if (xe != xs || ye != ys)
            throw PreconditionError("quarter-turn walk: pieces do not join into a closed path");
        if (xe == 0 && ye == 0)
            throw PreconditionError("quarter-turn walk: path meets the origin at a junction");
    }

    // Winding is rotation-invariant: when a piece runs along an axis, rotate
    // the whole path exactly and retry. Each axis-parallel direction is
    // fixed only by finitely many rotation counts, so a small retry budget
    // always suffices.
    std::vector<PlanePath> work = pieces;
    std::vector<int> itinerary;
    for (size_t attempt = 0;; ++attempt) {
        try {
            itinerary.clear();
            for (const auto& seg : work) {
                SegmentWalk w = walk_segment(seg);
                itinerary.insert(itinerary.end(), w.quadrants.begin(), w.quadrants.end());
            }
            break;
        } catch (const NeedsRotation&) {
            if (attempt >= 2 * pieces.size() + 4)
                throw InternalInconsistencyError(
                    "quarter-turn walk: rotation retries exhausted");
            work = rotate_pieces(work);
        }
    }

    long total = 0;
    size_t n = itinerary.size();
    for (size_t k = 0; k < n; ++k) {
        int d = ((itinerary[(k + 1) % n] - itinerary[k]) % 4 + 4) % 4;
        if (d == 0)
            continue;
        else if (d == 1)
            total += 1;
        else if (d == 3)
            total -= 1;
        else
            throw InternalInconsistencyError(
                "quarter-turn walk: antipodal quadrant jump between adjacent samples");
    }
    return total;
}

RootIsolation isolate_real_roots(const MultiPoly& p, const std::string& var) {
    QPoly q = qp_trim(p.to_qpoly(var));
    if (q.empty()) throw PreconditionError("isolate_real_roots: zero polynomial");
    RootIsolation out;
    out.polynomial = q;
    if (q.size() == 1) return out;

    QPoly sf = qp_squarefree(q);
    SturmChain chain(sf);

    // Extend past the endpoints just far enough to pick up roots exactly at
    // 0 or 1 without admitting outside roots.
    mpq_class lo = 0;
    if (qp_eval(sf, mpq_class(0)) == 0) {
        mpq_class e(1, 2);
        while (chain.count_roots(-e, mpq_class(0)) != 1 || qp_eval(sf, -e) == 0) e /= 2;
        lo = -e;
    }
    mpq_class hi = 1;
    if (qp_eval(sf, mpq_class(1)) == 0) {
        mpq_class e(1, 2);
        while (chain.count_roots(mpq_class(1), 1 + e) != 0) e /= 2;
        hi = 1 + e;
    }
    // With these bounds every isolated root lies in [0,1].
    out.intervals = isolate_roots(sf, lo, hi);
    return out;
}

VerifyReport nonvanishing_on_unit_interval(const PlaneLoop& l) {
    VerifyReport rep;
    QPoly f1 = qp_trim(l.f1_dense());
    QPoly f2 = qp_trim(l.f2_dense());
    if (qp_eval(f1, mpq_class(0)) != qp_eval(f1, mpq_class(1)) ||
        qp_eval(f2, mpq_class(0)) != qp_eval(f2, mpq_class(1)))
        rep.fail("path is not closed: values at 0 and 1 differ");

    QPoly g = qp_add(qp_mul(f1, f1), qp_mul(f2, f2));
    if (qp_is_zero(g)) {
        rep.fail("path is constantly the origin");
        return rep;
    }
    if (qp_eval(g, mpq_class(0)) == 0) {
        rep.fail("path meets the origin at t = 0");
        return rep;
    }
    MultiPoly gm = MultiPoly::zero(RingDescriptor::rationals());
    {
        RingPtr q = RingDescriptor::rationals();
        MultiPoly t = MultiPoly::variable(q, l.var);
        MultiPoly pw = MultiPoly::constant(q, 1);
        for (const auto& c : g) {
            gm = gm + pw.scale(RingElement::from_rational(q, c));
            pw = pw * t;
        }
    }
    RootIsolation iso = isolate_real_roots(gm, l.var);
    for (const auto& iv : iso.intervals)
        rep.fail("f1^2 + f2^2 vanishes in (" + iv.lo.get_str() + ", " + iv.hi.get_str() + "]");
    return rep;
}

long winding_number(const PlaneLoop& l) {
    VerifyReport rep = nonvanishing_on_unit_interval(l);
    if (!rep.ok)
        throw PreconditionError("winding_number: " + rep.to_string());
    PlanePath seg{l.f1_dense(), l.f2_dense(), 0, 1};
    long q = signed_quarter_turns({seg});
    if (q % 4 != 0)
        throw InternalInconsistencyError("winding_number: quarter turns not divisible by 4");
    return q / 4;
}

long eta(const LoopRep& a) {
    if (a.matrix.ring()->kind != RingKind::Rationals)
        throw PreconditionError("eta: loop must be over rational coefficients");
    if (!a.parameters.empty())
        throw PreconditionError("eta: loop has free parameters");
    PlaneLoop col{a.matrix.e11, a.matrix.e21, a.loop_var};
    return winding_number(col);
}

LoopRep generator_loop() {
    RingPtr q = RingDescriptor::rationals();
    MultiPoly T = MultiPoly::variable(q, "T");
    MultiPoly one = MultiPoly::constant(q, 1);
    MultiPoly u = T * (one - T);          // 4.. pieces share T(1-T)
    MultiPoly v = T.scale(RingElement::from_int(q, 2)) - one; // 2T-1
    MultiPoly four = MultiPoly::constant(q, 4);
    MultiPoly w = T * T.scale(RingElement::from_int(q, 24)) -
                  T.scale(RingElement::from_int(q, 24)); // 24T^2 - 24T

    Mat2 m{one + four * u * (T * T - T - one),
           u * v * (w - MultiPoly::constant(q, 29)),
           four * u * v,
           one + four * u * (w + one)};
    return require_loop(m, "T");
}

FreeHomotopy free_homotopy_H(const LoopRep& a, const LoopRep& b, const std::string& s_var) {
    const RingPtr& ring = a.matrix.ring();
    require_same_ring(ring, b.matrix.ring(), "free_homotopy_H");
    if (a.loop_var != b.loop_var)
        throw PreconditionError("free_homotopy_H: loop variables differ");
    const MultiPoly &f1 = a.matrix.e11, &g1 = a.matrix.e12, &f2 = a.matrix.e21, &g2 = a.matrix.e22;
    const MultiPoly &p1 = b.matrix.e11, &p2 = b.matrix.e21, &q1 = b.matrix.e12, &q2 = b.matrix.e22;
    MultiPoly s = MultiPoly::variable(ring, s_var);
    MultiPoly one = MultiPoly::constant(ring, 1);

    FreeHomotopy out;
    out.H1 = f1 * p1 + (s * g1 - (one - s) * f2) * p2;
    out.H2 = f2 * p1 + (s * g2 + (one - s) * f1) * p2;

    MultiPoly lhs = f1 * out.H2 - f2 * out.H1;
    MultiPoly rhs = (s + (one - s) * (f1 * f1 + f2 * f2)) * p2;
    if (lhs != rhs)
        out.report.fail("pivot identity f1 H2 - f2 H1 = (s + (1-s)(f1^2+f2^2)) f2' failed");

    Mat2 prod = a.matrix * b.matrix;
    if (out.H1.eval_at(s_var, 1) != prod.e11 || out.H2.eval_at(s_var, 1) != prod.e21)
        out.report.fail("H(t,1) does not match the product's first column");
    MultiPoly c1 = f1 * p1 - f2 * p2;
    MultiPoly c2 = f2 * p1 + f1 * p2;
    if (out.H1.eval_at(s_var, 0) != c1 || out.H2.eval_at(s_var, 0) != c2)
        out.report.fail("H(t,0) does not match the complex-multiplication column");
    (void)q1;
    (void)q2;
    return out;
}

double numeric_winding_oracle(const PlaneLoop& l, int samples) {
    if (samples < 2) throw PreconditionError("numeric_winding_oracle: need at least 2 samples");
    QPoly f1 = l.f1_dense(), f2 = l.f2_dense();
    auto eval_d = [](const QPoly& p, double t) {
        double acc = 0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + it->get_d();
        return acc;
    };
    const double pi = 3.14159265358979323846;
    double prev = std::atan2(eval_d(f2, 0.0), eval_d(f1, 0.0));
    double total = 0;
    for (int k = 1; k <= samples; ++k) {
        double t = static_cast<double>(k) / samples;
        double x = eval_d(f1, t), y = eval_d(f2, t);
        if (x == 0 && y == 0)
            throw PreconditionError("numeric_winding_oracle: sample at the origin");
        double th = std::atan2(y, x);
        double d = th - prev;
        while (d > pi) d -= 2 * pi;
        while (d <= -pi) d += 2 * pi;
        if (std::fabs(d) >= pi * 0.999)
            throw RefineNeeded("numeric_winding_oracle: angle increment reached the branch cut; "
                               "increase samples");
        total += d;
        prev = th;
    }
    return total / (2 * pi);
}

} // namespace algfun
