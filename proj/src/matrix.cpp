#include "algfun/matrix.hpp"

#include <sstream>

namespace algfun {

std::string VerifyReport::to_string() const {
    if (ok) return "ok";
    std::ostringstream os;
    os << "rejected:";
    for (const auto& v : violations) os << "\n  - " << v;
    return os.str();
}

Mat2 Mat2::identity(const RingPtr& ring) {
    return {MultiPoly::constant(ring, 1), MultiPoly::zero(ring), MultiPoly::zero(ring),
            MultiPoly::constant(ring, 1)};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {e11 * o.e11 + e12 * o.e21, e11 * o.e12 + e12 * o.e22,
            e21 * o.e11 + e22 * o.e21, e21 * o.e12 + e22 * o.e22};
}

Mat2 Mat2::operator-(const Mat2& o) const {
    return {e11 - o.e11, e12 - o.e12, e21 - o.e21, e22 - o.e22};
}

bool Mat2::operator==(const Mat2& o) const {
    return e11 == o.e11 && e12 == o.e12 && e21 == o.e21 && e22 == o.e22;
}

bool Mat2::is_identity() const {
    return *this == identity(ring());
}

Mat2 Mat2::substitute(const std::map<std::string, MultiPoly>& bindings) const {
    return {e11.substitute(bindings), e12.substitute(bindings), e21.substitute(bindings),
            e22.substitute(bindings)};
}

Mat2 Mat2::eval_at(const std::string& var, const mpq_class& value) const {
    return {e11.eval_at(var, value), e12.eval_at(var, value), e21.eval_at(var, value),
            e22.eval_at(var, value)};
}

std::set<std::string> Mat2::variables() const {
    std::set<std::string> out;
    for (const MultiPoly* p : {&e11, &e12, &e21, &e22})
        for (const auto& v : p->vars()) out.insert(v);
    return out;
}

std::string Mat2::to_string() const {
    return "[[" + e11.to_string() + ", " + e12.to_string() + "], [" + e21.to_string() + ", " +
           e22.to_string() + "]]";
}

MultiPoly det2(const Mat2& m) { return m.e11 * m.e22 - m.e12 * m.e21; }

Mat2 sl2_inverse(const Mat2& m) {
    MultiPoly d = det2(m);
    if (!(d == MultiPoly::constant(m.ring(), 1)))
        throw NotSpecialError("sl2_inverse: determinant is not 1: " + d.to_string());
    return {m.e22, -m.e12, -m.e21, m.e11};
}

Mat2 elementary(ElemKind kind, const MultiPoly& p) {
    const RingPtr& ring = p.ring();
    Mat2 m = Mat2::identity(ring);
    if (kind == ElemKind::E12)
        m.e12 = p;
    else
        m.e21 = p;
    return m;
}

LoopRep LoopRep::constant_identity(const RingPtr& ring, const std::string& loop_var) {
    return {Mat2::identity(ring), loop_var, {}};
}

LoopCheck verify_loop(const Mat2& m, const std::string& loop_var) {
    LoopCheck out;
    MultiPoly d = det2(m);
    if (!(d == MultiPoly::constant(m.ring(), 1)))
        out.report.fail("determinant is not identically 1: det = " + d.to_string());
    Mat2 at0 = m.eval_at(loop_var, 0);
    if (!at0.is_identity())
        out.report.fail("endpoint at " + loop_var + "=0 is not the identity: " + at0.to_string());
    Mat2 at1 = m.eval_at(loop_var, 1);
    if (!at1.is_identity())
        out.report.fail("endpoint at " + loop_var + "=1 is not the identity: " + at1.to_string());
    if (out.report.ok) {
        out.loop.matrix = m;
        out.loop.loop_var = loop_var;
        for (const auto& v : m.variables())
            if (v != loop_var) out.loop.parameters.insert(v);
    }
    return out;
}

LoopRep require_loop(const Mat2& m, const std::string& loop_var) {
    LoopCheck c = verify_loop(m, loop_var);
    if (!c.report.ok) throw PreconditionError("not a valid loop: " + c.report.to_string());
    return c.loop;
}

VerifyReport verify_homotopy(const HomotopyCert& cert) {
    VerifyReport rep;
    const Mat2& g = cert.matrix;
    MultiPoly d = det2(g);
    if (!(d == MultiPoly::constant(g.ring(), 1)))
        rep.fail("determinant is not identically 1: det = " + d.to_string());
    Mat2 s0 = g.eval_at(cert.homotopy_var, 0);
    if (!(s0 == cert.start.matrix))
        rep.fail("boundary at " + cert.homotopy_var + "=0 differs from declared start: got " +
                 s0.to_string());
    Mat2 s1 = g.eval_at(cert.homotopy_var, 1);
    if (!(s1 == cert.end.matrix))
        rep.fail("boundary at " + cert.homotopy_var + "=1 differs from declared end: got " +
                 s1.to_string());
    Mat2 t0 = g.eval_at(cert.loop_var, 0);
    if (!t0.is_identity())
        rep.fail("matrix at " + cert.loop_var + "=0 is not the identity: " + t0.to_string());
    Mat2 t1 = g.eval_at(cert.loop_var, 1);
    if (!t1.is_identity())
        rep.fail("matrix at " + cert.loop_var + "=1 is not the identity: " + t1.to_string());
    return rep;
}

LoopRep loop_product(const LoopRep& a, const LoopRep& b) {
    require_same_ring(a.matrix.ring(), b.matrix.ring(), "loop_product");
    if (a.loop_var != b.loop_var)
        throw PreconditionError("loop_product: loop variables differ (" + a.loop_var + " vs " +
                                b.loop_var + ")");
    return require_loop(a.matrix * b.matrix, a.loop_var);
}

LoopRep loop_inverse(const LoopRep& a) {
    return require_loop(sl2_inverse(a.matrix), a.loop_var);
}

LoopRep loop_power(const LoopRep& a, int k) {
    LoopRep base = k >= 0 ? a : loop_inverse(a);
    int n = k >= 0 ? k : -k;
    LoopRep acc = LoopRep::constant_identity(a.matrix.ring(), a.loop_var);
    for (int i = 0; i < n; ++i) acc = loop_product(acc, base);
    return acc;
}

} // namespace algfun
