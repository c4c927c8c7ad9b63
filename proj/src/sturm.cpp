#include "algfun/sturm.hpp"

#include <algorithm>

namespace algfun {

int sign_of(const mpq_class& x) { return sgn(x); }

QPoly qp_trim(QPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

bool qp_is_zero(const QPoly& p) { return qp_trim(p).empty(); }

int qp_degree(const QPoly& p) {
    QPoly t = qp_trim(p);
    return static_cast<int>(t.size()) - 1;
}

mpq_class qp_eval(const QPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return qp_trim(std::move(r));
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return qp_trim(std::move(r));
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return qp_trim(std::move(r));
}

QPoly qp_scale(const QPoly& a, const mpq_class& c) {
    if (c == 0) return {};
    QPoly r = a;
    for (auto& v : r) v *= c;
    return qp_trim(std::move(r));
}

QPoly qp_derivative(const QPoly& p) {
    if (p.size() <= 1) return {};
    QPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<long>(i);
    return qp_trim(std::move(r));
}

QPoly qp_rem(const QPoly& a, const QPoly& b) {
    QPoly r = qp_trim(a);
    QPoly d = qp_trim(b);
    if (d.empty()) throw PreconditionError("qp_rem: division by zero polynomial");
    while (r.size() >= d.size()) {
        mpq_class q = r.back() / d.back();
        size_t shift = r.size() - d.size();
        for (size_t i = 0; i < d.size(); ++i) r[shift + i] -= q * d[i];
        r = qp_trim(std::move(r));
        if (r.empty()) break;
    }
    return r;
}

QPoly qp_gcd(QPoly a, QPoly b) {
    a = qp_trim(std::move(a));
    b = qp_trim(std::move(b));
    while (!b.empty()) {
        QPoly r = qp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

QPoly qp_squarefree(const QPoly& p) {
    QPoly t = qp_trim(p);
    if (t.size() <= 1) return t;
    QPoly g = qp_gcd(t, qp_derivative(t));
    if (qp_degree(g) <= 0) return t;
    // Exact division t / g (remainder is zero by construction).
    QPoly q;
    QPoly r = t;
    q.assign(r.size() - g.size() + 1, 0);
    while (r.size() >= g.size()) {
        mpq_class c = r.back() / g.back();
        size_t shift = r.size() - g.size();
        q[shift] = c;
        for (size_t i = 0; i < g.size(); ++i) r[shift + i] -= c * g[i];
        r = qp_trim(std::move(r));
        if (r.empty()) break;
    }
    if (!r.empty()) throw InternalInconsistencyError("qp_squarefree: non-exact division by gcd");
    return qp_trim(std::move(q));
}

SturmChain::SturmChain(const QPoly& squarefree) {
    QPoly p0 = qp_trim(squarefree);
    if (p0.empty()) throw PreconditionError("SturmChain: zero polynomial");
    chain.push_back(p0);
    if (p0.size() == 1) return;
    QPoly p1 = qp_derivative(p0);
    chain.push_back(p1);
    while (true) {
        QPoly r = qp_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
}

int SturmChain::variations_at(const mpq_class& x) const {
    int vars = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_of(qp_eval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

int SturmChain::count_roots(const mpq_class& a, const mpq_class& b) const {
    return variations_at(a) - variations_at(b);
}

std::vector<RootInterval> isolate_roots(const QPoly& p, const mpq_class& a, const mpq_class& b) {
    if (qp_is_zero(p)) throw PreconditionError("isolate_roots: zero polynomial");
    if (qp_eval(p, a) == 0 || qp_eval(p, b) == 0)
        throw PreconditionError("isolate_roots: an endpoint is a root");
    QPoly sf = qp_squarefree(p);
    SturmChain chain(sf);

    std::vector<RootInterval> out;
    std::vector<RootInterval> stack = {{a, b}};
    while (!stack.empty()) {
        RootInterval iv = stack.back();
        stack.pop_back();
        int n = chain.count_roots(iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1 && qp_eval(sf, iv.hi) != 0) {
            out.push_back(iv);
            continue;
        }
        mpq_class mid = (iv.lo + iv.hi) / 2;
        // Nudge off a root at the midpoint so subinterval endpoints stay clean.
        while (qp_eval(sf, mid) == 0) mid = (iv.lo + mid) / 2;
        stack.push_back({iv.lo, mid});
        stack.push_back({mid, iv.hi});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

RootInterval refine_root(const QPoly& squarefree, RootInterval iv, const mpq_class& width) {
    SturmChain chain(squarefree);
    if (chain.count_roots(iv.lo, iv.hi) != 1)
        throw PreconditionError("refine_root: interval does not isolate one root");
    while (iv.hi - iv.lo >= width) {
        mpq_class mid = (iv.lo + iv.hi) / 2;
        while (qp_eval(squarefree, mid) == 0) mid = (iv.lo + mid) / 2;
        if (chain.count_roots(iv.lo, mid) == 1)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

} // namespace algfun
