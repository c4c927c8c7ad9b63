#include "algfun/poly.hpp"

#include <algorithm>
#include <sstream>

namespace algfun {

bool MultiPoly::GradedLess::operator()(const Exp& a, const Exp& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::zero(const RingPtr& ring) {
    MultiPoly p;
    p.ring_ = ring;
    return p;
}

MultiPoly MultiPoly::constant(const RingElement& c) {
    MultiPoly p;
    p.ring_ = c.ring();
    if (!c.is_zero()) p.terms_.emplace(Exp{}, c);
    return p;
}

MultiPoly MultiPoly::constant(const RingPtr& ring, long v) {
    return constant(RingElement::from_int(ring, v));
}

MultiPoly MultiPoly::variable(const RingPtr& ring, const std::string& name) {
    MultiPoly p;
    p.ring_ = ring;
    p.vars_ = {name};
    p.terms_.emplace(Exp{1}, RingElement::one(ring));
    return p;
}

MultiPoly MultiPoly::from_terms(const RingPtr& ring, std::vector<std::string> vars,
                                std::vector<std::pair<Exp, RingElement>> terms) {
    MultiPoly p;
    p.ring_ = ring;
    p.vars_ = std::move(vars);
    for (auto& [e, c] : terms) {
        auto it = p.terms_.find(e);
        if (it == p.terms_.end())
            p.terms_.emplace(std::move(e), std::move(c));
        else
            it->second = it->second.add(c);
    }
    p.normalize();
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const Exp& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

RingElement MultiPoly::constant_value() const {
    if (!is_constant()) throw Error("MultiPoly::constant_value: polynomial is not constant: " + to_string());
    return constant_term();
}

RingElement MultiPoly::constant_term() const {
    Exp z(vars_.size(), 0);
    auto it = terms_.find(z);
    if (it == terms_.end()) return RingElement::zero(ring_);
    return it->second;
}

void MultiPoly::normalize() {
    // Drop zero coefficients.
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    // Prune unused variables.
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) used[i] = true;
    bool all_used = std::all_of(used.begin(), used.end(), [](bool b) { return b; });
    if (all_used) return;
    std::vector<std::string> nv;
    std::vector<size_t> keep;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) {
            nv.push_back(vars_[i]);
            keep.push_back(i);
        }
    TermMap nt;
    for (const auto& [e, c] : terms_) {
        Exp ne(keep.size());
        for (size_t i = 0; i < keep.size(); ++i) ne[i] = e[keep[i]];
        nt.emplace(std::move(ne), c);
    }
    vars_ = std::move(nv);
    terms_ = std::move(nt);
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& target) const {
    MultiPoly r;
    r.ring_ = ring_;
    r.vars_ = target;
    std::vector<int> pos(vars_.size(), -1);
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(target.begin(), target.end(), vars_[i]);
        pos[i] = int(it - target.begin());
    }
    for (const auto& [e, c] : terms_) {
        Exp ne(target.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[size_t(pos[i])] = e[i];
        r.terms_.emplace(std::move(ne), c);
    }
    return r;
}

void MultiPoly::align(const MultiPoly& a, const MultiPoly& b, MultiPoly& a2, MultiPoly& b2) {
    std::vector<std::string> merged;
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                   std::back_inserter(merged));
    a2 = a.with_vars(merged);
    b2 = b.with_vars(merged);
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (!same_ring(ring_, o.ring_)) return false;
    return vars_ == o.vars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    require_same_ring(ring_, o.ring_, "poly add");
    MultiPoly a, b;
    align(*this, o, a, b);
    for (const auto& [e, c] : b.terms_) {
        auto it = a.terms_.find(e);
        if (it == a.terms_.end())
            a.terms_.emplace(e, c);
        else
            it->second = it->second.add(c);
    }
    a.normalize();
    return a;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = c.neg();
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    require_same_ring(ring_, o.ring_, "poly mul");
    MultiPoly a, b;
    align(*this, o, a, b);
    MultiPoly r;
    r.ring_ = ring_;
    r.vars_ = a.vars_;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exp e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            RingElement c = ca.mul(cb);
            auto it = r.terms_.find(e);
            if (it == r.terms_.end())
                r.terms_.emplace(std::move(e), std::move(c));
            else
                it->second = it->second.add(c);
        }
    r.normalize();
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(ring_, 1);
    MultiPoly b = *this;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return r;
}

MultiPoly MultiPoly::scale(const RingElement& c) const {
    return *this * constant(c);
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& bindings) const {
    for (const auto& [v, p] : bindings) require_same_ring(ring_, p.ring(), "substitute");
    MultiPoly r = zero(ring_);
    for (const auto& [e, c] : terms_) {
        MultiPoly t = constant(c);
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = bindings.find(vars_[i]);
            MultiPoly base = (it != bindings.end()) ? it->second : variable(ring_, vars_[i]);
            t = t * base.pow(e[i]);
        }
        r = r + t;
    }
    return r;
}

MultiPoly MultiPoly::eval_at(const std::string& var, const mpq_class& value) const {
    return substitute({{var, constant(RingElement::from_rational(ring_, value))}});
}

unsigned MultiPoly::degree_in(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t i = size_t(it - vars_.begin());
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (unsigned x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

unsigned MultiPoly::degree_in_set(const Exp& e, const std::vector<std::string>& vars,
                                  const std::set<std::string>& subset) {
    unsigned d = 0;
    for (size_t i = 0; i < e.size(); ++i)
        if (subset.count(vars[i])) d += e[i];
    return d;
}

bool MultiPoly::mentions(const std::string& var) const {
    return degree_in(var) > 0;
}

bool MultiPoly::all_coeffs_nilpotent() const {
    for (const auto& [e, c] : terms_)
        if (!c.is_nilpotent()) return false;
    return true;
}

MultiPoly MultiPoly::nilradical_reduce_coeffs() const {
    RingPtr q = RingDescriptor::rationals();
    return map_coeffs(q, [](const RingElement& c) { return c.nilradical_reduce(); });
}

MultiPoly MultiPoly::map_coeffs(const RingPtr& new_ring,
                                const std::function<RingElement(const RingElement&)>& f) const {
    MultiPoly r;
    r.ring_ = new_ring;
    r.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        RingElement nc = f(c);
        if (!nc.is_zero()) r.terms_.emplace(e, std::move(nc));
    }
    r.normalize();
    return r;
}

std::vector<MultiPoly> MultiPoly::univariate_coeffs(const std::string& var) const {
    unsigned d = degree_in(var);
    std::vector<MultiPoly> out(d + 1, zero(ring_));
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) {
        out[0] = *this;
        return out;
    }
    size_t vi = size_t(it - vars_.begin());
    for (const auto& [e, c] : terms_) {
        unsigned k = e[vi];
        Exp ne = e;
        ne[vi] = 0;
        MultiPoly t;
        t.ring_ = ring_;
        t.vars_ = vars_;
        t.terms_.emplace(std::move(ne), c);
        t.normalize();
        out[k] = out[k] + t;
    }
    return out;
}

std::vector<mpq_class> MultiPoly::to_qpoly(const std::string& var) const {
    for (const auto& v : vars_)
        if (v != var) throw Error("to_qpoly: extra variable " + v + " in " + to_string());
    std::vector<mpq_class> out(degree_in(var) + 1, mpq_class(0));
    if (is_zero()) return {mpq_class(0)};
    for (const auto& [e, c] : terms_) {
        unsigned k = vars_.empty() ? 0 : e[0];
        out[k] = c.rational_value();
    }
    return out;
}

MultiPoly MultiPoly::reduce_mod(const MultiPoly& relation, const std::string& var) const {
    unsigned dr = relation.degree_in(var);
    if (dr == 0) throw Error("reduce_mod: relation does not involve " + var);
    auto rel_coeffs = relation.univariate_coeffs(var);
    if (!(rel_coeffs[dr].is_constant() && rel_coeffs[dr].constant_value().is_one()))
        throw PreconditionError("reduce_mod: relation is not monic in " + var);
    MultiPoly p = *this;
    while (true) {
        unsigned dp = p.degree_in(var);
        if (dp < dr) break;
        auto pc = p.univariate_coeffs(var);
        // p -= lead * var^(dp-dr) * relation
        MultiPoly lead = pc[dp];
        MultiPoly shift = variable(ring_, var).pow(dp - dr);
        p = p - lead * shift * relation;
        if (p.degree_in(var) >= dp && !p.is_zero())
            throw InternalInconsistencyError("reduce_mod: degree did not decrease");
    }
    return p;
}

std::optional<MultiPoly> MultiPoly::try_exact_divide(const MultiPoly& d) const {
    require_same_ring(ring_, d.ring(), "try_exact_divide");
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return zero(ring_);
    if (ring_->kind != RingKind::Rationals && ring_->kind != RingKind::Integers) return std::nullopt;
    MultiPoly ap, bp;
    align(*this, d, ap, bp);
    std::vector<std::string> vs = ap.vars_;
    // Work on raw term maps with a fixed variable list; normalization would
    // prune variables mid-division and misalign exponent vectors.
    TermMap a = ap.terms_;
    const TermMap& b = bp.terms_;
    auto blead = std::prev(b.end());
    TermMap q;
    while (!a.empty()) {
        auto alead = std::prev(a.end());
        const Exp& ea = alead->first;
        const Exp& eb = blead->first;
        Exp eq(ea.size());
        for (size_t i = 0; i < ea.size(); ++i) {
            if (ea[i] < eb[i]) return std::nullopt;
            eq[i] = ea[i] - eb[i];
        }
        mpq_class cq = alead->second.rational_value() / blead->second.rational_value();
        if (ring_->kind == RingKind::Integers && cq.get_den() != 1) return std::nullopt;
        RingElement coef = RingElement::from_rational(ring_, cq);
        q.emplace(eq, coef);
        // a -= coef * x^eq * b
        for (const auto& [ebt, cbt] : b) {
            Exp e(eq.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = eq[i] + ebt[i];
            RingElement delta = coef.mul(cbt).neg();
            auto it = a.find(e);
            if (it == a.end()) {
                if (!delta.is_zero()) a.emplace(std::move(e), std::move(delta));
            } else {
                it->second = it->second.add(delta);
                if (it->second.is_zero()) a.erase(it);
            }
        }
    }
    MultiPoly out;
    out.ring_ = ring_;
    out.vars_ = vs;
    out.terms_ = std::move(q);
    out.normalize();
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest term first (graded-lex descending).
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = c.to_string();
        bool neg = cs.size() > 1 && cs[0] == '-';
        if (first) {
            if (neg) os << "-", cs = cs.substr(1);
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        bool any_var = false;
        std::ostringstream vs;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            if (any_var) vs << "*";
            any_var = true;
            vs << vars_[i];
            if (e[i] > 1) vs << "^" << e[i];
        }
        bool unit_coeff = (cs == "1");
        if (!any_var) {
            os << cs;
        } else if (unit_coeff) {
            os << vs.str();
        } else {
            bool simple = cs.find_first_of("+- ") == std::string::npos;
            if (simple)
                os << cs << "*" << vs.str();
            else
                os << "(" << cs << ")*" << vs.str();
        }
    }
    return os.str();
}

} // namespace algfun
