#include "algfun/rings.hpp"

#include <sstream>

#include "algfun/poly.hpp"

namespace algfun {

namespace {

RingPtr make_desc(RingDescriptor d) {
    return std::make_shared<const RingDescriptor>(std::move(d));
}

const RingPtr& rationals_singleton() {
    static RingPtr r = make_desc({RingKind::Rationals});
    return r;
}

} // namespace

RingPtr RingDescriptor::integers() {
    static RingPtr r = make_desc({RingKind::Integers});
    return r;
}

RingPtr RingDescriptor::rationals() { return rationals_singleton(); }

RingPtr RingDescriptor::dual(int order) {
    if (order < 2) throw PreconditionError("dual-number order must be >= 2");
    RingDescriptor d{RingKind::Dual};
    d.dual_order = order;
    return make_desc(std::move(d));
}

RingPtr RingDescriptor::quotient(RingPtr base, const MultiPoly& relation,
                                 const std::string& designated, bool is_domain) {
    if (!same_ring(base, relation.ring()))
        throw PreconditionError("quotient: relation must be a polynomial over the base ring");
    unsigned d = relation.degree_in(designated);
    if (d == 0) throw PreconditionError("quotient: relation does not involve " + designated);
    auto lead = relation.univariate_coeffs(designated)[d];
    if (!(lead.is_constant() && lead.constant_value().is_one()))
        throw PreconditionError("quotient: relation is not monic in " + designated);
    RingDescriptor desc{RingKind::Quotient};
    desc.base = std::move(base);
    desc.relation = std::make_shared<const MultiPoly>(relation);
    desc.designated = designated;
    desc.quotient_is_domain = is_domain;
    return make_desc(std::move(desc));
}

RingPtr RingDescriptor::localization(RingPtr base, const MultiPoly& denom) {
    if (!base->is_domain())
        throw PreconditionError("localization: base must be an integral domain");
    if (!same_ring(base, denom.ring()))
        throw PreconditionError("localization: denominator must be over the base ring");
    if (denom.is_zero()) throw PreconditionError("localization: denominator is zero");
    RingDescriptor desc{RingKind::Localization};
    desc.base = std::move(base);
    desc.denom = std::make_shared<const MultiPoly>(denom);
    return make_desc(std::move(desc));
}

RingPtr RingDescriptor::product(RingPtr left, RingPtr right) {
    RingDescriptor desc{RingKind::Product};
    desc.left = std::move(left);
    desc.right = std::move(right);
    return make_desc(std::move(desc));
}

bool RingDescriptor::is_domain() const {
    switch (kind) {
        case RingKind::Integers:
        case RingKind::Rationals: return true;
        case RingKind::Dual: return false;
        case RingKind::Quotient: return quotient_is_domain;
        case RingKind::Localization: return true; // base is a domain by construction
        case RingKind::Product: return false;
    }
    return false;
}

bool RingDescriptor::equals(const RingDescriptor& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case RingKind::Integers:
        case RingKind::Rationals: return true;
        case RingKind::Dual: return dual_order == o.dual_order;
        case RingKind::Quotient:
            return base->equals(*o.base) && designated == o.designated &&
                   quotient_is_domain == o.quotient_is_domain && *relation == *o.relation;
        case RingKind::Localization:
            return base->equals(*o.base) && *denom == *o.denom;
        case RingKind::Product:
            return left->equals(*o.left) && right->equals(*o.right);
    }
    return false;
}

std::string RingDescriptor::name() const {
    switch (kind) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::Dual: return "Q[eps]/(eps^" + std::to_string(dual_order) + ")";
        case RingKind::Quotient:
            return base->name() + "[...]/(" + relation->to_string() + ")";
        case RingKind::Localization:
            return base->name() + "[...] loc at (" + denom->to_string() + ")";
        case RingKind::Product: return left->name() + " x " + right->name();
    }
    return "?";
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->equals(*b);
}

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
    if (!same_ring(a, b))
        throw RingMismatchError(std::string("incompatible rings in ") + where + ": " +
                                (a ? a->name() : "<null>") + " vs " + (b ? b->name() : "<null>"));
}

// ---------------------------------------------------------------------------
// RingElement construction

namespace {

mpq_class canon_q(mpq_class q) {
    q.canonicalize();
    return q;
}

} // namespace

RingElement RingElement::zero(const RingPtr& ring) { return from_int(ring, 0); }
RingElement RingElement::one(const RingPtr& ring) { return from_int(ring, 1); }

RingElement RingElement::from_int(const RingPtr& ring, long v) {
    return from_rational(ring, mpq_class(v));
}

RingElement RingElement::from_rational(const RingPtr& ring, const mpq_class& q) {
    RingElement e;
    e.ring_ = ring;
    switch (ring->kind) {
        case RingKind::Integers: {
            mpq_class c = canon_q(q);
            if (c.get_den() != 1) throw PreconditionError("not an integer: " + c.get_str());
            e.payload_ = c.get_num();
            break;
        }
        case RingKind::Rationals: e.payload_ = canon_q(q); break;
        case RingKind::Dual: {
            std::vector<mpq_class> cs(size_t(ring->dual_order), mpq_class(0));
            cs[0] = canon_q(q);
            e.payload_ = std::move(cs);
            break;
        }
        case RingKind::Quotient: {
            MultiPoly rep = MultiPoly::constant(RingElement::from_rational(ring->base, q));
            return make_quotient(ring, rep);
        }
        case RingKind::Localization: {
            MultiPoly num = MultiPoly::constant(RingElement::from_rational(ring->base, q));
            return make_fraction(ring, num, 0);
        }
        case RingKind::Product:
            return make_pair(ring, from_rational(ring->left, q), from_rational(ring->right, q));
    }
    return e;
}

RingElement RingElement::dual_eps(const RingPtr& ring, int power) {
    if (ring->kind != RingKind::Dual) throw PreconditionError("eps only exists in dual-number rings");
    std::vector<mpq_class> cs(size_t(ring->dual_order), mpq_class(0));
    if (power < ring->dual_order) cs[size_t(power)] = 1;
    return make_dual(ring, std::move(cs));
}

RingElement RingElement::make_dual(const RingPtr& ring, std::vector<mpq_class> coeffs) {
    if (ring->kind != RingKind::Dual) throw PreconditionError("make_dual: not a dual ring");
    coeffs.resize(size_t(ring->dual_order), mpq_class(0));
    for (auto& c : coeffs) c = canon_q(c);
    RingElement e;
    e.ring_ = ring;
    e.payload_ = std::move(coeffs);
    return e;
}

RingElement RingElement::make_quotient(const RingPtr& ring, const MultiPoly& rep) {
    if (ring->kind != RingKind::Quotient) throw PreconditionError("make_quotient: not a quotient ring");
    require_same_ring(ring->base, rep.ring(), "make_quotient");
    MultiPoly reduced = rep.reduce_mod(*ring->relation, ring->designated);
    RingElement e;
    e.ring_ = ring;
    e.payload_ = QuotVal{std::make_shared<const MultiPoly>(std::move(reduced))};
    return e;
}

RingElement RingElement::make_fraction(const RingPtr& ring, const MultiPoly& num, unsigned power) {
    if (ring->kind != RingKind::Localization)
        throw PreconditionError("make_fraction: not a localization");
    require_same_ring(ring->base, num.ring(), "make_fraction");
    MultiPoly n = num;
    if (n.is_zero()) {
        power = 0;
    } else {
        // Canonical reduction: cancel whole factors of the denominator.
        while (power > 0) {
            auto q = n.try_exact_divide(*ring->denom);
            if (!q) break;
            n = *q;
            --power;
        }
    }
    RingElement e;
    e.ring_ = ring;
    e.payload_ = Fraction{std::make_shared<const MultiPoly>(std::move(n)), power};
    return e;
}

RingElement RingElement::make_pair(const RingPtr& ring, const RingElement& l, const RingElement& r) {
    if (ring->kind != RingKind::Product) throw PreconditionError("make_pair: not a product ring");
    require_same_ring(ring->left, l.ring(), "make_pair left");
    require_same_ring(ring->right, r.ring(), "make_pair right");
    RingElement e;
    e.ring_ = ring;
    e.payload_ = PairVal{std::make_shared<const RingElement>(l), std::make_shared<const RingElement>(r)};
    return e;
}

// ---------------------------------------------------------------------------
// Predicates and accessors

bool RingElement::is_zero() const {
    switch (ring_->kind) {
        case RingKind::Integers: return std::get<mpz_class>(payload_) == 0;
        case RingKind::Rationals: return std::get<mpq_class>(payload_) == 0;
        case RingKind::Dual: {
            for (const auto& c : dual_coeffs())
                if (c != 0) return false;
            return true;
        }
        case RingKind::Quotient: return quotient_rep().is_zero();
        case RingKind::Localization: return fraction_num().is_zero();
        case RingKind::Product: return pair_first().is_zero() && pair_second().is_zero();
    }
    return false;
}

bool RingElement::is_one() const { return *this == one(ring_); }

bool RingElement::operator==(const RingElement& o) const {
    if (!same_ring(ring_, o.ring_)) return false;
    switch (ring_->kind) {
        case RingKind::Integers: return std::get<mpz_class>(payload_) == std::get<mpz_class>(o.payload_);
        case RingKind::Rationals: return std::get<mpq_class>(payload_) == std::get<mpq_class>(o.payload_);
        case RingKind::Dual: {
            const auto& a = dual_coeffs();
            const auto& b = o.dual_coeffs();
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return false;
            return true;
        }
        case RingKind::Quotient: return quotient_rep() == o.quotient_rep();
        case RingKind::Localization:
            return fraction_power() == o.fraction_power() && fraction_num() == o.fraction_num();
        case RingKind::Product:
            return pair_first() == o.pair_first() && pair_second() == o.pair_second();
    }
    return false;
}

const std::vector<mpq_class>& RingElement::dual_coeffs() const {
    return std::get<std::vector<mpq_class>>(payload_);
}

const MultiPoly& RingElement::quotient_rep() const { return *std::get<QuotVal>(payload_).rep; }
const MultiPoly& RingElement::fraction_num() const { return *std::get<Fraction>(payload_).num; }
unsigned RingElement::fraction_power() const { return std::get<Fraction>(payload_).power; }
const RingElement& RingElement::pair_first() const { return *std::get<PairVal>(payload_).first; }
const RingElement& RingElement::pair_second() const { return *std::get<PairVal>(payload_).second; }

mpq_class RingElement::rational_value() const {
    if (ring_->kind == RingKind::Integers) return mpq_class(std::get<mpz_class>(payload_));
    if (ring_->kind == RingKind::Rationals) return std::get<mpq_class>(payload_);
    throw Error("rational_value: element is not over Z or Q");
}

// ---------------------------------------------------------------------------
// Arithmetic

RingElement RingElement::add(const RingElement& o) const {
    require_same_ring(ring_, o.ring_, "ring add");
    RingElement e;
    e.ring_ = ring_;
    switch (ring_->kind) {
        case RingKind::Integers:
            e.payload_ = mpz_class(std::get<mpz_class>(payload_) + std::get<mpz_class>(o.payload_));
            return e;
        case RingKind::Rationals:
            e.payload_ = canon_q(std::get<mpq_class>(payload_) + std::get<mpq_class>(o.payload_));
            return e;
        case RingKind::Dual: {
            auto cs = dual_coeffs();
            const auto& bs = o.dual_coeffs();
            for (size_t i = 0; i < cs.size(); ++i) cs[i] = canon_q(cs[i] + bs[i]);
            return make_dual(ring_, std::move(cs));
        }
        case RingKind::Quotient:
            return make_quotient(ring_, quotient_rep() + o.quotient_rep());
        case RingKind::Localization: {
            unsigned m = fraction_power(), n = o.fraction_power();
            unsigned top = std::max(m, n);
            MultiPoly num = fraction_num() * ring_->denom->pow(top - m) +
                            o.fraction_num() * ring_->denom->pow(top - n);
            return make_fraction(ring_, num, top);
        }
        case RingKind::Product:
            return make_pair(ring_, pair_first().add(o.pair_first()),
                             pair_second().add(o.pair_second()));
    }
    return e;
}

RingElement RingElement::neg() const {
    RingElement e;
    e.ring_ = ring_;
    switch (ring_->kind) {
        case RingKind::Integers: e.payload_ = mpz_class(-std::get<mpz_class>(payload_)); return e;
        case RingKind::Rationals: e.payload_ = canon_q(-std::get<mpq_class>(payload_)); return e;
        case RingKind::Dual: {
            auto cs = dual_coeffs();
            for (auto& c : cs) c = canon_q(-c);
            return make_dual(ring_, std::move(cs));
        }
        case RingKind::Quotient: return make_quotient(ring_, -quotient_rep());
        case RingKind::Localization: return make_fraction(ring_, -fraction_num(), fraction_power());
        case RingKind::Product:
            return make_pair(ring_, pair_first().neg(), pair_second().neg());
    }
    return e;
}

RingElement RingElement::sub(const RingElement& o) const { return add(o.neg()); }

RingElement RingElement::mul(const RingElement& o) const {
    require_same_ring(ring_, o.ring_, "ring mul");
    RingElement e;
    e.ring_ = ring_;
    switch (ring_->kind) {
        case RingKind::Integers:
            e.payload_ = mpz_class(std::get<mpz_class>(payload_) * std::get<mpz_class>(o.payload_));
            return e;
        case RingKind::Rationals:
            e.payload_ = canon_q(std::get<mpq_class>(payload_) * std::get<mpq_class>(o.payload_));
            return e;
        case RingKind::Dual: {
            size_t k = dual_coeffs().size();
            std::vector<mpq_class> out(k, mpq_class(0));
            const auto& a = dual_coeffs();
            const auto& b = o.dual_coeffs();
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; i + j < k; ++j) out[i + j] += a[i] * b[j];
            return make_dual(ring_, std::move(out));
        }
        case RingKind::Quotient:
            return make_quotient(ring_, quotient_rep() * o.quotient_rep());
        case RingKind::Localization:
            return make_fraction(ring_, fraction_num() * o.fraction_num(),
                                 fraction_power() + o.fraction_power());
        case RingKind::Product:
            return make_pair(ring_, pair_first().mul(o.pair_first()),
                             pair_second().mul(o.pair_second()));
    }
    return e;
}

bool RingElement::is_unit() const {
    try {
        (void)invert_unit();
        return true;
    } catch (const NotAUnitError&) {
        return false;
    }
}

RingElement RingElement::invert_unit() const {
    switch (ring_->kind) {
        case RingKind::Integers: {
            const mpz_class& v = std::get<mpz_class>(payload_);
            if (v != 1 && v != -1)
                throw NotAUnitError("not a unit in Z: " + v.get_str());
            return *this;
        }
        case RingKind::Rationals: {
            const mpq_class& v = std::get<mpq_class>(payload_);
            if (v == 0) throw NotAUnitError("not a unit: zero");
            return from_rational(ring_, 1 / v);
        }
        case RingKind::Dual: {
            const auto& a = dual_coeffs();
            if (a[0] == 0)
                throw NotAUnitError("not a unit in " + ring_->name() + ": zero constant term");
            // Truncated geometric series: (c + n)^-1 = c^-1 sum_j (-n/c)^j.
            size_t k = a.size();
            RingElement cinv = from_rational(ring_, 1 / a[0]);
            std::vector<mpq_class> ncs(a.begin(), a.end());
            ncs[0] = 0;
            RingElement n = make_dual(ring_, std::move(ncs));
            RingElement step = n.mul(cinv).neg();
            RingElement acc = one(ring_);
            RingElement powv = one(ring_);
            for (size_t j = 1; j < k; ++j) {
                powv = powv.mul(step);
                acc = acc.add(powv);
            }
            return acc.mul(cinv);
        }
        case RingKind::Quotient:
            if (quotient_rep().is_constant())
                return make_quotient(
                    ring_, MultiPoly::constant(quotient_rep().constant_value().invert_unit()));
            throw NotAUnitError("cannot invert non-constant element of " + ring_->name());
        case RingKind::Localization: {
            const MultiPoly& num = fraction_num();
            unsigned n = fraction_power();
            if (num.is_zero()) throw NotAUnitError("not a unit: zero");
            // Inverse exists iff num divides a power of the denominator.
            // Try num | s^j for bounded j; the bound covers every use in
            // practice (num a unit constant times a factor of a power of s).
            const MultiPoly& s = *ring_->denom;
            if (num.is_constant()) {
                RingElement cinv = num.constant_value().invert_unit();
                MultiPoly inv_num = s.pow(n).scale(cinv);
                return make_fraction(ring_, inv_num, 0);
            }
            unsigned bound = num.total_degree() + n + 4;
            MultiPoly spow = MultiPoly::constant(ring_->base, 1);
            for (unsigned j = 0; j <= bound; ++j) {
                auto q = spow.try_exact_divide(num);
                if (q) {
                    // num * q = s^j  =>  (num/s^n)^-1 = q * s^n / s^j.
                    MultiPoly inv_num = (*q) * s.pow(n);
                    return make_fraction(ring_, inv_num, j);
                }
                spow = spow * s;
            }
            throw NotAUnitError("numerator does not divide a power of the denominator: " +
                                num.to_string());
        }
        case RingKind::Product:
            return make_pair(ring_, pair_first().invert_unit(), pair_second().invert_unit());
    }
    throw NotAUnitError("unsupported ring");
}

RingElement RingElement::nilradical_reduce() const {
    if (ring_->kind != RingKind::Dual)
        throw PreconditionError("nilradical_reduce: element is not over a dual-number ring");
    return from_rational(RingDescriptor::rationals(), dual_coeffs()[0]);
}

bool RingElement::is_nilpotent() const {
    switch (ring_->kind) {
        case RingKind::Dual: return dual_coeffs()[0] == 0;
        case RingKind::Integers:
        case RingKind::Rationals: return is_zero();
        default: return is_zero();
    }
}

bool localization_equal(const RingElement& x, const RingElement& y) {
    require_same_ring(x.ring(), y.ring(), "localization_equal");
    if (x.ring()->kind != RingKind::Localization)
        throw PreconditionError("localization_equal: elements are not in a localization");
    const RingPtr& ring = x.ring();
    unsigned m = x.fraction_power(), n = y.fraction_power();
    // a/s^m = b/s^n  iff  a*s^n = b*s^m in the base domain.
    MultiPoly lhs = x.fraction_num() * ring->denom->pow(n);
    MultiPoly rhs = y.fraction_num() * ring->denom->pow(m);
    return lhs == rhs;
}

std::string RingElement::to_string() const {
    std::ostringstream os;
    switch (ring_->kind) {
        case RingKind::Integers: return std::get<mpz_class>(payload_).get_str();
        case RingKind::Rationals: return std::get<mpq_class>(payload_).get_str();
        case RingKind::Dual: {
            const auto& cs = dual_coeffs();
            bool wrote = false;
            for (size_t i = 0; i < cs.size(); ++i) {
                if (cs[i] == 0) continue;
                if (wrote) os << " + ";
                if (i == 0) {
                    os << cs[i].get_str();
                } else {
                    if (cs[i] != 1) os << cs[i].get_str() << "*";
                    os << "eps";
                    if (i > 1) os << "^" << i;
                }
                wrote = true;
            }
            if (!wrote) os << "0";
            return os.str();
        }
        case RingKind::Quotient: return quotient_rep().to_string();
        case RingKind::Localization:
            os << "(" << fraction_num().to_string() << ")/(" << ring_->denom->to_string() << ")^"
               << fraction_power();
            return os.str();
        case RingKind::Product:
            os << "(" << pair_first().to_string() << " | " << pair_second().to_string() << ")";
            return os.str();
    }
    return "?";
}

RingElement ring_add(const RingElement& x, const RingElement& y) { return x.add(y); }
RingElement ring_sub(const RingElement& x, const RingElement& y) { return x.sub(y); }
RingElement ring_mul(const RingElement& x, const RingElement& y) { return x.mul(y); }
RingElement ring_neg(const RingElement& x) { return x.neg(); }

} // namespace algfun
