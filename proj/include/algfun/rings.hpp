#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "algfun/errors.hpp"

namespace algfun {

class MultiPoly;
class RingElement;

enum class RingKind { Integers, Rationals, Dual, Quotient, Localization, Product };

struct RingDescriptor;
using RingPtr = std::shared_ptr<const RingDescriptor>;

/// Exact coefficient domain with decidable equality via canonical forms.
/// Descriptors are immutable and compare structurally.
struct RingDescriptor {
    RingKind kind;

    // Dual: Q[eps]/(eps^k), k >= 2.
    int dual_order = 0;

    // Quotient: base[vars]/(relation), relation monic in `designated`.
    // Localization: base[vars] localized at `denom` (nonzero).
    RingPtr base;
    std::shared_ptr<const MultiPoly> relation;
    std::string designated;
    std::shared_ptr<const MultiPoly> denom;
    bool quotient_is_domain = false; // caller-supplied flag (e.g. circle ring)

    // Product: left x right.
    RingPtr left, right;

    static RingPtr integers();
    static RingPtr rationals();
    static RingPtr dual(int order);
    static RingPtr quotient(RingPtr base, const MultiPoly& relation, const std::string& designated,
                            bool is_domain = false);
    static RingPtr localization(RingPtr base, const MultiPoly& denom);
    static RingPtr product(RingPtr left, RingPtr right);

    bool is_domain() const;
    bool equals(const RingDescriptor& other) const;
    std::string name() const;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where);

/// Canonical-form element of a coefficient ring.
class RingElement {
public:
    struct QuotVal {
        std::shared_ptr<const MultiPoly> rep; // reduced: designated-var degree < deg(relation)
    };
    struct Fraction {
        std::shared_ptr<const MultiPoly> num; // over base
        unsigned power = 0;                   // denominator = denom^power
    };
    struct PairVal {
        std::shared_ptr<const RingElement> first, second;
    };
    using Payload = std::variant<mpz_class, mpq_class, std::vector<mpq_class>, QuotVal, Fraction, PairVal>;

    RingElement() = default;

    static RingElement zero(const RingPtr& ring);
    static RingElement one(const RingPtr& ring);
    static RingElement from_int(const RingPtr& ring, long v);
    static RingElement from_rational(const RingPtr& ring, const mpq_class& q);
    /// eps (or eps^j) in a dual-number ring.
    static RingElement dual_eps(const RingPtr& ring, int power = 1);
    static RingElement make_dual(const RingPtr& ring, std::vector<mpq_class> coeffs);
    /// Quotient element from an (unreduced) polynomial over the base.
    static RingElement make_quotient(const RingPtr& ring, const MultiPoly& rep);
    /// Localization fraction num/denom^power, canonicalized.
    static RingElement make_fraction(const RingPtr& ring, const MultiPoly& num, unsigned power);
    static RingElement make_pair(const RingPtr& ring, const RingElement& l, const RingElement& r);

    const RingPtr& ring() const { return ring_; }
    const Payload& payload() const { return payload_; }

    bool is_zero() const;
    bool is_one() const;
    /// Payload-identity equality on canonical forms.
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    RingElement add(const RingElement& o) const;
    RingElement sub(const RingElement& o) const;
    RingElement mul(const RingElement& o) const;
    RingElement neg() const;

    /// Multiplicative inverse; throws NotAUnitError with the obstruction.
    RingElement invert_unit() const;
    bool is_unit() const;

    /// Dual numbers only: the image in Q[eps]/(eps^k) -> Q (constant coefficient).
    RingElement nilradical_reduce() const;
    /// Dual numbers only: every coefficient above eps^0 (membership in the nilradical).
    bool is_nilpotent() const;

    /// Rationals/Integers only: exact value as mpq.
    mpq_class rational_value() const;

    // Accessors for structured payloads (checked).
    const std::vector<mpq_class>& dual_coeffs() const;
    const MultiPoly& quotient_rep() const;
    const MultiPoly& fraction_num() const;
    unsigned fraction_power() const;
    const RingElement& pair_first() const;
    const RingElement& pair_second() const;

    std::string to_string() const;

private:
    RingPtr ring_;
    Payload payload_;
};

/// Equality in a localization of an integral domain: cross-multiplied
/// numerators agree in the base domain.
bool localization_equal(const RingElement& x, const RingElement& y);

RingElement ring_add(const RingElement& x, const RingElement& y);
RingElement ring_sub(const RingElement& x, const RingElement& y);
RingElement ring_mul(const RingElement& x, const RingElement& y);
RingElement ring_neg(const RingElement& x);

} // namespace algfun
