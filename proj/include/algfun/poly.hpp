#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algfun/rings.hpp"

namespace algfun {

/// Sparse multivariate polynomial over a coefficient ring.
///
/// Exponent vectors are dense per-variable arrays keyed by the sorted
/// variable list; no zero coefficients are stored; the variable set is
/// pruned to the variables actually mentioned. Term order is graded
/// lexicographic, which fixes canonical printing.
class MultiPoly {
public:
    using Exp = std::vector<unsigned>;

    struct GradedLess {
        bool operator()(const Exp& a, const Exp& b) const;
    };
    using TermMap = std::map<Exp, RingElement, GradedLess>;

    MultiPoly() = default;

    static MultiPoly zero(const RingPtr& ring);
    static MultiPoly constant(const RingElement& c);
    static MultiPoly constant(const RingPtr& ring, long v);
    static MultiPoly variable(const RingPtr& ring, const std::string& name);

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant coefficient (the whole polynomial must be constant).
    RingElement constant_value() const;
    /// Coefficient of the zero exponent vector.
    RingElement constant_term() const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly pow(unsigned e) const;
    MultiPoly scale(const RingElement& c) const;

    /// Simultaneous substitution of variables by polynomials (shared ring).
    MultiPoly substitute(const std::map<std::string, MultiPoly>& bindings) const;
    /// Convenience: bind one variable to a rational constant.
    MultiPoly eval_at(const std::string& var, const mpq_class& value) const;

    unsigned degree_in(const std::string& var) const;
    unsigned total_degree() const;
    /// Total degree of a term restricted to a variable subset.
    static unsigned degree_in_set(const Exp& e, const std::vector<std::string>& vars,
                                  const std::set<std::string>& subset);

    bool mentions(const std::string& var) const;

    /// Every coefficient nilpotent (dual-number rings).
    bool all_coeffs_nilpotent() const;
    /// Entry-wise nilradical_reduce of coefficients; result over Rationals.
    MultiPoly nilradical_reduce_coeffs() const;

    /// Map coefficients into another ring.
    MultiPoly map_coeffs(const RingPtr& new_ring,
                         const std::function<RingElement(const RingElement&)>& f) const;

    /// Dense coefficient list in `var` (constants over the remaining vars).
    std::vector<MultiPoly> univariate_coeffs(const std::string& var) const;

    /// Dense mpq coefficients; requires ring Rationals/Integers and at most
    /// the single variable `var`.
    std::vector<mpq_class> to_qpoly(const std::string& var) const;

    /// Reduce modulo a relation monic in `var` (designated-variable division).
    MultiPoly reduce_mod(const MultiPoly& relation, const std::string& var) const;

    /// Exact division attempt; nullopt when not exactly divisible. Supported
    /// over Integers/Rationals coefficients.
    std::optional<MultiPoly> try_exact_divide(const MultiPoly& d) const;

    std::string to_string() const;

    /// Internal constructor from raw terms (normalizes).
    static MultiPoly from_terms(const RingPtr& ring, std::vector<std::string> vars,
                                std::vector<std::pair<Exp, RingElement>> terms);

private:
    RingPtr ring_;
    std::vector<std::string> vars_; // sorted
    TermMap terms_;

    void normalize();
    static void align(const MultiPoly& a, const MultiPoly& b, MultiPoly& a2, MultiPoly& b2);
    MultiPoly with_vars(const std::vector<std::string>& target) const;
};

} // namespace algfun
