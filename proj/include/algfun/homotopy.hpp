#pragma once

#include <utility>

#include "algfun/matrix.hpp"

namespace algfun {

/// Ordered elementary factorization: the product of the factors equals
/// `target` exactly (verified before any factorization is returned).
struct ElemFactorization {
    std::vector<std::pair<ElemKind, MultiPoly>> factors;
    Mat2 target;
    /// True when the a2/a3-transposed variant of the factorization formula
    /// was the one that multiplied back to the target.
    bool transposed = false;
};

/// Substitute a parameter of the loop and revalidate.
LoopRep eval_loop_at(const LoopRep& a, const std::string& param, const MultiPoly& value);
LoopRep eval_loop_at(const LoopRep& a, const std::string& param, const mpq_class& value);

/// Injectivity homotopy for polynomial rings: from loops a(X)(T), b(X)(T)
/// and a certificate theta between their X=0 evaluations, build the
/// three-variable certificate  M = a(X(1-W))(T) * theta(T,1-W)^-1 * b(XW)(T).
HomotopyCert polyring_injectivity_homotopy(const LoopRep& a, const LoopRep& b,
                                           const HomotopyCert& theta, const std::string& param);

/// Factor a matrix congruent to the identity mod nilpotents into six
/// elementary factors E12(c1) E21(c2) E12(-1+c3) E21(c4) E12(1) E21(c5).
/// Entries may be polynomials over a dual-number ring.
ElemFactorization elementary_decomposition(const Mat2& alpha);

/// beta(X) with beta(0) = I, beta(1) = alpha, beta congruent to I mod
/// nilpotents for all X: the factorization with arguments scaled by X.
Mat2 connect_to_identity(const Mat2& alpha, const std::string& new_var);

/// Contract a loop that is congruent to the identity mod nilpotents:
/// certificate with boundary identity at homotopy_var = 0 and the loop at 1.
HomotopyCert contract_nil_loop(const LoopRep& a, const std::string& homotopy_var);

/// Lift a loop across the nilradical quotient: determinant corrected by a
/// first-column scaling, endpoints corrected by connect_to_identity factors.
LoopRep lift_loop_mod_nil(const LoopRep& beta_bar, const RingPtr& target, const Mat2& chosen_lift);

/// Kernel contraction: Gamma(X,T) = gamma1(X,1-T)^-1 beta(X,T) gamma2(X,T)^-1,
/// a verified certificate from `a` to the constant identity loop.
HomotopyCert kernel_contraction(const LoopRep& a, const Mat2& beta, const std::string& homotopy_var);

/// Graded-piece scaling a_0 + a_1 + ... + a_n -> a_0 + a_1 T + ... + a_n T^n,
/// grading by total degree in `graded_vars`.
MultiPoly swan_weibel_map(const MultiPoly& p, const std::string& t_var,
                          const std::set<std::string>& graded_vars);

struct GradedHomotopy {
    HomotopyCert cert;   // from the degree-0 boundary (T=0) to the input (T=1)
    LoopRep degree_zero; // coefficients in the degree-0 subring
};

GradedHomotopy graded_homotopy(const LoopRep& b, const std::string& t_var);

/// Componentwise projection of a loop over a product ring, and its inverse.
std::pair<LoopRep, LoopRep> product_split(const LoopRep& a);
LoopRep product_join(const LoopRep& left, const LoopRep& right, const RingPtr& product_ring);

/// Basepoint shift: substitute param -> (param - 1) S + 1; boundary at S=0 is
/// the param=1 evaluation, at S=1 the loop itself.
HomotopyCert basepoint_shift_homotopy(const LoopRep& a, const std::string& param,
                                      const std::string& s_var);

/// (1 + n)^-1 for a polynomial n with nilpotent coefficients, by the
/// terminating geometric series.
MultiPoly invert_one_plus_nilpotent(const MultiPoly& n);

} // namespace algfun
