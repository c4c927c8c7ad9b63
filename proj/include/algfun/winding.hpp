#pragma once

#include "algfun/matrix.hpp"
#include "algfun/sturm.hpp"

namespace algfun {

/// Closed polynomial path in the plane, parametrized over [0,1].
struct PlaneLoop {
    MultiPoly f1, f2; // over Rationals, single variable
    std::string var = "T";

    QPoly f1_dense() const { return f1.to_qpoly(var); }
    QPoly f2_dense() const { return f2.to_qpoly(var); }
};

/// Isolating intervals (a, b], one simple root each, for all roots in [0,1].
struct RootIsolation {
    QPoly polynomial;
    std::vector<RootInterval> intervals;
};

RootIsolation isolate_real_roots(const MultiPoly& p, const std::string& var);

/// Accepts iff f1^2 + f2^2 has no root in [0,1] and the path is closed; a
/// rejection names an isolating interval of a common zero.
VerifyReport nonvanishing_on_unit_interval(const PlaneLoop& l);

/// One polynomial piece of a closed plane path: (x(t), y(t)) on [lo, hi].
struct PlanePath {
    QPoly x, y;
    mpq_class lo, hi;
};

/// Total signed quarter turns of a closed path given as consecutive pieces
/// (the end point of each piece equals the start of the next, cyclically).
/// Counterclockwise is positive. Throws PreconditionError when the path
/// meets the origin.
long signed_quarter_turns(const std::vector<PlanePath>& pieces);

/// Topological degree of the closed loop about the origin; e^{2 pi i t}
/// has winding +1.
long winding_number(const PlaneLoop& l);

/// Winding number of the first column of the loop matrix.
long eta(const LoopRep& a);

/// The built-in degree-±1 loop in SL2(Q[T]). The printed source for this
/// matrix has determinant 1 - 8T + 40T^2 - ... (an off-by-sign constant in
/// the lower-right entry); the entry used here, 1+4T(1-T)(24T^2-24T+1), is
/// the unique constant choice in that shape with determinant exactly 1.
LoopRep generator_loop();

struct FreeHomotopy {
    MultiPoly H1, H2; // in (loop var, s)
    VerifyReport report;
};

/// The explicit free homotopy between the first column of a product loop
/// and its "complex multiplication" form:
///   H(t,s) = (f1 f1' + (s g1 - (1-s) f2) f2',  f2 f1' + (s g2 + (1-s) f1) f2')
/// with the identity f1 H2 - f2 H1 = (s + (1-s)(f1^2+f2^2)) f2' verified
/// symbolically.
FreeHomotopy free_homotopy_H(const LoopRep& a, const LoopRep& b, const std::string& s_var);

/// Double-precision angle accumulation on a uniform grid; throws
/// RefineNeeded when an increment reaches the principal-branch boundary.
/// Test-harness oracle only: the exact path never calls this.
double numeric_winding_oracle(const PlaneLoop& l, int samples);

} // namespace algfun
