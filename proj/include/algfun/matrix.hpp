#pragma once

#include <set>
#include <string>
#include <vector>

#include "algfun/poly.hpp"

namespace algfun {

/// Outcome of a symbolic verification; `ok` iff `violations` is empty.
struct VerifyReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string v) {
        ok = false;
        violations.push_back(std::move(v));
    }
    std::string to_string() const;
};

/// 2x2 polynomial matrix over one shared ring.
struct Mat2 {
    MultiPoly e11, e12, e21, e22;

    static Mat2 identity(const RingPtr& ring);

    const RingPtr& ring() const { return e11.ring(); }

    Mat2 operator*(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    bool operator==(const Mat2& o) const;
    bool operator!=(const Mat2& o) const { return !(*this == o); }

    bool is_identity() const;
    Mat2 substitute(const std::map<std::string, MultiPoly>& bindings) const;
    Mat2 eval_at(const std::string& var, const mpq_class& value) const;
    std::set<std::string> variables() const;

    std::string to_string() const;
};

MultiPoly det2(const Mat2& m);

/// Adjugate inverse; requires det = 1 (throws NotSpecialError otherwise).
Mat2 sl2_inverse(const Mat2& m);

enum class ElemKind { E12, E21 };

/// E12(p) = [[1,p],[0,1]], E21(p) = [[1,0],[p,1]].
Mat2 elementary(ElemKind kind, const MultiPoly& p);

/// A determinant-1 polynomial loop: identity at loop_var = 0 and 1.
/// Remaining variables are the parameter set (ring constants).
struct LoopRep {
    Mat2 matrix;
    std::string loop_var = "T";
    std::set<std::string> parameters;

    static LoopRep constant_identity(const RingPtr& ring, const std::string& loop_var = "T");
};

struct LoopCheck {
    VerifyReport report;
    LoopRep loop; // valid only when report.ok
};

/// Validate det = 1 and identity endpoints; on failure the report lists
/// every violated condition. Never silently accepts.
LoopCheck verify_loop(const Mat2& m, const std::string& loop_var);

/// Like verify_loop but throws PreconditionError on rejection.
LoopRep require_loop(const Mat2& m, const std::string& loop_var);

/// Checkable witness that `start` and `end` are homotopic loops.
struct HomotopyCert {
    Mat2 matrix; // in (loop_var, homotopy_var)
    std::string loop_var = "T";
    std::string homotopy_var = "S";
    LoopRep start; // matrix at homotopy_var = 0
    LoopRep end;   // matrix at homotopy_var = 1
};

/// All five identities, symbolically: det = 1, the two homotopy boundaries,
/// and identity at loop_var in {0,1} for all homotopy_var.
VerifyReport verify_homotopy(const HomotopyCert& cert);

LoopRep loop_product(const LoopRep& a, const LoopRep& b);
LoopRep loop_inverse(const LoopRep& a);
LoopRep loop_power(const LoopRep& a, int k);

} // namespace algfun
