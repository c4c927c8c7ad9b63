// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "algfun/expr.hpp"
#include "algfun/gamma.hpp"
#include "algfun/homotopy.hpp"
#include "algfun/job.hpp"
#include "algfun/winding.hpp"
#include "helpers.hpp"

using namespace algfun;
using namespace testutil;

namespace {

RingPtr Q() { return RingDescriptor::rationals(); }

int failures = 0;

void report(const char* name, bool ok, const std::string& detail = "") {
    std::printf("%s  %s%s%s\n", ok ? "pass" : "FAIL", name, detail.empty() ? "" : "  -- ",
                detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. The built-in generator: determinant exactly 1, identity endpoints,
//    |winding| = 1 agreeing with the floating-point oracle, finishing fast.
void criterion_generator() {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;
    try {
        LoopRep g = generator_loop();
        ok = ok && det2(g.matrix) == MultiPoly::constant(Q(), 1);
        ok = ok && g.matrix.eval_at("T", 0).is_identity();
        ok = ok && g.matrix.eval_at("T", 1).is_identity();
        long w = eta(g);
        ok = ok && std::labs(w) == 1;
        PlaneLoop col{g.matrix.e11, g.matrix.e21, "T"};
        double o = numeric_winding_oracle(col, 4096);
        ok = ok && std::fabs(o - double(w)) < 0.01;
        double dt = seconds_since(t0);
        ok = ok && dt < 5.0;
        detail << "exact winding " << w << " (printed source states +1 under its orientation), "
               << "oracle " << o << ", " << dt << "s";
    } catch (const std::exception& e) {
        ok = false;
        detail << "exception: " << e.what();
    }
    report("generator loop: det 1, identity endpoints, |winding| = 1 vs oracle", ok, detail.str());
}

// 2. Winding is a homomorphism: powers of the generator and products with
//    winding-zero elementary loops.
void criterion_homomorphism() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;
    try {
        LoopRep g = generator_loop();
        long w = eta(g);
        for (int k = -3; k <= 3; ++k)
            if (eta(loop_power(g, k)) != k * w) {
                ok = false;
                detail << "power " << k << " off; ";
            }
        std::mt19937 rng(101);
        for (int i = 0; i < 25 && ok; ++i) {
            int k = int(rng() % 5) - 2;
            LoopRep a = loop_product(loop_power(g, k), rand_elem_loop(rng, "T", 2));
            if (eta(a) != k * w) {
                ok = false;
                detail << "mixed product " << i << " off; ";
            }
        }
        double dt = seconds_since(t0);
        ok = ok && dt < 60.0;
        detail << dt << "s";
    } catch (const std::exception& e) {
        ok = false;
        detail << "exception: " << e.what();
    }
    report("winding homomorphism on generator powers and elementary products", ok, detail.str());
}

// 3. The explicit free homotopy's pivot identity on random loop pairs.
void criterion_free_homotopy() {
    bool ok = true;
    std::string detail;
    try {
        std::mt19937 rng(102);
        LoopRep g = generator_loop();
        for (int i = 0; i < 100; ++i) {
            LoopRep a = (i % 4 == 0) ? loop_product(g, rand_elem_loop(rng)) : rand_elem_loop(rng);
            LoopRep b = rand_elem_loop(rng);
            FreeHomotopy h = free_homotopy_H(a, b, "S");
            if (!h.report.ok) {
                ok = false;
                detail = h.report.to_string();
                break;
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    report("free homotopy pivot identity on 100 random loop pairs", ok, detail);
}

// 4. Six-factor elementary decompositions over dual numbers of order 2..4:
//    exact round-trips, with exactly one formula variant consistent.
void criterion_decomposition() {
    bool ok = true;
    std::string detail;
    try {
        std::mt19937 rng(103);
        for (int order = 2; order <= 4 && ok; ++order) {
            RingPtr d = RingDescriptor::dual(order);
            for (int i = 0; i < 200; ++i) {
                Mat2 m = rand_nil_matrix(rng, d, {"T"});
                ElemFactorization f = elementary_decomposition(m);
                Mat2 prod = Mat2::identity(d);
                for (const auto& [kind, arg] : f.factors) prod = prod * elementary(kind, arg);
                if (prod != m || f.factors.size() != 6) {
                    ok = false;
                    detail = "round-trip failed at order " + std::to_string(order);
                    break;
                }
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    report("600 six-factor decompositions round-trip over dual orders 2..4", ok, detail);
}

// 5. The certificate constructions re-verify on random instances.
void criterion_constructions() {
    bool ok = true;
    std::string detail;
    try {
        std::mt19937 rng(104);
        RingPtr d3 = RingDescriptor::dual(3);

        for (int i = 0; i < 50 && ok; ++i) {
            // Injectivity certificate from a(X,T), b(X,T) agreeing at X = 0.
            LoopRep common = rand_elem_loop(rng, "T", 2);
            MultiPoly x = MultiPoly::variable(Q(), "X");
            LoopRep a = common, b = common;
            {
                // The offsets must actually mention X: add a constant so the
                // random factor cannot vanish identically.
                MultiPoly ten = MultiPoly::constant(Q(), 10);
                MultiPoly t = MultiPoly::variable(Q(), "T");
                MultiPoly van = t * (t - MultiPoly::constant(Q(), 1));
                Mat2 am = common.matrix *
                          elementary(ElemKind::E12, x * van * (rand_qpoly(rng, "T", 1) + ten));
                Mat2 bm = common.matrix *
                          elementary(ElemKind::E21, x * van * (rand_qpoly(rng, "T", 1) + ten));
                a = require_loop(am, "T");
                b = require_loop(bm, "T");
            }
            HomotopyCert theta{common.matrix, "T", "W", common, common};
            HomotopyCert m = polyring_injectivity_homotopy(a, b, theta, "X");
            if (!verify_homotopy(m).ok) {
                ok = false;
                detail = "injectivity certificate failed";
            }
        }

        for (int i = 0; i < 50 && ok; ++i) {
            // Nil loop: elementary factors with nilpotent arguments vanishing
            // at T = 0 and 1.
            Mat2 m = Mat2::identity(d3);
            for (int f = 0; f < 3; ++f) {
                MultiPoly arg = rand_nil_poly(rng, d3, {"T"}, 1) *
                                parse_poly("T*(1-T)", d3);
                m = m * elementary(f % 2 ? ElemKind::E12 : ElemKind::E21, arg);
            }
            LoopRep nil = require_loop(m, "T");
            if (!verify_homotopy(contract_nil_loop(nil, "S")).ok) {
                ok = false;
                detail = "nil-loop contraction failed";
            }
        }

        for (int i = 0; i < 50 && ok; ++i) {
            LoopRep bar = rand_elem_loop(rng, "T", 2);
            auto embed = [&](const MultiPoly& p) {
                return p.map_coeffs(d3, [&](const RingElement& e) {
                    return RingElement::from_rational(d3, e.rational_value());
                });
            };
            auto reduce = [&](const MultiPoly& p) {
                return p.map_coeffs(Q(), [](const RingElement& e) {
                    return RingElement::from_rational(RingDescriptor::rationals(),
                                                      e.dual_coeffs().empty()
                                                          ? mpq_class(0)
                                                          : e.dual_coeffs()[0]);
                });
            };
            Mat2 noise = elementary(ElemKind::E12, rand_nil_poly(rng, d3, {"T"}, 2));
            Mat2 lift = Mat2{embed(bar.matrix.e11), embed(bar.matrix.e12),
                             embed(bar.matrix.e21), embed(bar.matrix.e22)} *
                        noise;
            LoopRep lifted = lift_loop_mod_nil(bar, d3, lift);
            Mat2 back{reduce(lifted.matrix.e11), reduce(lifted.matrix.e12),
                      reduce(lifted.matrix.e21), reduce(lifted.matrix.e22)};
            if (back != bar.matrix) {
                ok = false;
                detail = "lift does not reduce back to the input loop";
            }
        }

        for (int i = 0; i < 50 && ok; ++i) {
            // Graded loop: coefficients in Q[a], loop variable X, grading
            // variable T fresh.
            MultiPoly x = MultiPoly::variable(Q(), "X");
            MultiPoly a = MultiPoly::variable(Q(), "a");
            MultiPoly one = MultiPoly::constant(Q(), 1);
            Mat2 m = elementary(ElemKind::E12, a * x * (x - one) * rand_qpoly(rng, "X", 1)) *
                     elementary(ElemKind::E21, a * a * x * (x - one));
            GradedHomotopy gh = graded_homotopy(require_loop(m, "X"), "T");
            if (!verify_homotopy(gh.cert).ok) {
                ok = false;
                detail = "graded homotopy failed";
            }
        }

        for (int i = 0; i < 50 && ok; ++i) {
            // Loop with a free parameter X, shifted to basepoint X = 1.
            MultiPoly x = MultiPoly::variable(Q(), "X");
            MultiPoly t = MultiPoly::variable(Q(), "T");
            MultiPoly van = t * (t - MultiPoly::constant(Q(), 1));
            MultiPoly ten = MultiPoly::constant(Q(), 10);
            Mat2 m = Mat2::identity(Q());
            for (int f = 0; f < 2; ++f)
                m = m * elementary(f % 2 ? ElemKind::E12 : ElemKind::E21,
                                   x * van * (rand_qpoly(rng, "T", 1) + ten));
            LoopRep a = require_loop(m, "T");
            if (!verify_homotopy(basepoint_shift_homotopy(a, "X", "S")).ok) {
                ok = false;
                detail = "basepoint shift failed";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    report("250 random certificate constructions re-verify", ok, detail);
}

// 6. Partial-fraction splitting over Q[y] with s = y, t = 1 - y.
void criterion_quillen() {
    bool ok = true;
    std::string detail;
    try {
        RingPtr base = RingDescriptor::rationals();
        MultiPoly y = MultiPoly::variable(base, "y");
        MultiPoly one = MultiPoly::constant(base, 1);
        RingPtr loc_st = RingDescriptor::localization(base, y * (one - y));
        RingPtr loc_s = RingDescriptor::localization(base, y);
        RingPtr loc_t = RingDescriptor::localization(base, one - y);
        std::mt19937 rng(105);
        for (int i = 0; i < 20 && ok; ++i) {
            mpq_class cnum = rand_rational(rng);
            auto frac = [&](const RingPtr& loc) {
                return RingElement::make_fraction(
                    loc, MultiPoly::constant(RingElement::from_rational(base, cnum)), 1);
            };
            QuillenSplitData d;
            d.base = base;
            d.s = y;
            d.t = one - y;
            d.u = one;
            d.v = one;
            d.var = "X";
            d.sigma = elementary(ElemKind::E12,
                                 MultiPoly::variable(loc_st, "X").scale(frac(loc_st)));
            d.psi1 = elementary(ElemKind::E12, MultiPoly::variable(loc_s, "X").scale(frac(loc_s)));
            d.psi2 = elementary(ElemKind::E12, MultiPoly::variable(loc_t, "X").scale(frac(loc_t)));
            if (!quillen_split_verify(d).ok) {
                ok = false;
                detail = "valid split rejected";
            }
            QuillenSplitData bad = d;
            bad.psi1 = elementary(ElemKind::E12, MultiPoly::variable(loc_s, "X").scale(frac(loc_s)) +
                                                     MultiPoly::variable(loc_s, "X") *
                                                         MultiPoly::variable(loc_s, "X"));
            if (quillen_split_verify(bad).ok) {
                ok = false;
                detail = "perturbed split accepted";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    report("partial-fraction splitting over Q[y]: 20 accepts, 20 rejects", ok, detail);
}

// 7. The unimodular-row group law.
void criterion_gamma() {
    bool ok = true;
    std::string detail;
    try {
        MultiPoly two = MultiPoly::constant(Q(), 2), three = MultiPoly::constant(Q(), 3);
        MultiPoly four = MultiPoly::constant(Q(), 4), five = MultiPoly::constant(Q(), 5);
        MultiPoly one = MultiPoly::constant(Q(), 1);
        UnimodRow p = gamma_product(
            verify_unimodular(two, three, std::make_pair(two, -one)),
            verify_unimodular(four, five, std::make_pair(-one, one)));
        if (p.a != MultiPoly::constant(Q(), 13) || p.b != MultiPoly::constant(Q(), 22)) {
            ok = false;
            detail = "[2,3]*[4,5] anchor failed";
        }
        std::mt19937 rng(106);
        int done = 0;
        while (done < 50 && ok) {
            MultiPoly a = rand_qpoly(rng, "T", 2), b = rand_qpoly(rng, "T", 2);
            MultiPoly c = rand_qpoly(rng, "T", 2), d = rand_qpoly(rng, "T", 2);
            auto w1 = euclid_witness(a, b), w2 = euclid_witness(c, d);
            if (!w1 || !w2) continue;
            UnimodRow prod = gamma_product(verify_unimodular(a, b, w1),
                                           verify_unimodular(c, d, w2));
            if (prod.a * prod.b1 + prod.b * prod.b2 != MultiPoly::constant(Q(), 1)) {
                ok = false;
                detail = "witness identity broken";
            }
            ++done;
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    report("row group law: anchor product and 50 random witness-closed products", ok, detail);
}

// 8. Circle degrees and the rational chart.
void criterion_circle() {
    bool ok = true;
    std::string detail;
    try {
        CircleCharts cc = circle_charts();
        MultiPoly x = MultiPoly::variable(Q(), "x");
        MultiPoly y = MultiPoly::variable(Q(), "y");
        auto crow = [&](const MultiPoly& a, const MultiPoly& b) {
            UnimodRow r;
            r.a = MultiPoly::constant(RingElement::make_quotient(cc.A, a));
            r.b = MultiPoly::constant(RingElement::make_quotient(cc.A, b));
            r.b1 = r.a;
            r.b2 = r.b;
            return r;
        };
        MultiPoly one = MultiPoly::constant(Q(), 1);
        long d0 = circle_degree(crow(one, MultiPoly::zero(Q())));
        long d1 = circle_degree(crow(x, y));
        MultiPoly a2 = x * x - y * y;
        MultiPoly b2 = x * y + x * y;
        long d2 = circle_degree(crow(a2, b2));
        if (d0 != 0 || d1 != 1 || d2 != 2) {
            ok = false;
            detail = "degrees " + std::to_string(d0) + "," + std::to_string(d1) + "," +
                     std::to_string(d2);
        }
        // Numeric oracle: sample the circle, evaluate the row, accumulate
        // the angle of (a, b), and compare the rounded degree.
        auto numeric_degree = [&](const MultiPoly& a, const MultiPoly& b) {
            auto evald = [&](const MultiPoly& p, double cx, double cy) {
                mpq_class qx(cx), qy(cy);
                return p.eval_at("x", qx).eval_at("y", qy).constant_value().rational_value()
                    .get_d();
            };
            const int n = 512;
            double total = 0, prev = 0;
            for (int i = 0; i <= n; ++i) {
                double th = 2.0 * M_PI * i / n;
                double av = evald(a, std::cos(th), std::sin(th));
                double bv = evald(b, std::cos(th), std::sin(th));
                double ang = std::atan2(bv, av);
                if (i > 0) {
                    double d = ang - prev;
                    while (d > M_PI) d -= 2 * M_PI;
                    while (d <= -M_PI) d += 2 * M_PI;
                    total += d;
                }
                prev = ang;
            }
            return total / (2 * M_PI);
        };
        double o0 = numeric_degree(one, MultiPoly::zero(Q()));
        double o1 = numeric_degree(x, y);
        double o2 = numeric_degree(a2, b2);
        if (std::fabs(o0 - double(d0)) > 0.01 || std::fabs(o1 - double(d1)) > 0.01 ||
            std::fabs(o2 - double(d2)) > 0.01) {
            ok = false;
            detail = "numeric degree oracle disagrees";
        }
        std::mt19937 rng(107);
        for (int i = 0; i < 50 && ok; ++i) {
            MultiPoly acc = MultiPoly::zero(Q());
            for (int d1e = 0; d1e <= 2; ++d1e)
                for (int d2e = 0; d2e <= 1; ++d2e)
                    acc = acc + (x.pow(d1e) * y.pow(d2e))
                                    .scale(RingElement::from_rational(Q(), rand_rational(rng)));
            RingElement el = RingElement::make_fraction(
                cc.A_u, MultiPoly::constant(RingElement::make_quotient(cc.A, acc)),
                unsigned(rng() % 3));
            RingElement round = cc.from_eta_chart(cc.to_eta_chart(el));
            if (!localization_equal(round, el)) {
                ok = false;
                detail = "chart round-trip failed";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    report("circle degrees 0/1/2 and 50 chart round-trips", ok, detail);
}

// 9. Exact winding agrees with the rounded numeric oracle on a loop corpus.
void criterion_corpus() {
    bool ok = true;
    std::string detail;
    try {
        std::mt19937 rng(108);
        LoopRep g = generator_loop();
        int done = 0;
        while (done < 25 && ok) {
            int k = int(rng() % 7) - 3;
            LoopRep a = loop_product(loop_power(g, k), rand_elem_loop(rng, "T", 2));
            PlaneLoop col{a.matrix.e11, a.matrix.e21, "T"};
            long w = winding_number(col);
            int samples = 4096;
            double o = 0;
            for (;;) {
                try {
                    o = numeric_winding_oracle(col, samples);
                    break;
                } catch (const RefineNeeded&) {
                    samples *= 2;
                    if (samples > (1 << 22)) throw;
                }
            }
            if (std::lround(o) != w || std::fabs(o - double(w)) > 0.01) {
                ok = false;
                detail = "corpus loop disagrees: exact " + std::to_string(w) + " vs oracle " +
                         std::to_string(o);
            }
            ++done;
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    report("25 corpus loops: exact winding equals the rounded oracle", ok, detail);
}

// 10. Parser round-trips and fuzz stability.
void criterion_parser() {
    bool ok = true;
    std::string detail;
    try {
        std::mt19937 rng(109);
        RingPtr d3 = RingDescriptor::dual(3);
        for (int i = 0; i < 1000 && ok; ++i) {
            MultiPoly p;
            if (i % 2 == 0)
                p = rand_qpoly(rng, "T", 4) + rand_qpoly(rng, "S", 2) * rand_qpoly(rng, "T", 2);
            else
                p = rand_nil_poly(rng, d3, {"T", "S"}, 3) +
                    rand_qpoly(rng, "T", 2).map_coeffs(d3, [&](const RingElement& e) {
                        return RingElement::from_rational(d3, e.rational_value());
                    });
            if (parse_poly(print_canonical(p), p.ring()) != p) {
                ok = false;
                detail = "round-trip failed on: " + print_canonical(p);
            }
        }
        const std::string alphabet = "0123456789+-*^()/ Teps.xy_%$";
        for (int i = 0; i < 10000 && ok; ++i) {
            std::string s;
            int len = int(rng() % 24);
            for (int k = 0; k < len; ++k) s.push_back(alphabet[rng() % alphabet.size()]);
            try {
                (void)parse_poly(s, Q());
            } catch (const ParseError&) {
            }
            // Any other exception escapes to the outer handler and fails.
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    report("1000 parse round-trips and 10000-string fuzz without crashes", ok, detail);
}

} // namespace

int main() {
    criterion_generator();
    criterion_homomorphism();
    criterion_free_homotopy();
    criterion_decomposition();
    criterion_constructions();
    criterion_quillen();
    criterion_gamma();
    criterion_circle();
    criterion_corpus();
    criterion_parser();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
