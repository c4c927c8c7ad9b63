#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algfun/expr.hpp"
#include "algfun/job.hpp"
#include "helpers.hpp"

using namespace algfun;
using json = nlohmann::json;

namespace {
json gen_matrix() {
    return json::array({json::array({"1 + 4*T*(1-T)*(T^2-T-1)",
                                     "T*(1-T)*(2*T-1)*(24*T^2-24*T-29)"}),
                        json::array({"4*T*(1-T)*(2*T-1)",
                                     "1 + 4*T*(1-T)*(24*T^2-24*T+1)"})});
}
} // namespace

TEST_CASE("ring descriptors round-trip through json") {
    std::vector<json> descs = {
        {{"kind", "rationals"}},
        {{"kind", "integers"}},
        {{"kind", "dual"}, {"order", 3}},
        {{"kind", "quotient"},
         {"base", {{"kind", "rationals"}}},
         {"relation", "x^2 + y^2 - 1"},
         {"designated", "y"},
         {"domain", true}},
        {{"kind", "localization"}, {"base", {{"kind", "rationals"}}}, {"denominator", "y"}},
        {{"kind", "product"},
         {"left", {{"kind", "rationals"}}},
         {"right", {{"kind", "dual"}, {"order", 2}}}},
    };
    for (const auto& d : descs) {
        RingPtr r = ring_from_json(d);
        RingPtr back = ring_from_json(ring_to_json(r));
        CHECK(same_ring(r, back));
    }
    CHECK_THROWS(ring_from_json(json{{"kind", "nope"}}));
}

TEST_CASE("polynomials round-trip through json") {
    RingPtr Q = RingDescriptor::rationals();
    MultiPoly p = parse_poly("T^3 - 2/7*T + 1", Q);
    CHECK(poly_from_json(poly_to_json(p), Q) == p);

    RingPtr loc = RingDescriptor::localization(Q, MultiPoly::variable(Q, "y"));
    json frac = {{"num", "y*X^2 + 1"}, {"den_power", 2}};
    MultiPoly q = poly_from_json(frac, loc);
    CHECK(poly_from_json(poly_to_json(q), loc) == q);
}

TEST_CASE("verify-loop jobs: pass is 0, failure is 1, garbage is 2") {
    json ok = {{"command", "verify-loop"}, {"matrix", gen_matrix()}};
    CHECK(run_job(ok).exit_code == 0);

    json bad = ok;
    bad["matrix"][0][0] = "1 + T";
    JobResult r = run_job(bad);
    CHECK(r.exit_code == 1);
    CHECK_FALSE(r.output["violations"].empty());

    CHECK(run_job(json{{"command", "verify-loop"}}).exit_code == 2);
    CHECK(run_job(json{{"command", "verify-loop"}, {"matrix", "junk"}}).exit_code == 2);
    CHECK(run_job(json{{"command", "no-such"}}).exit_code == 2);
}

TEST_CASE("winding and eta jobs") {
    json w = {{"command", "winding"}, {"f1", "1"}, {"f2", "0"}};
    JobResult wr = run_job(w);
    CHECK(wr.exit_code == 0);
    CHECK(wr.output["winding"] == 0);

    // Loop through the origin: precondition, exit 3.
    json hit = {{"command", "winding"}, {"f1", "T*(1-T)"}, {"f2", "0"}};
    CHECK(run_job(hit).exit_code == 3);

    json e = {{"command", "eta"}, {"matrix", gen_matrix()}};
    JobResult er = run_job(e);
    CHECK(er.exit_code == 0);
    long v = er.output["eta"].get<long>();
    CHECK((v == 1 || v == -1));

    json o = {{"command", "oracle"}, {"f1", "1 - 2*T"}, {"f2", "0"}};
    CHECK(run_job(o).exit_code == 3); // passes through the origin at T = 1/2
}

TEST_CASE("gamma jobs") {
    json mul = {{"command", "gamma-mul"},
                {"left", {{"a", "2"}, {"b", "3"}, {"witness", json::array({"2", "-1"})}}},
                {"right", {{"a", "4"}, {"b", "5"}, {"witness", json::array({"-1", "1"})}}}};
    JobResult r = run_job(mul);
    CHECK(r.exit_code == 0);
    CHECK(r.summary == "[13, 22]");

    json comp = {{"command", "complete"}, {"row", {{"a", "T"}, {"b", "1 - T"}}}};
    JobResult cr = run_job(comp);
    CHECK(cr.exit_code == 0);

    // A row the Euclid search cannot certify: precondition, exit 3.
    json unk = {{"command", "complete"}, {"row", {{"a", "T"}, {"b", "T^2"}}}};
    CHECK(run_job(unk).exit_code == 3);
}

TEST_CASE("circle-degree job") {
    json deg = {{"command", "circle-degree"},
                {"row", {{"a", "x"}, {"b", "y"}, {"witness", json::array({"x", "y"})}}}};
    JobResult r = run_job(deg);
    CHECK(r.exit_code == 0);
    CHECK(r.output["degree"] == 1);
}

TEST_CASE("decompose and homotopy jobs over dual numbers") {
    json ring = {{"kind", "dual"}, {"order", 2}};
    json m = json::array({json::array({"1 + eps*T", "eps"}),
                          json::array({"0", "1 - eps*T"})});
    json dec = {{"command", "decompose-nil"}, {"ring", ring}, {"matrix", m}};
    JobResult r = run_job(dec);
    CHECK(r.exit_code == 0);
    CHECK(r.output["factors"].size() == 6);

    json con = {{"command", "connect-identity"}, {"ring", ring}, {"matrix", m}};
    CHECK(run_job(con).exit_code == 0);

    // A matrix that is not unipotent-mod-nil is a precondition failure.
    json notnil = {{"command", "decompose-nil"},
                   {"matrix", json::array({json::array({"1 + T", "0"}),
                                           json::array({"0", "1"})})}};
    CHECK(run_job(notnil).exit_code == 3);
}

TEST_CASE("builtin example suite passes") {
    JobResult r = run_job(json{{"command", "example-suite"}});
    CHECK(r.exit_code == 0);
    INFO(r.summary);
    for (const auto& c : r.output["cases"]) CHECK(c["ok"] == true);
}
