#include <doctest.h>

#include "support.hpp"

using namespace iwt;

TEST_CASE("infinite sentinels") {
    CHECK(int_json(3) == Json(3));
    CHECK(int_json(kMinusInfinity) == Json("-infinity"));
    CHECK(int_json(kPlusInfinity) == Json("infinity"));
}

TEST_CASE("dump sorts keys and ends with a newline") {
    Json j = {{"zeta", 1}, {"alpha", {{"b", 2}, {"a", 1}}}};
    std::string s = dump(j);
    CHECK(s.back() == '\n');
    CHECK(s.find("\"alpha\"") < s.find("\"zeta\""));
    CHECK(s.find("\"a\"") < s.find("\"b\""));
    CHECK(Json::parse(s) == j);
}

TEST_CASE("envelope shape") {
    auto m = cyclic(lambda(1), {c(3)});
    Json env = envelope(m, "M", Json{{"x", 1}}, Certification::certified, 0);
    for (const char* key : {"ring", "module", "precision", "results", "certification", "escalations"})
        CHECK(env.contains(key));
    CHECK(env["module"] == "M");
    CHECK(env["precision"]["a"] == 4);
    CHECK(env["precision"]["N"] == 8);
    CHECK(env["certification"] == "certified");
    CHECK(envelope(m, "M", Json::object(), Certification::heuristic, 2)["certification"] == "heuristic");
}

TEST_CASE("invariants json") {
    Json j = invariants_json(invariants(cyclic(lambda(1), {c(3)})));
    CHECK(j["delta"] == 1);
    CHECK(j["j"] == 1);
    CHECK(j["pd"] == 1);
    CHECK(j["depth"] == 1);
    CHECK(j["mu"] == 1);
    CHECK(j["torsion"] == true);
    CHECK(j["pseudo_null"] == false);

    Json z = invariants_json(invariants(cyclic(lambda(1), {c(1)})));
    CHECK(z["delta"] == "-infinity");
    CHECK(z["j"] == "infinity");
}

TEST_CASE("decomposition and audits") {
    auto m = module(lambda(1), 2, {{c(3), Poly()}, {Poly(), c(27)}});
    Json d = decomposition_json(decompose_p_torsion(m));
    CHECK(d["exponents"] == Json::array({1, 3}));
    CHECK(d["mu"] == 4);

    AuditReport a;
    a.check = "demo";
    a.record(false, &m, 9, "trace");
    Json aj = audit_json(a);
    CHECK(aj["failed"] == 1);
    CHECK(aj["skipped"] == 0);
    CHECK(aj["witness"]["seed"] == 9);
}

TEST_CASE("error json and text rendering") {
    Json e = error_json(ErrorKind::parse, "line 1, column 2: nope");
    CHECK(e["error"]["kind"] == "parse");
    std::string text = render_text(Json{{"delta", 1}, {"mu", {{"mu", 2}}}});
    CHECK(text.find("delta: 1") != std::string::npos);
    CHECK(text.find("mu: 2") != std::string::npos);
}
