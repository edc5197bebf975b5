#include <doctest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <sys/wait.h>

#include "support.hpp"

using namespace iwt;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run sh(const std::string& cmd) {
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Run cli(const std::string& args) { return sh(std::string(IWALG_CLI_PATH) + " " + args + " 2>/dev/null"); }

std::string data(const std::string& name) { return std::string(IWALG_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("invariants of Λ/p") {
    auto r = cli("invariants --json " + data("lp.iwm"));
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    for (const char* key : {"ring", "module", "precision", "results", "certification", "escalations"})
        CHECK(j.contains(key));
    const auto& res = j["results"];
    CHECK(res["delta"] == 1);
    CHECK(res["j"] == 1);
    CHECK(res["pd"] == 1);
    CHECK(res["depth"] == 1);
    CHECK(res["mu"] == 1);
    CHECK(res["torsion"] == true);
    CHECK(res["pseudo_null"] == false);
    CHECK(j["certification"] == "certified");
}

TEST_CASE("decompose and ext") {
    auto d = cli("decompose --json " + data("diag.iwm"));
    REQUIRE(d.code == 0);
    auto dj = Json::parse(d.out)["results"];
    CHECK(dj["exponents"] == Json::array({1, 3}));
    CHECK(dj["mu"] == 4);

    auto e = cli("ext --i 1 --json " + data("lp2.iwm"));
    REQUIRE(e.code == 0);
    auto ej = Json::parse(e.out)["results"];
    CHECK(ej["annihilator"] == Json::array({"p^2"}));
    CHECK(ej["profile"]["mu"] == 2);
}

TEST_CASE("other subcommands run") {
    for (const char* cmd : {"info", "filtration", "resolve", "mu"}) {
        INFO(cmd);
        auto r = cli(std::string(cmd) + " --json " + data("lp.iwm"));
        CHECK(r.code == 0);
        CHECK(Json::accept(r.out));
    }
    auto res = cli("resolve --length 1 --json " + data("lp.iwm"));
    CHECK(Json::parse(res.out)["results"]["ranks"] == Json::array({1, 1}));
    auto text = cli("invariants " + data("lp.iwm"));
    CHECK(text.code == 0);
    CHECK(text.out.find("delta: 1") != std::string::npos);
}

TEST_CASE("modules are reported in name order") {
    auto r = cli("mu --json " + data("pair.iwm"));
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    REQUIRE(j["modules"].size() == 2);
    CHECK(j["modules"][0]["module"] == "Alpha");
    CHECK(j["modules"][1]["module"] == "Zeta");
    auto one = cli("mu --json --module Zeta " + data("pair.iwm"));
    CHECK(Json::parse(one.out)["module"] == "Zeta");
}

TEST_CASE("precision overrides") {
    auto r = cli("invariants --json --prec-p 5 --prec-deg 10 " + data("lp.iwm"));
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["precision"]["a"] == 5);
    CHECK(j["precision"]["N"] == 10);
}

TEST_CASE("verify suites") {
    CHECK(cli("verify --suite local-duality --json " + data("finite.iwm")).code == 0);
    CHECK(cli("verify --suite auslander --trials 4 --json " + data("lp.iwm")).code == 0);
    CHECK(cli("verify --suite induction --json " + data("lp.iwm")).code == 0);
    CHECK(cli("verify --suite change-of-rings --json " + data("lp.iwm")).code == 0);
    auto corpus = cli("verify --suite corpus --trials 5 --seed 2 --json");
    REQUIRE(corpus.code == 0);
    CHECK(Json::parse(corpus.out)["results"]["ok"] == true);
    CHECK(cli("oracle-check --trials 8 --json").code == 0);
    CHECK(cli("oracle-check --trials 8 --json " + data("heisenberg.iwm")).code == 0);
    CHECK(cli("verify --suite symbol --trials 10 --json " + data("heisenberg.iwm")).code == 0);
}

TEST_CASE("identical invocations give identical bytes") {
    std::vector<std::string> runs{"invariants --json " + data("pair.iwm"), "verify --suite corpus --trials 4 --json",
                                  "filtration --json " + data("diag.iwm")};
    for (const auto& args : runs) {
        auto a = cli(args), b = cli(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    auto s1 = cli("verify --suite corpus --trials 4 --seed 7 --json");
    auto s2 = cli("verify --suite corpus --trials 4 --seed 7 --json");
    CHECK(s1.out == s2.out);
}

TEST_CASE("exit codes on malformed input") {
    auto bad = cli("invariants --json " + data("bad.iwm"));
    CHECK(bad.code == 2);
    auto j = Json::parse(bad.out);
    CHECK(j["error"]["kind"] == "validation");
    CHECK(j["error"]["message"].get<std::string>().find("p must be an odd prime") != std::string::npos);

    auto syn = cli("invariants --json " + data("syntax.iwm"));
    CHECK(syn.code == 2);
    CHECK(Json::parse(syn.out)["error"]["kind"] == "parse");

    CHECK(cli("invariants " + data("arity.iwm")).code == 2);
    CHECK(cli("invariants " + data("duplicate.iwm")).code == 2);
    CHECK(cli("invariants " + data("no-such-file.iwm")).code == 2);
    CHECK(cli("invariants --module Nope " + data("lp.iwm")).code == 2);
    CHECK(cli("ext " + data("lp.iwm")).code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("verify --suite nonsense").code == 2);
    CHECK(cli("invariants --prec-p 0 " + data("lp.iwm")).code == 2);
    // not finite length: rejected as input
    CHECK(cli("verify --suite local-duality " + data("lp.iwm")).code == 2);
}

TEST_CASE("computation failures exit with 1") {
    // homological commands are not available over rule-presented rings
    auto r = cli("resolve --json " + data("heisenberg.iwm"));
    CHECK(r.code == 1);
    CHECK(Json::parse(r.out)["error"]["kind"] == "unsupported_mode");
    // exponent at the precision bound
    CHECK(cli("decompose --prec-p 2 " + data("lp2.iwm")).code == 1);
}

TEST_CASE("seed from the environment") {
    auto a = cli("verify --suite corpus --trials 3 --seed 5 --json");
    auto b = sh("IWALG_SEED=5 " + std::string(IWALG_CLI_PATH) + " verify --suite corpus --trials 3 --json");
    CHECK(b.code == 0);
    CHECK(a.out == b.out);
}
