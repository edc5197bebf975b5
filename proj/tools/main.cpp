// iwalg command-line front end.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "iwalg/iwm.hpp"
#include "iwalg/report.hpp"

using namespace iwalg;

namespace {

enum Exit { ok = 0, computation = 1, input = 2, counterexample = 3 };

struct Options {
    std::string input;
    std::string module;
    std::optional<int> prec_a;
    std::optional<int> prec_N;
    int max_escalations = 3;
    bool json = false;
    std::string out;
    int length = -1;
    int ext_i = 0;
    std::string suite = "corpus";
    int trials = 0;
    std::optional<std::uint64_t> seed;
    long p = 3;
};

struct Outcome {
    Json results;
    Certification cert = Certification::certified;
    int escalations = 0;
    bool counterexample = false;
    bool uncertified = false;
};

std::uint64_t seed_of(const Options& o) {
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("IWALG_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::validation, "IWALG_SEED is not an unsigned integer");
        }
    }
    return 1;
}

int trials_of(const Options& o, int fallback) { return o.trials > 0 ? o.trials : fallback; }

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::validation, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Precision effective_precision(const IwmDocument& doc, const Options& o) {
    Precision q = doc.precision();
    if (o.prec_a) q.a = *o.prec_a;
    if (o.prec_N) q.N = *o.prec_N;
    if (q.a < 1 || q.N < 1) throw Error(ErrorKind::validation, "precision must be positive");
    return q;
}

Json audits_json(const std::vector<AuditReport>& audits, Outcome& out) {
    Json arr = Json::array();
    bool all = true;
    for (const auto& a : audits) {
        arr.push_back(audit_json(a));
        if (a.failed > 0) out.counterexample = true;
        if (a.heuristic > 0) {
            out.uncertified = true;
            out.cert = Certification::heuristic;
        }
        all = all && a.ok();
    }
    return Json{{"audits", std::move(arr)}, {"ok", all}};
}

Outcome run_verify_module(const Presentation& m, const Options& o) {
    Outcome out;
    const std::uint64_t seed = seed_of(o);
    std::vector<AuditReport> audits;
    const std::string& s = o.suite;
    if (s == "auslander") {
        audits.push_back(auslander_spotcheck(m, trials_of(o, 8), seed));
    } else if (s == "local-duality") {
        audits.push_back(local_duality_finite(m));
    } else if (s == "induction") {
        audits.push_back(induction_check(m, m.ring->r() + 1));
    } else if (s == "change-of-rings") {
        audits.push_back(change_of_rings_check(m));
    } else if (s == "pseudo-iso") {
        audits.push_back(pseudo_iso_e1_check(m));
    } else if (s == "e1-torsion") {
        audits.push_back(e1_torsion_check(m));
    } else if (s == "symbol") {
        audits.push_back(symbol_multiplicativity(m.ring, m.prec, trials_of(o, 20), seed));
    } else if (s == "oracle") {
        audits.push_back(matrix_oracle_check(m.ring, m.prec, trials_of(o, 20), seed));
    } else {
        throw Error(ErrorKind::validation, "unknown suite '" + s + "'");
    }
    out.results = audits_json(audits, out);
    out.results["suite"] = s;
    out.results["seed"] = seed;
    return out;
}

Outcome run_module(const std::string& cmd, const Presentation& m, const Options& o) {
    Outcome out;
    if (cmd == "info") {
        Json r;
        r["presentation"] = presentation_json(m);
        r["iwm"] = print_iwm(to_document(m, m.label));
        if (m.ring->mode() == RingMode::abelian) {
            Presentation s = simplify(m);
            r["simplified"] = presentation_json(s);
            r["generators"] = s.rank;
            r["zero"] = is_zero(s);
        } else {
            r["validation"] = validation_json(validate_ring(m.ring, m.prec, trials_of(o, 20), seed_of(o)));
        }
        out.results = std::move(r);
    } else if (cmd == "invariants") {
        InvariantReport rep = invariants(m);
        out.results = invariants_json(rep);
        out.cert = rep.certification;
        out.escalations = rep.escalations;
    } else if (cmd == "filtration") {
        out.results = filtration_json(dimension_filtration(m));
    } else if (cmd == "resolve") {
        require_commutative(m.ring, "resolve");
        out.results = resolution_json(minimal_free_resolution(m, o.length));
    } else if (cmd == "ext") {
        require_commutative(m.ring, "ext");
        if (o.ext_i < 0) throw Error(ErrorKind::validation, "--i must be nonnegative");
        Presentation e = ext(m, o.ext_i).module;
        Json r;
        r["i"] = o.ext_i;
        r["module"] = presentation_json(e);
        r["profile"] = profile_json(profile(e));
        r["zero"] = is_zero(e);
        if (e.rank == 1) {
            Json ann = Json::array();
            for (const auto& row : e.rels) ann.push_back(row[0].to_string(b_names(static_cast<std::size_t>(e.ring->r())), e.ring->p()));
            r["annihilator"] = std::move(ann);
        }
        r["iwm"] = print_iwm(to_document(e, "E" + std::to_string(o.ext_i)));
        out.results = std::move(r);
    } else if (cmd == "mu") {
        out.results = mu_json(mu(m));
    } else if (cmd == "decompose") {
        out.results = decomposition_json(decompose_p_torsion(m));
    } else if (cmd == "verify") {
        return run_verify_module(m, o);
    } else {
        throw Error(ErrorKind::internal, "unhandled command " + cmd);
    }
    return out;
}

void emit(const Options& o, const Json& j) {
    std::string text = o.json ? dump(j) : render_text(j);
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorKind::validation, "cannot write " + o.out);
    f << text;
}

int exit_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::parse:
        case ErrorKind::validation:
        case ErrorKind::ring_mismatch:
            return input;
        default:
            return computation;
    }
}

int run(const std::string& cmd, const Options& o) {
    const std::uint64_t seed = seed_of(o);
    if (o.input.empty()) {
        // Commands that do not need a document.
        Json j;
        Outcome out;
        if (cmd == "verify" && o.suite == "corpus") {
            CorpusConfig cfg;
            cfg.p = o.p;
            if (o.prec_a) cfg.prec.a = *o.prec_a;
            if (o.prec_N) cfg.prec.N = *o.prec_N;
            cfg.max_escalations = o.max_escalations;
            cfg.count = trials_of(o, 50);
            out.results = audits_json(corpus_run(cfg, seed), out);
            out.results["suite"] = "corpus";
            out.results["seed"] = seed;
            out.results["count"] = cfg.count;
            j["precision"] = precision_json(cfg.prec);
        } else if (cmd == "oracle-check") {
            Ring h = RingContext::congruence_heisenberg(o.p, Precision{o.prec_a.value_or(4), o.prec_N.value_or(6)},
                                                        o.max_escalations);
            Precision q = h->default_precision();
            AuditReport a = matrix_oracle_check(h, q, trials_of(o, 20), seed);
            out.results = audits_json({a}, out);
            out.results["validation"] = validation_json(validate_ring(h, q, 10, seed));
            if (!out.results["validation"]["valid"].get<bool>()) out.counterexample = true;
            j["ring"] = ring_json(h);
            j["precision"] = precision_json(q);
        } else {
            throw Error(ErrorKind::validation, cmd + " needs an input document");
        }
        if (!j.contains("ring")) j["ring"] = nullptr;
        j["module"] = nullptr;
        j["results"] = out.results;
        j["certification"] = to_string(out.cert);
        j["escalations"] = out.escalations;
        emit(o, j);
        return out.counterexample ? counterexample : out.uncertified ? computation : ok;
    }

    IwmDocument doc = parse_iwm(read_input(o.input));
    Precision prec = effective_precision(doc, o);
    Ring ring = doc.make_ring(prec, o.max_escalations);
    if (cmd == "oracle-check") {
        AuditReport a = matrix_oracle_check(ring, prec, trials_of(o, 20), seed);
        Outcome out;
        out.results = audits_json({a}, out);
        out.results["validation"] = validation_json(validate_ring(ring, prec, 10, seed));
        if (!out.results["validation"]["valid"].get<bool>()) out.counterexample = true;
        Json j{{"ring", ring_json(ring)}, {"module", nullptr}, {"precision", precision_json(prec)},
               {"results", out.results}, {"certification", to_string(out.cert)}, {"escalations", 0}};
        emit(o, j);
        return out.counterexample ? counterexample : ok;
    }

    std::vector<const IwmModule*> selected;
    if (!o.module.empty()) {
        selected.push_back(&doc.module(o.module));
    } else {
        for (const auto& m : doc.modules) selected.push_back(&m);
        std::sort(selected.begin(), selected.end(), [](auto* x, auto* y) { return x->name < y->name; });
    }
    Json all = Json::array();
    int code = ok;
    for (const IwmModule* im : selected) {
        Presentation m = doc.presentation(*im, ring, prec);
        Outcome out = run_module(cmd, m, o);
        all.push_back(envelope(m, im->name, std::move(out.results), out.cert, out.escalations));
        if (out.counterexample) code = counterexample;
        else if (out.uncertified && code == ok) code = computation;
    }
    emit(o, all.size() == 1 ? all[0] : Json{{"modules", all}});
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants of finitely presented modules over Iwasawa algebras"};
    app.require_subcommand(1);
    Options o;
    bool want_json = std::any_of(argv + 1, argv + argc, [](const char* a) { return std::string(a) == "--json"; });

    auto common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("input", o.input, "IWM document ('-' for standard input)");
        if (needs_input) in->required();
        sub->add_option("--module", o.module, "Only this module of the document");
        sub->add_option("--prec-p", o.prec_a, "p-adic precision a (overrides the header)")->check(CLI::PositiveNumber);
        sub->add_option("--prec-deg", o.prec_N, "Degree truncation N (overrides the header)")->check(CLI::PositiveNumber);
        sub->add_option("--max-escalations", o.max_escalations, "Precision escalations allowed")->check(CLI::NonNegativeNumber);
        sub->add_flag("--json", o.json, "Emit a single JSON object");
        sub->add_option("--out", o.out, "Write the report to this file");
        sub->add_option("--seed", o.seed, "Random seed (default: $IWALG_SEED, else 1)");
    };

    auto* info = app.add_subcommand("info", "Ring and presentation summary");
    common(info, true);
    auto* inv = app.add_subcommand("invariants", "delta, j, pd, depth, rank, mu and module predicates");
    common(inv, true);
    auto* filt = app.add_subcommand("filtration", "Dimension filtration T_0 ⊆ ... ⊆ T_d");
    common(filt, true);
    auto* res = app.add_subcommand("resolve", "Minimal free resolution");
    common(res, true);
    res->add_option("--length", o.length, "Number of maps (default: to the end)");
    auto* ex = app.add_subcommand("ext", "E^i(M) = Ext^i(M, Lambda)");
    common(ex, true);
    ex->add_option("--i", o.ext_i, "Degree i")->required();
    auto* mu_cmd = app.add_subcommand("mu", "mu-invariant and its p-power chain");
    common(mu_cmd, true);
    auto* dec = app.add_subcommand("decompose", "Elementary divisors of the p-primary part");
    common(dec, true);
    auto* ver = app.add_subcommand("verify", "Audit suites (corpus, auslander, local-duality, induction, ...)");
    common(ver, false);
    ver->add_option("--suite", o.suite, "Suite name")
        ->check(CLI::IsMember({"corpus", "auslander", "local-duality", "induction", "change-of-rings", "pseudo-iso",
                               "e1-torsion", "symbol", "oracle"}));
    ver->add_option("--trials", o.trials, "Trials (corpus size for the corpus suite)")->check(CLI::PositiveNumber);
    ver->add_option("--p", o.p, "Prime for the corpus suite");
    auto* orc = app.add_subcommand("oracle-check", "Heisenberg ring against 3x3 matrices");
    common(orc, false);
    orc->add_option("--trials", o.trials, "Random words")->check(CLI::PositiveNumber);
    orc->add_option("--p", o.p, "Prime when no document is given");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : input;
    }
    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, o);
    } catch (const Error& e) {
        if (want_json) {
            std::cout << dump(error_json(e.kind(), e.what()));
        } else {
            std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        }
        return exit_for(e.kind());
    } catch (const std::exception& e) {
        if (want_json) {
            std::cout << dump(error_json(ErrorKind::internal, e.what()));
        } else {
            std::cerr << "error (internal): " << e.what() << "\n";
        }
        return computation;
    }
}
