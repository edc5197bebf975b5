#include "iwalg/report.hpp"

#include <sstream>

namespace iwalg {

namespace {

std::string poly_str(const Poly& f, const Ring& ring) {
    return f.to_string(b_names(static_cast<std::size_t>(ring->r())), ring->p());
}

Json matrix_json(const Matrix& m, const Ring& ring) {
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(poly_str(e, ring));
        rows.push_back(std::move(r));
    }
    return rows;
}

template <class T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

void render(std::ostringstream& os, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        os << pad << it.key() << ":";
        if (v.is_object()) {
            os << "\n";
            render(os, v, indent + 2);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << "\n";
            for (const auto& e : v) {
                os << pad << "  -\n";
                render(os, e, indent + 4);
            }
        } else if (v.is_string()) {
            os << " " << v.get<std::string>() << "\n";
        } else {
            os << " " << v.dump() << "\n";
        }
    }
}

}  // namespace

Json int_json(int v) {
    if (v <= kMinusInfinity) return "-infinity";
    if (v >= kPlusInfinity) return "infinity";
    return v;
}

Json ring_json(const Ring& ring) {
    Json j;
    j["p"] = ring->p();
    j["r"] = ring->r();
    j["d"] = ring->d();
    j["mode"] = ring->mode() == RingMode::rules ? "rules" : "abelian";
    j["coefficients"] = ring->coefficients() == Coefficients::padic ? "padic" : "residue";
    if (ring->is_heisenberg()) j["preset"] = "congruence-heisenberg";
    j["description"] = ring->describe();
    return j;
}

Json precision_json(Precision prec) { return Json{{"a", prec.a}, {"N", prec.N}}; }

Json presentation_json(const Presentation& m) {
    Json j;
    j["rank"] = m.rank;
    j["relations"] = matrix_json(m.rels, m.ring);
    return j;
}

Json profile_json(const Profile& pr) {
    return Json{{"zero", pr.zero},
                {"delta", int_json(pr.delta)},
                {"j", int_json(pr.j)},
                {"mu", pr.mu},
                {"betti", pr.betti}};
}

Json mu_json(const MuReport& mu) {
    return Json{{"mu", mu.mu}, {"chain", mu.chain}, {"non_increasing", mu.non_increasing}};
}

Json decomposition_json(const DecompositionReport& dec) {
    return Json{{"exponents", dec.exponents}, {"mu", dec.mu}, {"consistent", dec.consistent}, {"chain", dec.chain}};
}

Json invariants_json(const InvariantReport& rep) {
    Json j;
    j["zero"] = rep.zero;
    j["delta"] = int_json(rep.delta.value);
    j["j"] = int_json(rep.j.value);
    j["j_ext"] = rep.j_ext ? int_json(*rep.j_ext) : Json(nullptr);
    if (rep.pd) {
        j["pd"] = int_json(rep.pd->betti);
        j["pd_routes"] = Json{{"betti", rep.pd->betti}, {"ext", rep.pd->ext}, {"koszul", rep.pd->koszul},
                              {"agree", rep.pd->agree()}};
    } else {
        j["pd"] = nullptr;
    }
    j["depth"] = rep.depth ? int_json(*rep.depth) : Json(nullptr);
    j["rank"] = rep.rank.value;
    j["rank_heuristic"] = rep.rank.heuristic;
    j["betti"] = opt(rep.betti);
    j["mu"] = rep.mu ? Json(rep.mu->mu) : Json(nullptr);
    if (rep.mu) j["mu_chain"] = rep.mu->chain;
    j["torsion"] = rep.is_torsion;
    j["torsion_free"] = opt(rep.is_torsion_free);
    j["pseudo_null"] = rep.is_pseudo_null;
    j["reflexive"] = opt(rep.is_reflexive);
    j["cohen_macaulay"] = opt(rep.is_cohen_macaulay);
    j["ext_support"] = opt(rep.ext_support);
    return j;
}

Json resolution_json(const Resolution& res) {
    Json j;
    j["ranks"] = res.ranks;
    j["minimal"] = res.minimal;
    j["complete"] = res.complete;
    Json maps = Json::array();
    for (const auto& m : res.maps) maps.push_back(matrix_json(m, res.target.ring));
    j["maps"] = std::move(maps);
    return j;
}

Json filtration_json(const FiltrationReport& f) {
    Json levels = Json::array();
    for (const auto& lv : f.levels) {
        Json l;
        l["i"] = lv.i;
        l["generators"] = matrix_json(lv.generators, f.module.ring);
        l["profile"] = profile_json(lv.realized_profile);
        l["recursion_agrees"] = lv.agree;
        l["delta"] = int_json(lv.delta);
        l["pure_step"] = lv.pure_step;
        levels.push_back(std::move(l));
    }
    return Json{{"module", presentation_json(f.module)},
                {"levels", std::move(levels)},
                {"t0_matches_edd", f.t0_matches_edd},
                {"consistent", f.consistent()}};
}

Json audit_json(const AuditReport& a) {
    Json j;
    j["check"] = a.check;
    j["instances"] = a.instances;
    j["passed"] = a.passed;
    j["failed"] = a.failed;
    j["heuristic"] = a.heuristic;
    j["skipped"] = a.skipped;
    j["ok"] = a.ok();
    j["notes"] = a.notes;
    if (a.witness) {
        j["witness"] = Json{{"ring", a.witness->ring},
                            {"module", a.witness->module},
                            {"precision", precision_json(a.witness->prec)},
                            {"seed", a.witness->seed},
                            {"trace", a.witness->trace}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json validation_json(const ValidationReport& v) {
    return Json{{"valid", v.valid}, {"checks", v.checks}, {"failures", v.failures}};
}

Json envelope(const Presentation& m, const std::string& module, Json results, Certification cert, int escalations) {
    Json j;
    j["ring"] = ring_json(m.ring);
    j["module"] = module;
    j["precision"] = precision_json(m.prec);
    j["results"] = std::move(results);
    j["certification"] = to_string(cert);
    j["escalations"] = escalations;
    return j;
}

Json error_json(ErrorKind kind, const std::string& message) {
    return Json{{"error", Json{{"kind", to_string(kind)}, {"message", message}}}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string render_text(const Json& j) {
    std::ostringstream os;
    if (j.is_object()) {
        render(os, j, 0);
    } else {
        os << j.dump() << "\n";
    }
    return os.str();
}

}  // namespace iwalg
