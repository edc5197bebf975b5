#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "iwalg/error.hpp"
#include "iwalg/invariants.hpp"
#include "iwalg/verify.hpp"

namespace iwalg {

using Json = nlohmann::json;

/// ±infinity sentinels become the strings "-infinity" / "infinity".
Json int_json(int v);

Json ring_json(const Ring& ring);
Json precision_json(Precision prec);
Json presentation_json(const Presentation& m);
Json profile_json(const Profile& pr);
Json invariants_json(const InvariantReport& rep);
Json resolution_json(const Resolution& res);
Json mu_json(const MuReport& mu);
Json decomposition_json(const DecompositionReport& dec);
Json filtration_json(const FiltrationReport& f);
Json audit_json(const AuditReport& a);
Json validation_json(const ValidationReport& v);

/// The per-module envelope: ring, module, precision, results, certification, escalations.
Json envelope(const Presentation& m, const std::string& module, Json results, Certification cert, int escalations);
Json error_json(ErrorKind kind, const std::string& message);

/// Key-sorted JSON text, two-space indent, trailing newline.
std::string dump(const Json& j);
/// Indented "key: value" rendering for terminals.
std::string render_text(const Json& j);

}  // namespace iwalg
