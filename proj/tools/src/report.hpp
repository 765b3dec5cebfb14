#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sadovskii/identities.hpp"
#include "sadovskii/solver.hpp"

namespace sadovskii::cli {

nlohmann::json to_json(const IdentityReport& report);
IdentityReport identity_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<IdentityReport>& reports);

/// Profile summary with the required top-level keys; the identity list and
/// the field file name are filled in by the caller.
nlohmann::json profile_json(const DipoleProfile& profile);

/// Rebuilds the scalar parts of a profile from a report (no field).
DipoleProfile profile_from_json(const nlohmann::json& j);

/// One aligned text line per report.
std::string format_line(const IdentityReport& report);

void write_json(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json(const std::string& path);

}  // namespace sadovskii::cli
