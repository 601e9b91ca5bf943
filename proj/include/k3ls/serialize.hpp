#pragma once

// JSON documents for every result type, and the re-validation of whole documents.

#include <json.hpp>
#include <string>
#include <vector>

#include "k3ls/classifier.hpp"
#include "k3ls/degeneration.hpp"
#include "k3ls/numerics.hpp"
#include "k3ls/oracle.hpp"

namespace k3ls {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "k3ls";
inline constexpr const char* kToolVersion = "1.0.0";

void to_json(Json& j, const SystemClass& cls);
void from_json(const Json& j, SystemClass& cls);
void to_json(Json& j, const DimensionPair& dims);
void to_json(Json& j, const Verdict& verdict);
void from_json(const Json& j, Verdict& verdict);
void to_json(Json& j, const AuditReport& report);
void from_json(const Json& j, AuditReport& report);
void to_json(Json& j, const HomogeneousSystem& system);
void from_json(const Json& j, HomogeneousSystem& system);
void to_json(Json& j, const CentralFiberPlan& plan);
void from_json(const Json& j, CentralFiberPlan& plan);
void to_json(Json& j, const StepAudit& audit);
void from_json(const Json& j, StepAudit& audit);
void to_json(Json& j, const OracleReport& report);
void from_json(const Json& j, OracleReport& report);

/// Nested tree: one object per node with system, plan, audit and child; the last node
/// carries the leaf.
Json certificate_to_json(const CertificateTree& tree);
CertificateTree certificate_from_json(const Json& j);

/// Wraps a command result with tool name, version and the config echo.
Json make_document(const std::string& command, Json config, Json result);

/// Re-parses a document and recomputes every embedded integer that can be derived from
/// its system fields. Returns the list of problems (empty when valid).
std::vector<std::string> validate_document(const Json& document);

}  // namespace k3ls
