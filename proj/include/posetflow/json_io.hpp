#pragma once

#include <string>

#include <json.hpp>

#include "posetflow/builders.hpp"
#include "posetflow/flow.hpp"
#include "posetflow/theorems.hpp"

namespace posetflow {

using Json = nlohmann::ordered_json;

// {"elements":[{"id":"...","weight":1},...],"covers":[["x","y"],...]}
// Elements sorted by id, covers listed low -> high and sorted; weights are
// JSON numbers when they fit in 64 bits, decimal strings otherwise.
Json poset_to_json(const Poset& poset);
Poset poset_from_json(const Json& j);

// {"p":..,"q":..,"rho":..,"blocks":[{"i":..,"j":..,"size":"<decimal>","rank":..},...]}
Json block_grid_to_json(const BlockGrid& grid);

// {"chains":[{"elements":["id",...],"weight":"num/den"},...]}
Json unit_flow_to_json(const UnitFlow& flow);
UnitFlow unit_flow_from_json(const Json& j);

// {"holds":bool,"checked":n,"violation":{"indices":[..],"lhs":"num/den","rhs":"num/den"}|null}
Json inequality_report_to_json(const InequalityReport& report);

// Certificate for a maximum-weight antichain: embeds the scale factor.
Json antichain_certificate_to_json(const Poset& poset, const AntichainCertificate& cert);

// Certificate for lym_certify; embeds the violating antichain on failure.
Json lym_certificate_to_json(const Poset& poset, const LymCertificate& cert);

// Canonical serialization: two-space indent, trailing newline.
std::string canonical_dump(const Json& j);

}  // namespace posetflow
