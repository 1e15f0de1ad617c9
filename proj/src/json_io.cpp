#include "posetflow/json_io.hpp"

#include <algorithm>
#include <stdexcept>

namespace posetflow {

namespace {

Json weight_to_json(const BigInt& w) {
  if (w.fits_slong_p()) return static_cast<long long>(w.get_si());
  return w.get_str();
}

BigInt weight_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    auto parsed = parse_decimal(j.get<std::string>());
    if (parsed) return *parsed;
  }
  throw std::invalid_argument("weight must be an integer or a decimal string");
}

std::string id_list(const Poset& poset, const std::vector<int>& indices) {
  std::string out;
  for (int i : indices) {
    if (!out.empty()) out += ",";
    out += poset.id(i);
  }
  return out;
}

}  // namespace

Json poset_to_json(const Poset& poset) {
  Json j;
  j["elements"] = Json::array();
  auto order = poset.sorted_order();
  for (int i : order) {
    j["elements"].push_back({{"id", poset.id(i)}, {"weight", weight_to_json(poset.weight(i))}});
  }
  std::vector<std::pair<std::string, std::string>> covers;
  covers.reserve(poset.covers().size());
  for (const auto& [lo, hi] : poset.covers()) {
    covers.emplace_back(poset.id(lo), poset.id(hi));
  }
  std::sort(covers.begin(), covers.end());
  j["covers"] = Json::array();
  for (const auto& [lo, hi] : covers) j["covers"].push_back({lo, hi});
  return j;
}

Poset poset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array()) {
    throw std::invalid_argument("poset JSON requires an 'elements' array");
  }
  std::vector<Poset::Element> elements;
  for (const auto& e : j["elements"]) {
    if (!e.contains("id") || !e["id"].is_string()) {
      throw std::invalid_argument("poset element requires a string 'id'");
    }
    Poset::Element element;
    element.id = e["id"].get<std::string>();
    if (e.contains("weight")) element.weight = weight_from_json(e["weight"]);
    elements.push_back(std::move(element));
  }
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    for (const auto& c : j["covers"]) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string()) {
        throw std::invalid_argument("poset cover must be a pair of element ids");
      }
      covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
  }
  return Poset(std::move(elements), covers);
}

Json block_grid_to_json(const BlockGrid& grid) {
  Json j;
  j["p"] = grid.params.p;
  j["q"] = grid.params.q;
  j["rho"] = grid.params.rho;
  j["blocks"] = Json::array();
  for (const auto& e : grid.blocks) {
    j["blocks"].push_back(
        {{"i", e.i}, {"j", e.j}, {"size", e.size.get_str()}, {"rank", e.rank}});
  }
  return j;
}

Json unit_flow_to_json(const UnitFlow& flow) {
  Json j;
  j["chains"] = Json::array();
  for (const auto& chain : flow.chains) {
    j["chains"].push_back({{"elements", chain.elements}, {"weight", to_fraction(chain.weight)}});
  }
  return j;
}

UnitFlow unit_flow_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("chains") || !j["chains"].is_array()) {
    throw std::invalid_argument("unit flow JSON requires a 'chains' array");
  }
  UnitFlow flow;
  for (const auto& c : j["chains"]) {
    UnitFlow::Chain chain;
    if (!c.contains("elements") || !c["elements"].is_array() || !c.contains("weight") ||
        !c["weight"].is_string()) {
      throw std::invalid_argument("unit flow chain requires 'elements' and a 'weight' string");
    }
    for (const auto& id : c["elements"]) chain.elements.push_back(id.get<std::string>());
    auto weight = parse_fraction(c["weight"].get<std::string>());
    if (!weight) throw std::invalid_argument("bad chain weight: " + c["weight"].dump());
    chain.weight = *weight;
    flow.chains.push_back(std::move(chain));
  }
  return flow;
}

Json inequality_report_to_json(const InequalityReport& report) {
  Json j;
  j["holds"] = report.holds;
  j["checked"] = report.checked;
  if (report.violation) {
    j["violation"] = {{"indices", report.violation->indices},
                      {"lhs", to_fraction(report.violation->lhs)},
                      {"rhs", to_fraction(report.violation->rhs)}};
  } else {
    j["violation"] = nullptr;
  }
  return j;
}

Json antichain_certificate_to_json(const Poset& poset, const AntichainCertificate& cert) {
  Json j;
  j["value"] = to_fraction(cert.value);
  j["scale"] = cert.scale.get_str();
  j["antichain"] = Json::array();
  for (int i : cert.antichain) j["antichain"].push_back(poset.id(i));
  return j;
}

Json lym_certificate_to_json(const Poset& poset, const LymCertificate& cert) {
  Json j;
  j["lym"] = cert.lym;
  if (cert.failure) {
    j["failure"] = {{"layer", cert.failure->layer},
                    {"witness", id_list(poset, cert.failure->witness)},
                    {"antichain", id_list(poset, cert.failure->antichain)},
                    {"lym_sum", to_fraction(cert.failure->lym_sum)}};
  } else {
    j["failure"] = nullptr;
  }
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace posetflow
