#include <nlohmann/json.hpp>

#include "netmon/errors.hpp"
#include "netmon/tm/model.hpp"

namespace netmon::tm {

namespace {

using nlohmann::ordered_json;

ActionKind action_kind_from(const std::string& s) {
  if (s == "Create") return ActionKind::Create;
  if (s == "Process") return ActionKind::Process;
  if (s == "Release") return ActionKind::Release;
  if (s == "Transfer") return ActionKind::Transfer;
  if (s == "Receive") return ActionKind::Receive;
  throw ModelError("unknown stage kind '" + s + "'");
}

ArrowKind arrow_kind_from(const std::string& s) {
  if (s == "Flow") return ArrowKind::Flow;
  if (s == "Trigger") return ArrowKind::Trigger;
  throw ModelError("unknown arrow kind '" + s + "'");
}

ModelSpec spec_from_doc(const ordered_json& doc);

}  // namespace

ModelSpec model_spec_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("model spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError("model spec root must be an object");

  try {
    return spec_from_doc(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model spec: ") + e.what());
  }
}

namespace {

ModelSpec spec_from_doc(const ordered_json& doc) {
  ModelSpec spec;
  spec.name = doc.value("name", std::string{});

  for (const auto& t : doc.value("thimacs", ordered_json::array())) {
    ThimacSpec ts;
    ts.name = t.at("name").get<std::string>();
    ts.parent = t.value("parent", std::string{});
    spec.thimacs.push_back(std::move(ts));
  }
  for (const auto& s : doc.value("stages", ordered_json::array())) {
    StageSpec ss;
    ss.label = s.at("label").get<std::string>();
    ss.thimac = s.at("thimac").get<std::string>();
    ss.kind = action_kind_from(s.at("kind").get<std::string>());
    if (s.contains("anchor")) ss.anchor = s.at("anchor").get<int>();
    spec.stages.push_back(std::move(ss));
  }
  for (const auto& s : doc.value("storages", ordered_json::array())) {
    StorageSpec ss;
    ss.name = s.at("name").get<std::string>();
    ss.thimac = s.at("thimac").get<std::string>();
    spec.storages.push_back(std::move(ss));
  }
  for (const auto& a : doc.value("arrows", ordered_json::array())) {
    ArrowSpec as;
    as.kind = arrow_kind_from(a.at("kind").get<std::string>());
    as.from = a.at("from").get<std::string>();
    as.to = a.at("to").get<std::string>();
    if (a.contains("anchor")) as.anchor = a.at("anchor").get<int>();
    spec.arrows.push_back(std::move(as));
  }
  return spec;
}

}  // namespace

std::string model_spec_to_json(const ModelSpec& spec) {
  ordered_json doc;
  doc["name"] = spec.name;
  doc["thimacs"] = ordered_json::array();
  for (const ThimacSpec& t : spec.thimacs) {
    ordered_json j{{"name", t.name}};
    if (!t.parent.empty()) j["parent"] = t.parent;
    doc["thimacs"].push_back(std::move(j));
  }
  doc["stages"] = ordered_json::array();
  for (const StageSpec& s : spec.stages) {
    ordered_json j{{"label", s.label}, {"thimac", s.thimac}, {"kind", to_string(s.kind)}};
    if (s.anchor) j["anchor"] = *s.anchor;
    doc["stages"].push_back(std::move(j));
  }
  doc["storages"] = ordered_json::array();
  for (const StorageSpec& s : spec.storages) {
    doc["storages"].push_back(ordered_json{{"name", s.name}, {"thimac", s.thimac}});
  }
  doc["arrows"] = ordered_json::array();
  for (const ArrowSpec& a : spec.arrows) {
    ordered_json j{{"kind", to_string(a.kind)}, {"from", a.from}, {"to", a.to}};
    if (a.anchor) j["anchor"] = *a.anchor;
    doc["arrows"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace netmon::tm
