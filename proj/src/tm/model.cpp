#include "netmon/tm/model.hpp"

#include <set>
#include <sstream>

#include "netmon/errors.hpp"

namespace netmon::tm {

const char* to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Create: return "Create";
    case ActionKind::Process: return "Process";
    case ActionKind::Release: return "Release";
    case ActionKind::Transfer: return "Transfer";
    case ActionKind::Receive: return "Receive";
  }
  return "?";
}

const char* to_string(ArrowKind k) {
  return k == ArrowKind::Flow ? "Flow" : "Trigger";
}

StaticModel::ElementType StaticModel::element_type(ElementId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= by_id_.size())
    throw ModelError("element id out of range: " + std::to_string(id));
  return by_id_[static_cast<std::size_t>(id)].type;
}

bool StaticModel::is_stage(ElementId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < by_id_.size() &&
         by_id_[static_cast<std::size_t>(id)].type == ElementType::Stage;
}
bool StaticModel::is_storage(ElementId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < by_id_.size() &&
         by_id_[static_cast<std::size_t>(id)].type == ElementType::Storage;
}
bool StaticModel::is_arrow(ElementId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < by_id_.size() &&
         by_id_[static_cast<std::size_t>(id)].type == ElementType::Arrow;
}
bool StaticModel::is_thimac(ElementId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < by_id_.size() &&
         by_id_[static_cast<std::size_t>(id)].type == ElementType::Thimac;
}

const Stage& StaticModel::stage_of(ElementId id) const {
  if (!is_stage(id)) throw ModelError("not a stage id: " + std::to_string(id));
  return stages[by_id_[static_cast<std::size_t>(id)].index];
}
const Storage& StaticModel::storage_of(ElementId id) const {
  if (!is_storage(id)) throw ModelError("not a storage id: " + std::to_string(id));
  return storages[by_id_[static_cast<std::size_t>(id)].index];
}
const Arrow& StaticModel::arrow_of(ElementId id) const {
  if (!is_arrow(id)) throw ModelError("not an arrow id: " + std::to_string(id));
  return arrows[by_id_[static_cast<std::size_t>(id)].index];
}
const Thimac& StaticModel::thimac_of(ElementId id) const {
  if (!is_thimac(id)) throw ModelError("not a thimac id: " + std::to_string(id));
  return thimacs[by_id_[static_cast<std::size_t>(id)].index];
}

ElementId StaticModel::owner_of(ElementId node) const {
  if (is_stage(node)) return stage_of(node).owner;
  if (is_storage(node)) return storage_of(node).owner;
  throw ModelError("element has no owner: " + std::to_string(node));
}

std::optional<ElementId> StaticModel::find_anchor(int label) const {
  auto it = anchors_.find(label);
  if (it == anchors_.end()) return std::nullopt;
  return it->second;
}

ElementId StaticModel::anchor_lookup(int label) const {
  auto found = find_anchor(label);
  if (!found) throw ModelError("anchor label not found: " + std::to_string(label));
  return *found;
}

std::optional<ElementId> StaticModel::find_node(std::string_view label) const {
  auto it = node_names_.find(label);
  if (it == node_names_.end()) return std::nullopt;
  return it->second;
}

ElementId StaticModel::node(std::string_view label) const {
  auto found = find_node(label);
  if (!found) throw ModelError("no stage or storage named '" + std::string(label) + "'");
  return *found;
}

std::string StaticModel::describe(ElementId id) const {
  switch (element_type(id)) {
    case ElementType::Thimac:
      return "thimac '" + thimac_of(id).name + "'";
    case ElementType::Stage: {
      const Stage& s = stage_of(id);
      std::string d = std::string(to_string(s.kind)) + " '" + s.label + "'";
      if (s.anchor) d += " (" + std::to_string(*s.anchor) + ")";
      return d;
    }
    case ElementType::Storage:
      return "storage '" + storage_of(id).name + "'";
    case ElementType::Arrow: {
      const Arrow& a = arrow_of(id);
      std::string d = std::string(to_string(a.kind)) + " arrow " +
                      describe(a.from) + " -> " + describe(a.to);
      if (a.anchor) d += " (" + std::to_string(*a.anchor) + ")";
      return d;
    }
  }
  return "?";
}

static const std::vector<ElementId> kEmptyIds;

const std::vector<ElementId>& StaticModel::flows_out(ElementId node) const {
  if (node < 0 || static_cast<std::size_t>(node) >= flows_out_.size()) return kEmptyIds;
  return flows_out_[static_cast<std::size_t>(node)];
}
const std::vector<ElementId>& StaticModel::flows_in(ElementId node) const {
  if (node < 0 || static_cast<std::size_t>(node) >= flows_in_.size()) return kEmptyIds;
  return flows_in_[static_cast<std::size_t>(node)];
}
const std::vector<ElementId>& StaticModel::triggers_out(ElementId node) const {
  if (node < 0 || static_cast<std::size_t>(node) >= triggers_out_.size()) return kEmptyIds;
  return triggers_out_[static_cast<std::size_t>(node)];
}

void StaticModel::build_index() {
  flows_out_.assign(by_id_.size(), {});
  flows_in_.assign(by_id_.size(), {});
  triggers_out_.assign(by_id_.size(), {});
  for (const Arrow& a : arrows) {
    if (a.kind == ArrowKind::Flow) {
      flows_out_[static_cast<std::size_t>(a.from)].push_back(a.id);
      flows_in_[static_cast<std::size_t>(a.to)].push_back(a.id);
    } else {
      triggers_out_[static_cast<std::size_t>(a.from)].push_back(a.id);
    }
  }
}

StaticModel build_model(const ModelSpec& spec) {
  StaticModel m;
  m.name = spec.name;

  ElementId next = 0;
  std::map<std::string, ElementId, std::less<>> thimac_names;

  for (const ThimacSpec& ts : spec.thimacs) {
    if (ts.name.empty()) throw ModelError("thimac with empty name");
    if (thimac_names.count(ts.name))
      throw ModelError("duplicate thimac name '" + ts.name + "'");
    Thimac t;
    t.id = next++;
    t.name = ts.name;
    thimac_names.emplace(t.name, t.id);
    m.thimacs.push_back(std::move(t));
    m.by_id_.push_back({StaticModel::ElementType::Thimac, m.thimacs.size() - 1});
  }
  // Parents resolved after all thimacs exist so declaration order is free.
  for (std::size_t i = 0; i < spec.thimacs.size(); ++i) {
    const std::string& parent = spec.thimacs[i].parent;
    if (parent.empty()) continue;
    auto it = thimac_names.find(parent);
    if (it == thimac_names.end())
      throw ModelError("thimac '" + spec.thimacs[i].name + "' references unknown parent '" + parent + "'");
    m.thimacs[i].parent = it->second;
  }
  // The parent relation must be a forest.
  for (const Thimac& t : m.thimacs) {
    ElementId walk = t.id;
    std::set<ElementId> seen;
    while (true) {
      if (!seen.insert(walk).second)
        throw ModelError("thimac parent cycle through '" + t.name + "'");
      const Thimac& cur = m.thimacs[static_cast<std::size_t>(walk)];
      if (!cur.parent) break;
      walk = *cur.parent;
    }
  }

  auto check_anchor = [&m](std::optional<int> anchor, const std::string& what) {
    if (!anchor) return;
    if (m.anchors_.count(*anchor))
      throw ModelError("duplicate anchor " + std::to_string(*anchor) + " on " + what);
  };

  for (const StageSpec& ss : spec.stages) {
    if (ss.label.empty()) throw ModelError("stage with empty label");
    if (m.node_names_.count(ss.label))
      throw ModelError("duplicate node label '" + ss.label + "'");
    auto owner = thimac_names.find(ss.thimac);
    if (owner == thimac_names.end())
      throw ModelError("stage '" + ss.label + "' references unknown thimac '" + ss.thimac + "'");
    check_anchor(ss.anchor, "stage '" + ss.label + "'");
    Stage s;
    s.id = next++;
    s.owner = owner->second;
    s.kind = ss.kind;
    s.anchor = ss.anchor;
    s.label = ss.label;
    if (s.anchor) m.anchors_.emplace(*s.anchor, s.id);
    m.node_names_.emplace(s.label, s.id);
    m.stages.push_back(std::move(s));
    m.by_id_.push_back({StaticModel::ElementType::Stage, m.stages.size() - 1});
  }

  for (const StorageSpec& ss : spec.storages) {
    if (ss.name.empty()) throw ModelError("storage with empty name");
    if (m.node_names_.count(ss.name))
      throw ModelError("duplicate node label '" + ss.name + "'");
    auto owner = thimac_names.find(ss.thimac);
    if (owner == thimac_names.end())
      throw ModelError("storage '" + ss.name + "' references unknown thimac '" + ss.thimac + "'");
    Storage s;
    s.id = next++;
    s.owner = owner->second;
    s.name = ss.name;
    m.node_names_.emplace(s.name, s.id);
    m.storages.push_back(std::move(s));
    m.by_id_.push_back({StaticModel::ElementType::Storage, m.storages.size() - 1});
  }

  for (const ArrowSpec& as : spec.arrows) {
    auto from = m.node_names_.find(as.from);
    if (from == m.node_names_.end())
      throw ModelError("arrow references unknown node '" + as.from + "'");
    auto to = m.node_names_.find(as.to);
    if (to == m.node_names_.end())
      throw ModelError("arrow references unknown node '" + as.to + "'");
    std::ostringstream what;
    what << to_string(as.kind) << " arrow " << as.from << " -> " << as.to;
    check_anchor(as.anchor, what.str());
    Arrow a;
    a.id = next++;
    a.kind = as.kind;
    a.from = from->second;
    a.to = to->second;
    a.anchor = as.anchor;
    if (a.anchor) m.anchors_.emplace(*a.anchor, a.id);
    m.arrows.push_back(std::move(a));
    m.by_id_.push_back({StaticModel::ElementType::Arrow, m.arrows.size() - 1});
  }

  m.build_index();
  return m;
}

bool flow_pair_allowed(std::optional<ActionKind> from, std::optional<ActionKind> to) {
  using AK = ActionKind;
  if (!from && !to) return false;  // storage -> storage
  if (!from) {                     // storage -> stage
    return *to == AK::Release || *to == AK::Process;
  }
  if (!to) {  // stage -> storage
    return *from == AK::Create || *from == AK::Process || *from == AK::Receive;
  }
  switch (*from) {
    case AK::Transfer: return *to == AK::Receive || *to == AK::Transfer;
    case AK::Release: return *to == AK::Transfer;
    case AK::Receive: return *to == AK::Process || *to == AK::Release;
    case AK::Process: return *to == AK::Release || *to == AK::Create;
    case AK::Create: return *to == AK::Process || *to == AK::Release;
  }
  return false;
}

std::vector<Violation> validate_model(const StaticModel& model) {
  std::vector<Violation> out;

  auto kind_of = [&model](ElementId node) -> std::optional<ActionKind> {
    if (model.is_stage(node)) return model.stage_of(node).kind;
    return std::nullopt;  // storage
  };

  for (const Arrow& a : model.arrows) {
    if (a.kind == ArrowKind::Flow) {
      if (!flow_pair_allowed(kind_of(a.from), kind_of(a.to))) {
        out.push_back({"flow-adjacency", a.id,
                       "illegal flow " + model.describe(a.from) + " -> " + model.describe(a.to)});
      }
    } else {
      bool legal_origin = model.is_stage(a.from) &&
                          (model.stage_of(a.from).kind == ActionKind::Process ||
                           model.stage_of(a.from).kind == ActionKind::Create);
      if (!legal_origin) {
        out.push_back({"trigger-origin", a.id,
                       "trigger must originate at Process or Create, not " + model.describe(a.from)});
      }
    }
  }

  for (const Stage& s : model.stages) {
    if (s.kind != ActionKind::Transfer) continue;
    bool crossing = false;
    for (const Arrow& a : model.arrows) {
      if (a.from != s.id && a.to != s.id) continue;
      ElementId other = a.from == s.id ? a.to : a.from;
      if (!model.is_stage(other) && !model.is_storage(other)) continue;
      if (model.owner_of(other) != s.owner) {
        crossing = true;
        break;
      }
    }
    if (!crossing) {
      out.push_back({"transfer-dangling", s.id,
                     model.describe(s.id) + " has no arrow crossing its thimac boundary"});
    }
  }

  return out;
}

}  // namespace netmon::tm
