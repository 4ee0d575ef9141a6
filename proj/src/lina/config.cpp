#include "netmon/lina/config.hpp"

#include <nlohmann/json.hpp>

#include "netmon/errors.hpp"

namespace netmon::lina {

namespace {

using nlohmann::json;

std::string field(const std::string& section, std::size_t i, const char* name) {
  return section + "[" + std::to_string(i) + "]." + name;
}

AclAction acl_action_from(const std::string& word, const std::string& where) {
  // Schema tokens use underscores; the spelled-out rule names are accepted too.
  if (word == "trust") return AclAction::Trust;
  if (word == "monitor") return AclAction::Monitor;
  if (word == "allow") return AclAction::Allow;
  if (word == "block") return AclAction::Block;
  if (word == "block_reset" || word == "block with reset") return AclAction::BlockWithReset;
  if (word == "interactive_block" || word == "interactive block")
    return AclAction::InteractiveBlock;
  if (word == "interactive_block_reset" || word == "interactive block with reset")
    return AclAction::InteractiveBlockWithReset;
  if (word == "deny") return AclAction::Deny;
  throw ConfigError(where + ": unknown action '" + word + "'");
}

json parse_doc(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string())
    throw ConfigError(where + ": missing or non-string '" + key + "'");
  return j.at(key).get<std::string>();
}

Ipv4 addr_field(const json& j, const char* key, const std::string& where) {
  try {
    return parse_ipv4(get_string(j, key, where));
  } catch (const ConfigError& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

Cidr cidr_field(const json& j, const char* key, const std::string& where) {
  try {
    return parse_cidr(get_string(j, key, where));
  } catch (const ConfigError& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

const json& section_array(const json& doc, const char* name) {
  static const json empty = json::array();
  if (!doc.contains(name)) return empty;
  const json& s = doc.at(name);
  if (!s.is_array()) throw ConfigError(std::string(name) + ": expected an array");
  return s;
}

}  // namespace

Tables load_tables(std::string_view text) {
  json doc = parse_doc(text, "config");
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  Tables t;

  {
    const json& arr = section_array(doc, "destinations");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "destinations[" + std::to_string(i) + "]";
      if (!arr[i].is_string()) throw ConfigError(where + ": expected an address string");
      Ipv4 a = [&] {
        try {
          return parse_ipv4(arr[i].get<std::string>());
        } catch (const ConfigError& e) {
          throw ConfigError(where + ": " + e.what());
        }
      }();
      for (Ipv4 seen : t.destinations)
        if (seen == a) throw ConfigError(where + ": duplicate destination " + to_string(a));
      t.destinations.push_back(a);
    }
  }
  {
    const json& arr = section_array(doc, "nat_table");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "nat_table[" + std::to_string(i) + "]";
      if (!arr[i].is_string()) throw ConfigError(where + ": expected an address string");
      try {
        t.nat.push_back(parse_ipv4(arr[i].get<std::string>()));
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
  }
  {
    const json& arr = section_array(doc, "routes");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "routes[" + std::to_string(i) + "]";
      RouteEntry e;
      e.match = cidr_field(arr[i], "match", where);
      e.new_destination = addr_field(arr[i], "new_destination", where);
      t.routes.push_back(e);
    }
  }
  {
    const json& arr = section_array(doc, "prefilter");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "prefilter[" + std::to_string(i) + "]";
      PrefilterEntry e;
      e.source_match = cidr_field(arr[i], "source", where);
      std::string action = get_string(arr[i], "action", where);
      if (action == "fastpath")
        e.action = PrefilterAction::Fastpath;
      else if (action == "analyze")
        e.action = PrefilterAction::Analyze;
      else
        throw ConfigError(field("prefilter", i, "action") + ": unknown action '" + action +
                          "'");
      t.prefilter.push_back(e);
    }
  }
  {
    const json& arr = section_array(doc, "acl");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "acl[" + std::to_string(i) + "]";
      AclRule r;
      r.source_match = cidr_field(arr[i], "source", where);
      r.action = acl_action_from(get_string(arr[i], "action", where),
                                 field("acl", i, "action"));
      if (arr[i].contains("trust_mode")) {
        std::string mode = get_string(arr[i], "trust_mode", where);
        if (mode == "trusted")
          r.trust_mode = TrustMode::Trusted;
        else if (mode == "permitted")
          r.trust_mode = TrustMode::Permitted;
        else
          throw ConfigError(field("acl", i, "trust_mode") + ": unknown mode '" + mode + "'");
      }
      if (r.action == AclAction::Trust && !r.trust_mode)
        throw ConfigError(field("acl", i, "trust_mode") +
                          ": required for trust rules (trusted or permitted)");
      if (r.action != AclAction::Trust && r.trust_mode)
        throw ConfigError(field("acl", i, "trust_mode") +
                          ": only meaningful on trust rules");
      t.acl.push_back(r);
    }
  }
  return t;
}

namespace {

Header header_from(const json& j, const std::string& where) {
  Header h;
  h.src = addr_field(j, "src", where);
  h.dst = addr_field(j, "dst", where);
  h.proto = j.value("proto", std::string{});
  return h;
}

}  // namespace

std::vector<Packet> load_trace(std::string_view text) {
  std::vector<Packet> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    std::string where = "trace line " + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ConfigError(where + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(where + ": expected an object");

    Packet p;
    p.id = get_string(j, "id", where);
    if (!j.contains("outer")) throw ConfigError(where + ": missing 'outer' header");
    p.outer = header_from(j.at("outer"), where + ".outer");
    if (j.contains("inner")) p.inner = header_from(j.at("inner"), where + ".inner");
    if (j.contains("payload")) {
      if (!j.at("payload").is_array())
        throw ConfigError(where + ".payload: expected an array of strings");
      for (const auto& f : j.at("payload")) {
        if (!f.is_string())
          throw ConfigError(where + ".payload: expected an array of strings");
        p.payload_fragments.push_back(f.get<std::string>());
      }
    }
    if (j.contains("encrypted")) {
      if (!j.at("encrypted").is_boolean())
        throw ConfigError(where + ".encrypted: expected a boolean");
      p.encrypted = j.at("encrypted").get<bool>();
    }
    for (const Packet& prev : out)
      if (prev.id == p.id) throw ConfigError(where + ": duplicate packet id '" + p.id + "'");
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace netmon::lina
