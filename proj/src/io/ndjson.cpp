#include "netmon/io/ndjson.hpp"

#include <istream>
#include <variant>

#include <nlohmann/json.hpp>

#include "netmon/errors.hpp"
#include "netmon/events/catalog.hpp"

namespace netmon::io {

namespace {

using ordered = nlohmann::ordered_json;

ordered value_json(const rt::Value& v) {
  return std::visit([](const auto& x) { return ordered(x); }, v);
}

rt::Value value_from(const ordered& j, const std::string& where) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::vector<std::string> parts;
    for (const auto& item : j) {
      if (!item.is_string())
        throw ConfigError(where + ": array values hold strings only");
      parts.push_back(item.get<std::string>());
    }
    return parts;
  }
  throw ConfigError(where + ": unsupported attribute value");
}

}  // namespace

std::string event_line(const events::EventInstance& e) {
  ordered j;
  j["seq"] = e.seq;
  j["kind"] = events::event_id(e.kind);
  j["packet"] = e.packet;
  j["start"] = e.start;
  j["end"] = e.end;
  j["attrs"] = ordered::object();
  for (const auto& [key, value] : e.attrs) j["attrs"][key] = value_json(value);
  return j.dump();
}

std::string meta_line(const monitor::MetaEvent& m) {
  ordered j;
  j["meta"] = m.id;
  j["event_seq"] = m.event_seq;
  j["packet"] = m.packet;
  j["start"] = m.start;
  j["end"] = m.end;
  j["period"] = m.period;
  j["severity"] = monitor::to_string(m.severity);
  j["changes"] = ordered::object();
  for (const auto& [name, change] : m.changes) {
    ordered pair;
    pair["old"] = value_json(change.old_value);
    pair["new"] = value_json(change.new_value);
    j["changes"][name] = pair;
  }
  return j.dump();
}

std::string composite_line(const monitor::CompositeRecord& c) {
  ordered j;
  j["composite"] = c.name;
  j["packet"] = c.packet;
  j["members"] = c.members;
  j["span"] = {c.span_start, c.span_end};
  return j.dump();
}

std::vector<events::EventInstance> parse_event_log(std::istream& in) {
  std::vector<events::EventInstance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "events log line " + std::to_string(lineno);
    ordered j;
    try {
      j = ordered::parse(line);
    } catch (const ordered::parse_error& err) {
      throw ConfigError(where + ": " + err.what());
    }
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    try {
      events::EventInstance e;
      e.seq = j.at("seq").get<std::int64_t>();
      const std::string kind = j.at("kind").get<std::string>();
      if (kind.size() < 2 || kind[0] != 'E')
        throw ConfigError(where + ": kind '" + kind + "'");
      e.kind = std::stoi(kind.substr(1));
      events::event_kind(e.kind);  // throws outside the catalog
      e.packet = j.at("packet").get<std::string>();
      e.start = j.at("start").get<std::int64_t>();
      e.end = j.at("end").get<std::int64_t>();
      for (const auto& [key, value] : j.at("attrs").items())
        e.attrs[key] = value_from(value, where);
      out.push_back(std::move(e));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& err) {
      throw ConfigError(where + ": " + err.what());
    }
  }
  return out;
}

}  // namespace netmon::io
