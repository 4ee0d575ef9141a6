#include "netmon/monitor/monitor.hpp"

#include <algorithm>

#include "netmon/errors.hpp"
#include "netmon/events/catalog.hpp"

namespace netmon::monitor {

namespace {

Severity severity_of(const events::EventInstance& e) {
  switch (e.kind) {
    case 29:
    case 40:
    case 60:
      return Severity::Alert;
    case 18:
      return e.attrs.count("error") ? Severity::Warning : Severity::Info;
    default:
      return Severity::Info;
  }
}

}  // namespace

const char* to_string(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Alert: return "alert";
  }
  return "?";
}

void MonitorConfig::validate() const {
  for (const MergeRule& rule : merge_rules) {
    if (rule.name.empty()) throw UsageError("merge rule without a name");
    if (rule.members.empty())
      throw UsageError("merge rule '" + rule.name + "' has no members");
    for (int kind : rule.members) {
      events::event_kind(kind);  // throws on numbers outside the catalog
      if (!watches(kind))
        throw UsageError("merge rule '" + rule.name + "' includes unwatched " +
                         events::event_id(kind));
    }
  }
  for (int kind : watched) events::event_kind(kind);
}

std::optional<MetaEvent> observe(const events::EventInstance& event,
                                 const MonitorConfig& config) {
  if (!config.watches(event.kind)) return std::nullopt;
  MetaEvent m;
  m.id = "M" + std::to_string(event.kind);
  m.kind = event.kind;
  m.event_seq = event.seq;
  m.packet = event.packet;
  m.start = event.start;
  m.end = event.end;
  m.period = event.end - event.start;
  m.severity = severity_of(event);
  for (const auto& [key, value] : event.attrs) {
    if (key.size() <= 4 || key.compare(key.size() - 4, 4, "_old") != 0) continue;
    const std::string base = key.substr(0, key.size() - 4);
    const auto fresh = event.attrs.find(base + "_new");
    if (fresh != event.attrs.end())
      m.changes.emplace(base, Change{value, fresh->second});
  }
  return m;
}

CompositeRecord merge(const std::vector<MetaEvent>& metas, const MergeRule& rule) {
  if (metas.empty())
    throw UsageError("merge rule '" + rule.name + "' over no meta-events");
  CompositeRecord out;
  out.name = rule.name;
  out.packet = metas.front().packet;
  out.span_start = metas.front().start;
  out.span_end = metas.front().end;
  for (const MetaEvent& m : metas) {
    if (m.packet != out.packet)
      throw UsageError("merge across packets: '" + out.packet + "' and '" +
                       m.packet + "'");
    if (!rule.members.count(m.kind))
      throw UsageError("merge rule '" + rule.name + "' got stray " + m.id);
    out.members.push_back(m.event_seq);
    out.span_start = std::min(out.span_start, m.start);
    out.span_end = std::max(out.span_end, m.end);
  }
  return out;
}

void LogManager::append(MetaEvent m) {
  by_packet_[m.packet].push_back(archive_.size());
  by_kind_[m.kind].push_back(archive_.size());
  archive_.emplace_back(std::move(m));
}

void LogManager::append(CompositeRecord c) {
  by_packet_[c.packet].push_back(archive_.size());
  archive_.emplace_back(std::move(c));
}

std::vector<LogRecord> LogManager::query(const Filter& filter) const {
  // Seed from an index when one applies; the remaining fields are verified
  // per record. Candidate lists are already in archive order.
  static const std::vector<std::size_t> kNone;
  const std::vector<std::size_t>* seed = nullptr;
  if (filter.kind) {
    const auto it = by_kind_.find(*filter.kind);
    seed = it == by_kind_.end() ? &kNone : &it->second;
  } else if (filter.packet) {
    const auto it = by_packet_.find(*filter.packet);
    seed = it == by_packet_.end() ? &kNone : &it->second;
  }

  auto matches = [&](const LogRecord& r) {
    if (filter.packet) {
      const auto* m = std::get_if<MetaEvent>(&r);
      const std::string& packet =
          m ? m->packet : std::get<CompositeRecord>(r).packet;
      if (packet != *filter.packet) return false;
    }
    if (filter.kind) {
      const auto* m = std::get_if<MetaEvent>(&r);
      if (!m || m->kind != *filter.kind) return false;
    }
    if (filter.ticks) {
      const auto [lo, hi] = *filter.ticks;
      std::int64_t start, end;
      if (const auto* m = std::get_if<MetaEvent>(&r)) {
        start = m->start;
        end = m->end;
      } else {
        const auto& c = std::get<CompositeRecord>(r);
        start = c.span_start;
        end = c.span_end;
      }
      if (end < lo || start > hi) return false;
    }
    return true;
  };

  std::vector<LogRecord> out;
  if (seed) {
    for (std::size_t i : *seed)
      if (matches(archive_[i])) out.push_back(archive_[i]);
  } else {
    for (const LogRecord& r : archive_)
      if (matches(r)) out.push_back(r);
  }
  return out;
}

void record_packet(const std::vector<events::EventInstance>& events,
                   const MonitorConfig& config, LogManager& log) {
  std::vector<MetaEvent> metas;
  for (const auto& e : events)
    if (auto m = observe(e, config)) metas.push_back(std::move(*m));
  for (const MetaEvent& m : metas) log.append(m);
  for (const MergeRule& rule : config.merge_rules) {
    std::vector<MetaEvent> picked;
    for (const MetaEvent& m : metas)
      if (rule.members.count(m.kind)) picked.push_back(m);
    if (!picked.empty()) log.append(merge(picked, rule));
  }
}

}  // namespace netmon::monitor
