#pragma once

// Monitoring layer over the event stream: each watched event yields a
// meta-event carrying its timing, a severity and the value changes the
// handlers noted; merge rules fold one packet's meta-events into composite
// records; the log manager archives both, append-only.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "netmon/events/instance.hpp"

namespace netmon::monitor {

struct MergeRule {
  std::string name;
  std::set<int> members;  // event kinds
};

struct MonitorConfig {
  bool watch_all{true};
  std::set<int> watched;  // consulted when watch_all is false
  std::vector<MergeRule> merge_rules;

  bool watches(int kind) const { return watch_all || watched.count(kind) > 0; }
  // Merge-rule members must be watched kinds. Throws UsageError.
  void validate() const;
};

enum class Severity { Info, Warning, Alert };
const char* to_string(Severity s);

struct Change {
  rt::Value old_value;
  rt::Value new_value;
};

struct MetaEvent {
  std::string id;  // "M" + kind number
  int kind{};
  std::int64_t event_seq{};
  std::string packet;
  std::int64_t start{};
  std::int64_t end{};
  std::int64_t period{};  // end - start
  Severity severity{Severity::Info};
  std::map<std::string, Change> changes;
};

struct CompositeRecord {
  std::string name;
  std::string packet;
  std::vector<std::int64_t> members;  // event_seq of each member, in order
  std::int64_t span_start{};
  std::int64_t span_end{};
};

// One meta-event per watched instance; nothing for unwatched kinds.
// Severity: the route, prefilter and deny drops alert; a decrypt failure
// warns; everything else informs. Changes pair every attrs key ending in
// "_old" with its "_new" counterpart.
std::optional<MetaEvent> observe(const events::EventInstance& event,
                                 const MonitorConfig& config);

// Folds one packet's meta-events into a composite spanning them. Throws
// UsageError on empty input, mixed packet ids, or a member kind outside the
// rule.
CompositeRecord merge(const std::vector<MetaEvent>& metas, const MergeRule& rule);

using LogRecord = std::variant<MetaEvent, CompositeRecord>;

class LogManager {
 public:
  void append(MetaEvent m);
  void append(CompositeRecord c);

  const std::vector<LogRecord>& archive() const { return archive_; }
  std::size_t size() const { return archive_.size(); }

  struct Filter {
    std::optional<std::string> packet;
    std::optional<int> kind;  // matches meta-events only
    // Inclusive tick window; a record matches when its own span overlaps.
    std::optional<std::pair<std::int64_t, std::int64_t>> ticks;
  };

  // All records matching every supplied field, in archive order.
  std::vector<LogRecord> query(const Filter& filter) const;

 private:
  std::vector<LogRecord> archive_;
  std::map<std::string, std::vector<std::size_t>> by_packet_;
  std::map<int, std::vector<std::size_t>> by_kind_;
};

// Replays one packet's event sequence into the log: a meta-event per watched
// instance, then one composite per merge rule that collected any members.
void record_packet(const std::vector<events::EventInstance>& events,
                   const MonitorConfig& config, LogManager& log);

}  // namespace netmon::monitor
