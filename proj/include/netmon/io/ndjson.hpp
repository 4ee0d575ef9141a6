#pragma once

// Newline-delimited JSON for the event and monitor logs. Writers keep a
// fixed key order and no wall-clock fields, so identical runs produce
// byte-identical files.

#include <iosfwd>
#include <string>
#include <vector>

#include "netmon/events/instance.hpp"
#include "netmon/monitor/monitor.hpp"

namespace netmon::io {

std::string event_line(const events::EventInstance& e);
std::string meta_line(const monitor::MetaEvent& m);
std::string composite_line(const monitor::CompositeRecord& c);

// Reads an event log written by event_line, one instance per non-empty
// line. Throws ConfigError naming the offending line.
std::vector<events::EventInstance> parse_event_log(std::istream& in);

}  // namespace netmon::io
