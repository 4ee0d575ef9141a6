#pragma once

// Rebuilds the per-packet event sequence from an engine's activation trace
// and trigger marks. The engine must have executed exactly one packet's
// journey over the pipeline model.

#include <cstdint>
#include <string>
#include <vector>

#include "netmon/events/instance.hpp"
#include "netmon/tm/model.hpp"
#include "netmon/tm/runtime.hpp"

namespace netmon::events {

std::vector<EventInstance> project_events(const tm::StaticModel& model,
                                          const rt::Engine& engine,
                                          const std::string& packet_id,
                                          std::int64_t seq_base);

}  // namespace netmon::events
