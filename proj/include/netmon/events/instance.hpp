#pragma once

#include <cstdint>
#include <string>

#include "netmon/tm/runtime.hpp"

namespace netmon::events {

// One observed occurrence of a catalog kind during a packet's journey.
// start/end are the ticks of the first and last activations inside the
// kind's region; instantaneous kinds have start == end.
struct EventInstance {
  std::int64_t seq{};
  int kind{};  // catalog number, 1..60
  std::string packet;
  std::int64_t start{};
  std::int64_t end{};
  rt::Attrs attrs;
};

}  // namespace netmon::events
