#pragma once

// Reference interpreter used as the test oracle. It is a straight-line
// transcription of the pipeline's prose description: plain loops and ifs,
// no runtime, no event projector, and its own prefix arithmetic. Kept
// deliberately independent of the production implementation so the two can
// disagree when one of them is wrong.

#include <string>
#include <vector>

#include "netmon/lina/tables.hpp"

namespace refmodel {

struct RefOutcome {
  std::vector<int> kinds;   // event numbers in emission order
  std::string fate;         // "daq" | "flow_update" | "dropped"
  int drop_anchor{0};       // set when fate == "dropped"
  std::string drop_reason;  // likewise
};

RefOutcome reference_process(const netmon::lina::Packet& packet,
                             const netmon::lina::Tables& tables);

}  // namespace refmodel
