#pragma once

// Drives packets through the pipeline model on the runtime engine and
// projects each journey into its event sequence. One engine per packet;
// the tick clock, the ingress counter and the event sequence numbers
// carry across packets of the same simulator.

#include <cstdint>
#include <string>
#include <vector>

#include "netmon/events/instance.hpp"
#include "netmon/lina/tables.hpp"
#include "netmon/tm/model.hpp"

namespace netmon::lina {

enum class Fate { ToDaq, ToFlowUpdate, Dropped };

struct Disposition {
  Fate fate{Fate::Dropped};
  int via_kind{0};     // terminal event kind for ToDaq / ToFlowUpdate
  int drop_anchor{0};  // where a dropped packet left the pipeline
  std::string drop_reason;
};

struct PacketResult {
  Disposition disposition;
  std::vector<events::EventInstance> events;
};

const char* to_string(Fate f);

class Simulator {
 public:
  explicit Simulator(Tables tables, std::int64_t tick_budget_per_thing = 10000);

  // Runs one packet to rest and returns its disposition plus event sequence.
  // Throws LivelockError when the packet exceeds the tick budget and
  // ModelError when the journey ends somewhere no packet should rest.
  PacketResult process_packet(const Packet& packet);

  const tm::StaticModel& model() const { return model_; }
  const Tables& tables() const { return tables_; }
  std::int64_t counter() const { return counter_; }
  std::int64_t clock() const { return clock_; }
  std::int64_t events_emitted() const { return seq_; }

 private:
  Tables tables_;
  std::int64_t budget_;
  tm::StaticModel model_;
  std::int64_t counter_{0};
  std::int64_t clock_{0};
  std::int64_t seq_{0};
};

}  // namespace netmon::lina
