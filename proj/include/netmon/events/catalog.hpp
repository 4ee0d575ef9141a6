#pragma once

// The sixty-kind event catalog of the packet pipeline's dynamic model. Each
// kind names a region of the static model (a set of anchor labels) that is
// considered active while the event happens. Terminal kinds end a packet's
// journey; repeatable kinds belong to table-scan loops and are the only kinds
// allowed to recur within one packet's sequence.

#include <string>
#include <string_view>
#include <vector>

namespace netmon::events {

struct EventKind {
  int number{};                  // 1..60
  std::string_view description;  // catalog wording, fixed
  std::vector<int> region;       // anchor labels this event covers
  bool terminal{};
  bool repeatable{};
};

std::string event_id(int number);  // 7 -> "E7"

// Kinds in ascending order, E1..E60.
const std::vector<EventKind>& event_catalog();

// Throws UsageError outside 1..60.
const EventKind& event_kind(int number);

// Every anchor label 1..80 appears in exactly one row: either the event
// whose region it primarily belongs to, or event_number 0 for sub-event
// steps (machinery between events that carries no kind of its own).
struct AnchorRole {
  int anchor{};
  int event_number{};
  std::string_view role;
};

const std::vector<AnchorRole>& anchor_roles();

}  // namespace netmon::events
