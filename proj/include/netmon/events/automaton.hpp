#pragma once

// Behavioral chronology: a deterministic automaton over event kinds whose
// language is the per-packet sequences the pipeline can emit. Sequences are
// checked per packet; acceptance is decided at the final element.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "netmon/events/catalog.hpp"
#include "netmon/events/instance.hpp"
#include "netmon/tm/model.hpp"

namespace netmon::events {

struct AutomatonState {
  std::string name;
  bool accepting{false};
  std::map<int, int> next;  // event kind -> state index
};

struct BehaviorAutomaton {
  std::vector<AutomatonState> states;
  int initial{0};
};

// Reconstructs the chronology from the pipeline's control flow and the
// documented serialization order. Cross-checks every transition kind against
// the catalog and every region anchor against the model; throws ModelError
// when either disagrees.
BehaviorAutomaton derive_automaton(const tm::StaticModel& model,
                                   const std::vector<EventKind>& catalog);

struct ChronologyResult {
  bool accepted{false};
  // First offending index; equals the sequence length when every element
  // was consumed but the final state does not accept.
  std::size_t offending{0};
};

// Runs the automaton over the kinds in order. The empty sequence is rejected
// at index 0. Instances with differing packet ids are a UsageError.
ChronologyResult check_chronology(const std::vector<EventInstance>& seq,
                                  const BehaviorAutomaton& automaton);

// Directed-graph text (DOT) for documentation; accepting states are drawn
// with a double border, arcs carry the event ids.
std::string export_automaton(const BehaviorAutomaton& automaton);

}  // namespace netmon::events
