#include "netmon/events/automaton.hpp"

#include <set>
#include <sstream>

#include "netmon/errors.hpp"

namespace netmon::events {

namespace {

class Builder {
 public:
  int state(const std::string& name, bool accepting = false) {
    auto [it, fresh] = index_.try_emplace(name, static_cast<int>(states_.size()));
    if (fresh) states_.push_back({name, accepting, {}});
    return it->second;
  }

  void arc(int from, int kind, int to) {
    auto [it, fresh] = states_[static_cast<std::size_t>(from)].next.try_emplace(kind, to);
    if (!fresh) throw ModelError("duplicate transition for E" + std::to_string(kind));
    (void)it;
  }

  std::vector<AutomatonState> take() { return std::move(states_); }

 private:
  std::map<std::string, int> index_;
  std::vector<AutomatonState> states_;
};

}  // namespace

BehaviorAutomaton derive_automaton(const tm::StaticModel& model,
                                   const std::vector<EventKind>& catalog) {
  if (catalog.size() != 60)
    throw ModelError("chronology expects the sixty-kind catalog");
  for (const EventKind& k : catalog)
    for (int anchor : k.region)
      model.anchor_lookup(anchor);  // throws if the region names a ghost

  Builder b;
  auto chain = [&b](int from, std::initializer_list<int> kinds) {
    int at = from;
    for (int k : kinds) {
      const int to = b.state("after-E" + std::to_string(k));
      b.arc(at, k, to);
      at = to;
    }
    return at;
  };

  const int start = b.state("start");
  // Ingress is a straight line through the counter, header and payload
  // events up to the destination comparison.
  const int a8 = chain(start, {1, 2, 3, 4, 5, 6, 7, 8});

  // Destination list scan. A verdict event ends the loop: E14 for the
  // device's own traffic, E13 for everything else (also reached straight
  // from E8 when the list is empty).
  const int a9 = chain(a8, {9});
  const int a11 = chain(a9, {10, 11});
  const int a12 = b.state("after-E12");
  b.arc(a11, 12, a12);
  b.arc(a12, 10, b.state("after-E10"));
  const int a13 = b.state("after-E13");
  b.arc(a8, 13, a13);
  b.arc(a11, 13, a13);
  const int a14 = b.state("after-E14");
  b.arc(a11, 14, a14);

  // Both verdicts pass defragmentation, in separate lanes: the for-self
  // branch ends at the DAQ handoff, the other continues to decrypt.
  const int t17 = b.state("daq-after-E17", true);
  const int self15 = b.state("self-after-E15");
  const int self16 = b.state("self-after-E16");
  b.arc(a14, 15, self15);
  b.arc(self15, 16, self16);
  b.arc(self16, 17, t17);
  // A packet that claims encryption with nothing inside ends its journey at
  // E18, so the decrypt state accepts.
  const int a18 = b.state("after-E18", true);
  b.arc(chain(a13, {15, 16}), 18, a18);

  // NAT scan. E24 (not in the table) skips egress entirely; a found entry
  // leads to the route scan with no event of its own.
  const int a19 = chain(a18, {19});
  const int a22 = chain(a19, {20, 21, 22});
  const int a23 = b.state("after-E23");
  b.arc(a22, 23, a23);
  b.arc(a23, 21, b.state("after-E21"));
  const int a24 = b.state("after-E24");
  b.arc(a19, 24, a24);
  b.arc(a22, 24, a24);

  // Route scan. No route is a terminal drop; a hit rewrites the
  // destination (E30, E31) and releases toward the prefilter.
  const int t29 = b.state("dropped-after-E29", true);
  b.arc(a22, 29, t29);
  const int a27 = chain(chain(a22, {25}), {26, 27});
  const int a28 = b.state("after-E28");
  b.arc(a27, 28, a28);
  b.arc(a28, 26, b.state("after-E26"));
  b.arc(a27, 29, t29);
  const int a31 = chain(a27, {30, 31});

  // Prefilter scan; fastpath ends at the flow update, analyze continues to
  // the ACL, no match is a terminal drop.
  const int a32 = b.state("after-E32");
  b.arc(a24, 32, a32);
  b.arc(a31, 32, a32);
  const int a35 = chain(a32, {33, 34, 35});
  const int t40 = b.state("dropped-after-E40", true);
  b.arc(a35, 40, t40);
  const int a38 = chain(a35, {36, 37, 38});
  const int a39 = b.state("after-E39");
  b.arc(a38, 39, a39);
  b.arc(a39, 37, b.state("after-E37"));
  b.arc(a38, 40, t40);
  const int t42 = b.state("flow-update-after-E42", true);
  b.arc(chain(a38, {41}), 42, t42);

  // ACL evaluation. Exhaustion (and the empty list) drops with no event of
  // its own, so the comparison states accept; every explicit verdict is
  // terminal.
  const int a46 = b.state("after-E46", true);
  b.arc(chain(chain(a38, {43}), {44, 45}), 46, a46);
  const int a49 = b.state("after-E49", true);
  b.arc(chain(a46, {47, 48}), 49, a49);
  const int a50 = b.state("after-E50");
  b.arc(a49, 50, a50);
  b.arc(a50, 48, b.state("after-E48"));
  const int a51 = b.state("after-E51");
  b.arc(a49, 51, a51);
  b.arc(a51, 52, b.state("flow-update-after-E52", true));
  b.arc(a51, 53, b.state("daq-after-E53", true));
  for (int k = 54; k <= 59; ++k)
    b.arc(a49, k, b.state("daq-after-E" + std::to_string(k), true));
  b.arc(a49, 60, b.state("dropped-after-E60", true));

  BehaviorAutomaton out{b.take(), start};

  // Every arc label must be a cataloged kind, and terminal kinds may only
  // label arcs into accepting dead ends.
  std::set<int> terminal;
  for (const EventKind& k : catalog)
    if (k.terminal) terminal.insert(k.number);
  for (const AutomatonState& s : out.states) {
    for (const auto& [kind, to] : s.next) {
      if (kind < 1 || kind > 60)
        throw ModelError("transition on unknown kind " + std::to_string(kind));
      const AutomatonState& target = out.states[static_cast<std::size_t>(to)];
      if (terminal.count(kind) && !(target.accepting && target.next.empty()))
        throw ModelError("terminal kind E" + std::to_string(kind) +
                         " must end the walk");
    }
  }
  return out;
}

ChronologyResult check_chronology(const std::vector<EventInstance>& seq,
                                  const BehaviorAutomaton& automaton) {
  if (seq.empty()) return {false, 0};
  for (const EventInstance& e : seq)
    if (e.packet != seq.front().packet)
      throw UsageError("chronology check across packets: '" +
                       seq.front().packet + "' and '" + e.packet + "'");
  int at = automaton.initial;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& next = automaton.states[static_cast<std::size_t>(at)].next;
    const auto it = next.find(seq[i].kind);
    if (it == next.end()) return {false, i};
    at = it->second;
  }
  if (!automaton.states[static_cast<std::size_t>(at)].accepting)
    return {false, seq.size()};
  return {true, seq.size()};
}

std::string export_automaton(const BehaviorAutomaton& automaton) {
  std::ostringstream os;
  os << "digraph chronology {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  for (std::size_t i = 0; i < automaton.states.size(); ++i) {
    const AutomatonState& s = automaton.states[i];
    os << "  s" << i << " [label=\"" << s.name << '"';
    if (s.accepting) os << ", peripheries=2";
    os << "];\n";
  }
  os << "  entry [shape=point];\n  entry -> s" << automaton.initial << ";\n";
  for (std::size_t i = 0; i < automaton.states.size(); ++i)
    for (const auto& [kind, to] : automaton.states[i].next)
      os << "  s" << i << " -> s" << to << " [label=\"" << event_id(kind)
         << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace netmon::events
