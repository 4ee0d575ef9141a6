#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "netmon/errors.hpp"
#include "netmon/events/automaton.hpp"
#include "netmon/events/catalog.hpp"
#include "netmon/lina/model.hpp"
#include "netmon/lina/pipeline.hpp"
#include "generators.hpp"

namespace netmon {
namespace {

std::vector<events::EventInstance> as_seq(const std::vector<int>& kinds,
                                          const std::string& id = "p") {
  std::vector<events::EventInstance> out;
  std::int64_t seq = 0;
  for (int k : kinds) out.push_back({seq++, k, id, seq, seq, {}});
  return out;
}

const events::BehaviorAutomaton& chronology() {
  static const events::BehaviorAutomaton a = events::derive_automaton(
      lina::build_lina_model(), events::event_catalog());
  return a;
}

// The canonical for-self walk with a one-entry destination list.
const std::vector<int> kSelfWalk = {1, 2, 3, 4,  5,  6,  7, 8,
                                    9, 10, 11, 14, 15, 16, 17};

}  // namespace

TEST_CASE("catalog enumerates sixty kinds in ascending order") {
  const auto& cat = events::event_catalog();
  REQUIRE(cat.size() == 60u);
  for (std::size_t i = 0; i < cat.size(); ++i)
    CHECK(cat[i].number == static_cast<int>(i) + 1);
  CHECK(events::event_id(7) == "E7");
  CHECK(events::event_kind(16).description ==
        "The payload is defragmented and stored.");
  CHECK(std::string(events::event_kind(29).description).find(
            "not included in the global route table, and the packet is "
            "dropped") != std::string::npos);
  const auto& first = events::event_kind(1).region;
  CHECK(std::count(first.begin(), first.end(), 1) == 1);
  CHECK_THROWS_AS(events::event_kind(0), UsageError);
  CHECK_THROWS_AS(events::event_kind(61), UsageError);
}

TEST_CASE("terminal and repeatable flags match the catalog contract") {
  const std::set<int> terminal{17, 29, 40, 42, 52, 53, 54, 55, 56, 57, 58, 59, 60};
  std::set<int> repeatable;
  for (int base : {9, 20, 25, 36, 47})
    for (int k = base; k < base + 4; ++k) repeatable.insert(k);
  for (const auto& k : events::event_catalog()) {
    CHECK(k.terminal == (terminal.count(k.number) > 0));
    CHECK(k.repeatable == (repeatable.count(k.number) > 0));
  }
}

TEST_CASE("anchor roles cover every label exactly once") {
  const auto& roles = events::anchor_roles();
  REQUIRE(roles.size() == 80u);
  const std::set<int> sub_steps{11, 39, 40, 41, 56, 64, 65, 68};
  for (std::size_t i = 0; i < roles.size(); ++i) {
    const auto& r = roles[i];
    CHECK(r.anchor == static_cast<int>(i) + 1);
    if (sub_steps.count(r.anchor)) {
      CHECK(r.event_number == 0);
    } else {
      REQUIRE(r.event_number >= 1);
      const auto& region = events::event_kind(r.event_number).region;
      CHECK(std::count(region.begin(), region.end(), r.anchor) == 1);
    }
    CHECK_FALSE(r.role.empty());
  }
}

TEST_CASE("chronology accepts the canonical for-self walk") {
  const auto res = events::check_chronology(as_seq(kSelfWalk), chronology());
  CHECK(res.accepted);
}

TEST_CASE("chronology rejects defragmentation before payload retrieval") {
  auto kinds = kSelfWalk;
  std::swap(kinds[12], kinds[13]);  // E16 now precedes E15
  const auto res = events::check_chronology(as_seq(kinds), chronology());
  CHECK_FALSE(res.accepted);
  CHECK(res.offending == 12u);
}

TEST_CASE("chronology rejects a second terminal kind") {
  auto kinds = kSelfWalk;
  kinds.push_back(42);
  const auto res = events::check_chronology(as_seq(kinds), chronology());
  CHECK_FALSE(res.accepted);
  CHECK(res.offending == kSelfWalk.size());
}

TEST_CASE("chronology rejects the empty sequence at index zero") {
  const auto res = events::check_chronology({}, chronology());
  CHECK_FALSE(res.accepted);
  CHECK(res.offending == 0u);
}

TEST_CASE("chronology rejects a walk truncated before its terminal") {
  auto kinds = kSelfWalk;
  kinds.pop_back();
  const auto res = events::check_chronology(as_seq(kinds), chronology());
  CHECK_FALSE(res.accepted);
  CHECK(res.offending == kinds.size());
}

TEST_CASE("chronology over mixed packet ids is a usage error") {
  auto seq = as_seq(kSelfWalk, "a");
  seq[3].packet = "b";
  CHECK_THROWS_AS(events::check_chronology(seq, chronology()), UsageError);
}

TEST_CASE("terminal kinds only enter accepting dead ends") {
  const auto& a = chronology();
  for (const auto& s : a.states) {
    for (const auto& [kind, to] : s.next) {
      CHECK(kind >= 1);
      CHECK(kind <= 60);
      if (events::event_kind(kind).terminal) {
        CHECK(a.states[static_cast<std::size_t>(to)].accepting);
        CHECK(a.states[static_cast<std::size_t>(to)].next.empty());
      }
    }
  }
}

TEST_CASE("closed loop: simulator sequences pass the chronology check") {
  const auto& a = chronology();
  auto accepted = [&](const lina::PacketResult& r) {
    return events::check_chronology(r.events, a).accepted;
  };

  // The walks that end without a terminal kind lean on the accepting
  // comparison states: decrypt error and both implicit-deny shapes.
  {
    lina::Tables t;
    lina::Simulator sim(t);
    lina::Packet p;
    p.id = "enc";
    p.outer = {lina::parse_ipv4("192.0.2.9"), lina::parse_ipv4("10.0.0.5"), "tcp"};
    p.encrypted = true;
    CHECK(accepted(sim.process_packet(p)));
  }
  {
    lina::Tables t;
    t.prefilter = {{lina::parse_cidr("0.0.0.0/0"), lina::PrefilterAction::Analyze}};
    lina::Simulator sim(t);
    lina::Packet p;
    p.id = "nocl";
    p.outer = {lina::parse_ipv4("192.0.2.9"), lina::parse_ipv4("10.0.0.5"), "tcp"};
    CHECK(accepted(sim.process_packet(p)));

    t.acl.push_back({lina::parse_cidr("203.0.113.0/24"), lina::AclAction::Deny,
                     std::nullopt});
    lina::Simulator sim2(t);
    p.id = "miss";
    CHECK(accepted(sim2.process_packet(p)));
  }

  testgen::ScenarioGen gen(411);
  for (int round = 0; round < 40; ++round) {
    const lina::Tables t = gen.next_tables();
    lina::Simulator sim(t);
    for (int i = 0; i < 2; ++i) {
      const auto r = sim.process_packet(
          gen.next_packet("c" + std::to_string(round) + "-" + std::to_string(i)));
      INFO("walk ", round, "-", i);
      CHECK(accepted(r));
    }
  }
}

TEST_CASE("automaton export is directed-graph text with every kind") {
  const std::string dot = events::export_automaton(chronology());
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
  CHECK(dot.find("peripheries=2") != std::string::npos);
  for (int k = 1; k <= 60; ++k) {
    const std::string label = "label=\"" + events::event_id(k) + "\"";
    INFO("missing ", label);
    CHECK(dot.find(label) != std::string::npos);
  }
}

}  // namespace netmon
