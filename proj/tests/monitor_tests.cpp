#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "netmon/errors.hpp"
#include "netmon/lina/pipeline.hpp"
#include "netmon/monitor/monitor.hpp"

namespace netmon {
namespace {

events::EventInstance instance(int kind, std::int64_t seq = 0,
                               std::int64_t start = 5, std::int64_t end = 9,
                               std::string packet = "p") {
  return {seq, kind, std::move(packet), start, end, {}};
}

monitor::MetaEvent meta_for(int kind, std::int64_t start, std::int64_t end,
                            std::string packet = "p", std::int64_t seq = 0) {
  const auto m = monitor::observe(instance(kind, seq, start, end, std::move(packet)),
                                  monitor::MonitorConfig{});
  REQUIRE(m.has_value());
  return *m;
}

lina::Packet plain_packet(std::string id) {
  lina::Packet p;
  p.id = std::move(id);
  p.outer = {lina::parse_ipv4("192.0.2.9"), lina::parse_ipv4("10.0.0.5"), "tcp"};
  p.payload_fragments = {"a b", "c"};
  return p;
}

}  // namespace

TEST_CASE("observe copies timing and derives the period") {
  const auto m = meta_for(4, 7, 12, "pkt", 3);
  CHECK(m.id == "M4");
  CHECK(m.kind == 4);
  CHECK(m.event_seq == 3);
  CHECK(m.packet == "pkt");
  CHECK(m.start == 7);
  CHECK(m.end == 12);
  CHECK(m.period == 5);
  CHECK(m.severity == monitor::Severity::Info);
}

TEST_CASE("observe respects the watch set") {
  monitor::MonitorConfig cfg;
  cfg.watch_all = false;
  cfg.watched = {4, 29};
  CHECK(monitor::observe(instance(4), cfg).has_value());
  CHECK(monitor::observe(instance(29), cfg).has_value());
  CHECK_FALSE(monitor::observe(instance(5), cfg).has_value());
}

TEST_CASE("severity: drops alert, decrypt failure warns, rest informs") {
  CHECK(meta_for(29, 0, 0).severity == monitor::Severity::Alert);
  CHECK(meta_for(40, 0, 0).severity == monitor::Severity::Alert);
  CHECK(meta_for(60, 0, 0).severity == monitor::Severity::Alert);
  CHECK(meta_for(17, 0, 0).severity == monitor::Severity::Info);

  auto broken = instance(18);
  broken.attrs["error"] = std::string("cannot decrypt packet p");
  const auto warned = monitor::observe(broken, monitor::MonitorConfig{});
  REQUIRE(warned.has_value());
  CHECK(warned->severity == monitor::Severity::Warning);
  CHECK(meta_for(18, 0, 0).severity == monitor::Severity::Info);

  CHECK(std::string(monitor::to_string(monitor::Severity::Alert)) == "alert");
}

TEST_CASE("observe pairs old and new attribute values into changes") {
  auto e = instance(4);
  e.attrs["counter_old"] = std::int64_t{41};
  e.attrs["counter_new"] = std::int64_t{42};
  e.attrs["index"] = std::int64_t{0};   // no partner, no change entry
  e.attrs["note_old"] = std::string("x");  // missing note_new, skipped
  const auto m = monitor::observe(e, monitor::MonitorConfig{});
  REQUIRE(m.has_value());
  REQUIRE(m->changes.size() == 1u);
  const auto& change = m->changes.at("counter");
  CHECK(std::get<std::int64_t>(change.old_value) == 41);
  CHECK(std::get<std::int64_t>(change.new_value) == 42);
}

TEST_CASE("merge spans its members and keeps their order") {
  monitor::MergeRule rule{"ingress", {3, 4, 5, 6}};
  std::vector<monitor::MetaEvent> metas = {
      meta_for(3, 4, 4, "p", 2), meta_for(4, 5, 6, "p", 3),
      meta_for(5, 8, 8, "p", 4), meta_for(6, 7, 7, "p", 5)};
  const auto c = monitor::merge(metas, rule);
  CHECK(c.name == "ingress");
  CHECK(c.packet == "p");
  CHECK(c.members == std::vector<std::int64_t>{2, 3, 4, 5});
  CHECK(c.span_start == 4);
  CHECK(c.span_end == 8);

  const auto single = monitor::merge({meta_for(4, 5, 6)}, rule);
  CHECK(single.span_start == 5);
  CHECK(single.span_end == 6);
}

TEST_CASE("merge rejects empty, mixed and stray input") {
  monitor::MergeRule rule{"ingress", {3, 4}};
  CHECK_THROWS_AS(monitor::merge({}, rule), UsageError);
  CHECK_THROWS_AS(
      monitor::merge({meta_for(3, 0, 1, "a"), meta_for(4, 2, 3, "b")}, rule),
      UsageError);
  CHECK_THROWS_AS(monitor::merge({meta_for(9, 0, 1)}, rule), UsageError);
}

TEST_CASE("config validation pins merge members to watched kinds") {
  monitor::MonitorConfig cfg;
  cfg.watch_all = false;
  cfg.watched = {3, 4};
  cfg.merge_rules.push_back({"pair", {3, 4}});
  cfg.validate();

  cfg.merge_rules.push_back({"wide", {3, 5}});
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg.merge_rules.pop_back();

  cfg.merge_rules.push_back({"", {3}});
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg.merge_rules.pop_back();

  cfg.merge_rules.push_back({"ghost", {61}});
  CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("log manager keeps archive order and answers filters") {
  monitor::LogManager log;
  CHECK(log.query({}).empty());

  log.append(meta_for(4, 5, 6, "a", 0));
  log.append(meta_for(29, 20, 20, "b", 1));
  monitor::MergeRule rule{"ingress", {4}};
  log.append(monitor::merge({meta_for(4, 5, 6, "a", 0)}, rule));
  REQUIRE(log.size() == 3u);

  const auto all = log.query({});
  REQUIRE(all.size() == 3u);
  CHECK(std::get<monitor::MetaEvent>(all[0]).id == "M4");
  CHECK(std::get<monitor::MetaEvent>(all[1]).id == "M29");
  CHECK(std::get<monitor::CompositeRecord>(all[2]).name == "ingress");

  monitor::LogManager::Filter by_packet;
  by_packet.packet = "a";
  CHECK(log.query(by_packet).size() == 2u);  // meta and composite

  monitor::LogManager::Filter by_kind;
  by_kind.kind = 4;
  const auto kinds = log.query(by_kind);
  REQUIRE(kinds.size() == 1u);  // composites carry no kind
  CHECK(std::get<monitor::MetaEvent>(kinds[0]).event_seq == 0);

  monitor::LogManager::Filter window;
  window.ticks = {{7, 19}};
  CHECK(log.query(window).empty());
  window.ticks = {{6, 20}};
  CHECK(log.query(window).size() == 3u);

  monitor::LogManager::Filter both;
  both.packet = "b";
  both.kind = 4;
  CHECK(log.query(both).empty());
}

TEST_CASE("queries extend only by suffix as the archive grows") {
  monitor::LogManager log;
  log.append(meta_for(4, 1, 2, "a", 0));
  monitor::LogManager::Filter f;
  f.packet = "a";
  const auto before = log.query(f);
  log.append(meta_for(5, 3, 3, "a", 1));
  const auto after = log.query(f);
  REQUIRE(after.size() == before.size() + 1);
  for (std::size_t i = 0; i < before.size(); ++i)
    CHECK(std::get<monitor::MetaEvent>(after[i]).event_seq ==
          std::get<monitor::MetaEvent>(before[i]).event_seq);
}

TEST_CASE("record_packet archives one meta per event plus composites") {
  lina::Tables t;
  t.destinations = {lina::parse_ipv4("10.0.0.5")};
  lina::Simulator sim(t);
  const auto r1 = sim.process_packet(plain_packet("a"));
  const auto r2 = sim.process_packet(plain_packet("b"));

  monitor::MonitorConfig cfg;
  cfg.merge_rules.push_back({"ingress", {3, 4, 5, 6}});
  cfg.validate();

  monitor::LogManager log;
  monitor::record_packet(r1.events, cfg, log);
  monitor::record_packet(r2.events, cfg, log);

  // Watched = all: a meta per event and one ingress composite per packet.
  REQUIRE(log.size() == r1.events.size() + r2.events.size() + 2);

  std::set<std::int64_t> seqs;
  int composites = 0;
  for (const auto& rec : log.archive()) {
    if (const auto* m = std::get_if<monitor::MetaEvent>(&rec)) {
      CHECK(m->period == m->end - m->start);
      CHECK(seqs.insert(m->event_seq).second);
    } else {
      const auto& c = std::get<monitor::CompositeRecord>(rec);
      ++composites;
      CHECK(c.members.size() == 4u);
    }
  }
  CHECK(composites == 2);

  // The counter change rides E4: 0 to 1 on the first packet, 1 to 2 next.
  monitor::LogManager::Filter f;
  f.kind = 4;
  const auto counters = log.query(f);
  REQUIRE(counters.size() == 2u);
  const auto& second = std::get<monitor::MetaEvent>(counters[1]);
  CHECK(std::get<std::int64_t>(second.changes.at("counter").old_value) == 1);
  CHECK(std::get<std::int64_t>(second.changes.at("counter").new_value) == 2);
}

}  // namespace netmon
