#pragma once

// Discrete executor for static models. Things (identifiable tokens with
// attribute maps) move along flow arrows one hop per tick, driven by a single
// global FIFO queue; each pop is one activation and one tick. Handlers bound
// to Process and Create stages mutate attributes, choose among outgoing
// flows, spawn new things, and fire trigger arrows. A fired trigger enqueues
// its subject at the target stage, so the resulting activation lands on a
// later tick than the activation that fired it.
//
// Movement rules for the active thing after a stage activation:
//   * an explicit flow choice from the handler wins,
//   * otherwise a handler halt keeps the thing in place,
//   * otherwise a stage with exactly one outgoing flow advances the thing,
//   * otherwise (zero or several exits) the thing rests until triggered.
// Context-style trigger firings (move=false) run the target stage's handler
// on behalf of the subject without relocating it. Things that land in a
// storage stay there until a trigger pulls them out.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "netmon/tm/model.hpp"

namespace netmon::rt {

using Value = std::variant<std::int64_t, bool, std::string, std::vector<std::string>>;
using Attrs = std::map<std::string, Value>;

using ThingId = std::int64_t;

struct Thing {
  ThingId id{};
  Attrs attrs;
  tm::ElementId location{tm::kNoElement};  // stage or storage; kNoElement before first activation
  bool in_storage{false};
};

enum class EntryKind { Activation, StorageLanding };

struct TraceEntry {
  std::int64_t tick{};
  EntryKind kind{EntryKind::Activation};
  tm::ElementId element{tm::kNoElement};
  ThingId thing{};
  std::optional<tm::ElementId> via_arrow;
  Attrs notes;  // written by the handler that ran during this entry
};

// Trigger firings share the tick of the activation that fired them.
struct TriggerMark {
  std::int64_t tick{};
  tm::ElementId arrow{tm::kNoElement};
  ThingId subject{};
};

struct TriggerFire {
  tm::ElementId arrow{tm::kNoElement};
  std::optional<ThingId> subject;  // defaults to the active thing
  bool move{true};                 // false: run target in context, no relocation
};

struct SpawnSpec {
  Attrs attrs;
};

struct HandlerResult {
  std::optional<tm::ElementId> flow_choice;  // outgoing flow arrow id
  bool halt{false};
  std::vector<TriggerFire> triggers;
  std::vector<SpawnSpec> spawns;  // Create stages only
};

class Engine;

class HandlerContext {
 public:
  ThingId thing_id() const { return thing_; }
  Attrs& attrs();                              // active thing, mutable
  const Attrs& thing_attrs(ThingId id) const;  // any thing, read only
  tm::ElementId stage() const { return stage_; }
  std::optional<tm::ElementId> via_arrow() const { return via_; }
  bool is_context_activation() const { return context_; }
  std::int64_t tick() const { return tick_; }
  const tm::StaticModel& model() const;
  const Engine& engine() const { return *engine_; }

  // Attaches a note to the trace entry of this activation.
  void note(const std::string& key, Value v);

 private:
  friend class Engine;
  Engine* engine_{};
  ThingId thing_{};
  tm::ElementId stage_{tm::kNoElement};
  std::optional<tm::ElementId> via_;
  bool context_{};
  std::int64_t tick_{};
  Attrs* notes_{};
};

using Handler = std::function<HandlerResult(HandlerContext&)>;

struct RunOptions {
  std::int64_t tick_budget_per_thing{10000};
  std::int64_t initial_tick{0};
};

class Engine {
 public:
  explicit Engine(const tm::StaticModel& model, RunOptions opts = {});

  // Handlers attach to Process or Create stages only, at most one per stage.
  void register_handler(tm::ElementId stage, Handler handler);

  // Things enter at machine boundaries: Transfer or Receive stages.
  // The first injected thing activates at the initial tick.
  ThingId inject(tm::ElementId stage, Attrs attrs);

  // Drains the queue. Throws LivelockError when a thing exceeds its tick
  // budget. May be called again after further injections; ticks continue.
  const std::vector<TraceEntry>& run_to_quiescence();

  const std::vector<TraceEntry>& trace() const { return trace_; }
  const std::vector<TriggerMark>& trigger_marks() const { return marks_; }

  // Clock equals the number of tick-consuming trace entries plus the
  // initial tick offset.
  std::int64_t clock() const { return next_tick_; }

  const Thing& thing(ThingId id) const;
  std::size_t thing_count() const { return things_.size(); }
  // Id the next spawn or injection will receive. Deterministic, so a handler
  // may predict the id of a thing it is about to spawn.
  ThingId next_thing_id() const { return static_cast<ThingId>(things_.size()); }
  std::vector<ThingId> storage_contents(tm::ElementId storage) const;
  const tm::StaticModel& model() const { return model_; }

 private:
  friend class HandlerContext;

  struct Pending {
    ThingId thing{};
    tm::ElementId target{tm::kNoElement};
    std::optional<tm::ElementId> via;
    bool context{false};
  };

  Attrs& thing_attrs_mut(ThingId id);

  void step(const Pending& p);
  void schedule_exit(ThingId thing, tm::ElementId stage, const HandlerResult& result);

  const tm::StaticModel& model_;
  RunOptions opts_;
  std::map<tm::ElementId, Handler> handlers_;
  std::vector<Thing> things_;
  std::vector<Pending> queue_;  // FIFO; index head_ is the front
  std::size_t head_{0};
  std::vector<TraceEntry> trace_;
  std::vector<TriggerMark> marks_;
  std::int64_t next_tick_{0};
  std::map<ThingId, std::int64_t> activation_counts_;
};

}  // namespace netmon::rt
