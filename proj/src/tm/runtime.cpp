#include "netmon/tm/runtime.hpp"

#include <utility>

#include "netmon/errors.hpp"

namespace netmon::rt {

namespace {

bool is_handler_stage(const tm::StaticModel& m, tm::ElementId id) {
  if (!m.is_stage(id)) return false;
  auto kind = m.stage_of(id).kind;
  return kind == tm::ActionKind::Process || kind == tm::ActionKind::Create;
}

}  // namespace

Attrs& HandlerContext::attrs() { return engine_->thing_attrs_mut(thing_); }

const tm::StaticModel& HandlerContext::model() const { return engine_->model(); }

void HandlerContext::note(const std::string& key, Value v) { (*notes_)[key] = std::move(v); }

const Attrs& HandlerContext::thing_attrs(ThingId id) const { return engine_->thing(id).attrs; }

Engine::Engine(const tm::StaticModel& model, RunOptions opts)
    : model_(model), opts_(opts), next_tick_(opts.initial_tick) {}

void Engine::register_handler(tm::ElementId stage, Handler handler) {
  if (!is_handler_stage(model_, stage))
    throw ConfigError("handler must attach to a Process or Create stage: " +
                      model_.describe(stage));
  if (handlers_.count(stage))
    throw ConfigError("duplicate handler for stage " + model_.describe(stage));
  handlers_[stage] = std::move(handler);
}

ThingId Engine::inject(tm::ElementId stage, Attrs attrs) {
  if (!model_.is_stage(stage))
    throw UsageError("injection target is not a stage: " + model_.describe(stage));
  auto kind = model_.stage_of(stage).kind;
  if (kind != tm::ActionKind::Transfer && kind != tm::ActionKind::Receive)
    throw UsageError("things enter at Transfer or Receive stages, not " +
                     model_.describe(stage));
  ThingId id = static_cast<ThingId>(things_.size());
  things_.push_back(Thing{id, std::move(attrs), tm::kNoElement, false});
  queue_.push_back(Pending{id, stage, std::nullopt, false});
  return id;
}

const Thing& Engine::thing(ThingId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= things_.size())
    throw UsageError("unknown thing id " + std::to_string(id));
  return things_[static_cast<std::size_t>(id)];
}

Attrs& Engine::thing_attrs_mut(ThingId id) {
  if (id < 0 || static_cast<std::size_t>(id) >= things_.size())
    throw UsageError("unknown thing id " + std::to_string(id));
  return things_[static_cast<std::size_t>(id)].attrs;
}

std::vector<ThingId> Engine::storage_contents(tm::ElementId storage) const {
  if (!model_.is_storage(storage))
    throw UsageError("not a storage: " + model_.describe(storage));
  std::vector<ThingId> out;
  for (const auto& t : things_)
    if (t.in_storage && t.location == storage) out.push_back(t.id);
  return out;
}

const std::vector<TraceEntry>& Engine::run_to_quiescence() {
  while (head_ < queue_.size()) {
    Pending p = queue_[head_++];
    step(p);
  }
  queue_.clear();
  head_ = 0;
  return trace_;
}

void Engine::step(const Pending& p) {
  auto& count = activation_counts_[p.thing];
  if (++count > opts_.tick_budget_per_thing)
    throw LivelockError("thing " + std::to_string(p.thing) + " exceeded its tick budget of " +
                        std::to_string(opts_.tick_budget_per_thing) + " at " +
                        model_.describe(p.target));

  Thing& subject = things_[static_cast<std::size_t>(p.thing)];

  if (model_.is_storage(p.target)) {
    // Landing in a storage consumes a tick; the thing then rests there.
    subject.location = p.target;
    subject.in_storage = true;
    trace_.push_back(
        TraceEntry{next_tick_++, EntryKind::StorageLanding, p.target, p.thing, p.via, {}});
    return;
  }

  if (!p.context) {
    subject.location = p.target;
    subject.in_storage = false;
  }

  trace_.push_back(TraceEntry{next_tick_++, EntryKind::Activation, p.target, p.thing, p.via, {}});
  TraceEntry& entry = trace_.back();

  HandlerResult result;
  auto it = handlers_.find(p.target);
  if (it != handlers_.end()) {
    HandlerContext ctx;
    ctx.engine_ = this;
    ctx.thing_ = p.thing;
    ctx.stage_ = p.target;
    ctx.via_ = p.via;
    ctx.context_ = p.context;
    ctx.tick_ = entry.tick;
    ctx.notes_ = &entry.notes;
    result = it->second(ctx);
  }

  // Spawned things take their first step before any triggers fired here, so
  // a payload reaches its storage ahead of the stage the trigger wakes next.
  for (auto& spawn : result.spawns) {
    if (!model_.is_stage(p.target) ||
        model_.stage_of(p.target).kind != tm::ActionKind::Create)
      throw UsageError("only Create stages spawn things: " + model_.describe(p.target));
    ThingId id = static_cast<ThingId>(things_.size());
    things_.push_back(Thing{id, std::move(spawn.attrs), p.target, false});
    const auto& exits = model_.flows_out(p.target);
    if (exits.size() == 1)
      queue_.push_back(Pending{id, model_.arrow_of(exits[0]).to, exits[0], false});
  }

  for (const auto& fire : result.triggers) {
    if (!model_.is_arrow(fire.arrow) ||
        model_.arrow_of(fire.arrow).kind != tm::ArrowKind::Trigger)
      throw UsageError("not a trigger arrow: " + model_.describe(fire.arrow));
    const auto& arrow = model_.arrow_of(fire.arrow);
    if (arrow.from != p.target)
      throw UsageError("handler at " + model_.describe(p.target) +
                       " fired a trigger it does not own: " + model_.describe(fire.arrow));
    ThingId who = fire.subject.value_or(p.thing);
    if (who < 0 || static_cast<std::size_t>(who) >= things_.size())
      throw UsageError("trigger subject does not exist: " + std::to_string(who));
    marks_.push_back(TriggerMark{entry.tick, fire.arrow, who});
    queue_.push_back(Pending{who, arrow.to, fire.arrow, !fire.move});
  }

  if (!p.context) schedule_exit(p.thing, p.target, result);
}

void Engine::schedule_exit(ThingId thing, tm::ElementId stage, const HandlerResult& result) {
  if (result.flow_choice) {
    tm::ElementId choice = *result.flow_choice;
    if (!model_.is_arrow(choice) || model_.arrow_of(choice).kind != tm::ArrowKind::Flow)
      throw UsageError("flow choice is not a flow arrow: " + model_.describe(choice));
    if (model_.arrow_of(choice).from != stage)
      throw UsageError("flow choice does not leave " + model_.describe(stage) + ": " +
                       model_.describe(choice));
    queue_.push_back(Pending{thing, model_.arrow_of(choice).to, choice, false});
    return;
  }
  if (result.halt) return;
  const auto& exits = model_.flows_out(stage);
  if (exits.size() == 1)
    queue_.push_back(Pending{thing, model_.arrow_of(exits[0]).to, exits[0], false});
  // Zero or several exits without a choice: the thing rests here.
}

}  // namespace netmon::rt
