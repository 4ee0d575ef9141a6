#pragma once

// Thinging-machine metamodel. A model is a forest of thimacs (thing+machine
// units), each owning stages of the five action kinds and storages, wired by
// solid flow arrows and dashed trigger arrows. Selected stages and arrows
// carry small integer anchor labels used by diagrams, event regions and
// diagnostics. Models are built once from a declarative spec and are
// immutable afterwards.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netmon::tm {

enum class ActionKind { Create, Process, Release, Transfer, Receive };
enum class ArrowKind { Flow, Trigger };

const char* to_string(ActionKind k);
const char* to_string(ArrowKind k);

using ElementId = std::int32_t;
inline constexpr ElementId kNoElement = -1;

struct Thimac {
  ElementId id{kNoElement};
  std::string name;
  std::optional<ElementId> parent;  // absent for roots
};

struct Stage {
  ElementId id{kNoElement};
  ElementId owner{kNoElement};  // thimac
  ActionKind kind{ActionKind::Process};
  std::optional<int> anchor;
  std::string label;  // unique across stages and storages
};

struct Storage {
  ElementId id{kNoElement};
  ElementId owner{kNoElement};
  std::string name;  // shares the stage label namespace
};

struct Arrow {
  ElementId id{kNoElement};
  ArrowKind kind{ArrowKind::Flow};
  ElementId from{kNoElement};  // stage or storage
  ElementId to{kNoElement};
  std::optional<int> anchor;
};

// --- declarative input ------------------------------------------------------

struct ThimacSpec {
  std::string name;
  std::string parent;  // empty for roots
};
struct StageSpec {
  std::string label;
  std::string thimac;
  ActionKind kind{ActionKind::Process};
  std::optional<int> anchor;
};
struct StorageSpec {
  std::string name;
  std::string thimac;
};
struct ArrowSpec {
  ArrowKind kind{ArrowKind::Flow};
  std::string from;  // stage label or storage name
  std::string to;
  std::optional<int> anchor;
};

struct ModelSpec {
  std::string name;
  std::vector<ThimacSpec> thimacs;
  std::vector<StageSpec> stages;
  std::vector<StorageSpec> storages;
  std::vector<ArrowSpec> arrows;
};

// --- validation output ------------------------------------------------------

struct Violation {
  std::string code;  // e.g. "flow-adjacency", "trigger-origin"
  ElementId element{kNoElement};
  std::string message;
};

// --- built model -------------------------------------------------------------

class StaticModel {
 public:
  enum class ElementType { Thimac, Stage, Storage, Arrow };

  std::string name;
  std::vector<Thimac> thimacs;
  std::vector<Stage> stages;
  std::vector<Storage> storages;
  std::vector<Arrow> arrows;

  std::size_t element_count() const { return by_id_.size(); }
  ElementType element_type(ElementId id) const;

  bool is_stage(ElementId id) const;
  bool is_storage(ElementId id) const;
  bool is_arrow(ElementId id) const;
  bool is_thimac(ElementId id) const;

  const Stage& stage_of(ElementId id) const;
  const Storage& storage_of(ElementId id) const;
  const Arrow& arrow_of(ElementId id) const;
  const Thimac& thimac_of(ElementId id) const;

  // Owning thimac of a stage or storage.
  ElementId owner_of(ElementId node) const;

  // Anchor labels are unique across stages and arrows.
  std::optional<ElementId> find_anchor(int label) const;
  ElementId anchor_lookup(int label) const;  // throws ModelError when absent

  std::optional<ElementId> find_node(std::string_view label) const;
  ElementId node(std::string_view label) const;  // throws ModelError when absent

  // Human-readable name of any element, for diagnostics.
  std::string describe(ElementId id) const;

  const std::vector<ElementId>& flows_out(ElementId node) const;
  const std::vector<ElementId>& flows_in(ElementId node) const;
  const std::vector<ElementId>& triggers_out(ElementId node) const;

 private:
  friend StaticModel build_model(const ModelSpec& spec);

  struct Ref {
    ElementType type;
    std::size_t index;
  };
  std::vector<Ref> by_id_;
  std::map<int, ElementId> anchors_;
  std::map<std::string, ElementId, std::less<>> node_names_;
  std::vector<std::vector<ElementId>> flows_out_;
  std::vector<std::vector<ElementId>> flows_in_;
  std::vector<std::vector<ElementId>> triggers_out_;

  void build_index();
};

// Builds and indexes a model. Element ids are dense integers assigned in
// declaration order: thimacs, then stages, then storages, then arrows.
// Throws ModelError on duplicate names, duplicate anchors, references to
// undeclared elements, or a parent cycle.
StaticModel build_model(const ModelSpec& spec);

// Structural checks; returns all violations found (empty means well formed).
// Rules:
//   flow-adjacency   every flow arrow joins a legal endpoint pair
//   trigger-origin   trigger arrows originate at Process or Create stages
//   transfer-dangling every Transfer stage has an arrow crossing a thimac
//                    boundary
std::vector<Violation> validate_model(const StaticModel& model);

// The legal flow endpoint pairs. Endpoints are stage action kinds or storage.
bool flow_pair_allowed(std::optional<ActionKind> from, std::optional<ActionKind> to);

// JSON round trip for the declarative spec document. The document holds
// arrays "thimacs", "stages", "storages", "arrows".
ModelSpec model_spec_from_json(std::string_view text);
std::string model_spec_to_json(const ModelSpec& spec);

}  // namespace netmon::tm
