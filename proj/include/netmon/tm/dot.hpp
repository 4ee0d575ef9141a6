#pragma once

#include <string>

#include "netmon/tm/model.hpp"

namespace netmon::tm {

// Renders the model as Graphviz text: one cluster per thimac (nested by
// parent), stages and storages as nodes, flow arrows solid, trigger arrows
// dashed. Anchor labels appear as "(n)" in node and edge labels.
// Requires a model with zero violations; otherwise throws ModelError listing
// every violation instead of producing a diagram.
std::string export_dot(const StaticModel& model);

}  // namespace netmon::tm
