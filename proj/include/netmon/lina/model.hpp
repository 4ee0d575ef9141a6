#pragma once

// The firewall pipeline as a static model: packet entry through the ingress
// interface, destination matching, payload defragmentation, VPN decrypt, NAT
// untranslation, egress route lookup, prefilter policy and ACL evaluation,
// with DAQ, flow-update and drop sinks. Stages and arrows carry the anchor
// labels 1..80 used by event regions and diagnostics.

#include "netmon/tm/model.hpp"

namespace netmon::lina {

// Builds and indexes the model. The result validates with zero violations
// and resolves every anchor label 1..80.
tm::StaticModel build_lina_model();

// The declarative spec behind build_lina_model, for export and inspection.
tm::ModelSpec lina_model_spec();

}  // namespace netmon::lina
