#pragma once

// Loaders for the two input documents: the table config (one JSON object)
// and the packet trace (newline-delimited JSON, one packet per line).
// Errors carry the offending field path or line number.

#include <string_view>
#include <vector>

#include "netmon/lina/tables.hpp"

namespace netmon::lina {

// { "destinations": [...], "nat_table": [...], "routes": [...],
//   "prefilter": [...], "acl": [...] } — all sections optional.
Tables load_tables(std::string_view text);

// One line per packet:
// {"id", "outer": {"src","dst","proto"}, "inner"?, "payload": [..], "encrypted"}
std::vector<Packet> load_trace(std::string_view text);

}  // namespace netmon::lina
