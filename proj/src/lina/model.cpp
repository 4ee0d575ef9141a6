#include "netmon/lina/model.hpp"

namespace netmon::lina {

namespace {

using tm::ActionKind;
using tm::ArrowKind;

constexpr auto C = ActionKind::Create;
constexpr auto P = ActionKind::Process;
constexpr auto R = ActionKind::Release;
constexpr auto T = ActionKind::Transfer;
constexpr auto V = ActionKind::Receive;

constexpr auto F = ArrowKind::Flow;
constexpr auto G = ArrowKind::Trigger;

constexpr std::optional<int> none = std::nullopt;

}  // namespace

tm::ModelSpec lina_model_spec() {
  tm::ModelSpec s;
  s.name = "lina";

  s.thimacs = {
      {"network", ""},
      {"lina", ""},
      {"ingress", "lina"},
      {"counter", "ingress"},
      {"destination-check", "ingress"},
      {"defragmentation", "lina"},
      {"vpn-decrypt", "lina"},
      {"nat", "lina"},
      {"nat-table", "nat"},
      {"egress", "lina"},
      {"route-table", "egress"},
      {"prefilter", "lina"},
      {"prefilter-table", "prefilter"},
      {"acl", "lina"},
      {"acl-table", "acl"},
      {"daq", ""},
      {"flow-update", ""},
      {"discard", "lina"},
  };

  s.stages = {
      {"net.out", "network", T, 1},
      {"lina.in", "lina", T, none},

      {"ing.in", "ingress", T, none},
      {"ing.recv", "ingress", V, none},
      {"ing.proc", "ingress", P, 4},
      {"ing.header", "ingress", C, 7},
      {"ing.payload", "ingress", C, none},
      {"ing.dest", "ingress", C, 9},
      {"ing.dest-rel", "ingress", R, none},
      {"ing.dest-xfer", "ingress", T, 10},
      {"ing.payload-rel", "ingress", R, 19},
      {"ing.daq-rel", "ingress", R, 25},
      {"ing.vpn-rel", "ingress", R, none},

      {"ctr.inc", "counter", P, 6},

      {"dc.recv", "destination-check", V, 12},
      {"dc.fetch", "destination-check", C, 13},
      {"dc.cmp", "destination-check", P, 14},

      {"df.in", "defragmentation", T, 20},
      {"df.recv", "defragmentation", V, none},
      {"df.proc", "defragmentation", P, 21},
      {"df.new", "defragmentation", C, 22},

      {"vpn.in", "vpn-decrypt", T, none},
      {"vpn.recv", "vpn-decrypt", V, none},
      {"vpn.proc", "vpn-decrypt", P, 17},
      {"vpn.rel", "vpn-decrypt", R, none},

      {"nat.in", "nat", T, none},
      {"nat.recv", "nat", V, 27},
      {"nat.proc", "nat", P, 28},
      {"nat.header", "nat", C, 29},
      {"nat.hproc", "nat", P, 30},
      {"nat.dest", "nat", C, 31},
      {"nat.cmp", "nat", P, 36},
      {"nat.skip-rel", "nat", R, none},
      {"nat.found-rel", "nat", R, none},

      {"natt.scan", "nat-table", P, 33},
      {"natt.fetch", "nat-table", C, 34},

      {"eg.in", "egress", T, none},
      {"eg.recv", "egress", V, 39},
      {"eg.cmp", "egress", P, 45},
      {"eg.newdest", "egress", C, 49},
      {"eg.rel", "egress", R, 50},

      {"rt.scan", "route-table", P, 42},
      {"rt.fetch", "route-table", C, 43},

      {"pf.in", "prefilter", T, none},
      {"pf.recv", "prefilter", V, none},
      {"pf.proc", "prefilter", P, 52},
      {"pf.header", "prefilter", C, 53},
      {"pf.hproc", "prefilter", P, none},
      {"pf.src", "prefilter", C, 54},
      {"pf.cmp", "prefilter", P, 57},
      {"pf.fast-rel", "prefilter", R, none},
      {"pf.analyze-rel", "prefilter", R, none},

      {"pft.fetch", "prefilter-table", C, 55},

      {"aclt.fetch", "acl-table", C, 67},

      {"acl.in", "acl", T, none},
      {"acl.recv", "acl", V, none},
      {"acl.proc", "acl", P, 64},
      {"acl.header", "acl", C, 65},
      {"acl.hproc", "acl", P, none},
      {"acl.src", "acl", C, 66},
      {"acl.cmp", "acl", P, 69},
      {"acl.trust", "acl", P, 71},
      {"acl.permit-rel", "acl", R, 72},
      {"acl.trust-rel", "acl", R, 73},
      {"acl.monitor", "acl", P, 74},
      {"acl.allow", "acl", P, 75},
      {"acl.block", "acl", P, 76},
      {"acl.block-reset", "acl", P, 77},
      {"acl.iblock", "acl", P, 78},
      {"acl.iblock-reset", "acl", P, 79},
      {"acl.daq-rel", "acl", R, none},

      {"daq.in", "daq", T, none},
      {"fu.in", "flow-update", T, none},

      {"drop.route", "discard", T, none},
      {"drop.prefilter", "discard", T, none},
      {"drop.deny", "discard", T, 80},
      {"drop.implicit", "discard", T, none},
      {"drop.vpn", "discard", T, none},
  };

  s.storages = {
      {"ctr.store", "counter"},
      {"ing.payload-store", "ingress"},
      {"dc.table", "destination-check"},
      {"natt.store", "nat-table"},
      {"rt.store", "route-table"},
      {"pft.store", "prefilter-table"},
      {"aclt.store", "acl-table"},
  };

  s.arrows = {
      // entry
      {F, "net.out", "lina.in", 2},
      {F, "lina.in", "ing.in", 3},
      {F, "ing.in", "ing.recv", none},
      {F, "ing.recv", "ing.proc", none},
      {G, "ing.proc", "ctr.inc", 5},
      {F, "ctr.inc", "ctr.store", none},
      {G, "ctr.inc", "ing.payload", none},
      {F, "ing.payload", "ing.payload-store", 8},
      {G, "ing.payload", "ing.header", none},
      {G, "ing.header", "ing.dest", none},
      {F, "ing.dest", "ing.dest-rel", none},
      {F, "ing.dest-rel", "ing.dest-xfer", none},
      {F, "ing.dest-xfer", "dc.recv", none},

      // destination comparison
      {F, "dc.recv", "dc.cmp", none},
      {F, "dc.table", "dc.cmp", 11},
      {G, "dc.cmp", "dc.fetch", 15},
      {F, "dc.fetch", "dc.cmp", none},
      {G, "dc.cmp", "ing.payload-rel", 16},  // not for self
      {G, "dc.cmp", "ing.payload-rel", 24},  // for self

      // defragmentation
      {F, "ing.payload-store", "ing.payload-rel", none},
      {F, "ing.payload-rel", "df.in", none},
      {F, "df.in", "df.recv", none},
      {F, "df.recv", "df.proc", none},
      {G, "df.proc", "df.new", none},
      {F, "df.new", "ing.payload-store", 23},
      {G, "df.new", "ing.daq-rel", none},
      {G, "df.new", "ing.vpn-rel", none},

      // the packet leaves ingress
      {F, "ing.proc", "ing.daq-rel", none},
      {F, "ing.proc", "ing.vpn-rel", none},
      {F, "ing.daq-rel", "daq.in", 26},
      {F, "ing.vpn-rel", "vpn.in", none},

      // vpn decrypt
      {F, "vpn.in", "vpn.recv", none},
      {F, "vpn.recv", "vpn.proc", none},
      {F, "vpn.proc", "vpn.rel", none},
      {G, "vpn.proc", "drop.vpn", none},
      {F, "vpn.rel", "nat.in", 18},

      // nat untranslation
      {F, "nat.in", "nat.recv", none},
      {F, "nat.recv", "nat.proc", none},
      {F, "nat.proc", "nat.skip-rel", none},
      {F, "nat.proc", "nat.found-rel", none},
      {G, "nat.proc", "nat.header", none},
      {F, "nat.header", "nat.hproc", none},
      {G, "nat.hproc", "nat.dest", none},
      {F, "nat.dest", "nat.cmp", 32},
      {F, "natt.store", "natt.scan", none},
      {G, "nat.cmp", "natt.scan", 37},
      {G, "natt.scan", "natt.fetch", none},
      {F, "natt.fetch", "nat.cmp", 35},
      {G, "nat.cmp", "nat.skip-rel", 38},
      {G, "nat.cmp", "nat.found-rel", 40},
      {F, "nat.skip-rel", "pf.in", none},
      {F, "nat.found-rel", "eg.in", none},

      // egress route lookup
      {F, "eg.in", "eg.recv", none},
      {F, "eg.recv", "eg.cmp", none},
      {F, "rt.store", "rt.scan", 41},
      {G, "eg.cmp", "rt.scan", 47},
      {G, "rt.scan", "rt.fetch", none},
      {F, "rt.fetch", "eg.cmp", 44},
      {G, "eg.cmp", "drop.route", 46},
      {G, "eg.cmp", "eg.newdest", 48},
      {G, "eg.newdest", "eg.rel", none},
      {F, "eg.cmp", "eg.rel", none},
      {F, "eg.rel", "pf.in", 51},

      // prefilter policy
      {F, "pf.in", "pf.recv", none},
      {F, "pf.recv", "pf.proc", none},
      {G, "pf.proc", "pf.header", none},
      {F, "pf.header", "pf.hproc", none},
      {G, "pf.hproc", "pf.src", none},
      {F, "pf.src", "pf.cmp", none},
      {F, "pft.store", "pf.cmp", 56},
      {G, "pf.cmp", "pft.fetch", 59},
      {F, "pft.fetch", "pf.cmp", none},
      {G, "pf.cmp", "drop.prefilter", 58},
      {G, "pf.cmp", "pf.fast-rel", 60},
      {G, "pf.cmp", "pf.analyze-rel", 62},
      {F, "pf.proc", "pf.fast-rel", none},
      {F, "pf.proc", "pf.analyze-rel", none},
      {F, "pf.fast-rel", "fu.in", 61},
      {F, "pf.analyze-rel", "acl.in", 63},

      // acl evaluation
      {F, "acl.in", "acl.recv", none},
      {F, "acl.recv", "acl.proc", none},
      {G, "acl.proc", "acl.header", none},
      {F, "acl.header", "acl.hproc", none},
      {G, "acl.hproc", "acl.src", none},
      {F, "acl.src", "acl.cmp", none},
      {F, "aclt.store", "acl.cmp", 68},
      {G, "acl.cmp", "aclt.fetch", 70},
      {F, "aclt.fetch", "acl.cmp", none},
      {G, "acl.cmp", "acl.trust", none},
      {G, "acl.cmp", "acl.monitor", none},
      {G, "acl.cmp", "acl.allow", none},
      {G, "acl.cmp", "acl.block", none},
      {G, "acl.cmp", "acl.block-reset", none},
      {G, "acl.cmp", "acl.iblock", none},
      {G, "acl.cmp", "acl.iblock-reset", none},
      {G, "acl.cmp", "drop.deny", none},
      {G, "acl.cmp", "drop.implicit", none},
      {F, "acl.trust", "acl.permit-rel", none},
      {F, "acl.trust", "acl.trust-rel", none},
      {F, "acl.permit-rel", "daq.in", none},
      {F, "acl.trust-rel", "fu.in", none},
      {F, "acl.monitor", "acl.daq-rel", none},
      {F, "acl.allow", "acl.daq-rel", none},
      {F, "acl.block", "acl.daq-rel", none},
      {F, "acl.block-reset", "acl.daq-rel", none},
      {F, "acl.iblock", "acl.daq-rel", none},
      {F, "acl.iblock-reset", "acl.daq-rel", none},
      {F, "acl.daq-rel", "daq.in", none},
  };
  return s;
}

tm::StaticModel build_lina_model() { return tm::build_model(lina_model_spec()); }

}  // namespace netmon::lina
