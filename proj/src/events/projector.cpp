#include "netmon/events/projector.hpp"

#include <optional>

#include "netmon/errors.hpp"

namespace netmon::events {

namespace {

// Elements the projection keys on. Stages are matched by label, arrows by
// anchor where the pipeline numbers them and by endpoint pair where it
// does not (the hop of a fetched table entry toward its comparison).
struct Ids {
  tm::ElementId net_out, lina_in, ing_in, ing_proc, ctr_inc, ing_header,
      ing_dest, ing_dest_xfer, dc_recv, dc_fetch, dc_cmp, payload_store,
      payload_rel, df_in, df_proc, daq_rel, daq_in, vpn_proc, nat_in, nat_cmp,
      natt_scan, natt_fetch, rt_scan, rt_fetch, eg_cmp, eg_newdest,
      nat_skip_rel, eg_rel, pf_in, pf_proc, pf_header, pf_src, pf_cmp,
      pft_fetch, fu_in, acl_in, acl_src, acl_cmp, aclt_fetch, acl_trust,
      acl_trust_rel, acl_permit_rel, acl_monitor, acl_allow, acl_block,
      acl_block_reset, acl_iblock, acl_iblock_reset, drop_deny;
  tm::ElementId a8, a18, a23, a26, a32, a35, a44, a61, a63;
  tm::ElementId dc_fetch_flow, pf_src_flow, pft_fetch_flow, acl_src_flow,
      aclt_fetch_flow;
};

tm::ElementId node(const tm::StaticModel& m, std::string_view label) {
  const auto id = m.find_node(label);
  if (!id) throw ModelError("pipeline element missing: " + std::string(label));
  return *id;
}

tm::ElementId flow_between(const tm::StaticModel& m, std::string_view from,
                           std::string_view to) {
  const tm::ElementId f = node(m, from), t = node(m, to);
  for (tm::ElementId a : m.flows_out(f))
    if (m.arrow_of(a).to == t) return a;
  throw ModelError("pipeline flow missing: " + std::string(from) + " -> " +
                   std::string(to));
}

Ids resolve(const tm::StaticModel& m) {
  Ids i{};
  i.net_out = node(m, "net.out");
  i.lina_in = node(m, "lina.in");
  i.ing_in = node(m, "ing.in");
  i.ing_proc = node(m, "ing.proc");
  i.ctr_inc = node(m, "ctr.inc");
  i.ing_header = node(m, "ing.header");
  i.ing_dest = node(m, "ing.dest");
  i.ing_dest_xfer = node(m, "ing.dest-xfer");
  i.dc_recv = node(m, "dc.recv");
  i.dc_fetch = node(m, "dc.fetch");
  i.dc_cmp = node(m, "dc.cmp");
  i.payload_store = node(m, "ing.payload-store");
  i.payload_rel = node(m, "ing.payload-rel");
  i.df_in = node(m, "df.in");
  i.df_proc = node(m, "df.proc");
  i.daq_rel = node(m, "ing.daq-rel");
  i.daq_in = node(m, "daq.in");
  i.vpn_proc = node(m, "vpn.proc");
  i.nat_in = node(m, "nat.in");
  i.nat_cmp = node(m, "nat.cmp");
  i.natt_scan = node(m, "natt.scan");
  i.natt_fetch = node(m, "natt.fetch");
  i.rt_scan = node(m, "rt.scan");
  i.rt_fetch = node(m, "rt.fetch");
  i.eg_cmp = node(m, "eg.cmp");
  i.eg_newdest = node(m, "eg.newdest");
  i.nat_skip_rel = node(m, "nat.skip-rel");
  i.eg_rel = node(m, "eg.rel");
  i.pf_in = node(m, "pf.in");
  i.pf_proc = node(m, "pf.proc");
  i.pf_header = node(m, "pf.header");
  i.pf_src = node(m, "pf.src");
  i.pf_cmp = node(m, "pf.cmp");
  i.pft_fetch = node(m, "pft.fetch");
  i.fu_in = node(m, "fu.in");
  i.acl_in = node(m, "acl.in");
  i.acl_src = node(m, "acl.src");
  i.acl_cmp = node(m, "acl.cmp");
  i.aclt_fetch = node(m, "aclt.fetch");
  i.acl_trust = node(m, "acl.trust");
  i.acl_trust_rel = node(m, "acl.trust-rel");
  i.acl_permit_rel = node(m, "acl.permit-rel");
  i.acl_monitor = node(m, "acl.monitor");
  i.acl_allow = node(m, "acl.allow");
  i.acl_block = node(m, "acl.block");
  i.acl_block_reset = node(m, "acl.block-reset");
  i.acl_iblock = node(m, "acl.iblock");
  i.acl_iblock_reset = node(m, "acl.iblock-reset");
  i.drop_deny = node(m, "drop.deny");
  i.a8 = m.anchor_lookup(8);
  i.a18 = m.anchor_lookup(18);
  i.a23 = m.anchor_lookup(23);
  i.a26 = m.anchor_lookup(26);
  i.a32 = m.anchor_lookup(32);
  i.a35 = m.anchor_lookup(35);
  i.a44 = m.anchor_lookup(44);
  i.a61 = m.anchor_lookup(61);
  i.a63 = m.anchor_lookup(63);
  i.dc_fetch_flow = flow_between(m, "dc.fetch", "dc.cmp");
  i.pf_src_flow = flow_between(m, "pf.src", "pf.cmp");
  i.pft_fetch_flow = flow_between(m, "pft.fetch", "pf.cmp");
  i.acl_src_flow = flow_between(m, "acl.src", "acl.cmp");
  i.aclt_fetch_flow = flow_between(m, "aclt.fetch", "acl.cmp");
  return i;
}

}  // namespace

std::vector<EventInstance> project_events(const tm::StaticModel& model,
                                          const rt::Engine& engine,
                                          const std::string& packet_id,
                                          std::int64_t seq_base) {
  const Ids ids = resolve(model);

  std::vector<EventInstance> out;
  auto emit = [&](int kind, std::int64_t start, std::int64_t end,
                  rt::Attrs attrs = {}) {
    out.push_back(EventInstance{seq_base + static_cast<std::int64_t>(out.size()),
                                kind, packet_id, start, end, std::move(attrs)});
  };

  // Span openings and loop bookkeeping. A scan's first retrieval is the
  // plain fetch kind; later retrievals are the "new … is retrieved" kind
  // starting at the refetch trigger.
  std::optional<std::int64_t> e2s, e4s, e8s, e15s, e16s, e17s, e19s, e32s, e33s;
  rt::Attrs e16attrs;
  std::optional<std::int64_t> scan15, scan37, scan47, scan59, scan70;
  std::optional<std::int64_t> nat_scan, rt_scan;
  int fetches_dest = 0, fetches_nat = 0, fetches_rt = 0, fetches_pf = 0,
      fetches_acl = 0;

  auto opened = [](std::optional<std::int64_t>& slot) {
    if (!slot) throw ModelError("activation trace out of order");
    const std::int64_t v = *slot;
    slot.reset();
    return v;
  };

  const auto& marks = engine.trigger_marks();
  std::size_t mi = 0;

  for (const rt::TraceEntry& e : engine.trace()) {
    const std::int64_t t = e.tick;
    const tm::ElementId el = e.element;
    const tm::ElementId via = e.via_arrow.value_or(tm::kNoElement);

    if (e.kind == rt::EntryKind::StorageLanding) {
      if (el == ids.payload_store && via == ids.a8) {
        emit(5, t, t);
      } else if (el == ids.payload_store && via == ids.a23) {
        emit(16, opened(e16s), t, e16attrs);
      }
    } else if (el == ids.net_out) {
      emit(1, t, t);
    } else if (el == ids.lina_in) {
      e2s = t;
    } else if (el == ids.ing_in) {
      emit(2, opened(e2s), t);
    } else if (el == ids.ing_proc) {
      emit(3, t, t, e.notes);
    } else if (el == ids.ctr_inc) {
      emit(4, opened(e4s), t, e.notes);
    } else if (el == ids.ing_header) {
      emit(6, t, t);
    } else if (el == ids.ing_dest) {
      emit(7, t, t);
    } else if (el == ids.ing_dest_xfer) {
      e8s = t;
    } else if (el == ids.dc_recv) {
      emit(8, opened(e8s), t);
    } else if (el == ids.dc_fetch) {
      if (++fetches_dest == 1)
        emit(9, t, t, e.notes);
      else
        emit(12, opened(scan15), t, e.notes);
    } else if (el == ids.dc_cmp && via == ids.dc_fetch_flow) {
      emit(10, t, t);
      emit(11, t, t, e.notes);
    } else if (el == ids.payload_rel) {
      e15s = t;
    } else if (el == ids.df_in) {
      emit(15, opened(e15s), t);
    } else if (el == ids.df_proc) {
      e16s = t;
      e16attrs = e.notes;
    } else if (el == ids.daq_rel) {
      e17s = t;
    } else if (el == ids.daq_in && via == ids.a26) {
      emit(17, opened(e17s), t);
    } else if (el == ids.vpn_proc) {
      emit(18, t, t, e.notes);
    } else if (el == ids.nat_in && via == ids.a18) {
      e19s = t;
    } else if (el == ids.nat_cmp && via == ids.a32) {
      emit(19, opened(e19s), t);
    } else if (el == ids.natt_scan) {
      nat_scan = t;
    } else if (el == ids.natt_fetch) {
      if (++fetches_nat == 1)
        emit(20, opened(nat_scan), t, e.notes);
      else
        emit(23, opened(scan37), t, e.notes);
    } else if (el == ids.nat_cmp && via == ids.a35) {
      emit(21, t, t);
      emit(22, t, t, e.notes);
    } else if (el == ids.rt_scan) {
      rt_scan = t;
    } else if (el == ids.rt_fetch) {
      if (++fetches_rt == 1)
        emit(25, opened(rt_scan), t, e.notes);
      else
        emit(28, opened(scan47), t, e.notes);
    } else if (el == ids.eg_cmp && via == ids.a44) {
      emit(26, t, t);
      emit(27, t, t, e.notes);
    } else if (el == ids.eg_newdest) {
      emit(31, t, t, e.notes);
    } else if (el == ids.nat_skip_rel || el == ids.eg_rel) {
      e32s = t;
    } else if (el == ids.pf_in) {
      emit(32, opened(e32s), t);
    } else if (el == ids.pf_proc) {
      e33s = t;
    } else if (el == ids.pf_header) {
      emit(33, opened(e33s), t);
    } else if (el == ids.pf_src) {
      emit(34, t, t);
    } else if (el == ids.pf_cmp && via == ids.pf_src_flow) {
      emit(35, t, t);
    } else if (el == ids.pft_fetch) {
      if (++fetches_pf == 1)
        emit(36, t, t, e.notes);
      else
        emit(39, opened(scan59), t, e.notes);
    } else if (el == ids.pf_cmp && via == ids.pft_fetch_flow) {
      emit(37, t, t);
      emit(38, t, t, e.notes);
    } else if (el == ids.fu_in && via == ids.a61) {
      emit(42, t, t);
    } else if (el == ids.acl_in && via == ids.a63) {
      emit(44, t, t);
    } else if (el == ids.acl_src) {
      emit(45, t, t);
    } else if (el == ids.acl_cmp && via == ids.acl_src_flow) {
      emit(46, t, t);
    } else if (el == ids.aclt_fetch) {
      if (++fetches_acl == 1)
        emit(47, t, t, e.notes);
      else
        emit(50, opened(scan70), t, e.notes);
    } else if (el == ids.acl_cmp && via == ids.aclt_fetch_flow) {
      emit(48, t, t);
      emit(49, t, t, e.notes);
    } else if (el == ids.acl_trust) {
      emit(51, t, t, e.notes);
    } else if (el == ids.acl_trust_rel) {
      emit(52, t, t);
    } else if (el == ids.acl_permit_rel) {
      emit(53, t, t);
    } else if (el == ids.acl_monitor) {
      emit(54, t, t, e.notes);
    } else if (el == ids.acl_allow) {
      emit(55, t, t, e.notes);
    } else if (el == ids.acl_block) {
      emit(56, t, t, e.notes);
    } else if (el == ids.acl_block_reset) {
      emit(57, t, t, e.notes);
    } else if (el == ids.acl_iblock) {
      emit(58, t, t, e.notes);
    } else if (el == ids.acl_iblock_reset) {
      emit(59, t, t, e.notes);
    } else if (el == ids.drop_deny) {
      emit(60, t, t);
    }

    for (; mi < marks.size() && marks[mi].tick == t; ++mi) {
      const auto anchor = model.arrow_of(marks[mi].arrow).anchor;
      if (!anchor) continue;  // machinery trigger between events
      switch (*anchor) {
        case 5: e4s = t; break;
        case 15: scan15 = t; break;
        case 16: emit(13, t, t, e.notes); break;
        case 24: emit(14, t, t, e.notes); break;
        case 37: scan37 = t; break;
        case 38: emit(24, t, t, e.notes); break;
        case 40: break;  // positive NAT verdict carries no kind of its own
        case 46: emit(29, t, t, e.notes); break;
        case 47: scan47 = t; break;
        case 48: emit(30, t, t, e.notes); break;
        case 58: emit(40, t, t, e.notes); break;
        case 59: scan59 = t; break;
        case 60: emit(41, t, t, e.notes); break;
        case 62: emit(43, t, t, e.notes); break;
        case 70: scan70 = t; break;
        default: break;
      }
    }
  }
  return out;
}

}  // namespace netmon::events
