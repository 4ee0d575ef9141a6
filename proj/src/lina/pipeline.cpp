#include "netmon/lina/pipeline.hpp"

#include <utility>

#include "netmon/errors.hpp"
#include "netmon/events/projector.hpp"
#include "netmon/lina/model.hpp"
#include "netmon/tm/runtime.hpp"

namespace netmon::lina {

namespace {

tm::ElementId node(const tm::StaticModel& m, std::string_view label) {
  const auto id = m.find_node(label);
  if (!id) throw ModelError("pipeline element missing: " + std::string(label));
  return *id;
}

tm::ElementId arrow_to(const tm::StaticModel& m,
                       const std::vector<tm::ElementId>& from_arrows,
                       tm::ElementId to, std::string_view what) {
  for (tm::ElementId a : from_arrows)
    if (m.arrow_of(a).to == to) return a;
  throw ModelError("pipeline arrow missing: " + std::string(what));
}

tm::ElementId trigger_between(const tm::StaticModel& m, std::string_view from,
                              std::string_view to) {
  return arrow_to(m, m.triggers_out(node(m, from)), node(m, to), from);
}

tm::ElementId flow_between(const tm::StaticModel& m, std::string_view from,
                           std::string_view to) {
  return arrow_to(m, m.flows_out(node(m, from)), node(m, to), from);
}

// Stages the handlers attach to and the arrows they fire, resolved once.
struct Hooks {
  tm::ElementId net_out, ing_proc, ctr_inc, ing_payload, ing_header, ing_dest,
      dc_cmp, dc_fetch, df_proc, df_new, vpn_proc, nat_proc, nat_header,
      nat_hproc, nat_dest, nat_cmp, natt_scan, natt_fetch, eg_cmp, eg_newdest,
      rt_scan, rt_fetch, pf_proc, pf_header, pf_hproc, pf_src, pf_cmp,
      pft_fetch, acl_proc, acl_header, acl_hproc, acl_src, acl_cmp, aclt_fetch,
      acl_trust, acl_monitor, acl_allow, acl_block, acl_block_reset, acl_iblock,
      acl_iblock_reset;
  tm::ElementId daq_in, fu_in, drop_route, drop_prefilter, drop_deny,
      drop_implicit, drop_vpn;
  tm::ElementId t5, t_counter_payload, t_payload_header, t_header_dest, t15,
      t16, t24, t_df, t_df_daq, t_df_vpn, t_vpn_drop, t_nat_header, t_nat_dest,
      t37, t38, t40, t_natt_fetch, t46, t47, t48, t_rt_fetch, t_eg_rel,
      t_pf_header, t_pf_src, t58, t59, t60, t62, t_acl_header, t_acl_src, t70,
      t_acl_trust, t_acl_monitor, t_acl_allow, t_acl_block, t_acl_block_reset,
      t_acl_iblock, t_acl_iblock_reset, t_acl_deny, t_acl_implicit;
  tm::ElementId f_trusted, f_permitted;

  explicit Hooks(const tm::StaticModel& m) {
    net_out = node(m, "net.out");
    ing_proc = node(m, "ing.proc");
    ctr_inc = node(m, "ctr.inc");
    ing_payload = node(m, "ing.payload");
    ing_header = node(m, "ing.header");
    ing_dest = node(m, "ing.dest");
    dc_cmp = node(m, "dc.cmp");
    dc_fetch = node(m, "dc.fetch");
    df_proc = node(m, "df.proc");
    df_new = node(m, "df.new");
    vpn_proc = node(m, "vpn.proc");
    nat_proc = node(m, "nat.proc");
    nat_header = node(m, "nat.header");
    nat_hproc = node(m, "nat.hproc");
    nat_dest = node(m, "nat.dest");
    nat_cmp = node(m, "nat.cmp");
    natt_scan = node(m, "natt.scan");
    natt_fetch = node(m, "natt.fetch");
    eg_cmp = node(m, "eg.cmp");
    eg_newdest = node(m, "eg.newdest");
    rt_scan = node(m, "rt.scan");
    rt_fetch = node(m, "rt.fetch");
    pf_proc = node(m, "pf.proc");
    pf_header = node(m, "pf.header");
    pf_hproc = node(m, "pf.hproc");
    pf_src = node(m, "pf.src");
    pf_cmp = node(m, "pf.cmp");
    pft_fetch = node(m, "pft.fetch");
    acl_proc = node(m, "acl.proc");
    acl_header = node(m, "acl.header");
    acl_hproc = node(m, "acl.hproc");
    acl_src = node(m, "acl.src");
    acl_cmp = node(m, "acl.cmp");
    aclt_fetch = node(m, "aclt.fetch");
    acl_trust = node(m, "acl.trust");
    acl_monitor = node(m, "acl.monitor");
    acl_allow = node(m, "acl.allow");
    acl_block = node(m, "acl.block");
    acl_block_reset = node(m, "acl.block-reset");
    acl_iblock = node(m, "acl.iblock");
    acl_iblock_reset = node(m, "acl.iblock-reset");
    daq_in = node(m, "daq.in");
    fu_in = node(m, "fu.in");
    drop_route = node(m, "drop.route");
    drop_prefilter = node(m, "drop.prefilter");
    drop_deny = node(m, "drop.deny");
    drop_implicit = node(m, "drop.implicit");
    drop_vpn = node(m, "drop.vpn");
    t5 = m.anchor_lookup(5);
    t_counter_payload = trigger_between(m, "ctr.inc", "ing.payload");
    t_payload_header = trigger_between(m, "ing.payload", "ing.header");
    t_header_dest = trigger_between(m, "ing.header", "ing.dest");
    t15 = m.anchor_lookup(15);
    t16 = m.anchor_lookup(16);
    t24 = m.anchor_lookup(24);
    t_df = trigger_between(m, "df.proc", "df.new");
    t_df_daq = trigger_between(m, "df.new", "ing.daq-rel");
    t_df_vpn = trigger_between(m, "df.new", "ing.vpn-rel");
    t_vpn_drop = trigger_between(m, "vpn.proc", "drop.vpn");
    t_nat_header = trigger_between(m, "nat.proc", "nat.header");
    t_nat_dest = trigger_between(m, "nat.hproc", "nat.dest");
    t37 = m.anchor_lookup(37);
    t38 = m.anchor_lookup(38);
    t40 = m.anchor_lookup(40);
    t_natt_fetch = trigger_between(m, "natt.scan", "natt.fetch");
    t46 = m.anchor_lookup(46);
    t47 = m.anchor_lookup(47);
    t48 = m.anchor_lookup(48);
    t_rt_fetch = trigger_between(m, "rt.scan", "rt.fetch");
    t_eg_rel = trigger_between(m, "eg.newdest", "eg.rel");
    t_pf_header = trigger_between(m, "pf.proc", "pf.header");
    t_pf_src = trigger_between(m, "pf.hproc", "pf.src");
    t58 = m.anchor_lookup(58);
    t59 = m.anchor_lookup(59);
    t60 = m.anchor_lookup(60);
    t62 = m.anchor_lookup(62);
    t_acl_header = trigger_between(m, "acl.proc", "acl.header");
    t_acl_src = trigger_between(m, "acl.hproc", "acl.src");
    t70 = m.anchor_lookup(70);
    t_acl_trust = trigger_between(m, "acl.cmp", "acl.trust");
    t_acl_monitor = trigger_between(m, "acl.cmp", "acl.monitor");
    t_acl_allow = trigger_between(m, "acl.cmp", "acl.allow");
    t_acl_block = trigger_between(m, "acl.cmp", "acl.block");
    t_acl_block_reset = trigger_between(m, "acl.cmp", "acl.block-reset");
    t_acl_iblock = trigger_between(m, "acl.cmp", "acl.iblock");
    t_acl_iblock_reset = trigger_between(m, "acl.cmp", "acl.iblock-reset");
    t_acl_deny = trigger_between(m, "acl.cmp", "drop.deny");
    t_acl_implicit = trigger_between(m, "acl.cmp", "drop.implicit");
    f_trusted = flow_between(m, "acl.trust", "acl.trust-rel");
    f_permitted = flow_between(m, "acl.trust", "acl.permit-rel");
  }
};

// Per-packet journey state shared by the handlers.
struct Walk {
  const Tables* tables{};
  std::int64_t* counter{};
  std::string id;
  Ipv4 dest{};
  Ipv4 source{};
  bool encrypted{};
  bool has_inner{};
  std::vector<std::string> fragments;
  std::string defragmented;
  bool for_self{};
  rt::ThingId packet{0};
  rt::ThingId payload{-1};
  std::size_t di{0}, ni{0}, ri{0}, pi{0}, ai{0};
};

const std::string& attr_str(const rt::Attrs& a, const char* key) {
  return std::get<std::string>(a.at(key));
}

std::int64_t attr_int(const rt::Attrs& a, const char* key) {
  return std::get<std::int64_t>(a.at(key));
}

rt::TriggerFire fire(tm::ElementId arrow) { return {arrow, std::nullopt, true}; }
rt::TriggerFire fire(tm::ElementId arrow, rt::ThingId subject) {
  return {arrow, subject, true};
}
rt::TriggerFire nudge(tm::ElementId arrow) { return {arrow, std::nullopt, false}; }
rt::TriggerFire nudge(tm::ElementId arrow, rt::ThingId subject) {
  return {arrow, subject, false};
}

void register_pipeline(rt::Engine& eng, const Hooks& h, Walk* w) {
  eng.register_handler(h.ing_proc, [&h](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.triggers.push_back(nudge(h.t5));
    return r;  // two exit flows: the packet rests until the branch is known
  });

  eng.register_handler(h.ctr_inc, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    const std::int64_t old = (*w->counter)++;
    ctx.note("counter_old", old);
    ctx.note("counter_new", old + 1);
    r.triggers.push_back(nudge(h.t_counter_payload));
    return r;
  });

  eng.register_handler(h.ing_payload, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    w->payload = ctx.engine().next_thing_id();
    r.spawns.push_back({rt::Attrs{{"role", std::string("payload")},
                                  {"fragments", w->fragments}}});
    r.triggers.push_back(nudge(h.t_payload_header));
    return r;
  });

  eng.register_handler(h.ing_header, [&h](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.triggers.push_back(nudge(h.t_header_dest));
    return r;
  });

  eng.register_handler(h.ing_dest, [w](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.spawns.push_back({rt::Attrs{{"role", std::string("dest")},
                                  {"value", to_string(w->dest)}}});
    return r;
  });

  eng.register_handler(h.dc_cmp, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    r.halt = true;
    const auto& list = w->tables->destinations;
    if (attr_str(ctx.attrs(), "role") == "dest") {
      if (list.empty()) {
        ctx.note("verdict", std::string("not-found"));
        r.triggers.push_back(fire(h.t16, w->payload));
      } else {
        r.triggers.push_back(nudge(h.t15));
      }
      return r;
    }
    const auto idx = static_cast<std::size_t>(attr_int(ctx.attrs(), "index"));
    const bool match = list[idx] == w->dest;
    ctx.note("index", static_cast<std::int64_t>(idx));
    ctx.note("verdict", std::string(match ? "found" : "differs"));
    if (match) {
      w->for_self = true;
      r.triggers.push_back(fire(h.t24, w->payload));
    } else if (idx + 1 < list.size()) {
      r.triggers.push_back(nudge(h.t15));
    } else {
      ctx.note("verdict", std::string("not-found"));
      r.triggers.push_back(fire(h.t16, w->payload));
    }
    return r;
  });

  eng.register_handler(h.dc_fetch, [w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    const std::size_t i = w->di++;
    const std::string value = to_string(w->tables->destinations[i]);
    ctx.note("index", static_cast<std::int64_t>(i));
    ctx.note("value", value);
    r.spawns.push_back({rt::Attrs{{"role", std::string("entry")},
                                  {"index", static_cast<std::int64_t>(i)},
                                  {"value", value}}});
    return r;
  });

  eng.register_handler(h.df_proc, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    w->defragmented = defragment(w->fragments);
    ctx.note("payload_old", w->fragments);
    ctx.note("payload_new", w->defragmented);
    r.triggers.push_back(nudge(h.t_df));
    return r;
  });

  eng.register_handler(h.df_new, [&h, w](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.spawns.push_back({rt::Attrs{{"role", std::string("payload")},
                                  {"data", w->defragmented}}});
    r.triggers.push_back(fire(w->for_self ? h.t_df_daq : h.t_df_vpn, w->packet));
    return r;
  });

  eng.register_handler(h.vpn_proc, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    if (w->encrypted && !w->has_inner) {
      ctx.note("error", "cannot decrypt packet " + w->id + ": no inner header");
      r.halt = true;  // suppress the advance toward vpn.rel
      r.triggers.push_back(fire(h.t_vpn_drop));
      return r;
    }
    if (w->encrypted) {
      w->encrypted = false;
      ctx.note("decrypted", true);
    }
    return r;  // single exit flow carries the packet onward
  });

  eng.register_handler(h.nat_proc, [&h](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.triggers.push_back(nudge(h.t_nat_header));
    return r;
  });

  eng.register_handler(h.nat_header, [](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.spawns.push_back({rt::Attrs{{"role", std::string("header")}}});
    return r;
  });

  eng.register_handler(h.nat_hproc, [&h, w](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.halt = true;
    r.triggers.push_back(nudge(h.t_nat_dest, w->packet));
    return r;
  });

  eng.register_handler(h.nat_dest, [w](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.spawns.push_back({rt::Attrs{{"role", std::string("dest")},
                                  {"value", to_string(w->dest)}}});
    return r;
  });

  eng.register_handler(h.nat_cmp, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    r.halt = true;
    const auto& nat = w->tables->nat;
    if (attr_str(ctx.attrs(), "role") == "dest") {
      if (nat.empty()) {
        ctx.note("verdict", std::string("not-found"));
        r.triggers.push_back(fire(h.t38, w->packet));
      } else {
        r.triggers.push_back(nudge(h.t37, w->packet));
      }
      return r;
    }
    const auto idx = static_cast<std::size_t>(attr_int(ctx.attrs(), "index"));
    const bool match = nat[idx] == w->dest;
    ctx.note("index", static_cast<std::int64_t>(idx));
    ctx.note("verdict", std::string(match ? "found" : "differs"));
    if (match) {
      r.triggers.push_back(fire(h.t40, w->packet));
    } else if (idx + 1 < nat.size()) {
      r.triggers.push_back(nudge(h.t37, w->packet));
    } else {
      ctx.note("verdict", std::string("not-found"));
      r.triggers.push_back(fire(h.t38, w->packet));
    }
    return r;
  });

  eng.register_handler(h.natt_scan, [&h](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.triggers.push_back(nudge(h.t_natt_fetch));
    return r;
  });

  eng.register_handler(h.natt_fetch, [w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    const std::size_t i = w->ni++;
    const std::string value = to_string(w->tables->nat[i]);
    ctx.note("index", static_cast<std::int64_t>(i));
    ctx.note("value", value);
    r.spawns.push_back({rt::Attrs{{"role", std::string("entry")},
                                  {"index", static_cast<std::int64_t>(i)},
                                  {"value", value}}});
    return r;
  });

  eng.register_handler(h.eg_cmp, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    r.halt = true;  // the depictive exit toward eg.rel is trigger-driven
    const auto& routes = w->tables->routes;
    if (attr_str(ctx.attrs(), "role") == "packet") {
      if (routes.empty()) {
        ctx.note("verdict", std::string("no-route"));
        r.triggers.push_back(fire(h.t46, w->packet));
      } else {
        r.triggers.push_back(nudge(h.t47, w->packet));
      }
      return r;
    }
    const auto idx = static_cast<std::size_t>(attr_int(ctx.attrs(), "index"));
    const bool match = routes[idx].match.contains(w->dest);
    ctx.note("index", static_cast<std::int64_t>(idx));
    ctx.note("verdict", std::string(match ? "routed" : "differs"));
    if (match) {
      r.triggers.push_back(nudge(h.t48, w->packet));
    } else if (idx + 1 < routes.size()) {
      r.triggers.push_back(nudge(h.t47, w->packet));
    } else {
      ctx.note("verdict", std::string("no-route"));
      r.triggers.push_back(fire(h.t46, w->packet));
    }
    return r;
  });

  eng.register_handler(h.rt_scan, [&h](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.triggers.push_back(nudge(h.t_rt_fetch));
    return r;
  });

  eng.register_handler(h.rt_fetch, [w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    const std::size_t i = w->ri++;
    const RouteEntry& e = w->tables->routes[i];
    ctx.note("index", static_cast<std::int64_t>(i));
    ctx.note("value", to_string(e.match));
    r.spawns.push_back({rt::Attrs{{"role", std::string("entry")},
                                  {"index", static_cast<std::int64_t>(i)},
                                  {"value", to_string(e.match)}}});
    return r;
  });

  eng.register_handler(h.eg_newdest, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    const std::size_t idx = w->ri - 1;  // the entry that matched
    const Ipv4 fresh = w->tables->routes[idx].new_destination;
    ctx.note("destination_old", to_string(w->dest));
    ctx.note("destination_new", to_string(fresh));
    w->dest = fresh;
    r.triggers.push_back(fire(h.t_eg_rel, w->packet));
    return r;
  });

  eng.register_handler(h.pf_proc, [&h](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.triggers.push_back(nudge(h.t_pf_header));
    return r;  // two exit flows: rests until the policy verdict moves it
  });

  eng.register_handler(h.pf_header, [](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.spawns.push_back({rt::Attrs{{"role", std::string("header")}}});
    return r;
  });

  eng.register_handler(h.pf_hproc, [&h, w](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.halt = true;
    r.triggers.push_back(nudge(h.t_pf_src, w->packet));
    return r;
  });

  eng.register_handler(h.pf_src, [w](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.spawns.push_back({rt::Attrs{{"role", std::string("source")},
                                  {"value", to_string(w->source)}}});
    return r;
  });

  eng.register_handler(h.pf_cmp, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    r.halt = true;
    const auto& table = w->tables->prefilter;
    if (attr_str(ctx.attrs(), "role") == "source") {
      if (table.empty()) {
        ctx.note("verdict", std::string("no-match"));
        r.triggers.push_back(fire(h.t58, w->packet));
      } else {
        r.triggers.push_back(nudge(h.t59, w->packet));
      }
      return r;
    }
    const auto idx = static_cast<std::size_t>(attr_int(ctx.attrs(), "index"));
    const PrefilterEntry& e = table[idx];
    const bool match = e.source_match.contains(w->source);
    ctx.note("index", static_cast<std::int64_t>(idx));
    if (match) {
      const bool fast = e.action == PrefilterAction::Fastpath;
      ctx.note("verdict", std::string(fast ? "fastpath" : "analyze"));
      r.triggers.push_back(fire(fast ? h.t60 : h.t62, w->packet));
    } else if (idx + 1 < table.size()) {
      ctx.note("verdict", std::string("differs"));
      r.triggers.push_back(nudge(h.t59, w->packet));
    } else {
      ctx.note("verdict", std::string("no-match"));
      r.triggers.push_back(fire(h.t58, w->packet));
    }
    return r;
  });

  eng.register_handler(h.pft_fetch, [w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    const std::size_t i = w->pi++;
    const PrefilterEntry& e = w->tables->prefilter[i];
    const std::string value = to_string(e.source_match);
    ctx.note("index", static_cast<std::int64_t>(i));
    ctx.note("value", value);
    r.spawns.push_back({rt::Attrs{{"role", std::string("entry")},
                                  {"index", static_cast<std::int64_t>(i)},
                                  {"value", value}}});
    return r;
  });

  eng.register_handler(h.acl_proc, [&h](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.triggers.push_back(nudge(h.t_acl_header));
    return r;  // no exit flows: the verdict trigger moves the packet
  });

  eng.register_handler(h.acl_header, [](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.spawns.push_back({rt::Attrs{{"role", std::string("header")}}});
    return r;
  });

  eng.register_handler(h.acl_hproc, [&h, w](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.halt = true;
    r.triggers.push_back(nudge(h.t_acl_src, w->packet));
    return r;
  });

  eng.register_handler(h.acl_src, [w](rt::HandlerContext&) {
    rt::HandlerResult r;
    r.spawns.push_back({rt::Attrs{{"role", std::string("source")},
                                  {"value", to_string(w->source)}}});
    return r;
  });

  eng.register_handler(h.acl_cmp, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    r.halt = true;
    const Acl& acl = w->tables->acl;
    if (attr_str(ctx.attrs(), "role") == "source") {
      if (acl.empty()) {
        ctx.note("verdict", std::string("implicit-deny"));
        r.triggers.push_back(fire(h.t_acl_implicit, w->packet));
      } else {
        r.triggers.push_back(nudge(h.t70, w->packet));
      }
      return r;
    }
    const auto idx = static_cast<std::size_t>(attr_int(ctx.attrs(), "index"));
    const AclRule& rule = acl[idx];
    const bool match = rule.source_match.contains(w->source);
    ctx.note("index", static_cast<std::int64_t>(idx));
    if (!match) {
      if (idx + 1 < acl.size()) {
        ctx.note("verdict", std::string("differs"));
        r.triggers.push_back(nudge(h.t70, w->packet));
      } else {
        ctx.note("verdict", std::string("implicit-deny"));
        r.triggers.push_back(fire(h.t_acl_implicit, w->packet));
      }
      return r;
    }
    ctx.note("verdict", std::string(to_string(rule.action)));
    switch (rule.action) {
      case AclAction::Trust:
        r.triggers.push_back(fire(h.t_acl_trust, w->packet));
        break;
      case AclAction::Monitor:
        r.triggers.push_back(fire(h.t_acl_monitor, w->packet));
        break;
      case AclAction::Allow:
        r.triggers.push_back(fire(h.t_acl_allow, w->packet));
        break;
      case AclAction::Block:
        r.triggers.push_back(fire(h.t_acl_block, w->packet));
        break;
      case AclAction::BlockWithReset:
        r.triggers.push_back(fire(h.t_acl_block_reset, w->packet));
        break;
      case AclAction::InteractiveBlock:
        r.triggers.push_back(fire(h.t_acl_iblock, w->packet));
        break;
      case AclAction::InteractiveBlockWithReset:
        r.triggers.push_back(fire(h.t_acl_iblock_reset, w->packet));
        break;
      case AclAction::Deny:
        r.triggers.push_back(fire(h.t_acl_deny, w->packet));
        break;
    }
    return r;
  });

  eng.register_handler(h.aclt_fetch, [w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    const std::size_t i = w->ai++;
    const AclRule& rule = w->tables->acl[i];
    const std::string value = to_string(rule.source_match);
    ctx.note("index", static_cast<std::int64_t>(i));
    ctx.note("value", value);
    ctx.note("action", std::string(to_string(rule.action)));
    r.spawns.push_back({rt::Attrs{{"role", std::string("entry")},
                                  {"index", static_cast<std::int64_t>(i)},
                                  {"value", value}}});
    return r;
  });

  eng.register_handler(h.acl_trust, [&h, w](rt::HandlerContext& ctx) {
    rt::HandlerResult r;
    const std::size_t idx = w->ai - 1;  // the rule that matched
    const bool trusted = w->tables->acl[idx].trust_mode == TrustMode::Trusted;
    ctx.note("trust_mode", std::string(trusted ? "trusted" : "permitted"));
    r.flow_choice = trusted ? h.f_trusted : h.f_permitted;
    return r;
  });

  auto plain_action = [&eng](tm::ElementId stage, const char* name) {
    eng.register_handler(stage, [name](rt::HandlerContext& ctx) {
      ctx.note("action", std::string(name));
      return rt::HandlerResult{};  // single exit flow toward the release
    });
  };
  plain_action(h.acl_monitor, "monitor");
  plain_action(h.acl_allow, "allow");
  plain_action(h.acl_block, "block");
  plain_action(h.acl_block_reset, "block_reset");
  plain_action(h.acl_iblock, "interactive_block");
  plain_action(h.acl_iblock_reset, "interactive_block_reset");
}

}  // namespace

const char* to_string(Fate f) {
  switch (f) {
    case Fate::ToDaq: return "to_daq";
    case Fate::ToFlowUpdate: return "to_flow_update";
    case Fate::Dropped: return "dropped";
  }
  return "?";
}

Simulator::Simulator(Tables tables, std::int64_t tick_budget_per_thing)
    : tables_(std::move(tables)),
      budget_(tick_budget_per_thing),
      model_(build_lina_model()) {}

PacketResult Simulator::process_packet(const Packet& packet) {
  const Hooks h(model_);

  Walk w;
  w.tables = &tables_;
  w.counter = &counter_;
  w.id = packet.id;
  w.dest = packet.outer.dst;
  w.source = packet.outer.src;
  w.encrypted = packet.encrypted;
  w.has_inner = packet.inner.has_value();
  w.fragments = packet.payload_fragments;

  rt::Engine eng(model_, rt::RunOptions{budget_, clock_});
  register_pipeline(eng, h, &w);

  w.packet = eng.inject(h.net_out, rt::Attrs{{"role", std::string("packet")},
                                             {"id", packet.id}});
  eng.run_to_quiescence();
  clock_ = eng.clock();

  PacketResult result;
  result.events = events::project_events(model_, eng, packet.id, seq_);
  seq_ += static_cast<std::int64_t>(result.events.size());

  const tm::ElementId rest = eng.thing(w.packet).location;
  Disposition& d = result.disposition;
  if (rest == h.daq_in) {
    d.fate = Fate::ToDaq;
  } else if (rest == h.fu_in) {
    d.fate = Fate::ToFlowUpdate;
  } else if (rest == h.drop_route) {
    d = {Fate::Dropped, 0, 46, "no-route"};
  } else if (rest == h.drop_prefilter) {
    d = {Fate::Dropped, 0, 58, "prefilter-no-match"};
  } else if (rest == h.drop_deny) {
    d = {Fate::Dropped, 0, 80, "deny"};
  } else if (rest == h.drop_vpn) {
    d = {Fate::Dropped, 0, 17, "decrypt-error"};
  } else if (rest == h.drop_implicit) {
    d = {Fate::Dropped, 0, 69, "implicit-deny"};
  } else {
    throw ModelError("packet " + packet.id + " came to rest at " +
                     model_.describe(rest));
  }

  // The journey's terminal event must agree with where the packet rests.
  const int last = result.events.empty() ? 0 : result.events.back().kind;
  if (d.fate == Fate::ToDaq) {
    if (last != 17 && last != 53 && !(last >= 54 && last <= 59))
      throw ModelError("packet " + packet.id + " reached daq after E" +
                       std::to_string(last));
    d.via_kind = last;
  } else if (d.fate == Fate::ToFlowUpdate) {
    if (last != 42 && last != 52)
      throw ModelError("packet " + packet.id + " reached flow update after E" +
                       std::to_string(last));
    d.via_kind = last;
  }
  return result;
}

}  // namespace netmon::lina
