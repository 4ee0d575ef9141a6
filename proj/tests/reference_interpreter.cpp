#include "reference_interpreter.hpp"

namespace refmodel {

namespace {

using netmon::lina::Ipv4;
using netmon::lina::Packet;
using netmon::lina::Tables;

// Own mask arithmetic, not the production Cidr::contains.
bool prefix_has(Ipv4 base, int length, Ipv4 addr) {
  if (length <= 0) return true;
  std::uint32_t diff = base.value ^ addr.value;
  return (diff >> (32 - length)) == 0;
}

}  // namespace

RefOutcome reference_process(const Packet& packet, const Tables& tables) {
  RefOutcome out;
  auto emit = [&](int k) { out.kinds.push_back(k); };
  auto drop = [&](int anchor, const char* reason) {
    out.fate = "dropped";
    out.drop_anchor = anchor;
    out.drop_reason = reason;
  };

  // Packet entry: arrival, flow to ingress, processing, counter, payload,
  // header, destination, destination handed to the comparison.
  for (int k : {1, 2, 3, 4, 5, 6, 7, 8}) emit(k);

  // Destination list: fetch one entry at a time, compare, refetch while the
  // list has more; same -> for-self, end of list -> not for self.
  bool for_self = false;
  if (tables.destinations.empty()) {
    emit(13);
  } else {
    for (std::size_t i = 0; i < tables.destinations.size(); ++i) {
      emit(i == 0 ? 9 : 12);
      emit(10);
      emit(11);
      if (tables.destinations[i] == packet.outer.dst) {
        for_self = true;
        emit(14);
        break;
      }
      if (i + 1 == tables.destinations.size()) emit(13);
    }
  }

  // Both branches defragment the stored payload first.
  emit(15);
  emit(16);

  if (for_self) {
    emit(17);
    out.fate = "daq";
    return out;
  }

  // Not for self: through VPN decrypt toward NAT untranslation.
  emit(18);
  if (packet.encrypted && !packet.inner) {
    drop(17, "decrypt-error");
    return out;
  }
  emit(19);

  // NAT table: exact destination match. Found -> egress route lookup;
  // miss or exhausted -> skip egress, straight to the prefilter.
  bool nat_found = false;
  if (tables.nat.empty()) {
    emit(24);
  } else {
    for (std::size_t i = 0; i < tables.nat.size(); ++i) {
      emit(i == 0 ? 20 : 23);
      emit(21);
      emit(22);
      if (tables.nat[i] == packet.outer.dst) {
        nat_found = true;
        break;
      }
      if (i + 1 == tables.nat.size()) emit(24);
    }
  }

  if (nat_found) {
    // Egress: first route whose prefix contains the destination wins and
    // rewrites it; no route drops the packet.
    bool routed = false;
    if (tables.routes.empty()) {
      emit(29);
      drop(46, "no-route");
      return out;
    }
    for (std::size_t i = 0; i < tables.routes.size(); ++i) {
      emit(i == 0 ? 25 : 28);
      emit(26);
      emit(27);
      const auto& r = tables.routes[i];
      if (prefix_has(r.match.base, r.match.length, packet.outer.dst)) {
        routed = true;
        emit(30);
        emit(31);
        break;
      }
      if (i + 1 == tables.routes.size()) {
        emit(29);
        drop(46, "no-route");
        return out;
      }
    }
    (void)routed;
  }

  emit(32);

  // Prefilter: outer-header source against policy prefixes.
  emit(33);
  emit(34);
  emit(35);
  const Ipv4 source = packet.outer.src;
  int prefilter_verdict = 0;  // 0 none, 1 fastpath, 2 analyze
  if (tables.prefilter.empty()) {
    emit(40);
    drop(58, "prefilter-no-match");
    return out;
  }
  for (std::size_t i = 0; i < tables.prefilter.size(); ++i) {
    emit(i == 0 ? 36 : 39);
    emit(37);
    emit(38);
    const auto& e = tables.prefilter[i];
    if (prefix_has(e.source_match.base, e.source_match.length, source)) {
      prefilter_verdict = e.action == netmon::lina::PrefilterAction::Fastpath ? 1 : 2;
      break;
    }
    if (i + 1 == tables.prefilter.size()) {
      emit(40);
      drop(58, "prefilter-no-match");
      return out;
    }
  }
  if (prefilter_verdict == 1) {
    emit(41);
    emit(42);
    out.fate = "flow_update";
    return out;
  }
  emit(43);
  emit(44);

  // ACL: first rule whose prefix contains the source decides the action;
  // running out of rules is an implicit deny with no event of its own.
  emit(45);
  emit(46);
  if (tables.acl.empty()) {
    drop(69, "implicit-deny");
    return out;
  }
  for (std::size_t i = 0; i < tables.acl.size(); ++i) {
    emit(i == 0 ? 47 : 50);
    emit(48);
    emit(49);
    const auto& rule = tables.acl[i];
    if (!prefix_has(rule.source_match.base, rule.source_match.length, source)) {
      if (i + 1 == tables.acl.size()) {
        drop(69, "implicit-deny");
        return out;
      }
      continue;
    }
    using A = netmon::lina::AclAction;
    switch (rule.action) {
      case A::Trust:
        emit(51);
        if (rule.trust_mode == netmon::lina::TrustMode::Trusted) {
          emit(52);
          out.fate = "flow_update";
        } else {
          emit(53);
          out.fate = "daq";
        }
        return out;
      case A::Monitor: emit(54); break;
      case A::Allow: emit(55); break;
      case A::Block: emit(56); break;
      case A::BlockWithReset: emit(57); break;
      case A::InteractiveBlock: emit(58); break;
      case A::InteractiveBlockWithReset: emit(59); break;
      case A::Deny:
        emit(60);
        drop(80, "deny");
        return out;
    }
    out.fate = "daq";
    return out;
  }
  return out;  // unreachable: the loop always returns
}

}  // namespace refmodel
