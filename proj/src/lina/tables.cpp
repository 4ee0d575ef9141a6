#include "netmon/lina/tables.hpp"

#include <charconv>

#include "netmon/errors.hpp"

namespace netmon::lina {

Ipv4 parse_ipv4(std::string_view text) {
  std::uint32_t value = 0;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int octet = 0; octet < 4; ++octet) {
    unsigned v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || next == p || v > 255)
      throw ConfigError("not an IPv4 address: '" + std::string(text) + "'");
    value = (value << 8) | v;
    p = next;
    if (octet < 3) {
      if (p == end || *p != '.')
        throw ConfigError("not an IPv4 address: '" + std::string(text) + "'");
      ++p;
    }
  }
  if (p != end) throw ConfigError("not an IPv4 address: '" + std::string(text) + "'");
  return Ipv4{value};
}

std::string to_string(Ipv4 a) {
  std::string out;
  for (int shift = 24; shift >= 0; shift -= 8) {
    out += std::to_string((a.value >> shift) & 0xffu);
    if (shift) out += '.';
  }
  return out;
}

bool Cidr::contains(Ipv4 a) const {
  if (length == 0) return true;
  std::uint32_t mask = length == 32 ? 0xffffffffu : ~(0xffffffffu >> length);
  return (a.value & mask) == (base.value & mask);
}

Cidr parse_cidr(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw ConfigError("not a CIDR prefix: '" + std::string(text) + "'");
  Cidr c;
  c.base = parse_ipv4(text.substr(0, slash));
  auto lenpart = text.substr(slash + 1);
  int len = -1;
  auto [next, ec] = std::from_chars(lenpart.data(), lenpart.data() + lenpart.size(), len);
  if (ec != std::errc{} || next != lenpart.data() + lenpart.size() || len < 0 || len > 32)
    throw ConfigError("prefix length must be 0..32: '" + std::string(text) + "'");
  c.length = len;
  return c;
}

std::string to_string(const Cidr& c) {
  return to_string(c.base) + "/" + std::to_string(c.length);
}

const char* to_string(AclAction a) {
  switch (a) {
    case AclAction::Trust: return "trust";
    case AclAction::Monitor: return "monitor";
    case AclAction::Allow: return "allow";
    case AclAction::Block: return "block";
    case AclAction::BlockWithReset: return "block_reset";
    case AclAction::InteractiveBlock: return "interactive_block";
    case AclAction::InteractiveBlockWithReset: return "interactive_block_reset";
    case AclAction::Deny: return "deny";
  }
  return "?";
}

const char* to_string(TrustMode m) {
  return m == TrustMode::Trusted ? "trusted" : "permitted";
}

namespace {

template <typename T, typename Match>
ScanResult scan(const std::vector<T>& table, Match match) {
  ScanResult r;
  for (std::size_t i = 0; i < table.size(); ++i) {
    ++r.comparisons;
    if (match(table[i])) {
      r.index = i;
      return r;
    }
  }
  return r;
}

}  // namespace

ScanResult lookup_destination(Ipv4 dest, const DestinationList& list) {
  return scan(list, [dest](Ipv4 d) { return d == dest; });
}

ScanResult untranslate_nat(Ipv4 dest, const NatTable& table) {
  return scan(table, [dest](Ipv4 d) { return d == dest; });
}

ScanResult egress_lookup(Ipv4 dest, const GlobalRouteTable& table) {
  return scan(table, [dest](const RouteEntry& e) { return e.match.contains(dest); });
}

ScanResult prefilter_eval(Ipv4 source, const PrefilterTable& table) {
  return scan(table, [source](const PrefilterEntry& e) { return e.source_match.contains(source); });
}

ScanResult acl_eval(Ipv4 source, const Acl& acl) {
  return scan(acl, [source](const AclRule& r) { return r.source_match.contains(source); });
}

std::string defragment(const std::vector<std::string>& fragments) {
  std::string joined;
  for (const std::string& f : fragments) joined += f;
  std::string out;
  out.reserve(joined.size());
  for (char c : joined)
    if (c != ' ') out += c;
  return out;
}

VpnResult vpn_decrypt(Packet packet) {
  if (!packet.encrypted) return {std::move(packet), std::nullopt};
  if (!packet.inner) {
    std::string why = "packet '" + packet.id + "' is encrypted but declares no inner header";
    return {std::move(packet), std::move(why)};
  }
  packet.encrypted = false;
  return {std::move(packet), std::nullopt};
}

}  // namespace netmon::lina
