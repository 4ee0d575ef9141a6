#pragma once

// Packet and table vocabulary for the firewall pipeline, plus the pure lookup
// semantics: exact-match scans for the destination and NAT lists, first-match
// CIDR containment for routes, prefilter policies and ACL rules. All scans
// are sequential with the minimal matching index winning.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netmon::lina {

struct Ipv4 {
  std::uint32_t value{};
  friend bool operator==(Ipv4 a, Ipv4 b) { return a.value == b.value; }
  friend bool operator!=(Ipv4 a, Ipv4 b) { return a.value != b.value; }
};

// Throws ConfigError on anything but a dotted quad with octets 0..255.
Ipv4 parse_ipv4(std::string_view text);
std::string to_string(Ipv4 a);

struct Cidr {
  Ipv4 base{};
  int length{0};  // 0..32
  bool contains(Ipv4 a) const;
};

Cidr parse_cidr(std::string_view text);  // "10.0.0.0/8"; throws ConfigError
std::string to_string(const Cidr& c);

struct Header {
  Ipv4 src{};
  Ipv4 dst{};
  std::string proto;
};

struct Packet {
  std::string id;
  Header outer{};
  std::optional<Header> inner;
  std::vector<std::string> payload_fragments;
  bool encrypted{false};
  std::int64_t arrival_tick{0};
};

using DestinationList = std::vector<Ipv4>;  // no duplicates
using NatTable = std::vector<Ipv4>;

struct RouteEntry {
  Cidr match{};
  Ipv4 new_destination{};
};
using GlobalRouteTable = std::vector<RouteEntry>;

enum class PrefilterAction { Fastpath, Analyze };

struct PrefilterEntry {
  Cidr source_match{};
  PrefilterAction action{PrefilterAction::Analyze};
};
using PrefilterTable = std::vector<PrefilterEntry>;

enum class AclAction {
  Trust,
  Monitor,
  Allow,
  Block,
  BlockWithReset,
  InteractiveBlock,
  InteractiveBlockWithReset,
  Deny,
};
enum class TrustMode { Trusted, Permitted };

const char* to_string(AclAction a);
const char* to_string(TrustMode m);

struct AclRule {
  Cidr source_match{};
  AclAction action{AclAction::Deny};
  std::optional<TrustMode> trust_mode;  // present iff action == Trust
};
using Acl = std::vector<AclRule>;

struct Tables {
  DestinationList destinations;
  NatTable nat;
  GlobalRouteTable routes;
  PrefilterTable prefilter;
  Acl acl;
};

// Outcome of a sequential scan: the first matching index if any, and how many
// comparisons were made (equals the table length on a miss).
struct ScanResult {
  std::optional<std::size_t> index;
  std::size_t comparisons{0};
};

ScanResult lookup_destination(Ipv4 dest, const DestinationList& list);
ScanResult untranslate_nat(Ipv4 dest, const NatTable& table);
ScanResult egress_lookup(Ipv4 dest, const GlobalRouteTable& table);
ScanResult prefilter_eval(Ipv4 source, const PrefilterTable& table);
ScanResult acl_eval(Ipv4 source, const Acl& acl);

// Concatenates fragments in order, then deletes space bytes (0x20).
std::string defragment(const std::vector<std::string>& fragments);

// Clears the encrypted flag. A packet that claims encryption but declares no
// inner header cannot be decrypted; the error string names the packet.
struct VpnResult {
  Packet packet;
  std::optional<std::string> error;
};
VpnResult vpn_decrypt(Packet packet);

}  // namespace netmon::lina
