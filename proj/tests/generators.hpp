#pragma once

// Randomized table sets and packets for comparing the simulator against the
// reference interpreter. Addresses come from a small pool so that scans hit
// and miss with useful frequency instead of always missing.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "netmon/lina/tables.hpp"

namespace testgen {

class ScenarioGen {
 public:
  explicit ScenarioGen(std::uint32_t seed) : rng_(seed) {}

  netmon::lina::Ipv4 pool_ip() {
    static constexpr std::uint32_t a[] = {10, 172, 192, 203};
    static constexpr std::uint32_t b[] = {0, 1, 16};
    static constexpr std::uint32_t c[] = {0, 2, 5};
    static constexpr std::uint32_t d[] = {1, 7, 9};
    return {pick(a) << 24 | pick(b) << 16 | pick(c) << 8 | pick(d)};
  }

  netmon::lina::Cidr pool_cidr() {
    static constexpr int lengths[] = {0, 8, 16, 24, 32};
    const int len = pick(lengths);
    std::uint32_t base = pool_ip().value;
    if (len == 0)
      base = 0;
    else
      base &= ~std::uint32_t{0} << (32 - len);
    return {netmon::lina::Ipv4{base}, len};
  }

  netmon::lina::Tables next_tables() {
    namespace ln = netmon::lina;
    ln::Tables t;
    std::set<std::uint32_t> seen;
    for (int i = roll(4); i > 0; --i) {
      const ln::Ipv4 a = pool_ip();
      if (seen.insert(a.value).second) t.destinations.push_back(a);
    }
    for (int i = roll(4); i > 0; --i) t.nat.push_back(pool_ip());
    for (int i = roll(4); i > 0; --i)
      t.routes.push_back({pool_cidr(), pool_ip()});
    for (int i = roll(4); i > 0; --i)
      t.prefilter.push_back({pool_cidr(), coin() ? ln::PrefilterAction::Fastpath
                                                 : ln::PrefilterAction::Analyze});
    for (int i = roll(5); i > 0; --i) {
      ln::AclRule rule;
      rule.source_match = pool_cidr();
      rule.action = static_cast<ln::AclAction>(roll(8));
      if (rule.action == ln::AclAction::Trust)
        rule.trust_mode = coin() ? ln::TrustMode::Trusted : ln::TrustMode::Permitted;
      t.acl.push_back(rule);
    }
    return t;
  }

  netmon::lina::Packet next_packet(std::string id) {
    namespace ln = netmon::lina;
    ln::Packet p;
    p.id = std::move(id);
    p.outer = {pool_ip(), pool_ip(), "tcp"};
    static const char* const frags[] = {"ab", "c d", " ", "xy z"};
    for (int i = roll(4); i > 0; --i) p.payload_fragments.push_back(pick(frags));
    const int flavor = roll(12);
    if (flavor == 0) {
      p.encrypted = true;  // claims encryption with nothing inside: undecryptable
    } else if (flavor <= 3) {
      p.encrypted = true;
      p.inner = ln::Header{pool_ip(), pool_ip(), "esp"};
    }
    return p;
  }

 private:
  int roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin() { return roll(2) == 1; }
  template <typename T, std::size_t N>
  T pick(const T (&options)[N]) {
    return options[roll(static_cast<int>(N))];
  }

  std::mt19937 rng_;
};

}  // namespace testgen
