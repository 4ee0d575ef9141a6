#include "netmon/events/catalog.hpp"

#include <algorithm>
#include <set>

#include "netmon/errors.hpp"

namespace netmon::events {

namespace {

bool is_terminal(int n) {
  static const std::set<int> t{17, 29, 40, 42, 52, 53, 54, 55, 56, 57, 58, 59, 60};
  return t.count(n) > 0;
}

// Table-scan loop kinds: fetch / flow-to-compare / compare / refetch per table.
bool is_repeatable(int n) {
  return (n >= 9 && n <= 12) || (n >= 20 && n <= 23) || (n >= 25 && n <= 28) ||
         (n >= 36 && n <= 39) || (n >= 47 && n <= 50);
}

std::vector<EventKind> make_catalog() {
  struct Row {
    int n;
    std::string_view text;
    std::vector<int> region;
  };
  // Events whose step carries no anchor of its own (the unnumbered hop of a
  // fetched entry toward its comparison) have an empty region.
  const Row rows[] = {
      {1, "A packet's arrival to LINA.", {1}},
      {2, "The packet flows to the ingress interface.", {2, 3}},
      {3, "The packet's details are processed.", {4}},
      {4, "The ingress interface's input counter is incremented.", {5, 6}},
      {5, "The payload is extracted and stored.", {8}},
      {6, "The header is extracted.", {7}},
      {7, "The destination is extracted.", {9}},
      {8, "The destination flows to be compared.", {10, 12}},
      {9, "A destination form is retrieved from the destination table.", {13}},
      {10, "The retrieved destination flows to be compared.", {}},
      {11, "The incoming destination and the retrieved destination are compared.", {14}},
      {12, "A new destination is retrieved from the destination table.", {13, 15}},
      {13, "The incoming destination does not exist in the destination table.", {16}},
      {14, "The incoming destination is found in the destination table.", {24}},
      {15, "The payload is retrieved from data storage and flows to defragmentation.",
       {19, 20}},
      {16, "The payload is defragmented and stored.", {21, 22, 23}},
      {17, "The packet flows to DAQ.", {25, 26}},
      {18, "The packet flows to VPN decrypt.", {17}},
      {19, "The packet is decrypted and flows to Untranslate-NAT.",
       {18, 27, 28, 29, 30, 31, 32}},
      {20, "A destination address is retrieved from the NAT table.", {33, 34}},
      {21, "The retrieved destination address flows to be compared.", {35}},
      {22, "The incoming destination and the retrieved destination address are compared.",
       {36}},
      {23, "A new destination address is retrieved from the NAT table.", {33, 34, 37}},
      {24, "The incoming destination does not exist in the NAT table.", {38}},
      {25, "A route is retrieved from the global route table.", {42, 43}},
      {26, "The retrieved route flows to be compared.", {44}},
      {27, "The incoming destination and the retrieved route are compared.", {45}},
      {28, "A new route is retrieved from the global route table.", {42, 43, 47}},
      {29,
       "The incoming destination is not included in the global route table, and the packet "
       "is dropped.",
       {46}},
      {30, "The incoming destination is found in the global route table.", {48}},
      {31, "A new destination is set for the incoming packet.", {49}},
      {32, "The packet flows to the prefilter policy.", {50, 51}},
      {33, "The outer header is extracted.", {52, 53}},
      {34, "The source is extracted.", {54}},
      {35, "The source flows to be compared.", {}},
      {36, "A policy is retrieved from the prefilter policy table.", {55}},
      {37, "The retrieved policy flows to be compared.", {}},
      {38, "The source and the policy are compared.", {57}},
      {39, "A new policy is retrieved from the prefilter policy table.", {55, 59}},
      {40,
       "The source is not included in the prefilter policy table, and the packet is "
       "dropped.",
       {58}},
      {41, "The source is found in the prefilter policy table with a fastpath policy.",
       {60}},
      {42, "The packet flows to the flow update module.", {61}},
      {43, "The source is found in the prefilter policy table with an analyze policy.",
       {62}},
      {44, "The packet flows to L3/L4 ACL.", {63}},
      {45, "The source is extracted.", {66}},
      {46, "The source flows to be compared.", {}},
      {47, "A rule is retrieved from ACL.", {67}},
      {48, "The retrieved rule flows to be compared.", {}},
      {49, "The source and the rule are compared.", {69}},
      {50, "A new rule is retrieved from ACL.", {67, 70}},
      {51, "The source is found in ACL with a trust rule, and an action is performed on "
           "the packet.",
       {71}},
      {52, "The packet flows to the flow update module using a trust action.", {73}},
      {53, "The packet flows to DAQ using a permit action.", {72}},
      {54, "The source is found in ACL with a monitor rule, and the packet flows to DAQ "
           "using a permit action.",
       {74}},
      {55, "The source is found in ACL with an allow rule, and the packet flows to DAQ "
           "using a permit action.",
       {75}},
      {56, "The source is found in ACL with a block rule, and the packet flows to DAQ "
           "using a permit action.",
       {76}},
      {57, "The source is found in ACL with a block with reset rule, and the packet flows "
           "to DAQ using a permit action.",
       {77}},
      {58, "The source is found in ACL with an interactive block rule, and the packet "
           "flows to DAQ using a permit action.",
       {78}},
      {59, "The source is found in ACL with an interactive block with reset rule, and the "
           "packet flows to DAQ using a permit action.",
       {79}},
      {60, "The source is found in ACL with a deny action, and the packet is dropped.",
       {80}},
  };

  std::vector<EventKind> out;
  out.reserve(60);
  for (const Row& r : rows)
    out.push_back(EventKind{r.n, r.text, r.region, is_terminal(r.n), is_repeatable(r.n)});
  return out;
}

}  // namespace

std::string event_id(int number) { return "E" + std::to_string(number); }

const std::vector<EventKind>& event_catalog() {
  static const std::vector<EventKind> catalog = make_catalog();
  return catalog;
}

const EventKind& event_kind(int number) {
  if (number < 1 || number > 60)
    throw UsageError("no such event kind: " + std::to_string(number));
  return event_catalog()[static_cast<std::size_t>(number) - 1];
}

const std::vector<AnchorRole>& anchor_roles() {
  static const std::vector<AnchorRole> roles = [] {
    std::vector<AnchorRole> out;
    // Primary event per anchor; anchors shared between a first-fetch kind and
    // its refetch twin sit with the first-fetch kind.
    std::set<int> taken;
    for (const EventKind& k : event_catalog())
      for (int a : k.region)
        if (taken.insert(a).second) out.push_back({a, k.number, k.description});
    // Machinery steps between events: no kind of their own.
    out.push_back({11, 0, "destination list feeds the comparison"});
    out.push_back({39, 0, "egress interface receives the destination"});
    out.push_back({40, 0, "positive NAT verdict hands the destination to egress"});
    out.push_back({41, 0, "global route table feeds the scan"});
    out.push_back({56, 0, "prefilter policy table feeds the comparison"});
    out.push_back({64, 0, "ACL processes the packet"});
    out.push_back({65, 0, "ACL extracts the header"});
    out.push_back({68, 0, "ACL rule table feeds the comparison"});
    std::sort(out.begin(), out.end(),
              [](const AnchorRole& a, const AnchorRole& b) { return a.anchor < b.anchor; });
    return out;
  }();
  return roles;
}

}  // namespace netmon::events
