#ifndef ICN5G_TESTS_FIXTURES_HPP
#define ICN5G_TESTS_FIXTURES_HPP

#include "icn5g/scenario.hpp"

#include <string>
#include <vector>

namespace icn5g::fixtures {

struct HandoverOptions {
  Transport transport = Transport::ICN;
  bool sameUlcl = false;
  bool colocated = false;
  std::uint64_t seed = 42;
  // every link in declaration order gets its latency from here when set
  std::vector<TimeMs> latencies;
  int streamCount = 40;
  TimeMs streamPeriod = 20;
  TimeMs establishAt = 30;
  TimeMs streamStart = 200;
  TimeMs handoverAt = 500;
};

// Mirrors scenarios/handover*.scenario so tests can randomize latencies and
// flip the transport without touching the bundled files.
inline ScenarioConfig
makeHandoverConfig(const HandoverOptions& opt = {})
{
  ScenarioConfig cfg;
  cfg.name = opt.sameUlcl ? "handover_same_ulcl" : "handover";
  cfg.mode = ScenarioMode::HANDOVER;
  cfg.transport = opt.transport;
  cfg.seed = opt.seed;
  cfg.maxTime = 30000;
  cfg.colocateRanUlcl = opt.colocated;

  auto node = [&] (const std::string& id, NodeRole role) {
    NodeSpec spec;
    spec.id = id;
    spec.role = role;
    cfg.nodes.push_back(spec);
    return cfg.nodes.size() - 1;
  };

  auto ue = node("ue7", NodeRole::UE);
  cfg.nodes[ue].prefix = Name::parse("/ue7");
  cfg.nodes[ue].payload = 1000;
  cfg.nodes[ue].dnsAddr = parseAddr("10.0.9.53");
  cfg.nodes[ue].registers = "ue7-video";

  auto consumer = node("consumer1", NodeRole::APP_SERVER);
  cfg.nodes[consumer].addr = parseAddr("10.0.9.200");
  cfg.nodes[consumer].dnsAddr = parseAddr("10.0.9.53");
  cfg.nodes[consumer].peer = "r1";

  node("sran", NodeRole::RAN);
  node("tran", NodeRole::RAN);
  node("ulcl1", NodeRole::UL_CL);
  if (!opt.sameUlcl) {
    node("ulcl2", NodeRole::UL_CL);
  }
  auto ap1 = node("icnap1", NodeRole::ICN_AP);
  cfg.nodes[ap1].cache = 16;
  cfg.nodes[ap1].addrBase = parseAddr("10.1.0.0");
  if (!opt.sameUlcl) {
    auto ap2 = node("icnap2", NodeRole::ICN_AP);
    cfg.nodes[ap2].cache = 16;
    cfg.nodes[ap2].addrBase = parseAddr("10.2.0.0");
  }
  node("r1", NodeRole::ICN_DN_ROUTER);
  auto dns = node("dns", NodeRole::APP_SERVER);
  cfg.nodes[dns].addr = parseAddr("10.0.9.53");
  cfg.nodes[dns].dns = true;
  cfg.nodes[dns].peer = "r1";
  node("amf", NodeRole::AMF);
  node("smf", NodeRole::SMF);
  node("icnsmf", NodeRole::ICN_SMF);
  node("icnaf", NodeRole::ICN_AF);
  node("nssf", NodeRole::NSSF);
  node("pcfudm", NodeRole::PCF_UDM);
  node("nrs", NodeRole::NRS);

  auto link = [&] (const std::string& a, const std::string& b, TimeMs latency,
                   LinkKind kind = LinkKind::DATA) {
    std::size_t i = cfg.links.size();
    TimeMs ms = i < opt.latencies.size() ? opt.latencies[i] : latency;
    cfg.links.push_back(ScenarioLink{a, b, ms, kind, 0.0});
  };

  link("ue7", "sran", 1, LinkKind::RADIO);
  link("ue7", "tran", 1, LinkKind::RADIO);
  link("sran", "ulcl1", 2);
  link("tran", opt.sameUlcl ? "ulcl1" : "ulcl2", 2);
  link("ulcl1", "icnap1", 2);
  if (!opt.sameUlcl) {
    link("ulcl2", "icnap2", 2);
    link("icnap1", "icnap2", 3);
    link("icnap2", "r1", 2);
  }
  link("icnap1", "r1", 2);
  link("r1", "consumer1", 2);
  link("r1", "dns", 2);
  link("sran", "amf", 2, LinkKind::CONTROL);
  link("tran", "amf", 2, LinkKind::CONTROL);
  link("amf", "smf", 2, LinkKind::CONTROL);
  link("amf", "nssf", 2, LinkKind::CONTROL);
  link("amf", "pcfudm", 2, LinkKind::CONTROL);
  link("smf", "ulcl1", 2, LinkKind::CONTROL);
  if (!opt.sameUlcl) {
    link("smf", "ulcl2", 2, LinkKind::CONTROL);
    link("smf", "icnap2", 2, LinkKind::CONTROL);
    link("icnsmf", "icnap2", 2, LinkKind::CONTROL);
  }
  link("smf", "icnap1", 2, LinkKind::CONTROL);
  link("smf", "icnsmf", 2, LinkKind::CONTROL);
  link("icnsmf", "icnap1", 2, LinkKind::CONTROL);
  link("icnsmf", "nrs", 2, LinkKind::CONTROL);
  link("icnaf", "pcfudm", 2, LinkKind::CONTROL);
  link("icnaf", "nssf", 2, LinkKind::CONTROL);
  link("nrs", "r1", 2, LinkKind::CONTROL);

  cfg.profiles.push_back(SubscriptionProfile{"ue7", true, {"s-icn"}});
  SliceDescriptor slice;
  slice.sliceId = "s-icn";
  slice.ulclCandidates = opt.sameUlcl ? std::vector<NodeId>{"ulcl1"}
                                      : std::vector<NodeId>{"ulcl1", "ulcl2"};
  slice.anchorCandidates = opt.sameUlcl ? std::vector<NodeId>{"icnap1"}
                                        : std::vector<NodeId>{"icnap1", "icnap2"};
  cfg.slices.push_back(slice);

  cfg.ipRoutes.push_back(StaticIpRoute{"r1", "10.1.0.*", "icnap1"});
  if (!opt.sameUlcl) {
    cfg.ipRoutes.push_back(StaticIpRoute{"r1", "10.2.0.*", "icnap2"});
  }
  cfg.ipRoutes.push_back(StaticIpRoute{"r1", "10.0.9.53", "dns"});
  cfg.ipRoutes.push_back(StaticIpRoute{"r1", "10.0.9.200", "consumer1"});
  cfg.ipRoutes.push_back(StaticIpRoute{"icnap1", "10.0.9.*", "r1"});
  if (!opt.sameUlcl) {
    cfg.ipRoutes.push_back(StaticIpRoute{"icnap2", "10.0.9.*", "r1"});
  }

  cfg.workload.push_back(WorkloadItem{10, "ue7", "attach", {"sran"}});
  cfg.workload.push_back(WorkloadItem{opt.establishAt, "ue7", "establish",
                                      {"s-icn", opt.transport == Transport::IP ? "ip" : "icn"}});
  for (int i = 0; i < opt.streamCount; ++i) {
    WorkloadItem item;
    item.time = opt.streamStart + i * opt.streamPeriod;
    item.node = "consumer1";
    item.verb = "request";
    if (opt.transport == Transport::ICN) {
      item.args = {"/ue7/live/seg" + std::to_string(i)};
    }
    else {
      item.args = {"ue7-video", "seg" + std::to_string(i)};
    }
    cfg.workload.push_back(std::move(item));
  }
  cfg.workload.push_back(WorkloadItem{opt.handoverAt, "ue7", "handover", {"tran"}});
  return cfg;
}

// Connected-car MEC, `vehicles` UEs requesting the same monitor segment.
inline ScenarioConfig
makeMecConfig(int vehicles, Transport transport, std::uint64_t seed = 7)
{
  ScenarioConfig cfg;
  cfg.name = transport == Transport::ICN ? "mec_icn" : "mec_ip";
  cfg.mode = transport == Transport::ICN ? ScenarioMode::ICN_MEC : ScenarioMode::IP_MEC;
  cfg.transport = transport;
  cfg.seed = seed;
  cfg.maxTime = 60000;

  for (int i = 1; i <= vehicles; ++i) {
    NodeSpec ue;
    ue.id = "ue" + std::to_string(i);
    ue.role = NodeRole::UE;
    ue.dnsAddr = parseAddr("10.0.9.53");
    cfg.nodes.push_back(ue);
  }
  auto node = [&] (const std::string& id, NodeRole role) -> NodeSpec& {
    NodeSpec spec;
    spec.id = id;
    spec.role = role;
    cfg.nodes.push_back(spec);
    return cfg.nodes.back();
  };
  node("ran1", NodeRole::RAN);
  node("ulcl1", NodeRole::UL_CL);
  {
    auto& gw = node("gw1", NodeRole::ICN_AP);
    gw.cache = 16;
    gw.addrBase = parseAddr("10.1.0.0");
  }
  node("r1", NodeRole::ICN_DN_ROUTER);
  {
    auto& tme = node("tme", NodeRole::APP_SERVER);
    tme.serves = {Name::parse("/traffic/monitor")};
    tme.payload = 1400;
    tme.addr = parseAddr("10.0.9.1");
    tme.peer = "r1";
  }
  {
    auto& dns = node("dns", NodeRole::APP_SERVER);
    dns.addr = parseAddr("10.0.9.53");
    dns.dns = true;
    dns.peer = "r1";
  }
  node("amf", NodeRole::AMF);
  node("smf", NodeRole::SMF);
  node("icnsmf", NodeRole::ICN_SMF);
  node("icnaf", NodeRole::ICN_AF);
  node("nssf", NodeRole::NSSF);
  node("pcfudm", NodeRole::PCF_UDM);
  node("nrs", NodeRole::NRS);

  for (int i = 1; i <= vehicles; ++i) {
    cfg.links.push_back(ScenarioLink{"ue" + std::to_string(i), "ran1", 1, LinkKind::RADIO, 0});
  }
  auto link = [&] (const std::string& a, const std::string& b, TimeMs ms,
                   LinkKind kind = LinkKind::DATA) {
    cfg.links.push_back(ScenarioLink{a, b, ms, kind, 0.0});
  };
  link("ran1", "ulcl1", 2);
  link("ulcl1", "gw1", 2);
  link("gw1", "r1", 2);
  link("r1", "tme", 2);
  link("r1", "dns", 2);
  link("ran1", "amf", 2, LinkKind::CONTROL);
  link("amf", "smf", 2, LinkKind::CONTROL);
  link("amf", "nssf", 2, LinkKind::CONTROL);
  link("amf", "pcfudm", 2, LinkKind::CONTROL);
  link("smf", "ulcl1", 2, LinkKind::CONTROL);
  link("smf", "gw1", 2, LinkKind::CONTROL);
  link("smf", "icnsmf", 2, LinkKind::CONTROL);
  link("icnsmf", "gw1", 2, LinkKind::CONTROL);
  link("icnsmf", "nrs", 2, LinkKind::CONTROL);
  link("icnaf", "pcfudm", 2, LinkKind::CONTROL);
  link("icnaf", "nssf", 2, LinkKind::CONTROL);
  link("nrs", "r1", 2, LinkKind::CONTROL);

  for (int i = 1; i <= vehicles; ++i) {
    cfg.profiles.push_back(SubscriptionProfile{"ue" + std::to_string(i),
                                               transport == Transport::ICN, {"s-mec"}});
  }
  SliceDescriptor slice;
  slice.sliceId = "s-mec";
  slice.ulclCandidates = {"ulcl1"};
  slice.anchorCandidates = {"gw1"};
  cfg.slices.push_back(slice);

  cfg.routes.push_back(StaticRoute{"gw1", Name::parse("/traffic"), "r1"});
  cfg.routes.push_back(StaticRoute{"r1", Name::parse("/traffic/monitor"), "tme"});

  cfg.services.push_back(ServiceInstanceSpec{"tm-e", "10.1.0.*", *parseAddr("10.0.9.1")});
  cfg.ipRoutes.push_back(StaticIpRoute{"gw1", "10.0.9.*", "r1"});
  cfg.ipRoutes.push_back(StaticIpRoute{"r1", "10.0.9.1", "tme"});
  cfg.ipRoutes.push_back(StaticIpRoute{"r1", "10.0.9.53", "dns"});
  cfg.ipRoutes.push_back(StaticIpRoute{"r1", "10.1.0.*", "gw1"});

  for (int i = 1; i <= vehicles; ++i) {
    std::string ue = "ue" + std::to_string(i);
    cfg.workload.push_back(WorkloadItem{5 + i, ue, "attach", {"ran1"}});
    cfg.workload.push_back(WorkloadItem{40 + 2 * i, ue, "establish",
                                        {"s-mec", transport == Transport::ICN ? "icn" : "ip"}});
    WorkloadItem req;
    req.time = 300 + 20 * (i - 1);
    req.node = ue;
    req.verb = "request";
    if (transport == Transport::ICN) {
      req.args = {"/traffic/monitor/road5/seg1"};
    }
    else {
      req.args = {"tm-e", "road5-seg1"};
    }
    cfg.workload.push_back(std::move(req));
  }
  return cfg;
}

} // namespace icn5g::fixtures

#endif // ICN5G_TESTS_FIXTURES_HPP
