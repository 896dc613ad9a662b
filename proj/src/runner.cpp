#include "icn5g/runner.hpp"

#include "icn5g/app.hpp"
#include "icn5g/control-plane.hpp"
#include "icn5g/user-plane.hpp"

#include <algorithm>

namespace icn5g {

static bool
speaksIcn(NodeRole role)
{
  return role == NodeRole::ICN_AP || role == NodeRole::ICN_DN_ROUTER ||
         role == NodeRole::APP_SERVER;
}

std::unique_ptr<Sim>
buildSim(const ScenarioConfig& cfg)
{
  cfg.validate();
  auto sim = std::make_unique<Sim>(cfg.seed);

  ConsumerConfig consumer;
  consumer.interestLifetime = cfg.interestLifetime;
  consumer.retryPeriod = cfg.retryPeriod;
  consumer.maxRetries = cfg.maxRetries;

  SmfNode* smf = nullptr;

  for (const auto& spec : cfg.nodes) {
    std::unique_ptr<Node> node;
    switch (spec.role) {
      case NodeRole::UE: {
        UeConfig ue;
        ue.producerPrefix = spec.prefix;
        ue.payloadSize = spec.payload;
        ue.consumer = consumer;
        ue.dnsAddr = spec.dnsAddr;
        ue.registersService = spec.registers;
        node = std::make_unique<UeNode>(spec.id, std::move(ue));
        break;
      }
      case NodeRole::RAN:
        node = std::make_unique<RanNode>(spec.id);
        break;
      case NodeRole::UL_CL:
        node = std::make_unique<UlClNode>(spec.id);
        break;
      case NodeRole::ICN_AP:
        node = std::make_unique<IcnApNode>(spec.id, spec.cache);
        break;
      case NodeRole::ICN_DN_ROUTER:
        node = std::make_unique<RouterNode>(spec.id, spec.cache);
        break;
      case NodeRole::AMF:
        node = std::make_unique<AmfNode>(spec.id);
        break;
      case NodeRole::SMF: {
        auto owned = std::make_unique<SmfNode>(spec.id);
        smf = owned.get();
        node = std::move(owned);
        break;
      }
      case NodeRole::ICN_SMF:
        node = std::make_unique<IcnSmfNode>(spec.id);
        break;
      case NodeRole::ICN_AF:
        node = std::make_unique<IcnAfNode>(spec.id, cfg.profiles, cfg.slices);
        break;
      case NodeRole::NSSF:
        node = std::make_unique<NssfNode>(spec.id);
        break;
      case NodeRole::PCF_UDM:
        node = std::make_unique<PcfUdmNode>(spec.id);
        break;
      case NodeRole::NRS:
        node = std::make_unique<NrsNode>(spec.id);
        break;
      case NodeRole::APP_SERVER: {
        AppServerConfig app;
        app.addr = spec.addr;
        app.serves = spec.serves;
        app.payloadSize = spec.payload;
        app.transport = cfg.transport;
        app.consumer = consumer;
        app.dnsServer = spec.dns;
        app.dnsAddr = spec.dnsAddr;
        app.pushNext = spec.pushNext;
        app.pushNextAddr = spec.pushAddr;
        app.translationDelay =
          cfg.transport == Transport::IP ? cfg.translationDelay : 0;
        for (const auto& svc : cfg.services) {
          app.services.push_back(ServiceInstance{svc.service, svc.clientPattern, svc.addr});
        }
        node = std::make_unique<AppServerNode>(spec.id, std::move(app));
        break;
      }
    }
    node->setProcessingDelay(spec.delay);
    sim->addNode(std::move(node));
  }

  for (const auto& spec : cfg.links) {
    Link link{spec.a, spec.b, spec.latency, spec.loss, spec.kind};
    if (cfg.colocateRanUlcl) {
      const Node& a = sim->nodeAt(spec.a);
      const Node& b = sim->nodeAt(spec.b);
      bool ranUlcl = (a.role() == NodeRole::RAN && b.role() == NodeRole::UL_CL) ||
                     (a.role() == NodeRole::UL_CL && b.role() == NodeRole::RAN);
      if (ranUlcl) {
        link.latency = 0; // co-located: tunnel-state signaling is local
      }
    }
    sim->addLink(std::move(link));
  }

  // ICN faces between adjacent named-forwarding nodes.
  for (const auto& spec : cfg.nodes) {
    if (spec.role != NodeRole::ICN_AP && spec.role != NodeRole::ICN_DN_ROUTER) {
      continue;
    }
    for (const auto& peer : sim->neighbors(spec.id, /*includeControl=*/false)) {
      if (!speaksIcn(sim->nodeAt(peer).role())) {
        continue;
      }
      if (spec.role == NodeRole::ICN_AP) {
        static_cast<IcnApNode&>(sim->nodeAt(spec.id)).addLinkFace(peer);
      }
      else {
        static_cast<RouterNode&>(sim->nodeAt(spec.id)).addLinkFace(peer);
      }
    }
  }

  for (const auto& route : cfg.routes) {
    Node& node = sim->nodeAt(route.node);
    Forwarder* forwarder = nullptr;
    if (auto* ap = dynamic_cast<IcnApNode*>(&node)) {
      forwarder = &ap->forwarder();
    }
    else if (auto* router = dynamic_cast<RouterNode*>(&node)) {
      forwarder = &router->forwarder();
    }
    if (forwarder == nullptr) {
      throw ValidationError("route at non-forwarding node " + route.node);
    }
    const Face* face = forwarder->findLinkFace(route.nextHop);
    if (face == nullptr) {
      throw ValidationError("route next hop " + route.nextHop + " is not adjacent to " +
                            route.node);
    }
    forwarder->fibAdd(route.prefix, face->id);
  }

  for (const auto& route : cfg.ipRoutes) {
    Node& node = sim->nodeAt(route.node);
    if (auto* ap = dynamic_cast<IcnApNode*>(&node)) {
      ap->addIpRoute(route.pattern, route.nextHop);
    }
    else if (auto* router = dynamic_cast<RouterNode*>(&node)) {
      router->addIpRoute(route.pattern, route.nextHop);
    }
    else if (dynamic_cast<AppServerNode*>(&node) == nullptr) {
      throw ValidationError("ip-route at non-routing node " + route.node);
    }
  }

  // App servers pick their default data peer (explicit or the unique one).
  for (const auto& spec : cfg.nodes) {
    if (spec.role != NodeRole::APP_SERVER) {
      continue;
    }
    auto& app = static_cast<AppServerNode&>(sim->nodeAt(spec.id));
    AppServerConfig patched = app.config();
    if (spec.peer) {
      patched.defaultPeer = *spec.peer;
    }
    else {
      auto neighbors = sim->neighbors(spec.id, /*includeControl=*/false);
      if (neighbors.size() == 1) {
        patched.defaultPeer = neighbors.front();
      }
    }
    for (const auto& route : cfg.ipRoutes) {
      if (route.node == spec.id) {
        patched.ipRoutes.emplace_back(route.pattern, route.nextHop);
      }
    }
    if (patched.ipRoutes.empty() && !patched.defaultPeer.empty()) {
      patched.ipRoutes.emplace_back("default", patched.defaultPeer);
    }
    app.reconfigure(std::move(patched));
  }

  // The SMF allocates UE addresses from the serving anchor's block.
  if (smf != nullptr) {
    for (const auto& spec : cfg.nodes) {
      if (spec.role == NodeRole::ICN_AP && spec.addrBase) {
        smf->setAnchorAddrBase(spec.id, *spec.addrBase);
      }
    }
  }

  // Policy lands in PCF/UDM and NSSF before registrations consume it.
  bool hasPolicyPush = std::any_of(cfg.workload.begin(), cfg.workload.end(),
                                   [] (const WorkloadItem& w) { return w.verb == "push_policy"; });
  if (!hasPolicyPush) {
    for (const auto& spec : cfg.nodes) {
      if (spec.role == NodeRole::ICN_AF) {
        sim->scheduleAction(spec.id, 0, WorkloadAction{"push_policy", {}});
      }
    }
  }

  for (const auto& item : cfg.workload) {
    sim->scheduleAction(item.node, item.time, WorkloadAction{item.verb, item.args});
  }

  return sim;
}

RunResult
runScenario(const ScenarioConfig& cfg)
{
  RunResult result;
  result.sim = buildSim(cfg);
  result.summary = result.sim->run(cfg.maxTime);
  result.report = buildReport(cfg, *result.sim, result.summary);
  return result;
}

RunResult
runMecScenario(const ScenarioConfig& cfg)
{
  if (cfg.mode != ScenarioMode::IP_MEC && cfg.mode != ScenarioMode::ICN_MEC) {
    throw ValidationError("runMecScenario needs an ip_mec or icn_mec scenario");
  }
  return runScenario(cfg);
}

RunResult
runHandoverScenario(const ScenarioConfig& cfg)
{
  if (cfg.mode != ScenarioMode::HANDOVER) {
    throw ValidationError("runHandoverScenario needs a handover scenario");
  }
  return runScenario(cfg);
}

std::vector<std::string>
metricsFileLines(const Sim& sim, const Report& report)
{
  std::vector<std::string> lines;
  for (const auto& [name, byLabel] : sim.counters()) {
    for (const auto& [labels, value] : byLabel) {
      lines.push_back(name + " " + (labels.empty() ? "-" : labels) + " " +
                      std::to_string(value));
    }
  }
  for (const auto& line : report.metricsLines()) {
    lines.push_back(line);
  }
  return lines;
}

} // namespace icn5g
