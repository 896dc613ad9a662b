#include "icn5g/app.hpp"

#include "icn5g/user-plane.hpp"

#include <algorithm>
#include <sstream>

namespace icn5g {

std::string
requestKey(const std::string& service, const std::string& object)
{
  return service + "/" + object;
}

PendingRequest&
ConsumerLedger::openRequest(const std::string& key, TimeMs now)
{
  auto [it, inserted] = requests.try_emplace(key);
  if (inserted) {
    it->second.firstIssued = now;
  }
  return it->second;
}

bool
ConsumerLedger::onDelivery(const std::string& key, TimeMs now)
{
  auto it = requests.find(key);
  if (it == requests.end()) {
    return false;
  }
  ++it->second.deliveries;
  if (it->second.satisfied) {
    ++duplicates;
    return false;
  }
  it->second.satisfied = true;
  it->second.satisfiedAt = now;
  return true;
}

std::int64_t
ConsumerLedger::unsatisfied() const
{
  std::int64_t n = 0;
  for (const auto& [key, req] : requests) {
    if (!req.satisfied) {
      ++n;
    }
  }
  return n;
}

std::vector<std::pair<std::string, TimeMs>>
ConsumerLedger::latencies() const
{
  std::vector<std::pair<std::string, TimeMs>> result;
  for (const auto& [key, req] : requests) {
    if (req.satisfied) {
      result.emplace_back(key, req.satisfiedAt - req.firstIssued);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// AppServerNode
// ---------------------------------------------------------------------------

void
AppServerNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  const auto* pdu = std::get_if<InnerPdu>(&payload);
  if (pdu == nullptr) {
    sim.count("drops", "node=" + id() + ",cause=unexpected_payload");
    return;
  }
  if (const auto* ip = std::get_if<IpPacket>(pdu)) {
    handleIp(sim, *ip);
  }
  else {
    handleIcn(sim, from, *pdu);
  }
}

void
AppServerNode::handleIcn(Sim& sim, const NodeId& from, const InnerPdu& pdu)
{
  if (const auto* interest = std::get_if<Interest>(&pdu)) {
    for (const auto& prefix : m_config.serves) {
      if (prefix.isPrefixOf(interest->name)) {
        ++m_requestsServed;
        sim.count("app_requests_served", "node=" + id());
        Data data{interest->name, m_config.payloadSize, id(), true};
        sim.send(id(), from, WirePayload{InnerPdu{data}});
        return;
      }
    }
    sim.count("drops", "node=" + id() + ",cause=app_noserve");
    return;
  }

  if (const auto* data = std::get_if<Data>(&pdu)) {
    std::string key = data->name.toUri();
    if (m_ledger.requests.count(key) > 0) {
      if (m_ledger.onDelivery(key, sim.now())) {
        sim.count("requests_satisfied", "node=" + id());
        tracePkt(sim, id(), "app", pdu, "", "satisfied");
      }
      else {
        sim.count("duplicate_data", "node=" + id());
        tracePkt(sim, id(), "app", pdu, "", "duplicate");
      }
      return;
    }
    // A named publication pushed along the sensing/monitoring pipeline.
    ++m_publicationsReceived;
    sim.count("publications_received", "node=" + id());
    if (m_config.pushNext) {
      forwardPublication(sim, data->name, data->payloadSize, /*adaptation=*/false);
    }
    return;
  }

  if (const auto* nack = std::get_if<Nack>(&pdu)) {
    ++m_ledger.nacksReceived;
    sim.count("nacks_received", "node=" + id());
    tracePkt(sim, id(), "app", pdu, "", "nack");
    (void)nack; // retry timer drives the retransmission
  }
}

std::optional<IpAddr>
AppServerNode::resolveLocal(const std::string& service, IpAddr client) const
{
  auto dyn = m_dynamicServices.find(service);
  if (dyn != m_dynamicServices.end()) {
    return dyn->second;
  }
  for (const auto& inst : m_config.services) {
    if (inst.service == service && ipPatternMatches(inst.clientPattern, client)) {
      return inst.addr;
    }
  }
  return std::nullopt;
}

void
AppServerNode::handleIp(Sim& sim, const IpPacket& packet)
{
  const std::string& app = packet.app;
  IpAddr myAddr = m_config.addr.value_or(0);

  if (app.rfind("dns?", 0) == 0 && m_config.dnsServer) {
    std::string service = app.substr(4);
    sim.count("dns_lookups", "node=" + id());
    auto resolved = resolveLocal(service, packet.fiveTuple.srcAddr);
    if (!resolved) {
      sim.count("dns_failures", "node=" + id());
    }
    IpPacket reply;
    reply.fiveTuple = packet.fiveTuple.reversed();
    reply.payloadSize = 64;
    reply.app = "dns=" + addrToString(resolved.value_or(0)) + "?" + service;
    sendIp(sim, std::move(reply));
    return;
  }

  if (app.rfind("register?", 0) == 0 && m_config.dnsServer) {
    registerService(app.substr(9), packet.fiveTuple.srcAddr);
    sim.count("service_registrations", "node=" + id());
    return;
  }

  if (app.rfind("req?", 0) == 0) {
    ++m_requestsServed;
    sim.count("app_requests_served", "node=" + id());
    IpPacket reply;
    reply.fiveTuple = packet.fiveTuple.reversed();
    reply.payloadSize = m_config.payloadSize;
    reply.app = "resp?" + app.substr(4);
    sendIp(sim, std::move(reply));
    return;
  }

  if (app.rfind("resp?", 0) == 0) {
    std::string key = app.substr(5);
    if (m_ledger.onDelivery(key, sim.now())) {
      sim.count("requests_satisfied", "node=" + id());
    }
    else {
      sim.count("duplicate_data", "node=" + id());
    }
    return;
  }

  if (app.rfind("dns=", 0) == 0) {
    auto sep = app.find('?');
    std::string addrText = app.substr(4, sep - 4);
    std::string service = app.substr(sep + 1);
    IpAddr addr = parseAddr(addrText).value_or(0);
    if (addr == 0) {
      sim.count("dns_unresolved", "node=" + id());
      return;
    }
    m_dnsCache[service] = addr;
    for (auto it = m_awaitingDns.begin(); it != m_awaitingDns.end();) {
      if (it->second.first == service) {
        auto [svc, object] = it->second;
        it = m_awaitingDns.erase(it);
        sendIpRequest(sim, svc, object, /*isRetry=*/false);
      }
      else {
        ++it;
      }
    }
    return;
  }

  if (app.rfind("push?", 0) == 0) {
    ++m_publicationsReceived;
    sim.count("publications_received", "node=" + id());
    if (m_config.pushNext) {
      forwardPublication(sim, Name::parse(app.substr(5)), packet.payloadSize,
                         /*adaptation=*/false);
    }
    return;
  }

  (void)myAddr;
  sim.count("drops", "node=" + id() + ",cause=unknown_app");
}

void
AppServerNode::sendIp(Sim& sim, IpPacket packet)
{
  for (const auto& [pattern, nextHop] : m_config.ipRoutes) {
    if (ipPatternMatches(pattern, packet.fiveTuple.dstAddr)) {
      sim.send(id(), nextHop, WirePayload{InnerPdu{std::move(packet)}});
      return;
    }
  }
  sim.count("drops", "node=" + id() + ",cause=no_route_ip");
}

void
AppServerNode::sendIcnRequest(Sim& sim, const Name& name, bool isRetry)
{
  std::string key = name.toUri();
  PendingRequest& req = m_ledger.openRequest(key, sim.now());
  if (req.satisfied) {
    return;
  }
  if (isRetry) {
    ++req.retries;
    sim.count("retransmissions", "node=" + id());
  }
  Interest interest{name, sim.nextNonce(), m_config.consumer.interestLifetime, 0};
  sim.count("requests_issued", isRetry ? "" : "node=" + id());
  sim.send(id(), m_config.defaultPeer, WirePayload{InnerPdu{interest}});
  sim.scheduleTimer(id(), sim.now() + m_config.consumer.retryPeriod, TimerTag{"retry", "i:" + key});
}

void
AppServerNode::sendIpRequest(Sim& sim, const std::string& service, const std::string& object,
                             bool isRetry)
{
  std::string key = requestKey(service, object);
  PendingRequest& req = m_ledger.openRequest(key, sim.now());
  if (req.satisfied) {
    return;
  }
  if (isRetry) {
    ++req.retries;
    sim.count("retransmissions", "node=" + id());
    m_dnsCache.erase(service); // the instance may have moved; re-resolve
  }
  auto cached = m_dnsCache.find(service);
  if (cached == m_dnsCache.end()) {
    m_awaitingDns[key] = {service, object};
    if (m_config.dnsAddr) {
      IpPacket query;
      query.fiveTuple = FiveTuple{m_config.addr.value_or(0), *m_config.dnsAddr, 53000, 53,
                                  IpProtocol::UDP};
      query.payloadSize = 64;
      query.app = "dns?" + service;
      sendIp(sim, std::move(query));
    }
    sim.scheduleTimer(id(), sim.now() + m_config.consumer.retryPeriod,
                      TimerTag{"retry", "p:" + key});
    return;
  }
  if (!isRetry) {
    sim.count("requests_issued", "node=" + id());
  }
  IpPacket request;
  request.fiveTuple = FiveTuple{m_config.addr.value_or(0), cached->second, 49000, 80,
                                IpProtocol::TCP};
  request.payloadSize = 200;
  request.app = "req?" + key;
  sendIp(sim, std::move(request));
  sim.scheduleTimer(id(), sim.now() + m_config.consumer.retryPeriod, TimerTag{"retry", "p:" + key});
}

void
AppServerNode::forwardPublication(Sim& sim, const Name& name, std::uint32_t size,
                                  bool adaptation)
{
  if (!m_config.pushNext) {
    return;
  }
  if (m_config.transport == Transport::ICN) {
    Data data{name, size, id(), true};
    sim.send(id(), *m_config.pushNext, WirePayload{InnerPdu{data}});
    return;
  }
  // The DSRC->IP adaptation pays the application-level gateway cost.
  if (adaptation && m_config.translationDelay > 0) {
    sim.count("translation_delays", "node=" + id());
    std::ostringstream key;
    key << name.toUri() << '|' << size;
    sim.scheduleTimer(id(), sim.now() + m_config.translationDelay,
                      TimerTag{"push", key.str()});
    return;
  }
  IpPacket push;
  push.fiveTuple = FiveTuple{m_config.addr.value_or(0), m_config.pushNextAddr.value_or(0),
                             49100, 8080, IpProtocol::TCP};
  push.payloadSize = size;
  push.app = "push?" + name.toUri();
  sim.send(id(), *m_config.pushNext, WirePayload{InnerPdu{std::move(push)}});
}

void
AppServerNode::onTimer(Sim& sim, const TimerTag& timer)
{
  if (timer.kind == "retry") {
    std::string key = timer.key.substr(2);
    auto it = m_ledger.requests.find(key);
    if (it == m_ledger.requests.end() || it->second.satisfied ||
        it->second.retries >= m_config.consumer.maxRetries) {
      return;
    }
    if (timer.key[0] == 'i') {
      sendIcnRequest(sim, Name::parse(key), /*isRetry=*/true);
    }
    else {
      auto slash = key.find('/');
      sendIpRequest(sim, key.substr(0, slash), key.substr(slash + 1), /*isRetry=*/true);
    }
  }
  else if (timer.kind == "push") {
    auto bar = timer.key.find('|');
    Name name = Name::parse(timer.key.substr(0, bar));
    std::uint32_t size = static_cast<std::uint32_t>(std::stoul(timer.key.substr(bar + 1)));
    IpPacket push;
    push.fiveTuple = FiveTuple{m_config.addr.value_or(0), m_config.pushNextAddr.value_or(0),
                               49100, 8080, IpProtocol::TCP};
    push.payloadSize = size;
    push.app = "push?" + name.toUri();
    sim.send(id(), *m_config.pushNext, WirePayload{InnerPdu{std::move(push)}});
  }
}

void
AppServerNode::onAction(Sim& sim, const WorkloadAction& action)
{
  if (action.verb == "request") {
    if (action.args.size() == 1 && !action.args[0].empty() && action.args[0][0] == '/') {
      sendIcnRequest(sim, Name::parse(action.args[0]), /*isRetry=*/false);
    }
    else if (action.args.size() >= 2) {
      sendIpRequest(sim, action.args[0], action.args[1], /*isRetry=*/false);
    }
  }
  else if (action.verb == "publish" && !action.args.empty()) {
    std::uint32_t size = action.args.size() > 1
                           ? static_cast<std::uint32_t>(std::stoul(action.args[1]))
                           : m_config.payloadSize;
    sim.count("sensor_publications", "node=" + id());
    forwardPublication(sim, Name::parse(action.args[0]), size, /*adaptation=*/true);
  }
}

// ---------------------------------------------------------------------------
// UeNode
// ---------------------------------------------------------------------------

void
UeNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  const auto* frame = std::get_if<RadioFrame>(&payload);
  if (frame == nullptr) {
    sim.count("drops", "node=" + id() + ",cause=unexpected_payload");
    return;
  }
  if (const auto* ctrl = std::get_if<ControlMessage>(&frame->inner)) {
    handleNas(sim, *ctrl);
  }
  else {
    handlePdu(sim, from, frame->session, std::get<InnerPdu>(frame->inner));
  }
}

UeSession*
UeNode::activeSession(Transport transport)
{
  for (auto& [sid, session] : m_sessions) {
    if (session.active && session.transport == transport) {
      return &session;
    }
  }
  return nullptr;
}

void
UeNode::sendOnSession(Sim& sim, const UeSession& session, InnerPdu pdu)
{
  sim.send(id(), m_servingRan, WirePayload{RadioFrame{id(), session.id, std::move(pdu)}});
}

void
UeNode::sendNas(Sim& sim, ControlMessage msg)
{
  if (msg.step != 0) {
    sim.recordStep(msg.step, msg.sender, msg.receiver, kindName(msg.body));
  }
  sim.send(id(), m_servingRan, WirePayload{RadioFrame{id(), std::nullopt, std::move(msg)}});
}

void
UeNode::handleNas(Sim& sim, const ControlMessage& msg)
{
  if (const auto* accept = std::get_if<SessionEstablishAccept>(&msg.body)) {
    UeSession session;
    session.id = accept->session;
    session.addr = accept->ueAddr;
    session.assoc = accept->assoc;
    session.anchor = accept->anchor;
    session.active = true;
    // The AMF++ accept carries the UE's ICN-layer default route.
    auto pending = m_pendingTransport.find(msg.correlation);
    session.transport = pending != m_pendingTransport.end() ? pending->second : Transport::ICN;
    m_pendingTransport.erase(msg.correlation);
    m_sessions[session.id] = session;
    sim.trace(id(), "session", "id=" + std::to_string(session.id) + " state=active");
    if (session.transport == Transport::IP && m_config.registersService) {
      registerWithDns(sim);
    }
    auto queued = std::move(m_queuedRequests);
    m_queuedRequests.clear();
    for (const auto& action : queued) {
      onAction(sim, action);
    }
    return;
  }
  if (const auto* reject = std::get_if<SessionEstablishReject>(&msg.body)) {
    m_lastEstablishRejected = true;
    m_pendingTransport.erase(msg.correlation);
    sim.count("establish_rejected", "node=" + id());
    sim.trace(id(), "session", "state=refused cause=" + reject->cause);
    return;
  }
  if (const auto* ack = std::get_if<HandoverAck>(&msg.body)) {
    // Step 9 arrived over the source RAN; switch uplink to the target.
    m_servingRan = ack->targetRan;
    auto it = m_sessions.find(ack->session);
    if (it != m_sessions.end()) {
      UeSession& session = it->second;
      bool addrChanged = ack->newAddr != 0 && ack->newAddr != session.addr;
      session.anchor = ack->newAnchor;
      if (addrChanged) {
        session.addr = ack->newAddr;
        session.assoc.srcAddr = ack->newAddr;
        if (session.transport == Transport::IP) {
          // Network-layer attributes reset: the application session dies.
          sim.count("session_reestablishments", "node=" + id());
          sim.trace(id(), "appsession", "restart cause=addr_reset");
          m_dnsCache.clear();
          if (m_config.registersService) {
            registerWithDns(sim);
          }
        }
      }
    }
    ControlMessage confirm{id(), ack->targetRan, sim.nextCorrelation(), 10,
                           HandoverConfirm{id(), ack->session}};
    sendNas(sim, std::move(confirm));
    return;
  }
  // RegistrationAccept / ReleaseAck need no UE-side action.
}

void
UeNode::handlePdu(Sim& sim, const NodeId& fromRan, std::optional<SessionId> session,
                  const InnerPdu& pdu)
{
  if (const auto* interest = std::get_if<Interest>(&pdu)) {
    if (m_config.producerPrefix && m_config.producerPrefix->isPrefixOf(interest->name)) {
      ++m_producerServes;
      sim.count("producer_serves", "node=" + id());
      Data data{interest->name, m_config.payloadSize, id(), true};
      // Reply on the radio the Interest arrived from; its session tunnel
      // chain holds the PIT reverse path.
      sim.send(id(), fromRan, WirePayload{RadioFrame{id(), session, InnerPdu{data}}});
      return;
    }
    sim.count("drops", "node=" + id() + ",cause=app_noserve");
    return;
  }
  if (const auto* data = std::get_if<Data>(&pdu)) {
    std::string key = data->name.toUri();
    if (m_ledger.onDelivery(key, sim.now())) {
      sim.count("requests_satisfied", "node=" + id());
      tracePkt(sim, id(), "app", pdu, "", "satisfied");
    }
    else {
      sim.count("duplicate_data", "node=" + id());
      tracePkt(sim, id(), "app", pdu, "", "duplicate");
    }
    return;
  }
  if (std::get_if<Nack>(&pdu) != nullptr) {
    ++m_ledger.nacksReceived;
    sim.count("nacks_received", "node=" + id());
    return;
  }
  const auto& ip = std::get<IpPacket>(pdu);
  const std::string& app = ip.app;
  if (app.rfind("req?", 0) == 0) {
    // This UE hosts an IP server (mobile producer comparison case).
    ++m_producerServes;
    sim.count("producer_serves", "node=" + id());
    UeSession* active = activeSession(Transport::IP);
    if (active == nullptr) {
      sim.count("drops", "node=" + id() + ",cause=no_session");
      return;
    }
    IpPacket reply;
    reply.fiveTuple = FiveTuple{active->addr, ip.fiveTuple.srcAddr, 80, ip.fiveTuple.srcPort,
                                IpProtocol::TCP};
    reply.payloadSize = m_config.payloadSize;
    reply.app = "resp?" + app.substr(4);
    sendOnSession(sim, *active, InnerPdu{std::move(reply)});
    return;
  }
  if (app.rfind("resp?", 0) == 0) {
    std::string key = app.substr(5);
    if (m_ledger.onDelivery(key, sim.now())) {
      sim.count("requests_satisfied", "node=" + id());
    }
    else {
      sim.count("duplicate_data", "node=" + id());
    }
    return;
  }
  if (app.rfind("dns=", 0) == 0) {
    auto sep = app.find('?');
    IpAddr addr = parseAddr(app.substr(4, sep - 4)).value_or(0);
    std::string service = app.substr(sep + 1);
    if (addr == 0) {
      sim.count("dns_unresolved", "node=" + id());
      return;
    }
    m_dnsCache[service] = addr;
    for (auto it = m_awaitingDns.begin(); it != m_awaitingDns.end();) {
      if (it->second.first == service) {
        auto [svc, object] = it->second;
        it = m_awaitingDns.erase(it);
        sendIpRequest(sim, svc, object, /*isRetry=*/false);
      }
      else {
        ++it;
      }
    }
    return;
  }
  sim.count("drops", "node=" + id() + ",cause=unknown_app");
}

void
UeNode::sendIcnRequest(Sim& sim, const Name& name, bool isRetry)
{
  UeSession* session = activeSession(Transport::ICN);
  if (session == nullptr) {
    return; // queued by the caller
  }
  std::string key = name.toUri();
  PendingRequest& req = m_ledger.openRequest(key, sim.now());
  if (req.satisfied) {
    return;
  }
  if (isRetry) {
    ++req.retries;
    sim.count("retransmissions", "node=" + id());
  }
  else {
    sim.count("requests_issued", "node=" + id());
  }
  Interest interest{name, sim.nextNonce(), m_config.consumer.interestLifetime, 0};
  sendOnSession(sim, *session, InnerPdu{interest});
  sim.scheduleTimer(id(), sim.now() + m_config.consumer.retryPeriod, TimerTag{"retry", "i:" + key});
}

void
UeNode::sendIpRequest(Sim& sim, const std::string& service, const std::string& object,
                      bool isRetry)
{
  UeSession* session = activeSession(Transport::IP);
  if (session == nullptr) {
    return;
  }
  std::string key = requestKey(service, object);
  PendingRequest& req = m_ledger.openRequest(key, sim.now());
  if (req.satisfied) {
    return;
  }
  if (isRetry) {
    ++req.retries;
    sim.count("retransmissions", "node=" + id());
    m_dnsCache.erase(service);
  }
  auto cached = m_dnsCache.find(service);
  if (cached == m_dnsCache.end()) {
    m_awaitingDns[key] = {service, object};
    if (m_config.dnsAddr) {
      IpPacket query;
      query.fiveTuple = FiveTuple{session->addr, *m_config.dnsAddr, 53000, 53, IpProtocol::UDP};
      query.payloadSize = 64;
      query.app = "dns?" + service;
      sendOnSession(sim, *session, InnerPdu{std::move(query)});
    }
    sim.scheduleTimer(id(), sim.now() + m_config.consumer.retryPeriod,
                      TimerTag{"retry", "p:" + key});
    return;
  }
  if (!isRetry) {
    sim.count("requests_issued", "node=" + id());
  }
  IpPacket request;
  request.fiveTuple = FiveTuple{session->addr, cached->second, 49000, 80, IpProtocol::TCP};
  request.payloadSize = 200;
  request.app = "req?" + key;
  sendOnSession(sim, *session, InnerPdu{std::move(request)});
  sim.scheduleTimer(id(), sim.now() + m_config.consumer.retryPeriod, TimerTag{"retry", "p:" + key});
}

void
UeNode::registerWithDns(Sim& sim)
{
  UeSession* session = activeSession(Transport::IP);
  if (session == nullptr || !m_config.dnsAddr || !m_config.registersService) {
    return;
  }
  IpPacket reg;
  reg.fiveTuple = FiveTuple{session->addr, *m_config.dnsAddr, 53001, 53, IpProtocol::UDP};
  reg.payloadSize = 64;
  reg.app = "register?" + *m_config.registersService;
  sendOnSession(sim, *session, InnerPdu{std::move(reg)});
}

void
UeNode::onTimer(Sim& sim, const TimerTag& timer)
{
  if (timer.kind != "retry") {
    return;
  }
  std::string key = timer.key.substr(2);
  auto it = m_ledger.requests.find(key);
  if (it == m_ledger.requests.end() || it->second.satisfied ||
      it->second.retries >= m_config.consumer.maxRetries) {
    return;
  }
  if (timer.key[0] == 'i') {
    sendIcnRequest(sim, Name::parse(key), /*isRetry=*/true);
  }
  else {
    auto slash = key.find('/');
    sendIpRequest(sim, key.substr(0, slash), key.substr(slash + 1), /*isRetry=*/true);
  }
}

void
UeNode::onAction(Sim& sim, const WorkloadAction& action)
{
  if (action.verb == "attach" && !action.args.empty()) {
    m_servingRan = action.args[0];
    ControlMessage reg{id(), "", sim.nextCorrelation(), 0, RegistrationRequest{id()}};
    // Receiver resolves at the AMF; the RAN relays NAS uplink.
    reg.receiver = "amf";
    for (const auto& peer : sim.neighbors(m_servingRan)) {
      const Node* node = sim.findNode(peer);
      if (node != nullptr && node->role() == NodeRole::AMF) {
        reg.receiver = peer;
        break;
      }
    }
    sendNas(sim, std::move(reg));
  }
  else if (action.verb == "establish" && action.args.size() >= 2) {
    Transport transport = action.args[1] == "ip" ? Transport::IP : Transport::ICN;
    SessionEstablishRequest req;
    req.ue = id();
    req.sliceHint = action.args[0] == "-" ? "" : action.args[0];
    req.transport = transport;
    req.uePrefix = m_config.producerPrefix;
    CorrelationId corr = sim.nextCorrelation();
    m_pendingTransport[corr] = transport;
    ControlMessage msg{id(), "", corr, 0, std::move(req)};
    for (const auto& peer : sim.neighbors(m_servingRan)) {
      const Node* node = sim.findNode(peer);
      if (node != nullptr && node->role() == NodeRole::AMF) {
        msg.receiver = peer;
        break;
      }
    }
    sendNas(sim, std::move(msg));
  }
  else if (action.verb == "request") {
    bool icn = action.args.size() == 1 && !action.args[0].empty() && action.args[0][0] == '/';
    Transport transport = icn ? Transport::ICN : Transport::IP;
    if (activeSession(transport) == nullptr) {
      m_queuedRequests.push_back(action);
      return;
    }
    if (icn) {
      sendIcnRequest(sim, Name::parse(action.args[0]), /*isRetry=*/false);
    }
    else if (action.args.size() >= 2) {
      sendIpRequest(sim, action.args[0], action.args[1], /*isRetry=*/false);
    }
  }
  else if (action.verb == "handover" && !action.args.empty()) {
    HandoverRequest req;
    req.ue = id();
    req.targetRan = action.args[0];
    for (const auto& [sid, session] : m_sessions) {
      if (session.active) {
        req.sessions.push_back(sid);
      }
    }
    if (m_config.producerPrefix) {
      req.names.push_back(*m_config.producerPrefix);
    }
    ControlMessage msg{id(), m_servingRan, sim.nextCorrelation(), 1, std::move(req)};
    sendNas(sim, std::move(msg));
  }
  else if (action.verb == "detach") {
    ControlMessage msg{id(), m_servingRan, sim.nextCorrelation(), 0,
                       ReleaseCommand{id(), 0, "", ""}};
    sendNas(sim, std::move(msg));
  }
}

void
UeNode::dumpState(Sim& sim) const
{
  for (const auto& [sid, session] : m_sessions) {
    std::ostringstream os;
    os << "kind=uesession id=" << sid << " transport=" << toString(session.transport)
       << " anchor=" << session.anchor << " addr=" << addrToString(session.addr)
       << " active=" << (session.active ? 1 : 0);
    sim.trace(id(), "state", os.str());
  }
}

} // namespace icn5g
