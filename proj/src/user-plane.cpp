#include "icn5g/user-plane.hpp"

#include <algorithm>
#include <sstream>

namespace icn5g {

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

bool
ipPatternMatches(const std::string& pattern, IpAddr addr)
{
  std::string rendered = addrToString(addr);
  if (pattern == rendered || pattern == "default") {
    return true;
  }
  auto star = pattern.find('*');
  if (star == std::string::npos) {
    return false;
  }
  return rendered.compare(0, star, pattern, 0, star) == 0;
}

void
schedulePitExpiry(Sim& sim, const NodeId& node, const Interest& interest)
{
  sim.scheduleTimer(node, sim.now() + interest.lifetime,
                    TimerTag{"pit", interest.name.toUri()});
}

void
tracePkt(Sim& sim, const NodeId& node, const char* dir, const InnerPdu& pdu,
         const std::string& tunnel, const std::string& outcome)
{
  std::ostringstream os;
  os << "dir=" << dir << ' ' << pduSummary(pdu)
     << " tunnel=" << (tunnel.empty() ? "-" : tunnel) << " outcome=" << outcome;
  sim.trace(node, "pkt", os.str());
}

static void
sendControl(Sim& sim, const NodeId& linkFrom, const NodeId& linkTo, ControlMessage msg)
{
  sim.sendControl(linkFrom, linkTo, std::move(msg));
}

// ---------------------------------------------------------------------------
// UpfState
// ---------------------------------------------------------------------------

const TunnelRecord*
UpfState::findTunnel(const TunnelId& id) const
{
  auto it = m_tunnels.find(id);
  return it == m_tunnels.end() ? nullptr : &it->second;
}

std::set<TunnelId>
UpfState::knownTunnelIds() const
{
  std::set<TunnelId> ids;
  for (const auto& [id, rec] : m_tunnels) {
    ids.insert(id);
  }
  return ids;
}

void
UpfState::removeTunnel(const TunnelId& id)
{
  m_tunnels.erase(id);
}

void
UpfState::removeTunnelCascade(const TunnelId& id)
{
  m_tunnels.erase(id);
  auto drop = [&id] (const ClassifierRule& r) { return r.actionTunnel == id; };
  m_ulRules.erase(std::remove_if(m_ulRules.begin(), m_ulRules.end(), drop), m_ulRules.end());
  m_dlRules.erase(std::remove_if(m_dlRules.begin(), m_dlRules.end(), drop), m_dlRules.end());
}

void
UpfState::addRule(const ClassifierRule& rule)
{
  auto& rules = rule.direction == Direction::UL ? m_ulRules : m_dlRules;
  for (auto& r : rules) {
    if (r.match == rule.match && r.priority == rule.priority) {
      r = rule; // at most one rule per (match, priority)
      return;
    }
  }
  rules.push_back(rule);
}

void
UpfState::removeSession(SessionId session)
{
  auto drop = [session] (const ClassifierRule& r) { return r.session == session; };
  m_ulRules.erase(std::remove_if(m_ulRules.begin(), m_ulRules.end(), drop), m_ulRules.end());
  m_dlRules.erase(std::remove_if(m_dlRules.begin(), m_dlRules.end(), drop), m_dlRules.end());
  for (auto it = m_tunnels.begin(); it != m_tunnels.end();) {
    it = it->second.session == session ? m_tunnels.erase(it) : std::next(it);
  }
}

std::optional<std::string>
UpfState::applyOps(const std::vector<N4Op>& ops)
{
  UpfState next = *this;
  for (const auto& op : ops) {
    switch (op.kind) {
      case N4Op::Kind::ADD_TUNNEL:
        next.addTunnel(TunnelRecord{op.tunnel, op.peer, op.towardRan, op.assoc, op.session});
        break;
      case N4Op::Kind::REMOVE_TUNNEL:
        next.removeTunnel(op.tunnel);
        break;
      case N4Op::Kind::ADD_RULE:
        next.addRule(op.rule);
        break;
      case N4Op::Kind::REMOVE_SESSION:
        next.removeSession(op.session);
        break;
    }
  }
  if (auto error = next.validate()) {
    return error; // no packet observes a partial update
  }
  *this = std::move(next);
  return std::nullopt;
}

std::optional<std::string>
UpfState::validate() const
{
  for (const auto* rules : {&m_ulRules, &m_dlRules}) {
    for (const auto& r : *rules) {
      if (m_tunnels.count(r.actionTunnel) == 0) {
        return "rule references unknown tunnel " + r.actionTunnel;
      }
    }
  }
  return std::nullopt;
}

std::optional<TunnelId>
UpfState::classify(const FiveTuple& ft, Direction dir) const
{
  const auto& rules = dir == Direction::UL ? m_ulRules : m_dlRules;
  const ClassifierRule* best = nullptr;
  for (const auto& r : rules) {
    if (r.match.matches(ft) && (best == nullptr || r.priority > best->priority)) {
      best = &r; // strict '>' keeps the earliest-inserted rule on ties
    }
  }
  if (best == nullptr) {
    return std::nullopt;
  }
  return best->actionTunnel;
}

bool
UpfState::rulesResolve() const
{
  return !validate().has_value();
}

// ---------------------------------------------------------------------------
// UlClNode
// ---------------------------------------------------------------------------

void
UlClNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  (void)from;
  if (const auto* tp = std::get_if<TunneledPacket>(&payload)) {
    handleTunneled(sim, *tp);
  }
  else if (const auto* ctrl = std::get_if<ControlMessage>(&payload)) {
    handleControl(sim, *ctrl);
  }
  else {
    sim.count("drops", "node=" + id() + ",cause=unexpected_payload");
  }
}

void
UlClNode::handleTunneled(Sim& sim, const TunneledPacket& tp)
{
  const TunnelRecord* in = m_upf.findTunnel(tp.tunnelId);
  if (in == nullptr) {
    sim.count("drops", "node=" + id() + ",cause=unknown_tunnel");
    tracePkt(sim, id(), "?", tp.inner, tp.tunnelId, "dropped:unknown_tunnel");
    return;
  }

  // A packet arriving on the RAN-side tunnel is moving uplink.
  Direction dir = in->towardRan ? Direction::UL : Direction::DL;

  // ICN PDUs classify on the carrying tunnel's IP association; IP PDUs on
  // their own five tuple.
  FiveTuple ft;
  if (const auto* ip = std::get_if<IpPacket>(&tp.inner)) {
    ft = ip->fiveTuple;
  }
  else {
    ft = dir == Direction::UL ? in->assoc : in->assoc.reversed();
  }

  auto action = m_upf.classify(ft, dir);
  if (!action) {
    sim.count("drops", "node=" + id() + ",cause=no_match");
    tracePkt(sim, id(), toString(dir), tp.inner, tp.tunnelId, "dropped:no_match");
    return;
  }
  const TunnelRecord* out = m_upf.findTunnel(*action);
  tracePkt(sim, id(), toString(dir), tp.inner, *action, "forwarded");
  sim.send(id(), out->peer, WirePayload{TunneledPacket{*action, tp.inner}});
}

void
UlClNode::handleControl(Sim& sim, const ControlMessage& msg)
{
  if (const auto* n4 = std::get_if<N4Update>(&msg.body)) {
    auto error = m_upf.applyOps(n4->ops);
    if (error) {
      sim.count("n4_rejects", "node=" + id());
    }
    ControlMessage ack{id(), msg.sender, msg.correlation, msg.step,
                       N4Ack{n4->session, !error.has_value(), error.value_or("")}};
    sendControl(sim, id(), msg.sender, std::move(ack));
  }
  else if (const auto* setup = std::get_if<TunnelSetup>(&msg.body)) {
    bool ok = m_upf.findTunnel(setup->tunnel) != nullptr;
    ControlMessage ack{id(), msg.sender, msg.correlation, msg.step,
                       TunnelSetupAck{setup->tunnel, ok}};
    sendControl(sim, id(), msg.sender, std::move(ack));
  }
  else if (const auto* release = std::get_if<TunnelRelease>(&msg.body)) {
    m_upf.removeTunnelCascade(release->tunnel);
    ControlMessage ack{id(), msg.sender, msg.correlation, msg.step,
                       TunnelReleaseAck{release->tunnel}};
    sendControl(sim, id(), msg.sender, std::move(ack));
  }
  else {
    sim.count("drops", "node=" + id() + ",cause=unexpected_control");
  }
}

void
UlClNode::dumpState(Sim& sim) const
{
  for (const auto& [tid, rec] : m_upf.tunnels()) {
    std::ostringstream os;
    os << "kind=tunnel id=" << tid << " peer=" << rec.peer << " session=" << rec.session
       << " toward=" << (rec.towardRan ? "ran" : "anchor");
    sim.trace(id(), "state", os.str());
  }
  for (Direction dir : {Direction::UL, Direction::DL}) {
    for (const auto& r : m_upf.rules(dir)) {
      std::ostringstream os;
      os << "kind=rule dir=" << toString(dir) << " match=" << r.match.toString()
         << " tunnel=" << r.actionTunnel << " prio=" << r.priority
         << " session=" << r.session;
      sim.trace(id(), "state", os.str());
    }
  }
}

// ---------------------------------------------------------------------------
// RanNode
// ---------------------------------------------------------------------------

void
RanNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  if (const auto* frame = std::get_if<RadioFrame>(&payload)) {
    handleRadio(sim, *frame);
  }
  else if (const auto* tp = std::get_if<TunneledPacket>(&payload)) {
    handleTunneled(sim, from, *tp);
  }
  else if (const auto* ctrl = std::get_if<ControlMessage>(&payload)) {
    handleControl(sim, from, *ctrl);
  }
  else {
    sim.count("drops", "node=" + id() + ",cause=unexpected_payload");
  }
}

NodeId
RanNode::amfNode(Sim& sim) const
{
  for (const auto& peer : sim.neighbors(id())) {
    const Node* node = sim.findNode(peer);
    if (node != nullptr && node->role() == NodeRole::AMF) {
      return peer;
    }
  }
  throw ValidationError("RAN " + id() + " has no AMF link");
}

void
RanNode::handleRadio(Sim& sim, const RadioFrame& frame)
{
  bool newlyAttached = m_attached.insert(frame.ue).second; // radio association
  if (newlyAttached) {
    sim.trace(id(), "attach", "ue=" + frame.ue);
    flushHeld(sim);
  }

  if (const auto* ctrl = std::get_if<ControlMessage>(&frame.inner)) {
    if (ctrl->receiver == id()) {
      if (const auto* request = std::get_if<HandoverRequest>(&ctrl->body)) {
        // Step 1 was recorded at the UE; answer with Step 2 toward the AMF.
        ControlMessage required{id(), amfNode(sim), sim.nextCorrelation(), 2,
                                HandoverRequired{request->ue, request->targetRan,
                                                 request->sessions}};
        sendControl(sim, id(), amfNode(sim), std::move(required));
        return;
      }
      if (const auto* confirm = std::get_if<HandoverConfirm>(&ctrl->body)) {
        // Step 10 lands here; the new path is now set end to end.
        flushHeld(sim);
        ControlMessage success{id(), amfNode(sim), sim.nextCorrelation(), 11,
                               HandoverSuccess{confirm->ue, confirm->session}};
        sendControl(sim, id(), amfNode(sim), std::move(success));
      }
      else if (const auto* release = std::get_if<ReleaseCommand>(&ctrl->body)) {
        // UE-initiated detach.
        m_attached.erase(release->ue);
        for (auto it = m_ueTunnels.begin(); it != m_ueTunnels.end();) {
          it = it->first.first == release->ue ? m_ueTunnels.erase(it) : std::next(it);
        }
        ControlMessage ack{id(), release->ue, ctrl->correlation, 0, ReleaseAck{release->session}};
        sim.send(id(), release->ue, WirePayload{RadioFrame{release->ue, std::nullopt, ack}});
      }
      return;
    }
    // NAS uplink: relay toward the AMF.
    sendControl(sim, id(), amfNode(sim), *ctrl);
    return;
  }

  const auto& pdu = std::get<InnerPdu>(frame.inner);
  if (!frame.session) {
    sim.count("drops", "node=" + id() + ",cause=no_session");
    return;
  }
  relayUplink(sim, frame.ue, *frame.session, pdu);
}

void
RanNode::relayUplink(Sim& sim, const NodeId& ue, SessionId session, const InnerPdu& pdu)
{
  if (m_attached.count(ue) == 0) {
    sim.count("drops", "node=" + id() + ",cause=not_attached");
    tracePkt(sim, id(), "ul", pdu, "", "dropped:not_attached");
    return;
  }
  auto it = m_ueTunnels.find({ue, session});
  if (it == m_ueTunnels.end()) {
    sim.count("drops", "node=" + id() + ",cause=no_session_tunnel");
    tracePkt(sim, id(), "ul", pdu, "", "dropped:no_session_tunnel");
    return;
  }
  const TunnelRecord* rec = m_upf.findTunnel(it->second);
  tracePkt(sim, id(), "ul", pdu, it->second, "forwarded");
  sim.send(id(), rec->peer, WirePayload{TunneledPacket{it->second, pdu}});
}

void
RanNode::handleTunneled(Sim& sim, const NodeId& from, const TunneledPacket& tp)
{
  (void)from;
  const TunnelRecord* rec = m_upf.findTunnel(tp.tunnelId);
  if (rec == nullptr) {
    // Arrived before Step 8 installed the tunnel: hold, replay on install.
    m_held.push_back(tp);
    sim.count("ran_held", "node=" + id());
    tracePkt(sim, id(), "dl", tp.inner, tp.tunnelId, "held:tunnel_pending");
    return;
  }
  deliverDownlink(sim, *rec, tp.inner);
}

void
RanNode::deliverDownlink(Sim& sim, const TunnelRecord& record, const InnerPdu& pdu)
{
  const NodeId* ue = nullptr;
  SessionId session = 0;
  for (const auto& [key, tid] : m_ueTunnels) {
    if (tid == record.id) {
      ue = &key.first;
      session = key.second;
      break;
    }
  }
  if (ue == nullptr || m_attached.count(*ue) == 0) {
    m_held.push_back(TunneledPacket{record.id, pdu});
    sim.count("ran_held", "node=" + id());
    tracePkt(sim, id(), "dl", pdu, record.id, "held:ue_pending");
    return;
  }
  tracePkt(sim, id(), "dl", pdu, record.id, "delivered");
  sim.send(id(), *ue, WirePayload{RadioFrame{*ue, session, pdu}});
}

void
RanNode::flushHeld(Sim& sim)
{
  std::deque<TunneledPacket> pending;
  pending.swap(m_held);
  for (auto& tp : pending) {
    const TunnelRecord* rec = m_upf.findTunnel(tp.tunnelId);
    if (rec == nullptr) {
      m_held.push_back(std::move(tp)); // still waiting, keep arrival order
      continue;
    }
    sim.count("ran_flushed", "node=" + id());
    deliverDownlink(sim, *rec, tp.inner);
  }
}

void
RanNode::handleControl(Sim& sim, const NodeId& from, const ControlMessage& msg)
{
  if (msg.receiver != id()) {
    // NAS downlink toward an attached UE.
    if (m_attached.count(msg.receiver) == 0) {
      sim.count("drops", "node=" + id() + ",cause=nas_unattached");
      return;
    }
    sim.send(id(), msg.receiver, WirePayload{RadioFrame{msg.receiver, std::nullopt, msg}});
    return;
  }

  if (const auto* install = std::get_if<SessionInstall>(&msg.body)) {
    m_upf.addTunnel(TunnelRecord{install->tunnel, install->ulcl, false, install->assoc,
                                 install->session});
    CorrelationId corr = sim.nextCorrelation();
    m_pendingSetup[corr] = PendingInstall{msg.correlation, from, *install};
    ControlMessage setup{id(), install->ulcl, corr, msg.step,
                         TunnelSetup{install->tunnel, install->session, id()}};
    sendControl(sim, id(), install->ulcl, std::move(setup));
  }
  else if (const auto* ack = std::get_if<TunnelSetupAck>(&msg.body)) {
    auto it = m_pendingSetup.find(msg.correlation);
    if (it == m_pendingSetup.end()) {
      return;
    }
    PendingInstall pending = it->second;
    m_pendingSetup.erase(it);
    if (ack->ok) {
      m_ueTunnels[{pending.install.ue, pending.install.session}] = pending.install.tunnel;
      flushHeld(sim);
    }
    else {
      m_upf.removeTunnel(pending.install.tunnel);
    }
    ControlMessage reply{id(), pending.amf, pending.amfCorr, msg.step,
                         SessionInstallAck{pending.install.session, ack->ok}};
    sendControl(sim, id(), pending.amf, std::move(reply));
  }
  else if (const auto* release = std::get_if<ReleaseCommand>(&msg.body)) {
    // Step 11: drop the radio association and the RAN-side tunnel state.
    m_attached.erase(release->ue);
    m_ueTunnels.erase({release->ue, release->session});
    m_upf.removeTunnel(release->tunnel);
    std::size_t before = m_held.size();
    std::erase_if(m_held, [&] (const TunneledPacket& tp) { return tp.tunnelId == release->tunnel; });
    if (before != m_held.size()) {
      sim.count("drops", "node=" + id() + ",cause=released",
                static_cast<std::int64_t>(before - m_held.size()));
    }
    CorrelationId corr = sim.nextCorrelation();
    m_pendingRelease[corr] = PendingRelease{msg.correlation, from, release->session};
    ControlMessage cmd{id(), release->ulcl, corr, msg.step,
                       TunnelRelease{release->tunnel, release->session}};
    sendControl(sim, id(), release->ulcl, std::move(cmd));
  }
  else if (std::get_if<TunnelReleaseAck>(&msg.body) != nullptr) {
    auto it = m_pendingRelease.find(msg.correlation);
    if (it == m_pendingRelease.end()) {
      return;
    }
    PendingRelease pending = it->second;
    m_pendingRelease.erase(it);
    ControlMessage reply{id(), pending.amf, pending.amfCorr, msg.step,
                         ReleaseAck{pending.session}};
    sendControl(sim, id(), pending.amf, std::move(reply));
  }
  else {
    sim.count("drops", "node=" + id() + ",cause=unexpected_control");
  }
}

void
RanNode::dumpState(Sim& sim) const
{
  for (const auto& ue : m_attached) {
    sim.trace(id(), "state", "kind=att ue=" + ue);
  }
  for (const auto& [key, tid] : m_ueTunnels) {
    std::ostringstream os;
    os << "kind=uetunnel ue=" << key.first << " session=" << key.second << " tunnel=" << tid;
    sim.trace(id(), "state", os.str());
  }
  for (const auto& [tid, rec] : m_upf.tunnels()) {
    std::ostringstream os;
    os << "kind=tunnel id=" << tid << " peer=" << rec.peer << " session=" << rec.session;
    sim.trace(id(), "state", os.str());
  }
}

// ---------------------------------------------------------------------------
// IcnApNode
// ---------------------------------------------------------------------------

void
IcnApNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  if (const auto* tp = std::get_if<TunneledPacket>(&payload)) {
    auto [tunnel, inner] = decapsulate(*tp);
    if (const auto* ip = std::get_if<IpPacket>(&inner)) {
      tracePkt(sim, id(), "ul", inner, tunnel, "decapsulated");
      routeIp(sim, *ip, /*fromTunnel=*/true);
      return;
    }
    const Face* face = m_forwarder.findTunnelFace(tunnel);
    if (face == nullptr) {
      face = &m_forwarder.addFace(FaceKind::TUNNEL, tunnel);
    }
    processIcn(sim, inner, face->id);
  }
  else if (const auto* pdu = std::get_if<InnerPdu>(&payload)) {
    if (const auto* ip = std::get_if<IpPacket>(pdu)) {
      routeIp(sim, *ip, /*fromTunnel=*/false);
      return;
    }
    const Face* face = m_forwarder.findLinkFace(from);
    if (face == nullptr) {
      face = &m_forwarder.addFace(FaceKind::LINK, from);
    }
    processIcn(sim, *pdu, face->id);
  }
  else if (const auto* ctrl = std::get_if<ControlMessage>(&payload)) {
    handleControl(sim, from, *ctrl);
  }
}

void
IcnApNode::processIcn(Sim& sim, const InnerPdu& pdu, FaceId inFace)
{
  TimeMs now = sim.now();
  if (const auto* interest = std::get_if<Interest>(&pdu)) {
    ForwarderActions result = m_forwarder.processInterest(*interest, inFace, now);
    tracePkt(sim, id(), "fwd", pdu, "", toString(result.outcome));
    if (result.outcome == ForwardOutcome::CS_HIT) {
      sim.count("cs_hits", "node=" + id());
    }
    else if (result.outcome == ForwardOutcome::AGGREGATED) {
      sim.count("pit_aggregations", "node=" + id());
    }
    else if (result.outcome == ForwardOutcome::FORWARDED_FIB ||
             result.outcome == ForwardOutcome::FORWARDED_LABEL) {
      sim.count("upstream_interests", "node=" + id());
      schedulePitExpiry(sim, id(), *interest);
    }
    else if (result.outcome == ForwardOutcome::DUPLICATE_NONCE) {
      sim.count("drops", "node=" + id() + ",cause=dup_nonce");
    }
    executeActions(sim, result, pdu);
  }
  else if (const auto* data = std::get_if<Data>(&pdu)) {
    ForwarderActions result = m_forwarder.processData(*data, inFace, now);
    tracePkt(sim, id(), "fwd", pdu, "", toString(result.outcome));
    if (result.outcome == ForwardOutcome::UNSOLICITED) {
      sim.count("drops", "node=" + id() + ",cause=unsolicited");
    }
    executeActions(sim, result, pdu);
  }
  else if (const auto* nack = std::get_if<Nack>(&pdu)) {
    ForwarderActions result = m_forwarder.processNack(*nack, inFace, now);
    tracePkt(sim, id(), "fwd", pdu, "", toString(result.outcome));
    executeActions(sim, result, pdu);
  }
}

void
IcnApNode::executeActions(Sim& sim, const ForwarderActions& result, const InnerPdu& original)
{
  (void)original;
  for (const auto& action : result.actions) {
    const Face* face = m_forwarder.findFace(action.face);
    if (face == nullptr) {
      sim.count("drops", "node=" + id() + ",cause=face_gone");
      continue;
    }
    switch (action.kind) {
      case ForwarderAction::Kind::SEND_INTEREST:
        emitOnFace(sim, *face, action.interest);
        break;
      case ForwarderAction::Kind::SEND_DATA:
        emitOnFace(sim, *face, action.data);
        break;
      case ForwarderAction::Kind::SEND_NACK:
        emitOnFace(sim, *face, action.nack);
        break;
    }
  }
}

void
IcnApNode::emitOnFace(Sim& sim, const Face& face, InnerPdu pdu)
{
  if (face.kind == FaceKind::TUNNEL) {
    const TunnelRecord* rec = m_upf.findTunnel(face.target);
    if (rec == nullptr) {
      sim.count("drops", "node=" + id() + ",cause=tunnel_not_ready");
      tracePkt(sim, id(), "dl", pdu, face.target, "dropped:tunnel_not_ready");
      return;
    }
    tracePkt(sim, id(), "dl", pdu, face.target, "encapsulated");
    sim.send(id(), rec->peer,
             WirePayload{encapsulate(std::move(pdu), face.target, m_upf.knownTunnelIds())});
    return;
  }
  if (face.kind == FaceKind::LINK) {
    sim.send(id(), face.target, WirePayload{std::move(pdu)});
    return;
  }
  sim.count("drops", "node=" + id() + ",cause=no_local_app");
}

void
IcnApNode::routeIp(Sim& sim, const IpPacket& packet, bool fromTunnel)
{
  if (!fromTunnel) {
    // Downlink: session rules steer toward the serving UL-CL.
    if (auto tunnel = m_upf.classify(packet.fiveTuple, Direction::DL)) {
      const TunnelRecord* rec = m_upf.findTunnel(*tunnel);
      tracePkt(sim, id(), "dl", packet, *tunnel, "encapsulated");
      sim.send(id(), rec->peer,
               WirePayload{TunneledPacket{*tunnel, packet}});
      return;
    }
  }
  for (const auto& [pattern, nextHop] : m_ipRoutes) {
    if (ipPatternMatches(pattern, packet.fiveTuple.dstAddr)) {
      tracePkt(sim, id(), fromTunnel ? "ul" : "fwd", packet, "", "routed");
      sim.send(id(), nextHop, WirePayload{InnerPdu{packet}});
      return;
    }
  }
  sim.count("drops", "node=" + id() + ",cause=no_match");
  tracePkt(sim, id(), fromTunnel ? "ul" : "dl", packet, "", "dropped:no_match");
}

void
IcnApNode::handleControl(Sim& sim, const NodeId& from, const ControlMessage& msg)
{
  (void)from;
  if (const auto* n4 = std::get_if<N4Update>(&msg.body)) {
    auto error = m_upf.applyOps(n4->ops);
    // Tunnel faces appear as the UPF learns the tunnels.
    for (const auto& [tid, rec] : m_upf.tunnels()) {
      if (m_forwarder.findTunnelFace(tid) == nullptr) {
        m_forwarder.addFace(FaceKind::TUNNEL, tid);
      }
    }
    ControlMessage ack{id(), msg.sender, msg.correlation, msg.step,
                       N4Ack{n4->session, !error.has_value(), error.value_or("")}};
    sendControl(sim, id(), msg.sender, std::move(ack));
  }
  else if (const auto* install = std::get_if<IcnAnchorInstall>(&msg.body)) {
    // NIcn: the anchor's UPF part learns the DL tunnel, the forwarder gets
    // the session FIB state (Step 6i and establishment).
    m_upf.addTunnel(TunnelRecord{install->dlTunnel, install->dlPeer, true, {},
                                 install->session});
    const Face* face = m_forwarder.findTunnelFace(install->dlTunnel);
    if (face == nullptr) {
      face = &m_forwarder.addFace(FaceKind::TUNNEL, install->dlTunnel);
    }
    m_dlTunnels[install->session] = install->dlTunnel;
    if (install->uePrefix) {
      m_forwarder.fibAdd(*install->uePrefix, face->id);
    }
    ControlMessage ack{id(), msg.sender, msg.correlation, msg.step,
                       IcnSessionAck{install->session, true, ""}};
    sendControl(sim, id(), msg.sender, std::move(ack));
  }
  else if (const auto* label = std::get_if<IcnLabelInstall>(&msg.body)) {
    const Face* face = m_forwarder.findLinkFace(label->targetAnchor);
    bool ok = face != nullptr;
    std::string cause;
    if (ok) {
      m_forwarder.installForwardingLabel(
        ForwardingLabel{label->prefix, label->targetAnchor, face->id});
    }
    else {
      cause = "anchor unreachable: " + label->targetAnchor;
    }
    ControlMessage ack{id(), msg.sender, msg.correlation, msg.step,
                       IcnSessionAck{label->session, ok, cause}};
    sendControl(sim, id(), msg.sender, std::move(ack));
  }
  else if (const auto* release = std::get_if<IcnSessionRelease>(&msg.body)) {
    bool ok = true;
    std::string cause;
    if (release->removeLabel && release->uePrefix) {
      try {
        m_forwarder.removeForwardingLabel(*release->uePrefix);
      }
      catch (const NotFound&) {
        ok = false;
        cause = "label missing";
      }
    }
    if (release->uePrefix) {
      m_forwarder.fibRemovePrefix(*release->uePrefix);
    }
    auto it = m_dlTunnels.find(release->session);
    if (it != m_dlTunnels.end()) {
      const Face* face = m_forwarder.findTunnelFace(it->second);
      if (face != nullptr) {
        m_forwarder.removeFace(face->id);
      }
      m_upf.removeTunnelCascade(it->second);
      m_dlTunnels.erase(it);
    }
    ControlMessage ack{id(), msg.sender, msg.correlation, msg.step,
                       IcnSessionAck{release->session, ok, cause}};
    sendControl(sim, id(), msg.sender, std::move(ack));
  }
  else {
    sim.count("drops", "node=" + id() + ",cause=unexpected_control");
  }
}

void
IcnApNode::onTimer(Sim& sim, const TimerTag& timer)
{
  if (timer.kind == "pit") {
    auto expired = m_forwarder.expirePit(sim.now());
    for (const auto& name : expired) {
      sim.count("pit_timeouts", "node=" + id());
      sim.trace(id(), "pitexpire", "name=" + name.toUri());
    }
  }
}

void
IcnApNode::dumpState(Sim& sim) const
{
  m_forwarder.dumpState([&] (const std::string& line) {
    sim.trace(id(), "state", "kind=" + line);
  });
  for (const auto& [tid, rec] : m_upf.tunnels()) {
    std::ostringstream os;
    os << "kind=tunnel id=" << tid << " peer=" << rec.peer << " session=" << rec.session;
    sim.trace(id(), "state", os.str());
  }
  for (Direction dir : {Direction::UL, Direction::DL}) {
    for (const auto& r : m_upf.rules(dir)) {
      std::ostringstream os;
      os << "kind=rule dir=" << toString(dir) << " match=" << r.match.toString()
         << " tunnel=" << r.actionTunnel << " session=" << r.session;
      sim.trace(id(), "state", os.str());
    }
  }
  for (const auto& [session, tid] : m_dlTunnels) {
    std::ostringstream os;
    os << "kind=anchor session=" << session << " tunnel=" << tid;
    sim.trace(id(), "state", os.str());
  }
}

// ---------------------------------------------------------------------------
// RouterNode
// ---------------------------------------------------------------------------

void
RouterNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  if (const auto* pdu = std::get_if<InnerPdu>(&payload)) {
    if (const auto* ip = std::get_if<IpPacket>(pdu)) {
      for (const auto& [pattern, nextHop] : m_ipRoutes) {
        if (ipPatternMatches(pattern, ip->fiveTuple.dstAddr)) {
          tracePkt(sim, id(), "fwd", *pdu, "", "routed");
          sim.send(id(), nextHop, WirePayload{InnerPdu{*ip}});
          return;
        }
      }
      sim.count("drops", "node=" + id() + ",cause=no_route_ip");
      return;
    }

    const Face* face = m_forwarder.findLinkFace(from);
    if (face == nullptr) {
      face = &m_forwarder.addFace(FaceKind::LINK, from);
    }
    TimeMs now = sim.now();
    if (const auto* interest = std::get_if<Interest>(pdu)) {
      ForwarderActions result = m_forwarder.processInterest(*interest, face->id, now);
      tracePkt(sim, id(), "fwd", *pdu, "", toString(result.outcome));
      if (result.outcome == ForwardOutcome::CS_HIT) {
        sim.count("cs_hits", "node=" + id());
      }
      else if (result.outcome == ForwardOutcome::AGGREGATED) {
        sim.count("pit_aggregations", "node=" + id());
      }
      else if (result.outcome == ForwardOutcome::FORWARDED_FIB ||
               result.outcome == ForwardOutcome::FORWARDED_LABEL) {
        sim.count("upstream_interests", "node=" + id());
        schedulePitExpiry(sim, id(), *interest);
      }
      else if (result.outcome == ForwardOutcome::DUPLICATE_NONCE) {
        sim.count("drops", "node=" + id() + ",cause=dup_nonce");
      }
      executeActions(sim, result);
    }
    else if (const auto* data = std::get_if<Data>(pdu)) {
      ForwarderActions result = m_forwarder.processData(*data, face->id, now);
      tracePkt(sim, id(), "fwd", *pdu, "", toString(result.outcome));
      if (result.outcome == ForwardOutcome::UNSOLICITED) {
        sim.count("drops", "node=" + id() + ",cause=unsolicited");
      }
      executeActions(sim, result);
    }
    else if (const auto* nack = std::get_if<Nack>(pdu)) {
      ForwarderActions result = m_forwarder.processNack(*nack, face->id, now);
      executeActions(sim, result);
    }
  }
  else if (const auto* ctrl = std::get_if<ControlMessage>(&payload)) {
    if (const auto* update = std::get_if<NrsRouteUpdate>(&ctrl->body)) {
      const Face* face = m_forwarder.findLinkFace(update->anchor);
      if (face == nullptr) {
        sim.count("nrs_route_ignored", "node=" + id());
        return;
      }
      m_forwarder.fibRemovePrefix(update->prefix);
      m_forwarder.fibAdd(update->prefix, face->id);
      sim.trace(id(), "reroute",
                "prefix=" + update->prefix.toUri() + " anchor=" + update->anchor);
    }
  }
}

void
RouterNode::executeActions(Sim& sim, const ForwarderActions& result)
{
  for (const auto& action : result.actions) {
    const Face* face = m_forwarder.findFace(action.face);
    if (face == nullptr || face->kind != FaceKind::LINK) {
      sim.count("drops", "node=" + id() + ",cause=face_gone");
      continue;
    }
    switch (action.kind) {
      case ForwarderAction::Kind::SEND_INTEREST:
        sim.send(id(), face->target, WirePayload{InnerPdu{action.interest}});
        break;
      case ForwarderAction::Kind::SEND_DATA:
        sim.send(id(), face->target, WirePayload{InnerPdu{action.data}});
        break;
      case ForwarderAction::Kind::SEND_NACK:
        sim.send(id(), face->target, WirePayload{InnerPdu{action.nack}});
        break;
    }
  }
}

void
RouterNode::onTimer(Sim& sim, const TimerTag& timer)
{
  if (timer.kind == "pit") {
    auto expired = m_forwarder.expirePit(sim.now());
    for (const auto& name : expired) {
      sim.count("pit_timeouts", "node=" + id());
      sim.trace(id(), "pitexpire", "name=" + name.toUri());
    }
  }
}

void
RouterNode::dumpState(Sim& sim) const
{
  m_forwarder.dumpState([&] (const std::string& line) {
    sim.trace(id(), "state", "kind=" + line);
  });
}

} // namespace icn5g
