#include "icn5g/control-plane.hpp"

#include <algorithm>
#include <sstream>

namespace icn5g {

const char*
toString(SessionState state)
{
  switch (state) {
    case SessionState::ESTABLISHING: return "establishing";
    case SessionState::ACTIVE: return "active";
    case SessionState::HANDOVER_PREPARING: return "ho_preparing";
    case SessionState::HANDOVER_EXECUTING: return "ho_executing";
    default: return "released";
  }
}

static const ControlMessage*
asControl(const WirePayload& payload)
{
  return std::get_if<ControlMessage>(&payload);
}

// ---------------------------------------------------------------------------
// PCF/UDM
// ---------------------------------------------------------------------------

void
PcfUdmNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  const ControlMessage* msg = asControl(payload);
  if (msg == nullptr) {
    return;
  }
  if (const auto* push = std::get_if<PolicyPush>(&msg->body)) {
    for (const auto& profile : push->profiles) {
      m_profiles[profile.ue] = profile;
    }
    ControlMessage ack{id(), msg->sender, msg->correlation, 0, PolicyPushAck{}};
    sim.sendControl(id(), from, std::move(ack));
  }
  else if (const auto* query = std::get_if<SubscriptionQuery>(&msg->body)) {
    SubscriptionResponse response;
    response.ue = query->ue;
    auto it = m_profiles.find(query->ue);
    if (it != m_profiles.end()) {
      response.found = true;
      response.icnEnabled = it->second.icnServiceEnabled;
      response.allowedSlices = it->second.allowedSlices;
    }
    ControlMessage ack{id(), msg->sender, msg->correlation, 0, std::move(response)};
    sim.sendControl(id(), from, std::move(ack));
  }
}

// ---------------------------------------------------------------------------
// NSSF
// ---------------------------------------------------------------------------

SliceDescriptor
NssfNode::selectSlice(const NodeId& ue, const std::string& hint) const
{
  auto allowedIt = m_allowed.find(ue);
  if (allowedIt == m_allowed.end() || allowedIt->second.empty()) {
    throw NoSlice("no allowed slices for " + ue);
  }
  const auto& allowed = allowedIt->second;
  std::string chosen;
  if (hint.empty()) {
    if (allowed.size() != 1) {
      throw NoSlice("hint required when several slices are allowed");
    }
    chosen = allowed.front();
  }
  else {
    if (std::find(allowed.begin(), allowed.end(), hint) == allowed.end()) {
      throw NoSlice("slice " + hint + " not allowed for " + ue);
    }
    chosen = hint;
  }
  auto sliceIt = m_slices.find(chosen);
  if (sliceIt == m_slices.end()) {
    throw NoSlice("slice " + chosen + " not provisioned");
  }
  return sliceIt->second;
}

void
NssfNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  const ControlMessage* msg = asControl(payload);
  if (msg == nullptr) {
    return;
  }
  if (const auto* push = std::get_if<PolicyPush>(&msg->body)) {
    for (const auto& profile : push->profiles) {
      m_allowed[profile.ue] = profile.allowedSlices;
    }
    for (const auto& slice : push->slices) {
      m_slices[slice.sliceId] = slice;
    }
    ControlMessage ack{id(), msg->sender, msg->correlation, 0, PolicyPushAck{}};
    sim.sendControl(id(), from, std::move(ack));
  }
  else if (const auto* query = std::get_if<SliceQuery>(&msg->body)) {
    SliceResponse response;
    try {
      response.slice = selectSlice(query->ue, query->hint);
      response.ok = true;
    }
    catch (const NoSlice& e) {
      response.ok = false;
      response.cause = e.what();
    }
    ControlMessage ack{id(), msg->sender, msg->correlation, 0, std::move(response)};
    sim.sendControl(id(), from, std::move(ack));
  }
}

// ---------------------------------------------------------------------------
// ICN-AF
// ---------------------------------------------------------------------------

void
IcnAfNode::onAction(Sim& sim, const WorkloadAction& action)
{
  if (action.verb != "push_policy") {
    return;
  }
  for (const auto& peer : sim.neighbors(id())) {
    const Node* node = sim.findNode(peer);
    if (node == nullptr) {
      continue;
    }
    if (node->role() == NodeRole::PCF_UDM || node->role() == NodeRole::NSSF) {
      ControlMessage push{id(), peer, sim.nextCorrelation(), 0,
                          PolicyPush{m_profiles, m_slices}};
      sim.sendControl(id(), peer, std::move(push));
    }
  }
}

void
IcnAfNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  (void)sim, (void)from, (void)payload; // only PolicyPushAck arrives here
}

// ---------------------------------------------------------------------------
// NRS
// ---------------------------------------------------------------------------

NodeId
NrsNode::resolve(const Name& prefix) const
{
  const NodeId* best = nullptr;
  std::size_t bestLen = 0;
  for (const auto& [registered, anchor] : m_mappings) {
    if (registered.isPrefixOf(prefix) && registered.size() >= bestLen) {
      best = &anchor;
      bestLen = registered.size();
    }
  }
  if (best == nullptr) {
    throw Unresolved(prefix.toUri());
  }
  return *best;
}

void
NrsNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  const ControlMessage* msg = asControl(payload);
  if (msg == nullptr) {
    return;
  }
  if (const auto* update = std::get_if<NrsUpdate>(&msg->body)) {
    m_mappings[update->prefix] = update->anchor;
    sim.trace(id(), "nrs", "prefix=" + update->prefix.toUri() + " anchor=" + update->anchor);
    ControlMessage ack{id(), msg->sender, msg->correlation, msg->step, NrsAck{update->prefix}};
    sim.sendControl(id(), from, std::move(ack));
    // Resolution changed: fan the new binding out to the DN edge routers.
    for (const auto& peer : sim.neighbors(id())) {
      const Node* node = sim.findNode(peer);
      if (node != nullptr && node->role() == NodeRole::ICN_DN_ROUTER) {
        ControlMessage push{id(), peer, sim.nextCorrelation(), 0,
                            NrsRouteUpdate{update->prefix, update->anchor}};
        sim.sendControl(id(), peer, std::move(push));
      }
    }
  }
}

void
NrsNode::dumpState(Sim& sim) const
{
  for (const auto& [prefix, anchor] : m_mappings) {
    sim.trace(id(), "state", "kind=nrs prefix=" + prefix.toUri() + " anchor=" + anchor);
  }
}

// ---------------------------------------------------------------------------
// AMF++
// ---------------------------------------------------------------------------

NodeId
AmfNode::peerByRole(Sim& sim, NodeRole role) const
{
  for (const auto& peer : sim.neighbors(id())) {
    const Node* node = sim.findNode(peer);
    if (node != nullptr && node->role() == role) {
      return peer;
    }
  }
  throw ValidationError(std::string("AMF has no ") + toString(role) + " link");
}

void
AmfNode::sendNasToUe(Sim& sim, const NodeId& ue, ControlMessage msg)
{
  auto ctx = m_contexts.find(ue);
  if (ctx == m_contexts.end() || ctx->second.servingRan.empty()) {
    sim.count("drops", "node=" + id() + ",cause=ue_unknown");
    return;
  }
  msg.receiver = ue;
  sim.sendControl(id(), ctx->second.servingRan, std::move(msg));
}

void
AmfNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  const ControlMessage* msg = asControl(payload);
  if (msg != nullptr) {
    handleControl(sim, from, *msg);
  }
}

void
AmfNode::handleControl(Sim& sim, const NodeId& from, const ControlMessage& msg)
{
  if (const auto* reg = std::get_if<RegistrationRequest>(&msg.body)) {
    UeContext& ctx = m_contexts[reg->ue];
    ctx.ue = reg->ue;
    ctx.servingRan = from; // the relaying RAN serves this UE
    CorrelationId corr = sim.nextCorrelation();
    m_registrations[corr] = RegistrationProc{reg->ue, msg.correlation};
    ControlMessage query{id(), peerByRole(sim, NodeRole::PCF_UDM), corr, 0,
                         SubscriptionQuery{reg->ue}};
    sim.sendControlDirect(id(), std::move(query));
    return;
  }

  if (const auto* sub = std::get_if<SubscriptionResponse>(&msg.body)) {
    auto it = m_registrations.find(msg.correlation);
    if (it == m_registrations.end()) {
      return;
    }
    RegistrationProc proc = it->second;
    m_registrations.erase(it);
    UeContext& ctx = m_contexts[proc.ue];
    ctx.icnAuthorized = sub->found && sub->icnEnabled;
    sim.trace(id(), "register",
              "ue=" + proc.ue + " icn_authorized=" + (ctx.icnAuthorized ? "1" : "0"));
    ControlMessage accept{id(), proc.ue, proc.ueCorr, 0,
                          RegistrationAccept{proc.ue, ctx.icnAuthorized}};
    sendNasToUe(sim, proc.ue, std::move(accept));
    return;
  }

  if (const auto* req = std::get_if<SessionEstablishRequest>(&msg.body)) {
    auto ctxIt = m_contexts.find(req->ue);
    if (ctxIt == m_contexts.end()) {
      ControlMessage reject{id(), req->ue, msg.correlation, 0,
                            SessionEstablishReject{req->ue, "not_registered"}};
      sim.sendControl(id(), from, std::move(reject));
      return;
    }
    UeContext& ctx = ctxIt->second;
    if (req->transport == Transport::ICN && !ctx.icnAuthorized) {
      // The subscription profile does not enable ICN: refuse outright.
      sim.count("sessions_refused", "node=" + id());
      ControlMessage reject{id(), req->ue, msg.correlation, 0,
                            SessionEstablishReject{req->ue, "icn_not_authorized"}};
      sendNasToUe(sim, req->ue, std::move(reject));
      return;
    }
    EstablishProc proc;
    proc.ue = req->ue;
    proc.ueCorr = msg.correlation;
    proc.request = *req;
    proc.request.servingRan = ctx.servingRan;
    ctx.uePrefix = req->uePrefix;
    CorrelationId corr = sim.nextCorrelation();
    m_establishments[corr] = std::move(proc);
    ControlMessage query{id(), peerByRole(sim, NodeRole::NSSF), corr, 0,
                         SliceQuery{req->ue, req->sliceHint}};
    sim.sendControlDirect(id(), std::move(query));
    return;
  }

  if (const auto* slice = std::get_if<SliceResponse>(&msg.body)) {
    auto it = m_establishments.find(msg.correlation);
    if (it == m_establishments.end()) {
      return;
    }
    EstablishProc proc = it->second;
    m_establishments.erase(it);
    if (!slice->ok) {
      ControlMessage reject{id(), proc.ue, proc.ueCorr, 0,
                            SessionEstablishReject{proc.ue, "no_slice"}};
      sendNasToUe(sim, proc.ue, std::move(reject));
      return;
    }
    proc.request.slice = slice->slice;
    proc.request.sliceHint = slice->slice.sliceId;
    CorrelationId corr = sim.nextCorrelation();
    ControlMessage forward{id(), peerByRole(sim, NodeRole::SMF), corr, 0, proc.request};
    m_establishments[corr] = std::move(proc);
    sim.sendControlDirect(id(), std::move(forward));
    return;
  }

  if (const auto* accept = std::get_if<SessionEstablishAccept>(&msg.body)) {
    auto it = m_establishments.find(msg.correlation);
    if (it == m_establishments.end()) {
      return;
    }
    EstablishProc proc = it->second;
    m_establishments.erase(it);
    proc.accept = *accept;
    CorrelationId corr = sim.nextCorrelation();
    ControlMessage install{id(), proc.request.servingRan, corr, 0,
                           SessionInstall{proc.ue, accept->session, accept->ranTunnel,
                                          accept->ulcl, accept->assoc}};
    m_ranInstalls[accept->session] =
      SessionInstall{proc.ue, accept->session, accept->ranTunnel, accept->ulcl, accept->assoc};
    m_establishments[corr] = std::move(proc);
    sim.sendControlDirect(id(), std::move(install));
    return;
  }

  if (const auto* reject = std::get_if<SessionEstablishReject>(&msg.body)) {
    auto it = m_establishments.find(msg.correlation);
    if (it == m_establishments.end()) {
      return;
    }
    EstablishProc proc = it->second;
    m_establishments.erase(it);
    sim.count("sessions_refused", "node=" + id());
    ControlMessage forward{id(), proc.ue, proc.ueCorr, 0, *reject};
    sendNasToUe(sim, proc.ue, std::move(forward));
    return;
  }

  if (const auto* ack = std::get_if<SessionInstallAck>(&msg.body)) {
    auto est = m_establishments.find(msg.correlation);
    if (est != m_establishments.end()) {
      EstablishProc proc = est->second;
      m_establishments.erase(est);
      if (!ack->ok) {
        ControlMessage reject{id(), proc.ue, proc.ueCorr, 0,
                              SessionEstablishReject{proc.ue, "ran_install_failed"}};
        sendNasToUe(sim, proc.ue, std::move(reject));
        return;
      }
      CorrelationId corr = sim.nextCorrelation();
      ControlMessage ready{id(), peerByRole(sim, NodeRole::SMF), corr, 0,
                           SessionReady{proc.accept.session}};
      m_establishments[corr] = std::move(proc);
      sim.sendControlDirect(id(), std::move(ready));
      return;
    }
    auto ho = m_handovers.find(msg.correlation);
    if (ho != m_handovers.end()) {
      HandoverProc proc = ho->second;
      m_handovers.erase(ho);
      if (!ack->ok) {
        sim.count("handover_aborts", "node=" + id());
        return;
      }
      // Step 9: tell the UE to move; NAS still rides the source RAN.
      ControlMessage hoAck{id(), proc.ue, sim.nextCorrelation(), 9,
                           HandoverAck{proc.ue, proc.session, proc.targetRan,
                                       proc.pathSwitch.assoc.srcAddr,
                                       proc.pathSwitch.targetAnchor}};
      sendNasToUe(sim, proc.ue, std::move(hoAck));
      m_hoBySession[proc.session] = std::move(proc);
      return;
    }
    return;
  }

  if (std::get_if<SessionReadyAck>(&msg.body) != nullptr) {
    auto it = m_establishments.find(msg.correlation);
    if (it == m_establishments.end()) {
      return;
    }
    EstablishProc proc = it->second;
    m_establishments.erase(it);
    m_contexts[proc.ue].sessions.insert(proc.accept.session);
    ControlMessage accept{id(), proc.ue, proc.ueCorr, 0, proc.accept};
    sendNasToUe(sim, proc.ue, std::move(accept));
    return;
  }

  if (const auto* required = std::get_if<HandoverRequired>(&msg.body)) {
    if (required->sessions.empty()) {
      return;
    }
    HandoverProc proc;
    proc.ue = required->ue;
    proc.session = required->sessions.front();
    proc.sourceRan = from;
    proc.targetRan = required->targetRan;
    auto install = m_ranInstalls.find(proc.session);
    if (install != m_ranInstalls.end()) {
      proc.oldUlcl = install->second.ulcl;
      proc.oldRanTunnel = install->second.tunnel;
    }
    CorrelationId corr = sim.nextCorrelation();
    ControlMessage cmd{id(), peerByRole(sim, NodeRole::SMF), corr, 3,
                       PathSwitchCommand{required->ue, required->targetRan,
                                         required->sessions}};
    m_handovers[corr] = std::move(proc);
    sim.sendControlDirect(id(), std::move(cmd));
    return;
  }

  if (const auto* ps = std::get_if<PathSwitchAck>(&msg.body)) {
    auto it = m_handovers.find(msg.correlation);
    if (it == m_handovers.end()) {
      return;
    }
    HandoverProc proc = it->second;
    m_handovers.erase(it);
    if (!ps->ok) {
      sim.count("handover_aborts", "node=" + id());
      sim.trace(id(), "handover", "abort cause=" + ps->cause);
      return;
    }
    proc.pathSwitch = *ps;
    CorrelationId corr = sim.nextCorrelation();
    ControlMessage install{id(), proc.targetRan, corr, 8,
                           SessionInstall{proc.ue, proc.session, ps->ranTunnel,
                                          ps->targetUlcl, ps->assoc}};
    m_ranInstalls[proc.session] =
      SessionInstall{proc.ue, proc.session, ps->ranTunnel, ps->targetUlcl, ps->assoc};
    m_handovers[corr] = std::move(proc);
    sim.sendControlDirect(id(), std::move(install));
    return;
  }

  if (const auto* success = std::get_if<HandoverSuccess>(&msg.body)) {
    auto it = m_hoBySession.find(success->session);
    if (it == m_hoBySession.end()) {
      return;
    }
    HandoverProc proc = it->second;
    m_hoBySession.erase(it);
    m_contexts[proc.ue].servingRan = proc.targetRan;
    CorrelationId corr = sim.nextCorrelation();
    ControlMessage release{id(), proc.sourceRan, corr, 11,
                           ReleaseCommand{proc.ue, proc.session, proc.oldRanTunnel,
                                          proc.oldUlcl}};
    m_handovers[corr] = std::move(proc);
    sim.sendControlDirect(id(), std::move(release));
    return;
  }

  if (const auto* relAck = std::get_if<ReleaseAck>(&msg.body)) {
    auto it = m_handovers.find(msg.correlation);
    if (it == m_handovers.end()) {
      return;
    }
    HandoverProc proc = it->second;
    m_handovers.erase(it);
    CorrelationId corr = sim.nextCorrelation();
    ControlMessage complete{id(), peerByRole(sim, NodeRole::SMF), corr, 12,
                            HandoverComplete{proc.ue, relAck->session}};
    m_handovers[corr] = std::move(proc);
    sim.sendControlDirect(id(), std::move(complete));
    return;
  }

  if (std::get_if<HandoverCompleteAck>(&msg.body) != nullptr) {
    auto it = m_handovers.find(msg.correlation);
    if (it == m_handovers.end()) {
      return;
    }
    sim.count("handovers_completed", "node=" + id());
    sim.trace(id(), "handover", "complete ue=" + it->second.ue);
    m_handovers.erase(it);
    return;
  }
}

void
AmfNode::dumpState(Sim& sim) const
{
  for (const auto& [ue, ctx] : m_contexts) {
    std::ostringstream os;
    os << "kind=uectx ue=" << ue << " authorized=" << (ctx.icnAuthorized ? 1 : 0)
       << " ran=" << ctx.servingRan << " sessions=" << ctx.sessions.size();
    sim.trace(id(), "state", os.str());
  }
}

// ---------------------------------------------------------------------------
// SMF++
// ---------------------------------------------------------------------------

NodeId
SmfNode::selectNearest(Sim& sim, const NodeId& reference,
                       const std::vector<NodeId>& candidates) const
{
  const NodeId* best = nullptr;
  int bestHops = 0;
  for (const auto& candidate : candidates) {
    auto hops = sim.hopCount(reference, candidate);
    if (!hops) {
      continue;
    }
    if (best == nullptr || *hops < bestHops ||
        (*hops == bestHops &&
         sim.nodeAt(candidate).numericId() < sim.nodeAt(*best).numericId())) {
      best = &candidate;
      bestHops = *hops;
    }
  }
  if (best == nullptr) {
    throw NoCandidate("no reachable candidate from " + reference);
  }
  return *best;
}

std::pair<NodeId, NodeId>
SmfNode::selectTargetPath(Sim& sim, const NodeId& ran, const SliceDescriptor& slice) const
{
  NodeId ulcl = selectNearest(sim, ran, slice.ulclCandidates);
  NodeId anchor = selectNearest(sim, ulcl, slice.anchorCandidates);
  return {ulcl, anchor};
}

NodeId
SmfNode::icnSmfNode(Sim& sim) const
{
  for (const auto& peer : sim.neighbors(id())) {
    const Node* node = sim.findNode(peer);
    if (node != nullptr && node->role() == NodeRole::ICN_SMF) {
      return peer;
    }
  }
  throw ValidationError("SMF has no ICN-SMF link");
}

IpAddr
SmfNode::allocateAddr(const NodeId& anchor)
{
  auto it = m_addrBase.find(anchor);
  if (it == m_addrBase.end()) {
    throw ValidationError("no address block for anchor " + anchor);
  }
  return it->second + static_cast<IpAddr>(++m_nextHost[anchor]);
}

FiveTuple
SmfNode::makeAssoc(IpAddr ueAddr, const NodeId& anchor) const
{
  FiveTuple assoc;
  assoc.srcAddr = ueAddr;
  assoc.dstAddr = m_addrBase.at(anchor) + 254; // anchor service address
  assoc.protocol = IpProtocol::OTHER;
  return assoc;
}

TunnelId
SmfNode::allocateTunnel()
{
  return "t" + std::to_string(++m_nextTunnel);
}

void
SmfNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  const ControlMessage* msg = asControl(payload);
  if (msg == nullptr) {
    return;
  }

  if (std::get_if<SessionEstablishRequest>(&msg->body) != nullptr) {
    startEstablish(sim, from, *msg);
  }
  else if (const auto* created = std::get_if<IcnSessionCreated>(&msg->body)) {
    continueEstablish(sim, msg->correlation, created->ok, created->cause, created->anchor);
  }
  else if (const auto* ack = std::get_if<N4Ack>(&msg->body)) {
    if (m_establishing.count(msg->correlation) > 0) {
      continueEstablish(sim, msg->correlation, ack->ok, ack->cause, "");
    }
    else if (m_handovers.count(msg->correlation) > 0) {
      continueHandover(sim, msg->correlation, ack->ok, ack->cause);
    }
    else {
      finishCleanupPiece(sim, msg->correlation);
    }
  }
  else if (const auto* mob = std::get_if<IcnMobilityAck>(&msg->body)) {
    continueHandover(sim, msg->correlation, mob->ok, mob->cause);
  }
  else if (const auto* rel = std::get_if<IcnReleaseAck>(&msg->body)) {
    (void)rel;
    finishCleanupPiece(sim, msg->correlation);
  }
  else if (const auto* ready = std::get_if<SessionReady>(&msg->body)) {
    auto it = m_sessions.find(ready->session);
    if (it != m_sessions.end()) {
      it->second.state = SessionState::ACTIVE;
      sim.trace(id(), "session",
                "id=" + std::to_string(ready->session) + " state=active");
    }
    ControlMessage ack{id(), msg->sender, msg->correlation, 0, SessionReadyAck{ready->session}};
    sim.sendControl(id(), from, std::move(ack));
  }
  else if (std::get_if<PathSwitchCommand>(&msg->body) != nullptr) {
    startHandover(sim, from, *msg);
  }
  else if (const auto* complete = std::get_if<HandoverComplete>(&msg->body)) {
    startCleanup(sim, from, *msg, *complete);
  }
}

void
SmfNode::startEstablish(Sim& sim, const NodeId& from, const ControlMessage& msg)
{
  const auto& req = std::get<SessionEstablishRequest>(msg.body);
  EstablishProc proc;
  proc.amfCorr = msg.correlation;
  proc.amf = from;

  NodeId ulcl;
  try {
    ulcl = selectNearest(sim, req.servingRan, req.slice.ulclCandidates);
  }
  catch (const NoCandidate& e) {
    ControlMessage reject{id(), msg.sender, msg.correlation, 0,
                          SessionEstablishReject{req.ue, e.what()}};
    sim.sendControl(id(), from, std::move(reject));
    return;
  }

  PduSessionRecord record;
  record.id = ++m_nextSession;
  record.ue = req.ue;
  record.slice = req.slice.sliceId;
  record.sliceDesc = req.slice;
  record.transport = req.transport;
  record.servingRan = req.servingRan;
  record.servingUlcl = ulcl;
  record.ranTunnel = allocateTunnel();
  record.apTunnel = allocateTunnel();
  record.uePrefix = req.uePrefix;
  record.state = SessionState::ESTABLISHING;
  proc.session = record.id;
  m_sessions[record.id] = record;
  sim.trace(id(), "session", "id=" + std::to_string(record.id) + " state=establishing ulcl=" + ulcl);

  if (req.transport == Transport::ICN) {
    CorrelationId corr = sim.nextCorrelation();
    proc.phase = EstablishProc::Phase::ICN_CREATE;
    m_establishing[corr] = proc;
    ControlMessage create{id(), icnSmfNode(sim), corr, 0,
                          IcnSessionCreate{record.id, req.ue, record.slice, req.slice, ulcl,
                                           m_sessions[record.id].apTunnel, req.uePrefix}};
    sim.sendControlDirect(id(), std::move(create));
    return;
  }

  // IP transport: the SMF selects the PDU session anchor itself.
  PduSessionRecord& stored = m_sessions[record.id];
  try {
    stored.servingAnchor = selectNearest(sim, ulcl, req.slice.anchorCandidates);
  }
  catch (const NoCandidate& e) {
    stored.state = SessionState::RELEASED;
    ControlMessage reject{id(), msg.sender, msg.correlation, 0,
                          SessionEstablishReject{req.ue, e.what()}};
    sim.sendControl(id(), from, std::move(reject));
    return;
  }
  stored.ueAddr = allocateAddr(stored.servingAnchor);
  stored.assoc = makeAssoc(stored.ueAddr, stored.servingAnchor);
  sendUlclN4(sim, proc, stored);
}

void
SmfNode::sendUlclN4(Sim& sim, EstablishProc proc, const PduSessionRecord& record)
{
  std::vector<N4Op> ops;
  N4Op ranTun;
  ranTun.kind = N4Op::Kind::ADD_TUNNEL;
  ranTun.tunnel = record.ranTunnel;
  ranTun.peer = record.servingRan;
  ranTun.towardRan = true;
  ranTun.assoc = record.assoc;
  ranTun.session = record.id;
  ops.push_back(ranTun);
  N4Op apTun = ranTun;
  apTun.tunnel = record.apTunnel;
  apTun.peer = record.servingAnchor;
  apTun.towardRan = false;
  ops.push_back(apTun);
  N4Op ulRule;
  ulRule.kind = N4Op::Kind::ADD_RULE;
  ulRule.rule.direction = Direction::UL;
  ulRule.rule.match.srcAddr = record.ueAddr;
  ulRule.rule.actionTunnel = record.apTunnel;
  ulRule.rule.priority = 10;
  ulRule.rule.session = record.id;
  ops.push_back(ulRule);
  N4Op dlRule = ulRule;
  dlRule.rule.direction = Direction::DL;
  dlRule.rule.match = {};
  dlRule.rule.match.dstAddr = record.ueAddr;
  dlRule.rule.actionTunnel = record.ranTunnel;
  ops.push_back(dlRule);

  CorrelationId corr = sim.nextCorrelation();
  proc.phase = EstablishProc::Phase::N4_ULCL;
  m_establishing[corr] = std::move(proc);
  ControlMessage update{id(), record.servingUlcl, corr, 0, N4Update{record.id, std::move(ops)}};
  sim.sendControlDirect(id(), std::move(update));
}

void
SmfNode::continueEstablish(Sim& sim, CorrelationId corr, bool ok, const std::string& cause,
                           const NodeId& anchorFromIcn)
{
  auto it = m_establishing.find(corr);
  if (it == m_establishing.end()) {
    return;
  }
  EstablishProc proc = it->second;
  m_establishing.erase(it);
  PduSessionRecord& record = m_sessions.at(proc.session);

  if (!ok) {
    rollbackEstablish(sim, proc, cause);
    return;
  }

  switch (proc.phase) {
    case EstablishProc::Phase::ICN_CREATE: {
      record.servingAnchor = anchorFromIcn;
      record.ueAddr = allocateAddr(record.servingAnchor);
      record.assoc = makeAssoc(record.ueAddr, record.servingAnchor);
      sendUlclN4(sim, std::move(proc), record);
      return;
    }
    case EstablishProc::Phase::N4_ULCL: {
      std::vector<N4Op> ops;
      N4Op apTun;
      apTun.kind = N4Op::Kind::ADD_TUNNEL;
      apTun.tunnel = record.apTunnel;
      apTun.peer = record.servingUlcl;
      apTun.towardRan = true;
      apTun.assoc = record.assoc;
      apTun.session = record.id;
      ops.push_back(apTun);
      if (record.transport == Transport::IP) {
        N4Op dlRule;
        dlRule.kind = N4Op::Kind::ADD_RULE;
        dlRule.rule.direction = Direction::DL;
        dlRule.rule.match.dstAddr = record.ueAddr;
        dlRule.rule.actionTunnel = record.apTunnel;
        dlRule.rule.priority = 10;
        dlRule.rule.session = record.id;
        ops.push_back(dlRule);
      }
      CorrelationId next = sim.nextCorrelation();
      proc.phase = EstablishProc::Phase::N4_ANCHOR;
      m_establishing[next] = proc;
      ControlMessage update{id(), record.servingAnchor, next,
                            0, N4Update{record.id, std::move(ops)}};
      sim.sendControlDirect(id(), std::move(update));
      return;
    }
    case EstablishProc::Phase::N4_ANCHOR: {
      SessionEstablishAccept accept;
      accept.ue = record.ue;
      accept.session = record.id;
      accept.ranTunnel = record.ranTunnel;
      accept.ulcl = record.servingUlcl;
      accept.anchor = record.servingAnchor;
      accept.ueAddr = record.ueAddr;
      accept.assoc = record.assoc;
      ControlMessage msg{id(), proc.amf, proc.amfCorr, 0, std::move(accept)};
      sim.sendControl(id(), proc.amf, std::move(msg));
      return;
    }
  }
}

void
SmfNode::rollbackEstablish(Sim& sim, EstablishProc& proc, const std::string& cause)
{
  PduSessionRecord& record = m_sessions.at(proc.session);
  // Tear down whatever was provisioned, in reverse installation order; the
  // acks are intentionally unmatched to any procedure.
  if (proc.phase == EstablishProc::Phase::N4_ANCHOR) {
    std::vector<N4Op> ops;
    N4Op remove;
    remove.kind = N4Op::Kind::REMOVE_SESSION;
    remove.session = record.id;
    ops.push_back(remove);
    ControlMessage update{id(), record.servingUlcl, sim.nextCorrelation(), 0,
                          N4Update{record.id, std::move(ops)}};
    sim.sendControlDirect(id(), std::move(update));
  }
  if (record.transport == Transport::ICN &&
      proc.phase != EstablishProc::Phase::ICN_CREATE) {
    ControlMessage release{id(), icnSmfNode(sim), sim.nextCorrelation(), 0,
                           IcnReleaseOld{record.id}};
    sim.sendControlDirect(id(), std::move(release));
  }
  record.state = SessionState::RELEASED;
  sim.count("sessions_failed", "node=" + id());
  ControlMessage reject{id(), proc.amf, proc.amfCorr, 0,
                        SessionEstablishReject{record.ue, cause}};
  sim.sendControl(id(), proc.amf, std::move(reject));
}

void
SmfNode::startHandover(Sim& sim, const NodeId& from, const ControlMessage& msg)
{
  const auto& cmd = std::get<PathSwitchCommand>(msg.body);
  auto reject = [&] (const std::string& cause) {
    ControlMessage nack{id(), from, msg.correlation, 7, PathSwitchAck{}};
    std::get<PathSwitchAck>(nack.body).ok = false;
    std::get<PathSwitchAck>(nack.body).cause = cause;
    sim.sendControl(id(), from, std::move(nack));
  };
  if (cmd.sessions.empty()) {
    reject("no sessions");
    return;
  }
  auto recordIt = m_sessions.find(cmd.sessions.front());
  if (recordIt == m_sessions.end() || recordIt->second.state != SessionState::ACTIVE) {
    reject("session not active");
    return;
  }
  PduSessionRecord& record = recordIt->second;

  HandoverProc proc;
  proc.amfCorr = msg.correlation;
  proc.amf = from;
  proc.session = record.id;
  proc.targetRan = cmd.targetRan;
  try {
    auto [ulcl, anchor] = selectTargetPath(sim, cmd.targetRan, record.sliceDesc);
    proc.newUlcl = ulcl;
    proc.newAnchor = anchor;
  }
  catch (const NoCandidate& e) {
    reject(e.what());
    return;
  }
  proc.ulclChanged = proc.newUlcl != record.servingUlcl;
  proc.anchorChanged = proc.newAnchor != record.servingAnchor;
  proc.newRanTunnel = allocateTunnel();
  proc.newApTunnel = proc.ulclChanged || proc.anchorChanged ? allocateTunnel()
                                                            : record.apTunnel;
  proc.newAddr = proc.anchorChanged ? allocateAddr(proc.newAnchor) : record.ueAddr;
  proc.newAssoc = makeAssoc(proc.newAddr, proc.newAnchor);
  record.state = SessionState::HANDOVER_PREPARING;

  // Step 4: traffic filter rules at the target UL-CL (UL toward the new
  // anchor, DL toward the target RAN).
  std::vector<N4Op> ops;
  N4Op ranTun;
  ranTun.kind = N4Op::Kind::ADD_TUNNEL;
  ranTun.tunnel = proc.newRanTunnel;
  ranTun.peer = cmd.targetRan;
  ranTun.towardRan = true;
  ranTun.assoc = proc.newAssoc;
  ranTun.session = record.id;
  ops.push_back(ranTun);
  if (proc.ulclChanged) {
    N4Op apTun = ranTun;
    apTun.tunnel = proc.newApTunnel;
    apTun.peer = proc.newAnchor;
    apTun.towardRan = false;
    ops.push_back(apTun);
  }
  N4Op ulRule;
  ulRule.kind = N4Op::Kind::ADD_RULE;
  ulRule.rule.direction = Direction::UL;
  ulRule.rule.match.srcAddr = proc.newAddr;
  ulRule.rule.actionTunnel = proc.newApTunnel;
  ulRule.rule.priority = 10;
  ulRule.rule.session = record.id;
  ops.push_back(ulRule);
  N4Op dlRule = ulRule;
  dlRule.rule.direction = Direction::DL;
  dlRule.rule.match = {};
  dlRule.rule.match.dstAddr = proc.newAddr;
  dlRule.rule.actionTunnel = proc.newRanTunnel;
  ops.push_back(dlRule);

  CorrelationId corr = sim.nextCorrelation();
  proc.phase = HandoverProc::Phase::N4_TARGET;
  ControlMessage update{id(), proc.newUlcl, corr, 4, N4Update{record.id, std::move(ops)}};
  m_handovers[corr] = std::move(proc);
  sim.sendControlDirect(id(), std::move(update));
}

void
SmfNode::continueHandover(Sim& sim, CorrelationId corr, bool ok, const std::string& cause)
{
  auto it = m_handovers.find(corr);
  if (it == m_handovers.end()) {
    return;
  }
  HandoverProc proc = it->second;
  m_handovers.erase(it);
  PduSessionRecord& record = m_sessions.at(proc.session);

  auto abort = [&] (const std::string& why) {
    // Make-before-break: the source path is untouched; tear down the
    // target-side state installed so far, in reverse installation order.
    if (proc.phase != HandoverProc::Phase::N4_TARGET) {
      std::vector<N4Op> ops;
      N4Op remove;
      remove.kind = N4Op::Kind::REMOVE_SESSION;
      remove.session = record.id;
      ops.push_back(remove);
      ControlMessage update{id(), proc.newUlcl, sim.nextCorrelation(), 0,
                            N4Update{record.id, std::move(ops)}};
      sim.sendControlDirect(id(), std::move(update));
    }
    record.state = SessionState::ACTIVE;
    ControlMessage nack{id(), proc.amf, proc.amfCorr, 7, PathSwitchAck{}};
    std::get<PathSwitchAck>(nack.body).ok = false;
    std::get<PathSwitchAck>(nack.body).cause = why;
    sim.sendControl(id(), proc.amf, std::move(nack)); // the AMF counts the abort
  };

  if (!ok) {
    abort(cause);
    return;
  }

  auto sendPathSwitchAck = [&] () {
    record.state = SessionState::HANDOVER_EXECUTING;
    PathSwitchAck ack;
    ack.session = proc.session;
    ack.ok = true;
    ack.targetUlcl = proc.newUlcl;
    ack.targetAnchor = proc.newAnchor;
    ack.ranTunnel = proc.newRanTunnel;
    ack.assoc = proc.newAssoc;
    ControlMessage msg{id(), proc.amf, proc.amfCorr, 7, std::move(ack)};
    proc.phase = HandoverProc::Phase::EXECUTING;
    m_executing[proc.session] = proc;
    sim.sendControl(id(), proc.amf, std::move(msg));
  };

  switch (proc.phase) {
    case HandoverProc::Phase::N4_TARGET: {
      bool needsIcnMobility = record.transport == Transport::ICN &&
                              (proc.ulclChanged || proc.anchorChanged);
      bool needsGwMove = record.transport == Transport::IP && proc.anchorChanged;
      if (needsIcnMobility) {
        // Step 5: hand the PDU session mobility change to the ICN-SMF.
        CorrelationId next = sim.nextCorrelation();
        proc.phase = HandoverProc::Phase::ICN_MOBILITY;
        ControlMessage update{id(), icnSmfNode(sim), next, 5,
                              IcnMobilityUpdate{proc.session, proc.newUlcl, proc.newAnchor,
                                                record.servingAnchor, proc.newApTunnel,
                                                record.uePrefix}};
        m_handovers[next] = std::move(proc);
        sim.sendControlDirect(id(), std::move(update));
        return;
      }
      if (needsGwMove) {
        std::vector<N4Op> ops;
        N4Op apTun;
        apTun.kind = N4Op::Kind::ADD_TUNNEL;
        apTun.tunnel = proc.newApTunnel;
        apTun.peer = proc.newUlcl;
        apTun.towardRan = true;
        apTun.assoc = proc.newAssoc;
        apTun.session = proc.session;
        ops.push_back(apTun);
        N4Op dlRule;
        dlRule.kind = N4Op::Kind::ADD_RULE;
        dlRule.rule.direction = Direction::DL;
        dlRule.rule.match.dstAddr = proc.newAddr;
        dlRule.rule.actionTunnel = proc.newApTunnel;
        dlRule.rule.priority = 10;
        dlRule.rule.session = proc.session;
        ops.push_back(dlRule);
        CorrelationId next = sim.nextCorrelation();
        proc.phase = HandoverProc::Phase::ICN_MOBILITY;
        ControlMessage update{id(), proc.newAnchor, next, 5,
                              N4Update{proc.session, std::move(ops)}};
        m_handovers[next] = std::move(proc);
        sim.sendControlDirect(id(), std::move(update));
        return;
      }
      // Same-UL-CL special case: Steps 5 and 6 collapse away entirely.
      sendPathSwitchAck();
      return;
    }
    case HandoverProc::Phase::ICN_MOBILITY: {
      sendPathSwitchAck();
      return;
    }
    default:
      return;
  }
}

void
SmfNode::startCleanup(Sim& sim, const NodeId& from, const ControlMessage& msg,
                      const HandoverComplete& complete)
{
  auto it = m_executing.find(complete.session);
  if (it == m_executing.end()) {
    ControlMessage ack{id(), from, msg.correlation, 12, HandoverCompleteAck{complete.session, false}};
    sim.sendControl(id(), from, std::move(ack));
    return;
  }
  HandoverProc proc = it->second;
  m_executing.erase(it);
  proc.amfCorr = msg.correlation;
  proc.amf = from;
  proc.phase = HandoverProc::Phase::CLEANUP;

  if (proc.ulclChanged) {
    // Step 12: remove the tunnel states from the source UL-CL first.
    PduSessionRecord& record = m_sessions.at(proc.session);
    std::vector<N4Op> ops;
    N4Op remove;
    remove.kind = N4Op::Kind::REMOVE_SESSION;
    remove.session = proc.session;
    ops.push_back(remove);
    CorrelationId corr = sim.nextCorrelation();
    proc.cleanupPending = 1;
    ControlMessage update{id(), record.servingUlcl, corr, 12,
                          N4Update{proc.session, std::move(ops)}};
    m_cleanup[corr] = std::move(proc);
    sim.sendControlDirect(id(), std::move(update));
    return;
  }
  advanceCleanup(sim, std::move(proc));
}

void
SmfNode::advanceCleanup(Sim& sim, HandoverProc proc)
{
  PduSessionRecord& record = m_sessions.at(proc.session);
  if (proc.cleanupPending < 2) {
    if (record.transport == Transport::ICN && (proc.anchorChanged || proc.ulclChanged)) {
      CorrelationId corr = sim.nextCorrelation();
      proc.cleanupPending = 2;
      ControlMessage release{id(), icnSmfNode(sim), corr, 12, IcnReleaseOld{proc.session}};
      m_cleanup[corr] = std::move(proc);
      sim.sendControlDirect(id(), std::move(release));
      return;
    }
    if (record.transport == Transport::IP && proc.anchorChanged) {
      std::vector<N4Op> ops;
      N4Op remove;
      remove.kind = N4Op::Kind::REMOVE_SESSION;
      remove.session = proc.session;
      ops.push_back(remove);
      CorrelationId corr = sim.nextCorrelation();
      proc.cleanupPending = 2;
      ControlMessage update{id(), record.servingAnchor, corr, 12,
                            N4Update{proc.session, std::move(ops)}};
      m_cleanup[corr] = std::move(proc);
      sim.sendControlDirect(id(), std::move(update));
      return;
    }
  }

  // Commit the new path; the session is back to a stable state.
  record.servingRan = proc.targetRan;
  record.servingUlcl = proc.newUlcl;
  record.servingAnchor = proc.newAnchor;
  record.ranTunnel = proc.newRanTunnel;
  record.apTunnel = proc.newApTunnel;
  record.ueAddr = proc.newAddr;
  record.assoc = proc.newAssoc;
  record.state = SessionState::ACTIVE;
  sim.trace(id(), "session",
            "id=" + std::to_string(proc.session) + " state=active ulcl=" + proc.newUlcl +
              " anchor=" + proc.newAnchor);
  ControlMessage ack{id(), proc.amf, proc.amfCorr, 12,
                     HandoverCompleteAck{proc.session, true}};
  sim.sendControl(id(), proc.amf, std::move(ack));
}

void
SmfNode::finishCleanupPiece(Sim& sim, CorrelationId corr)
{
  auto it = m_cleanup.find(corr);
  if (it == m_cleanup.end()) {
    return;
  }
  HandoverProc proc = it->second;
  m_cleanup.erase(it);
  advanceCleanup(sim, std::move(proc));
}

void
SmfNode::dumpState(Sim& sim) const
{
  for (const auto& [sid, record] : m_sessions) {
    std::ostringstream os;
    os << "kind=session id=" << sid << " ue=" << record.ue << " state="
       << toString(record.state) << " ulcl=" << record.servingUlcl << " anchor="
       << record.servingAnchor << " tunnels=" << record.ranTunnel << "," << record.apTunnel;
    sim.trace(id(), "state", os.str());
  }
}

// ---------------------------------------------------------------------------
// ICN-SMF
// ---------------------------------------------------------------------------

NodeId
IcnSmfNode::nrsNode(Sim& sim) const
{
  for (const auto& peer : sim.neighbors(id())) {
    const Node* node = sim.findNode(peer);
    if (node != nullptr && node->role() == NodeRole::NRS) {
      return peer;
    }
  }
  throw ValidationError("ICN-SMF has no NRS link");
}

NodeId
IcnSmfNode::selectAnchor(Sim& sim, const NodeId& ulcl, const SliceDescriptor& slice) const
{
  const NodeId* best = nullptr;
  int bestHops = 0;
  for (const auto& candidate : slice.anchorCandidates) {
    auto hops = sim.hopCount(ulcl, candidate);
    if (!hops) {
      continue;
    }
    if (best == nullptr || *hops < bestHops ||
        (*hops == bestHops &&
         sim.nodeAt(candidate).numericId() < sim.nodeAt(*best).numericId())) {
      best = &candidate;
      bestHops = *hops;
    }
  }
  if (best == nullptr) {
    throw NoCandidate("no reachable anchor from " + ulcl);
  }
  return *best;
}

void
IcnSmfNode::onMessage(Sim& sim, const NodeId& from, const WirePayload& payload)
{
  const ControlMessage* msg = asControl(payload);
  if (msg == nullptr) {
    return;
  }

  if (const auto* create = std::get_if<IcnSessionCreate>(&msg->body)) {
    NodeId anchor;
    try {
      anchor = selectAnchor(sim, create->ulcl, create->sliceDesc);
    }
    catch (const NoCandidate& e) {
      ControlMessage nack{id(), from, msg->correlation, 0,
                          IcnSessionCreated{create->session, false, "", e.what()}};
      sim.sendControl(id(), from, std::move(nack));
      return;
    }
    CorrelationId corr = sim.nextCorrelation();
    m_creating[corr] = CreateProc{msg->correlation, from, *create, anchor};
    ControlMessage install{id(), anchor, corr, 0,
                           IcnAnchorInstall{create->session, create->dlTunnel, create->ulcl,
                                            create->uePrefix}};
    sim.sendControl(id(), anchor, std::move(install));
    return;
  }

  if (const auto* ack = std::get_if<IcnSessionAck>(&msg->body)) {
    if (auto it = m_creating.find(msg->correlation); it != m_creating.end()) {
      CreateProc proc = it->second;
      m_creating.erase(it);
      if (!ack->ok) {
        ControlMessage nack{id(), proc.smf, proc.smfCorr, 0,
                            IcnSessionCreated{proc.request.session, false, "", ack->cause}};
        sim.sendControl(id(), proc.smf, std::move(nack));
        return;
      }
      if (proc.request.uePrefix) {
        // Register the producer prefix so consumers resolve the anchor.
        CorrelationId corr = sim.nextCorrelation();
        m_creating[corr] = proc;
        ControlMessage update{id(), nrsNode(sim), corr, 0,
                              NrsUpdate{*proc.request.uePrefix, proc.anchor}};
        sim.sendControlDirect(id(), std::move(update));
        return;
      }
      finishCreate(sim, proc);
      return;
    }
    if (auto it = m_mobility.find(msg->correlation); it != m_mobility.end()) {
      MobilityProc proc = it->second;
      m_mobility.erase(it);
      const auto& req = proc.request;
      if (!ack->ok) {
        if (proc.phase == MobilityProc::Phase::OLD_LABEL) {
          // Reverse the new-anchor install before reporting failure.
          ControlMessage undo{id(), req.newAnchor, sim.nextCorrelation(), 0,
                              IcnSessionRelease{req.session, req.uePrefix, false}};
          sim.sendControl(id(), req.newAnchor, std::move(undo));
        }
        ControlMessage nack{id(), proc.smf, proc.smfCorr, 7,
                            IcnMobilityAck{req.session, false, ack->cause}};
        sim.sendControl(id(), proc.smf, std::move(nack));
        return;
      }
      if (proc.phase == MobilityProc::Phase::NEW_ANCHOR) {
        bool anchorChanged = req.newAnchor != req.oldAnchor;
        if (anchorChanged && req.uePrefix) {
          // Step 6(ii): forwarding label at the previous anchor redirects
          // in-flight Interests toward the new gateway proactively.
          CorrelationId corr = sim.nextCorrelation();
          proc.phase = MobilityProc::Phase::OLD_LABEL;
          m_mobility[corr] = proc;
          ControlMessage label{id(), req.oldAnchor, corr, 6,
                               IcnLabelInstall{req.session, *req.uePrefix, req.newAnchor}};
          sim.sendControl(id(), req.oldAnchor, std::move(label));
          return;
        }
      }
      m_pendingMobility[req.session] =
        IcnSessionState{req.session, req.newAnchor, req.targetUlcl, req.dlTunnel, req.uePrefix};
      ControlMessage done{id(), proc.smf, proc.smfCorr, 7,
                          IcnMobilityAck{req.session, true, ""}};
      sim.sendControl(id(), proc.smf, std::move(done));
      return;
    }
    if (auto it = m_releasing.find(msg->correlation); it != m_releasing.end()) {
      ReleaseProc proc = it->second;
      m_releasing.erase(it);
      finishRelease(sim, proc);
      return;
    }
    return;
  }

  if (const auto* nrsAck = std::get_if<NrsAck>(&msg->body)) {
    (void)nrsAck;
    if (auto it = m_creating.find(msg->correlation); it != m_creating.end()) {
      CreateProc proc = it->second;
      m_creating.erase(it);
      finishCreate(sim, proc);
      return;
    }
    if (auto it = m_releasing.find(msg->correlation); it != m_releasing.end()) {
      ReleaseProc proc = it->second;
      m_releasing.erase(it);
      commitRelease(sim, proc);
      return;
    }
    return;
  }

  if (const auto* mobility = std::get_if<IcnMobilityUpdate>(&msg->body)) {
    CorrelationId corr = sim.nextCorrelation();
    m_mobility[corr] = MobilityProc{msg->correlation, from, *mobility,
                                    MobilityProc::Phase::NEW_ANCHOR};
    // Step 6(i): new anchor learns the DL tunnel toward the target UL-CL.
    ControlMessage install{id(), mobility->newAnchor, corr, 6,
                           IcnAnchorInstall{mobility->session, mobility->dlTunnel,
                                            mobility->targetUlcl, mobility->uePrefix}};
    sim.sendControl(id(), mobility->newAnchor, std::move(install));
    return;
  }

  if (const auto* release = std::get_if<IcnReleaseOld>(&msg->body)) {
    auto stateIt = m_sessions.find(release->session);
    if (stateIt == m_sessions.end()) {
      ControlMessage ack{id(), from, msg->correlation, 12, IcnReleaseAck{release->session, false}};
      sim.sendControl(id(), from, std::move(ack));
      return;
    }
    const IcnSessionState& old = stateIt->second;
    bool anchorChanged = false;
    if (auto pending = m_pendingMobility.find(release->session);
        pending != m_pendingMobility.end()) {
      anchorChanged = pending->second.anchor != old.anchor;
    }
    CorrelationId corr = sim.nextCorrelation();
    m_releasing[corr] = ReleaseProc{msg->correlation, from, release->session,
                                    ReleaseProc::Phase::OLD_ANCHOR};
    ControlMessage cmd{id(), old.anchor, corr, 12,
                       IcnSessionRelease{release->session, old.uePrefix, anchorChanged}};
    sim.sendControl(id(), old.anchor, std::move(cmd));
    return;
  }
}

void
IcnSmfNode::finishCreate(Sim& sim, const CreateProc& proc)
{
  m_sessions[proc.request.session] =
    IcnSessionState{proc.request.session, proc.anchor, proc.request.ulcl,
                    proc.request.dlTunnel, proc.request.uePrefix};
  ControlMessage done{id(), proc.smf, proc.smfCorr, 0,
                      IcnSessionCreated{proc.request.session, true, proc.anchor, ""}};
  sim.sendControl(id(), proc.smf, std::move(done));
}

void
IcnSmfNode::finishRelease(Sim& sim, ReleaseProc& proc)
{
  auto pending = m_pendingMobility.find(proc.session);
  bool anchorChanged = pending != m_pendingMobility.end() &&
                       pending->second.anchor != m_sessions.at(proc.session).anchor;
  const auto& uePrefix = m_sessions.at(proc.session).uePrefix;
  if (anchorChanged && uePrefix) {
    // Step 12 tail: the NRS now resolves the prefix to the new anchor.
    CorrelationId corr = sim.nextCorrelation();
    proc.phase = ReleaseProc::Phase::NRS;
    m_releasing[corr] = proc;
    ControlMessage update{id(), nrsNode(sim), corr, 12,
                          NrsUpdate{*uePrefix, pending->second.anchor}};
    sim.sendControlDirect(id(), std::move(update));
    return;
  }
  commitRelease(sim, proc);
}

void
IcnSmfNode::commitRelease(Sim& sim, const ReleaseProc& proc)
{
  if (auto pending = m_pendingMobility.find(proc.session); pending != m_pendingMobility.end()) {
    m_sessions[proc.session] = pending->second;
    m_pendingMobility.erase(pending);
  }
  ControlMessage ack{id(), proc.smf, proc.smfCorr, 12, IcnReleaseAck{proc.session, true}};
  sim.sendControl(id(), proc.smf, std::move(ack));
}

void
IcnSmfNode::dumpState(Sim& sim) const
{
  for (const auto& [sid, state] : m_sessions) {
    std::ostringstream os;
    os << "kind=icnsession id=" << sid << " anchor=" << state.anchor
       << " ulcl=" << state.ulcl << " tunnel=" << state.dlTunnel;
    sim.trace(id(), "state", os.str());
  }
}

} // namespace icn5g
