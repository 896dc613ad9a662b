#ifndef ICN5G_USER_PLANE_HPP
#define ICN5G_USER_PLANE_HPP

#include "icn5g/engine.hpp"
#include "icn5g/forwarder.hpp"
#include "icn5g/messages.hpp"
#include "icn5g/rules.hpp"

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace icn5g {

struct TunnelRecord {
  TunnelId id;
  NodeId peer;
  bool towardRan = false; // faces the RAN side of the chain
  FiveTuple assoc;        // session IP association carried by this tunnel
  SessionId session = 0;
};

/// Shared UPF state: tunnel endpoints plus steering rules. N4 deltas apply
/// atomically; a delta that would leave a rule pointing at a missing tunnel
/// is rejected wholesale (DanglingTunnel).
class UpfState {
public:
  const std::map<TunnelId, TunnelRecord>& tunnels() const { return m_tunnels; }
  const std::vector<ClassifierRule>& rules(Direction dir) const
  {
    return dir == Direction::UL ? m_ulRules : m_dlRules;
  }

  const TunnelRecord* findTunnel(const TunnelId& id) const;
  std::set<TunnelId> knownTunnelIds() const;

  void addTunnel(const TunnelRecord& record) { m_tunnels[record.id] = record; }
  void removeTunnel(const TunnelId& id);
  // Removing a tunnel via the RAN handshake also drops rules that steer into
  // it, so the no-dangling-action invariant holds between Steps 11 and 12.
  void removeTunnelCascade(const TunnelId& id);
  void addRule(const ClassifierRule& rule); // same (match, priority, dir) replaces
  void removeSession(SessionId session);

  // Applies the whole delta or nothing; returns the failure cause on reject.
  std::optional<std::string> applyOps(const std::vector<N4Op>& ops);

  // Highest priority wins; ties go to insertion order. nullopt = NoMatch.
  std::optional<TunnelId> classify(const FiveTuple& ft, Direction dir) const;

  // True when every rule's action tunnel resolves.
  bool rulesResolve() const;

private:
  std::optional<std::string> validate() const;

  std::map<TunnelId, TunnelRecord> m_tunnels;
  std::vector<ClassifierRule> m_ulRules; // insertion order preserved
  std::vector<ClassifierRule> m_dlRules;
};

/// Uplink classifier: steers tunneled flows by the session's five-tuple
/// association (ICN PDUs) or the packet's own five tuple (IP PDUs).
class UlClNode : public Node {
public:
  explicit UlClNode(NodeId id)
    : Node(std::move(id), NodeRole::UL_CL)
  {
  }

  UpfState& upf() { return m_upf; }
  const UpfState& upf() const { return m_upf; }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void dumpState(Sim& sim) const override;

private:
  void handleTunneled(Sim& sim, const TunneledPacket& tp);
  void handleControl(Sim& sim, const ControlMessage& msg);

  UpfState m_upf;
};

/// RAN tunnel endpoint: radio on one side, 5GC tunnels on the other.
/// Tunneled PDUs that arrive before their tunnel or UE is ready are held
/// and replayed in arrival order (Step 8 resource reservation).
class RanNode : public Node {
public:
  explicit RanNode(NodeId id)
    : Node(std::move(id), NodeRole::RAN)
  {
  }

  bool isAttached(const NodeId& ue) const { return m_attached.count(ue) > 0; }
  const std::map<std::pair<NodeId, SessionId>, TunnelId>& ueTunnels() const
  {
    return m_ueTunnels;
  }
  const UpfState& upf() const { return m_upf; }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void dumpState(Sim& sim) const override;

private:
  void handleRadio(Sim& sim, const RadioFrame& frame);
  void handleTunneled(Sim& sim, const NodeId& from, const TunneledPacket& tp);
  void handleControl(Sim& sim, const NodeId& from, const ControlMessage& msg);
  void relayUplink(Sim& sim, const NodeId& ue, SessionId session, const InnerPdu& pdu);
  void deliverDownlink(Sim& sim, const TunnelRecord& record, const InnerPdu& pdu);
  void flushHeld(Sim& sim);
  NodeId amfNode(Sim& sim) const;

  UpfState m_upf;                                        // RAN-side tunnel endpoints
  std::set<NodeId> m_attached;
  std::map<std::pair<NodeId, SessionId>, TunnelId> m_ueTunnels;
  std::deque<TunneledPacket> m_held;                     // pre-install / pre-attach
  struct PendingInstall {
    CorrelationId amfCorr;
    NodeId amf;
    SessionInstall install;
  };
  std::map<CorrelationId, PendingInstall> m_pendingSetup;   // keyed by TunnelSetup corr
  struct PendingRelease {
    CorrelationId amfCorr;
    NodeId amf;
    SessionId session = 0;
  };
  std::map<CorrelationId, PendingRelease> m_pendingRelease; // keyed by TunnelRelease corr
};

/// ICN anchor point: terminates 5GC tunnels, hosts a caching forwarder, and
/// doubles as the plain IP gateway (PDU session anchor) for IP transport.
class IcnApNode : public Node {
public:
  explicit IcnApNode(NodeId id, std::size_t csCapacity = 0)
    : Node(std::move(id), NodeRole::ICN_AP)
    , m_forwarder(/*anchorRole=*/true, csCapacity)
  {
  }

  Forwarder& forwarder() { return m_forwarder; }
  const Forwarder& forwarder() const { return m_forwarder; }
  UpfState& upf() { return m_upf; }
  const UpfState& upf() const { return m_upf; }
  const std::map<SessionId, TunnelId>& dlTunnels() const { return m_dlTunnels; }

  void addLinkFace(const NodeId& peer) { m_forwarder.addFace(FaceKind::LINK, peer); }
  void addIpRoute(const std::string& pattern, const NodeId& nextHop)
  {
    m_ipRoutes.emplace_back(pattern, nextHop);
  }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void onTimer(Sim& sim, const TimerTag& timer) override;
  void dumpState(Sim& sim) const override;

private:
  void handleControl(Sim& sim, const NodeId& from, const ControlMessage& msg);
  void processIcn(Sim& sim, const InnerPdu& pdu, FaceId inFace);
  void executeActions(Sim& sim, const ForwarderActions& result, const InnerPdu& original);
  void emitOnFace(Sim& sim, const Face& face, InnerPdu pdu);
  void routeIp(Sim& sim, const IpPacket& packet, bool fromTunnel);

  Forwarder m_forwarder;
  UpfState m_upf;
  std::map<SessionId, TunnelId> m_dlTunnels; // session anchor registry
  std::vector<std::pair<std::string, NodeId>> m_ipRoutes;
};

/// Plain ICN-DN router: named forwarding between links, no anchor role.
class RouterNode : public Node {
public:
  explicit RouterNode(NodeId id, std::size_t csCapacity = 0)
    : Node(std::move(id), NodeRole::ICN_DN_ROUTER)
    , m_forwarder(/*anchorRole=*/false, csCapacity)
  {
  }

  Forwarder& forwarder() { return m_forwarder; }
  const Forwarder& forwarder() const { return m_forwarder; }

  void addLinkFace(const NodeId& peer) { m_forwarder.addFace(FaceKind::LINK, peer); }
  void addIpRoute(const std::string& pattern, const NodeId& nextHop)
  {
    m_ipRoutes.emplace_back(pattern, nextHop);
  }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void onTimer(Sim& sim, const TimerTag& timer) override;
  void dumpState(Sim& sim) const override;

private:
  void executeActions(Sim& sim, const ForwarderActions& result);

  Forwarder m_forwarder;
  std::vector<std::pair<std::string, NodeId>> m_ipRoutes;
};

// "10.1.0.*"-style pattern used by the static IP routes (spec: equality or
// range match only, no real subnetting).
bool ipPatternMatches(const std::string& pattern, IpAddr addr);

// Schedules the PIT-expiry timer a node needs after forwarding an Interest.
void schedulePitExpiry(Sim& sim, const NodeId& node, const Interest& interest);

// User-plane trace record: time, node, direction, pdu, tunnel, outcome.
void tracePkt(Sim& sim, const NodeId& node, const char* dir, const InnerPdu& pdu,
              const std::string& tunnel, const std::string& outcome);

} // namespace icn5g

#endif // ICN5G_USER_PLANE_HPP
