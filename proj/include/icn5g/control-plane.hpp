#ifndef ICN5G_CONTROL_PLANE_HPP
#define ICN5G_CONTROL_PLANE_HPP

#include "icn5g/engine.hpp"
#include "icn5g/messages.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace icn5g {

enum class SessionState {
  ESTABLISHING,
  ACTIVE,
  HANDOVER_PREPARING,
  HANDOVER_EXECUTING,
  RELEASED,
};

const char* toString(SessionState state);

/// Per-UE logical connection state held at the SMF.
struct PduSessionRecord {
  SessionId id = 0;
  NodeId ue;
  std::string slice;
  SliceDescriptor sliceDesc;
  Transport transport = Transport::ICN;
  NodeId servingRan;
  NodeId servingUlcl;
  NodeId servingAnchor;
  TunnelId ranTunnel; // RAN <-> UL-CL
  TunnelId apTunnel;  // UL-CL <-> anchor
  IpAddr ueAddr = 0;
  FiveTuple assoc;
  SessionState state = SessionState::ESTABLISHING;
  std::optional<Name> uePrefix;
};

struct UeContext {
  NodeId ue;
  bool icnAuthorized = false;
  NodeId servingRan;
  std::set<SessionId> sessions;
  std::optional<Name> uePrefix;
};

// ---------------------------------------------------------------------------
// PCF/UDM and NSSF
// ---------------------------------------------------------------------------

class PcfUdmNode : public Node {
public:
  explicit PcfUdmNode(NodeId id)
    : Node(std::move(id), NodeRole::PCF_UDM)
  {
  }

  const std::map<NodeId, SubscriptionProfile>& profiles() const { return m_profiles; }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;

private:
  std::map<NodeId, SubscriptionProfile> m_profiles;
};

class NssfNode : public Node {
public:
  explicit NssfNode(NodeId id)
    : Node(std::move(id), NodeRole::NSSF)
  {
  }

  // nssf_select_slice: unique allowed slice matching the hint; an absent
  // hint defaults to a single-candidate profile. Throws NoSlice.
  SliceDescriptor selectSlice(const NodeId& ue, const std::string& hint) const;

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;

private:
  std::map<NodeId, std::vector<std::string>> m_allowed;
  std::map<std::string, SliceDescriptor> m_slices;
};

// ---------------------------------------------------------------------------
// ICN-AF
// ---------------------------------------------------------------------------

/// Application function holding operator policy; pushes profiles to PCF/UDM
/// and slice details to NSSF before registration events consume them.
class IcnAfNode : public Node {
public:
  IcnAfNode(NodeId id, std::vector<SubscriptionProfile> profiles,
            std::vector<SliceDescriptor> slices)
    : Node(std::move(id), NodeRole::ICN_AF)
    , m_profiles(std::move(profiles))
    , m_slices(std::move(slices))
  {
  }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void onAction(Sim& sim, const WorkloadAction& action) override;

private:
  std::vector<SubscriptionProfile> m_profiles;
  std::vector<SliceDescriptor> m_slices;
};

// ---------------------------------------------------------------------------
// NRS
// ---------------------------------------------------------------------------

/// Name Resolution Server: producer prefix -> current anchor. Updates also
/// fan out to DN edge routers reachable over NRS control links.
class NrsNode : public Node {
public:
  explicit NrsNode(NodeId id)
    : Node(std::move(id), NodeRole::NRS)
  {
  }

  // nrs_resolve: current anchor for the longest registered covering prefix.
  // Throws Unresolved.
  NodeId resolve(const Name& prefix) const;

  const std::map<Name, NodeId>& mappings() const { return m_mappings; }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void dumpState(Sim& sim) const override;

private:
  std::map<Name, NodeId> m_mappings;
};

// ---------------------------------------------------------------------------
// AMF++
// ---------------------------------------------------------------------------

class AmfNode : public Node {
public:
  explicit AmfNode(NodeId id)
    : Node(std::move(id), NodeRole::AMF)
  {
  }

  const std::map<NodeId, UeContext>& ueContexts() const { return m_contexts; }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void dumpState(Sim& sim) const override;

private:
  struct RegistrationProc {
    NodeId ue;
    CorrelationId ueCorr = 0;
  };
  struct EstablishProc {
    NodeId ue;
    CorrelationId ueCorr = 0;
    SessionEstablishRequest request;
    SessionEstablishAccept accept;
  };
  struct HandoverProc {
    NodeId ue;
    SessionId session = 0;
    NodeId sourceRan;
    NodeId targetRan;
    NodeId oldUlcl;
    TunnelId oldRanTunnel;
    PathSwitchAck pathSwitch;
  };

  NodeId peerByRole(Sim& sim, NodeRole role) const;
  void handleControl(Sim& sim, const NodeId& from, const ControlMessage& msg);
  void sendNasToUe(Sim& sim, const NodeId& ue, ControlMessage msg);

  std::map<NodeId, UeContext> m_contexts;
  std::map<CorrelationId, RegistrationProc> m_registrations;
  std::map<CorrelationId, EstablishProc> m_establishments;
  std::map<CorrelationId, HandoverProc> m_handovers;
  std::map<SessionId, HandoverProc> m_hoBySession; // waiting for Step 11
  std::map<SessionId, SessionInstall> m_ranInstalls; // latest RAN-side install
};

// ---------------------------------------------------------------------------
// SMF++
// ---------------------------------------------------------------------------

class SmfNode : public Node {
public:
  explicit SmfNode(NodeId id)
    : Node(std::move(id), NodeRole::SMF)
  {
  }

  // Anchor address blocks, e.g. icnap1 -> 10.1.0.0 (host addresses are
  // allocated from the serving anchor's block).
  void setAnchorAddrBase(const NodeId& anchor, IpAddr base) { m_addrBase[anchor] = base; }

  const std::map<SessionId, PduSessionRecord>& sessions() const { return m_sessions; }

  // smf_select_target_path: UL-CL with minimum hop count from the RAN
  // (ties: lowest numeric node id), anchor selected the same way relative
  // to that UL-CL. Throws NoCandidate.
  std::pair<NodeId, NodeId> selectTargetPath(Sim& sim, const NodeId& ran,
                                             const SliceDescriptor& slice) const;

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void dumpState(Sim& sim) const override;

private:
  struct EstablishProc {
    CorrelationId amfCorr = 0;
    NodeId amf;
    SessionId session = 0;
    enum class Phase { ICN_CREATE, N4_ULCL, N4_ANCHOR } phase = Phase::ICN_CREATE;
  };
  struct HandoverProc {
    CorrelationId amfCorr = 0;
    NodeId amf;
    SessionId session = 0;
    NodeId targetRan;
    NodeId newUlcl;
    NodeId newAnchor;
    TunnelId newRanTunnel;
    TunnelId newApTunnel;
    IpAddr newAddr = 0;
    FiveTuple newAssoc;
    bool ulclChanged = false;
    bool anchorChanged = false;
    enum class Phase { N4_TARGET, ICN_MOBILITY, EXECUTING, CLEANUP } phase = Phase::N4_TARGET;
    int cleanupPending = 0;
  };

  NodeId selectNearest(Sim& sim, const NodeId& reference,
                       const std::vector<NodeId>& candidates) const;
  NodeId icnSmfNode(Sim& sim) const;
  IpAddr allocateAddr(const NodeId& anchor);
  FiveTuple makeAssoc(IpAddr ueAddr, const NodeId& anchor) const;
  TunnelId allocateTunnel();

  void startEstablish(Sim& sim, const NodeId& from, const ControlMessage& msg);
  void sendUlclN4(Sim& sim, EstablishProc proc, const PduSessionRecord& record);
  void continueEstablish(Sim& sim, CorrelationId corr, bool ok, const std::string& cause,
                         const NodeId& anchorFromIcn);
  void rollbackEstablish(Sim& sim, EstablishProc& proc, const std::string& cause);
  void startHandover(Sim& sim, const NodeId& from, const ControlMessage& msg);
  void continueHandover(Sim& sim, CorrelationId corr, bool ok, const std::string& cause);
  void startCleanup(Sim& sim, const NodeId& from, const ControlMessage& msg,
                    const HandoverComplete& complete);
  void advanceCleanup(Sim& sim, HandoverProc proc);
  void finishCleanupPiece(Sim& sim, CorrelationId corr);

  std::map<SessionId, PduSessionRecord> m_sessions;
  std::map<CorrelationId, EstablishProc> m_establishing;
  std::map<CorrelationId, HandoverProc> m_handovers;
  std::map<SessionId, HandoverProc> m_executing; // Steps 8..11 in flight
  std::map<CorrelationId, HandoverProc> m_cleanup;
  std::map<NodeId, IpAddr> m_addrBase;
  std::map<NodeId, int> m_nextHost;
  SessionId m_nextSession = 0;
  int m_nextTunnel = 0;
};

// ---------------------------------------------------------------------------
// ICN-SMF
// ---------------------------------------------------------------------------

class IcnSmfNode : public Node {
public:
  explicit IcnSmfNode(NodeId id)
    : Node(std::move(id), NodeRole::ICN_SMF)
  {
  }

  struct IcnSessionState {
    SessionId session = 0;
    NodeId anchor;
    NodeId ulcl;
    TunnelId dlTunnel;
    std::optional<Name> uePrefix;
  };

  const std::map<SessionId, IcnSessionState>& sessions() const { return m_sessions; }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void dumpState(Sim& sim) const override;

private:
  struct CreateProc {
    CorrelationId smfCorr = 0;
    NodeId smf;
    IcnSessionCreate request;
    NodeId anchor;
  };
  struct MobilityProc {
    CorrelationId smfCorr = 0;
    NodeId smf;
    IcnMobilityUpdate request;
    enum class Phase { NEW_ANCHOR, OLD_LABEL } phase = Phase::NEW_ANCHOR;
  };
  struct ReleaseProc {
    CorrelationId smfCorr = 0;
    NodeId smf;
    SessionId session = 0;
    enum class Phase { OLD_ANCHOR, NRS } phase = Phase::OLD_ANCHOR;
  };

  NodeId nrsNode(Sim& sim) const;
  NodeId selectAnchor(Sim& sim, const NodeId& ulcl, const SliceDescriptor& slice) const;
  void finishCreate(Sim& sim, const CreateProc& proc);
  void finishRelease(Sim& sim, ReleaseProc& proc);
  void commitRelease(Sim& sim, const ReleaseProc& proc);

  std::map<SessionId, IcnSessionState> m_sessions;
  std::map<SessionId, IcnSessionState> m_pendingMobility; // new-path state until Step 12
  std::map<CorrelationId, CreateProc> m_creating;
  std::map<CorrelationId, MobilityProc> m_mobility;
  std::map<CorrelationId, ReleaseProc> m_releasing;
};

} // namespace icn5g

#endif // ICN5G_CONTROL_PLANE_HPP
