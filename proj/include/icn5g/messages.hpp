#ifndef ICN5G_MESSAGES_HPP
#define ICN5G_MESSAGES_HPP

#include "icn5g/common.hpp"
#include "icn5g/name.hpp"
#include "icn5g/packet.hpp"
#include "icn5g/rules.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace icn5g {

enum class Transport { ICN, IP };

const char* toString(Transport transport);

// ---------------------------------------------------------------------------
// Control-plane domain records carried inside messages
// ---------------------------------------------------------------------------

struct SubscriptionProfile {
  NodeId ue;
  bool icnServiceEnabled = false;
  std::vector<std::string> allowedSlices;
};

struct SliceDescriptor {
  std::string sliceId;
  std::vector<NodeId> ulclCandidates;   // non-empty
  std::vector<NodeId> anchorCandidates; // non-empty
};

// One atomic piece of an N4 update delta.
struct N4Op {
  enum class Kind { ADD_TUNNEL, REMOVE_TUNNEL, ADD_RULE, REMOVE_SESSION };
  Kind kind = Kind::ADD_TUNNEL;
  TunnelId tunnel;          // ADD_TUNNEL / REMOVE_TUNNEL
  NodeId peer;              // ADD_TUNNEL
  bool towardRan = false;   // ADD_TUNNEL: tunnel faces the RAN side
  FiveTuple assoc;          // ADD_TUNNEL: session IP association on this tunnel
  ClassifierRule rule;      // ADD_RULE
  SessionId session = 0;    // REMOVE_SESSION, and tags ADD_TUNNEL
};

// ---------------------------------------------------------------------------
// Control messages (N1++/N11++/N4/NIcn/Naf++/Npcf++/Nudm++ signaling)
// ---------------------------------------------------------------------------

struct RegistrationRequest { NodeId ue; };
struct RegistrationAccept { NodeId ue; bool icnAuthorized = false; };
struct SubscriptionQuery { NodeId ue; };
struct SubscriptionResponse {
  NodeId ue;
  bool found = false;
  bool icnEnabled = false;
  std::vector<std::string> allowedSlices;
};
struct PolicyPush {
  std::vector<SubscriptionProfile> profiles;
  std::vector<SliceDescriptor> slices;
};
struct PolicyPushAck {};

struct SessionEstablishRequest {
  NodeId ue;
  std::string sliceHint;
  Transport transport = Transport::ICN;
  // filled in on the AMF->SMF leg
  NodeId servingRan;
  SliceDescriptor slice;
  std::optional<Name> uePrefix; // producer prefix, if the UE publishes
};
struct SessionEstablishAccept {
  NodeId ue;
  SessionId session = 0;
  TunnelId ranTunnel;
  NodeId ulcl;
  NodeId anchor;
  IpAddr ueAddr = 0;
  FiveTuple assoc;
};
struct SessionEstablishReject { NodeId ue; std::string cause; };

struct SliceQuery { NodeId ue; std::string hint; };
struct SliceResponse { bool ok = false; SliceDescriptor slice; std::string cause; };

struct SessionReady { SessionId session = 0; };
struct SessionReadyAck { SessionId session = 0; };

struct N4Update { SessionId session = 0; std::vector<N4Op> ops; };
struct N4Ack { SessionId session = 0; bool ok = true; std::string cause; };

// NIcn: SMF++ <-> ICN-SMF <-> ICN-AP session/anchor management
struct IcnSessionCreate {
  SessionId session = 0;
  NodeId ue;
  std::string slice;
  SliceDescriptor sliceDesc;
  NodeId ulcl;
  TunnelId dlTunnel; // anchor<->UL-CL tunnel, allocated by SMF
  std::optional<Name> uePrefix;
};
struct IcnSessionCreated {
  SessionId session = 0;
  bool ok = false;
  NodeId anchor;
  std::string cause;
};
struct IcnAnchorInstall {
  SessionId session = 0;
  TunnelId dlTunnel;
  NodeId dlPeer; // the UL-CL this anchor serves the session through
  std::optional<Name> uePrefix;
};
struct IcnLabelInstall {
  SessionId session = 0;
  Name prefix;
  NodeId targetAnchor;
};
struct IcnSessionRelease {
  SessionId session = 0;
  std::optional<Name> uePrefix;
  bool removeLabel = false;
};
struct IcnSessionAck { SessionId session = 0; bool ok = true; std::string cause; };

struct IcnMobilityUpdate {
  SessionId session = 0;
  NodeId targetUlcl;
  NodeId newAnchor;
  NodeId oldAnchor;
  TunnelId dlTunnel; // new anchor<->target UL-CL tunnel
  std::optional<Name> uePrefix;
};
struct IcnMobilityAck { SessionId session = 0; bool ok = true; std::string cause; };

struct IcnReleaseOld { SessionId session = 0; };
struct IcnReleaseAck { SessionId session = 0; bool ok = true; };

struct NrsUpdate { Name prefix; NodeId anchor; };
struct NrsAck { Name prefix; };
struct NrsRouteUpdate { Name prefix; NodeId anchor; }; // NRS -> DN edge routers

// Handover choreography (Fig. 4 steps ride in Envelope::step)
struct HandoverRequest {
  NodeId ue;
  NodeId targetRan;
  std::vector<SessionId> sessions;
  std::vector<Name> names; // ICN names that require mobility support
};
struct HandoverRequired {
  NodeId ue;
  NodeId targetRan;
  std::vector<SessionId> sessions;
};
struct PathSwitchCommand {
  NodeId ue;
  NodeId targetRan;
  std::vector<SessionId> sessions;
};
struct PathSwitchAck {
  SessionId session = 0;
  bool ok = true;
  NodeId targetUlcl;
  NodeId targetAnchor;
  TunnelId ranTunnel;
  FiveTuple assoc;
  std::string cause;
};
struct SessionInstall { // AMF -> RAN (establishment and Step 8)
  NodeId ue;
  SessionId session = 0;
  TunnelId tunnel;
  NodeId ulcl;
  FiveTuple assoc;
};
struct SessionInstallAck { SessionId session = 0; bool ok = true; };
struct HandoverAck { // AMF -> UE (NAS)
  NodeId ue;
  SessionId session = 0;
  NodeId targetRan;
  IpAddr newAddr = 0;
  NodeId newAnchor;
};
struct HandoverConfirm { NodeId ue; SessionId session = 0; };
struct HandoverSuccess { NodeId ue; SessionId session = 0; };
struct ReleaseCommand {
  NodeId ue;
  SessionId session = 0;
  TunnelId tunnel;
  NodeId ulcl;
};
struct ReleaseAck { SessionId session = 0; };
struct HandoverComplete { NodeId ue; SessionId session = 0; };
struct HandoverCompleteAck { SessionId session = 0; bool ok = true; };

// RAN<->UL-CL tunnel-state handshake (localized when co-located)
struct TunnelSetup { TunnelId tunnel; SessionId session = 0; NodeId ran; };
struct TunnelSetupAck { TunnelId tunnel; bool ok = true; };
struct TunnelRelease { TunnelId tunnel; SessionId session = 0; };
struct TunnelReleaseAck { TunnelId tunnel; };

using ControlBody = std::variant<
  RegistrationRequest, RegistrationAccept, SubscriptionQuery, SubscriptionResponse,
  PolicyPush, PolicyPushAck,
  SessionEstablishRequest, SessionEstablishAccept, SessionEstablishReject,
  SliceQuery, SliceResponse, SessionReady, SessionReadyAck,
  N4Update, N4Ack,
  IcnSessionCreate, IcnSessionCreated, IcnAnchorInstall, IcnLabelInstall,
  IcnSessionRelease, IcnSessionAck, IcnMobilityUpdate, IcnMobilityAck,
  IcnReleaseOld, IcnReleaseAck,
  NrsUpdate, NrsAck, NrsRouteUpdate,
  HandoverRequest, HandoverRequired, PathSwitchCommand, PathSwitchAck,
  SessionInstall, SessionInstallAck, HandoverAck, HandoverConfirm,
  HandoverSuccess, ReleaseCommand, ReleaseAck, HandoverComplete, HandoverCompleteAck,
  TunnelSetup, TunnelSetupAck, TunnelRelease, TunnelReleaseAck>;

struct ControlMessage {
  NodeId sender;    // logical endpoint (may differ from the link hop, e.g. NAS)
  NodeId receiver;
  CorrelationId correlation = 0;
  int step = 0;     // Fig. 4 handover step tag; 0 = not step-tagged
  ControlBody body;
};

const char* kindName(const ControlBody& body);
// Requests expect exactly one correlated response in a quiescent run.
bool expectsResponse(const ControlBody& body);
bool isResponse(const ControlBody& body);
std::string controlSummary(const ControlMessage& msg);

// ---------------------------------------------------------------------------
// Everything a link can carry
// ---------------------------------------------------------------------------

/// Radio-link frame between a UE and a RAN (5G-NR abstracted away).
struct RadioFrame {
  NodeId ue;
  std::optional<SessionId> session;
  std::variant<InnerPdu, ControlMessage> inner;
};

using WirePayload = std::variant<TunneledPacket, InnerPdu, ControlMessage, RadioFrame>;

std::string wireSummary(const WirePayload& payload);
bool isControl(const WirePayload& payload);

} // namespace icn5g

#endif // ICN5G_MESSAGES_HPP
