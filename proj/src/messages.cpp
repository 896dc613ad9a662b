#include "icn5g/messages.hpp"

#include <sstream>

namespace icn5g {

const char*
toString(Direction dir)
{
  return dir == Direction::UL ? "ul" : "dl";
}

const char*
toString(Transport transport)
{
  return transport == Transport::ICN ? "icn" : "ip";
}

bool
FiveTuplePattern::matches(const FiveTuple& ft) const
{
  if (srcAddr && *srcAddr != ft.srcAddr) {
    return false;
  }
  if (dstAddr && *dstAddr != ft.dstAddr) {
    return false;
  }
  if (srcPort && *srcPort != ft.srcPort) {
    return false;
  }
  if (dstPort && *dstPort != ft.dstPort) {
    return false;
  }
  if (protocol && *protocol != ft.protocol) {
    return false;
  }
  return true;
}

std::string
FiveTuplePattern::toString() const
{
  std::ostringstream os;
  os << (srcAddr ? addrToString(*srcAddr) : "*") << ':'
     << (srcPort ? std::to_string(*srcPort) : "*") << '>'
     << (dstAddr ? addrToString(*dstAddr) : "*") << ':'
     << (dstPort ? std::to_string(*dstPort) : "*");
  return os.str();
}

namespace {

template<typename T>
struct KindNameOf;

#define ICN5G_MSG_NAME(Type)                  \
  template<>                                  \
  struct KindNameOf<Type> {                   \
    static constexpr const char* value = #Type; \
  }

ICN5G_MSG_NAME(RegistrationRequest);
ICN5G_MSG_NAME(RegistrationAccept);
ICN5G_MSG_NAME(SubscriptionQuery);
ICN5G_MSG_NAME(SubscriptionResponse);
ICN5G_MSG_NAME(PolicyPush);
ICN5G_MSG_NAME(PolicyPushAck);
ICN5G_MSG_NAME(SessionEstablishRequest);
ICN5G_MSG_NAME(SessionEstablishAccept);
ICN5G_MSG_NAME(SessionEstablishReject);
ICN5G_MSG_NAME(SliceQuery);
ICN5G_MSG_NAME(SliceResponse);
ICN5G_MSG_NAME(SessionReady);
ICN5G_MSG_NAME(SessionReadyAck);
ICN5G_MSG_NAME(N4Update);
ICN5G_MSG_NAME(N4Ack);
ICN5G_MSG_NAME(IcnSessionCreate);
ICN5G_MSG_NAME(IcnSessionCreated);
ICN5G_MSG_NAME(IcnAnchorInstall);
ICN5G_MSG_NAME(IcnLabelInstall);
ICN5G_MSG_NAME(IcnSessionRelease);
ICN5G_MSG_NAME(IcnSessionAck);
ICN5G_MSG_NAME(IcnMobilityUpdate);
ICN5G_MSG_NAME(IcnMobilityAck);
ICN5G_MSG_NAME(IcnReleaseOld);
ICN5G_MSG_NAME(IcnReleaseAck);
ICN5G_MSG_NAME(NrsUpdate);
ICN5G_MSG_NAME(NrsAck);
ICN5G_MSG_NAME(NrsRouteUpdate);
ICN5G_MSG_NAME(HandoverRequest);
ICN5G_MSG_NAME(HandoverRequired);
ICN5G_MSG_NAME(PathSwitchCommand);
ICN5G_MSG_NAME(PathSwitchAck);
ICN5G_MSG_NAME(SessionInstall);
ICN5G_MSG_NAME(SessionInstallAck);
ICN5G_MSG_NAME(HandoverAck);
ICN5G_MSG_NAME(HandoverConfirm);
ICN5G_MSG_NAME(HandoverSuccess);
ICN5G_MSG_NAME(ReleaseCommand);
ICN5G_MSG_NAME(ReleaseAck);
ICN5G_MSG_NAME(HandoverComplete);
ICN5G_MSG_NAME(HandoverCompleteAck);
ICN5G_MSG_NAME(TunnelSetup);
ICN5G_MSG_NAME(TunnelSetupAck);
ICN5G_MSG_NAME(TunnelRelease);
ICN5G_MSG_NAME(TunnelReleaseAck);

#undef ICN5G_MSG_NAME

} // namespace

const char*
kindName(const ControlBody& body)
{
  return std::visit([] (const auto& b) {
    return KindNameOf<std::decay_t<decltype(b)>>::value;
  }, body);
}

bool
expectsResponse(const ControlBody& body)
{
  return std::visit([] (const auto& b) {
    using T = std::decay_t<decltype(b)>;
    return std::is_same_v<T, RegistrationRequest> || std::is_same_v<T, SubscriptionQuery> ||
           std::is_same_v<T, PolicyPush> || std::is_same_v<T, SessionEstablishRequest> ||
           std::is_same_v<T, SliceQuery> || std::is_same_v<T, SessionReady> ||
           std::is_same_v<T, N4Update> || std::is_same_v<T, IcnSessionCreate> ||
           std::is_same_v<T, IcnAnchorInstall> || std::is_same_v<T, IcnLabelInstall> ||
           std::is_same_v<T, IcnSessionRelease> || std::is_same_v<T, IcnMobilityUpdate> ||
           std::is_same_v<T, IcnReleaseOld> || std::is_same_v<T, NrsUpdate> ||
           std::is_same_v<T, PathSwitchCommand> || std::is_same_v<T, SessionInstall> ||
           std::is_same_v<T, ReleaseCommand> || std::is_same_v<T, HandoverComplete> ||
           std::is_same_v<T, TunnelSetup> || std::is_same_v<T, TunnelRelease>;
  }, body);
}

bool
isResponse(const ControlBody& body)
{
  return std::visit([] (const auto& b) {
    using T = std::decay_t<decltype(b)>;
    return std::is_same_v<T, RegistrationAccept> || std::is_same_v<T, SubscriptionResponse> ||
           std::is_same_v<T, PolicyPushAck> || std::is_same_v<T, SessionEstablishAccept> ||
           std::is_same_v<T, SessionEstablishReject> || std::is_same_v<T, SliceResponse> ||
           std::is_same_v<T, SessionReadyAck> || std::is_same_v<T, N4Ack> ||
           std::is_same_v<T, IcnSessionCreated> || std::is_same_v<T, IcnSessionAck> ||
           std::is_same_v<T, IcnMobilityAck> || std::is_same_v<T, IcnReleaseAck> ||
           std::is_same_v<T, NrsAck> || std::is_same_v<T, PathSwitchAck> ||
           std::is_same_v<T, SessionInstallAck> || std::is_same_v<T, ReleaseAck> ||
           std::is_same_v<T, HandoverCompleteAck> || std::is_same_v<T, TunnelSetupAck> ||
           std::is_same_v<T, TunnelReleaseAck>;
  }, body);
}

std::string
controlSummary(const ControlMessage& msg)
{
  std::ostringstream os;
  os << kindName(msg.body) << " from=" << msg.sender << " to=" << msg.receiver
     << " corr=" << msg.correlation;
  if (msg.step != 0) {
    os << " step=" << msg.step;
  }
  return os.str();
}

std::string
wireSummary(const WirePayload& payload)
{
  if (const auto* tp = std::get_if<TunneledPacket>(&payload)) {
    return "tunneled tunnel=" + tp->tunnelId + " " + pduSummary(tp->inner);
  }
  if (const auto* pdu = std::get_if<InnerPdu>(&payload)) {
    return pduSummary(*pdu);
  }
  if (const auto* ctrl = std::get_if<ControlMessage>(&payload)) {
    return controlSummary(*ctrl);
  }
  const auto& frame = std::get<RadioFrame>(payload);
  std::ostringstream os;
  os << "radio ue=" << frame.ue;
  if (frame.session) {
    os << " session=" << *frame.session;
  }
  if (const auto* pdu = std::get_if<InnerPdu>(&frame.inner)) {
    os << ' ' << pduSummary(*pdu);
  }
  else {
    os << ' ' << controlSummary(std::get<ControlMessage>(frame.inner));
  }
  return os.str();
}

bool
isControl(const WirePayload& payload)
{
  if (std::holds_alternative<ControlMessage>(payload)) {
    return true;
  }
  if (const auto* frame = std::get_if<RadioFrame>(&payload)) {
    return std::holds_alternative<ControlMessage>(frame->inner);
  }
  return false;
}

} // namespace icn5g
