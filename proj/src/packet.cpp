#include "icn5g/packet.hpp"

#include <sstream>

namespace icn5g {

const char*
toString(IpProtocol protocol)
{
  switch (protocol) {
    case IpProtocol::UDP:
      return "udp";
    case IpProtocol::TCP:
      return "tcp";
    default:
      return "other";
  }
}

IpAddr
makeAddr(int a, int b, int c, int d)
{
  return (static_cast<IpAddr>(a) << 24) | (static_cast<IpAddr>(b) << 16) |
         (static_cast<IpAddr>(c) << 8) | static_cast<IpAddr>(d);
}

std::string
addrToString(IpAddr addr)
{
  std::ostringstream os;
  os << ((addr >> 24) & 0xff) << '.' << ((addr >> 16) & 0xff) << '.'
     << ((addr >> 8) & 0xff) << '.' << (addr & 0xff);
  return os.str();
}

std::optional<IpAddr>
parseAddr(const std::string& text)
{
  unsigned parts[4];
  int i = 0;
  std::size_t pos = 0;
  while (i < 4) {
    std::size_t next = text.find('.', pos);
    std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
      return std::nullopt;
    }
    unsigned long v = std::stoul(tok);
    if (v > 255) {
      return std::nullopt;
    }
    parts[i++] = static_cast<unsigned>(v);
    if (next == std::string::npos) {
      break;
    }
    pos = next + 1;
  }
  if (i != 4) {
    return std::nullopt;
  }
  return makeAddr(parts[0], parts[1], parts[2], parts[3]);
}

FiveTuple
FiveTuple::reversed() const
{
  FiveTuple r = *this;
  std::swap(r.srcAddr, r.dstAddr);
  std::swap(r.srcPort, r.dstPort);
  return r;
}

std::string
FiveTuple::toString() const
{
  std::ostringstream os;
  os << addrToString(srcAddr) << ':' << srcPort << '>' << addrToString(dstAddr)
     << ':' << dstPort << '/' << icn5g::toString(protocol);
  return os.str();
}

TunneledPacket
encapsulate(InnerPdu pdu, const TunnelId& tunnel, const std::set<TunnelId>& knownTunnels)
{
  if (knownTunnels.count(tunnel) == 0) {
    throw UnknownTunnel(tunnel);
  }
  return TunneledPacket{tunnel, std::move(pdu)};
}

std::pair<TunnelId, InnerPdu>
decapsulate(const TunneledPacket& tp)
{
  return {tp.tunnelId, tp.inner};
}

const Name*
pduName(const InnerPdu& pdu)
{
  if (const auto* i = std::get_if<Interest>(&pdu)) {
    return &i->name;
  }
  if (const auto* d = std::get_if<Data>(&pdu)) {
    return &d->name;
  }
  if (const auto* n = std::get_if<Nack>(&pdu)) {
    return &n->name;
  }
  return nullptr;
}

std::string
pduKind(const InnerPdu& pdu)
{
  if (std::holds_alternative<Interest>(pdu)) {
    return "interest";
  }
  if (std::holds_alternative<Data>(pdu)) {
    return "data";
  }
  if (std::holds_alternative<Nack>(pdu)) {
    return "nack";
  }
  return "ip";
}

std::string
pduSummary(const InnerPdu& pdu)
{
  if (const auto* i = std::get_if<Interest>(&pdu)) {
    std::ostringstream os;
    os << "interest " << i->name << " nonce=" << i->nonce;
    return os.str();
  }
  if (const auto* d = std::get_if<Data>(&pdu)) {
    std::ostringstream os;
    os << "data " << d->name << " size=" << d->payloadSize;
    return os.str();
  }
  if (const auto* n = std::get_if<Nack>(&pdu)) {
    std::ostringstream os;
    os << "nack " << n->name << " reason=" << n->reason;
    return os.str();
  }
  const auto& ip = std::get<IpPacket>(pdu);
  std::ostringstream os;
  os << "ip " << ip.fiveTuple.toString();
  if (!ip.app.empty()) {
    os << " app=" << ip.app;
  }
  return os.str();
}

} // namespace icn5g
