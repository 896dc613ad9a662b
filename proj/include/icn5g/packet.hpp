#ifndef ICN5G_PACKET_HPP
#define ICN5G_PACKET_HPP

#include "icn5g/common.hpp"
#include "icn5g/name.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>

namespace icn5g {

/// ICN request PDU.
struct Interest {
  Name name;
  Nonce nonce = 0;
  TimeMs lifetime = 4000; // must stay > 0
  std::uint32_t hopCount = 0;

  bool operator==(const Interest&) const = default;
};

/// ICN response PDU; satisfies an Interest with exactly the same name.
struct Data {
  Name name;
  std::uint32_t payloadSize = 0;
  NodeId producerId;
  bool signedFlag = true; // content security abstracted to a boolean

  bool operator==(const Data&) const = default;
};

using IcnPdu = std::variant<Interest, Data>;

/// Negative acknowledgment for an unroutable Interest; lets consumers
/// retransmit deterministically instead of waiting out the lifetime.
struct Nack {
  Name name;
  Nonce nonce = 0;
  std::string reason;

  bool operator==(const Nack&) const = default;
};

enum class IpProtocol { UDP, TCP, OTHER };

const char* toString(IpProtocol protocol);

// Abstract 32-bit addresses, rendered dotted-quad in logs.
using IpAddr = std::uint32_t;

IpAddr makeAddr(int a, int b, int c, int d);
std::string addrToString(IpAddr addr);
std::optional<IpAddr> parseAddr(const std::string& text);

struct FiveTuple {
  IpAddr srcAddr = 0;
  IpAddr dstAddr = 0;
  int srcPort = 0; // [0, 65535]
  int dstPort = 0; // [0, 65535]
  IpProtocol protocol = IpProtocol::OTHER;

  bool operator==(const FiveTuple&) const = default;

  // Same endpoints, opposite direction.
  FiveTuple reversed() const;

  std::string toString() const;
};

/// Abstract IP packet; `app` is an application payload descriptor used by
/// the IP-mode scenarios (DNS lookups, service requests), not wire bytes.
struct IpPacket {
  FiveTuple fiveTuple;
  std::uint32_t payloadSize = 0;
  std::string app;

  bool operator==(const IpPacket&) const = default;
};

using InnerPdu = std::variant<Interest, Data, IpPacket, Nack>;

/// PDU riding a 5GC tunnel segment. Decapsulation recovers (tunnelId, inner)
/// exactly; there is no GTP bit layout.
struct TunneledPacket {
  TunnelId tunnelId;
  InnerPdu inner;

  bool operator==(const TunneledPacket&) const = default;
};

// Wraps `pdu` for transport on `tunnel`. The tunnel must be known at the
// encapsulating node; throws UnknownTunnel otherwise.
TunneledPacket encapsulate(InnerPdu pdu, const TunnelId& tunnel,
                           const std::set<TunnelId>& knownTunnels);

// Exact inverse of encapsulate; TunneledPacket is well-formed by construction.
std::pair<TunnelId, InnerPdu> decapsulate(const TunneledPacket& tp);

const Name* pduName(const InnerPdu& pdu);
std::string pduKind(const InnerPdu& pdu);
std::string pduSummary(const InnerPdu& pdu);

} // namespace icn5g

#endif // ICN5G_PACKET_HPP
