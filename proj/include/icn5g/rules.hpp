#ifndef ICN5G_RULES_HPP
#define ICN5G_RULES_HPP

#include "icn5g/common.hpp"
#include "icn5g/packet.hpp"

#include <optional>
#include <string>

namespace icn5g {

enum class Direction { UL, DL };

const char* toString(Direction dir);

/// Five-tuple predicate: each field either concrete or wildcard.
struct FiveTuplePattern {
  std::optional<IpAddr> srcAddr;
  std::optional<IpAddr> dstAddr;
  std::optional<int> srcPort;
  std::optional<int> dstPort;
  std::optional<IpProtocol> protocol;

  bool operator==(const FiveTuplePattern&) const = default;

  bool matches(const FiveTuple& ft) const;

  std::string toString() const;
};

/// UL-CL traffic steering rule. Evaluation picks the highest priority;
/// ties go to the earliest-inserted rule.
struct ClassifierRule {
  Direction direction = Direction::UL;
  FiveTuplePattern match;
  TunnelId actionTunnel;
  int priority = 0;
  SessionId session = 0;

  bool operator==(const ClassifierRule&) const = default;
};

} // namespace icn5g

#endif // ICN5G_RULES_HPP
