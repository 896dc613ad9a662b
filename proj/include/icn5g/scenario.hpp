#ifndef ICN5G_SCENARIO_HPP
#define ICN5G_SCENARIO_HPP

#include "icn5g/common.hpp"
#include "icn5g/engine.hpp"
#include "icn5g/messages.hpp"
#include "icn5g/name.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace icn5g {

enum class ScenarioMode { IP_MEC, ICN_MEC, HANDOVER };

const char* toString(ScenarioMode mode);

struct NodeSpec {
  NodeId id;
  NodeRole role = NodeRole::APP_SERVER;
  std::size_t cache = 0;
  TimeMs delay = 0;
  std::optional<IpAddr> addr;
  std::optional<IpAddr> addrBase; // anchors: block UE addresses come from
  std::optional<IpAddr> dnsAddr;
  std::optional<Name> prefix;     // UE producer prefix
  std::vector<Name> serves;
  std::uint32_t payload = 1200;
  bool dns = false;
  std::optional<std::string> registers;
  std::optional<NodeId> peer;     // app-server default data peer
  std::optional<NodeId> pushNext; // pipeline successor
  std::optional<IpAddr> pushAddr;
};

struct ScenarioLink {
  NodeId a;
  NodeId b;
  TimeMs latency = 1;
  LinkKind kind = LinkKind::DATA;
  double loss = 0.0;
};

struct StaticRoute {
  NodeId node;
  Name prefix;
  NodeId nextHop;
};

struct StaticIpRoute {
  NodeId node;
  std::string pattern;
  NodeId nextHop;
};

struct WorkloadItem {
  TimeMs time = 0;
  NodeId node;
  std::string verb;
  std::vector<std::string> args;
};

struct ServiceInstanceSpec {
  std::string service;
  std::string clientPattern;
  IpAddr addr = 0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ScenarioMode mode = ScenarioMode::HANDOVER;
  Transport transport = Transport::ICN;
  std::uint64_t seed = 1;
  TimeMs maxTime = 60000;
  TimeMs interestLifetime = 4000;
  TimeMs retryPeriod = 2000;
  int maxRetries = 8;
  TimeMs translationDelay = 1;
  bool colocateRanUlcl = false;

  std::vector<NodeSpec> nodes;
  std::vector<ScenarioLink> links;
  std::vector<SubscriptionProfile> profiles;
  std::vector<SliceDescriptor> slices;
  std::vector<StaticRoute> routes;
  std::vector<StaticIpRoute> ipRoutes;
  std::vector<ServiceInstanceSpec> services;
  std::vector<WorkloadItem> workload;

  const NodeSpec* findNode(const NodeId& id) const;

  // Cross-reference and range checks; throws ValidationError with location.
  void validate() const;
};

// Parses the bundled scenario text format. Throws ParseError (syntax) or
// ValidationError (dangling references, bad ranges) with line locations.
ScenarioConfig loadScenario(const std::string& path);
ScenarioConfig parseScenario(std::istream& in, const std::string& sourceName);

} // namespace icn5g

#endif // ICN5G_SCENARIO_HPP
