#ifndef ICN5G_APP_HPP
#define ICN5G_APP_HPP

#include "icn5g/engine.hpp"
#include "icn5g/messages.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace icn5g {

struct ConsumerConfig {
  TimeMs interestLifetime = 4000;
  TimeMs retryPeriod = 2000;
  int maxRetries = 8;
};

struct PendingRequest {
  TimeMs firstIssued = 0;
  int retries = 0;
  bool satisfied = false;
  TimeMs satisfiedAt = 0;
  int deliveries = 0;
};

/// Request bookkeeping shared by every consumer app: one entry per distinct
/// content key, satisfied once, retransmissions tracked.
struct ConsumerLedger {
  std::map<std::string, PendingRequest> requests;
  std::int64_t duplicates = 0;
  std::int64_t nacksReceived = 0;

  PendingRequest& openRequest(const std::string& key, TimeMs now);
  // Returns true when this delivery satisfied the request (first arrival).
  bool onDelivery(const std::string& key, TimeMs now);

  std::int64_t unsatisfied() const;
  std::vector<std::pair<std::string, TimeMs>> latencies() const;
};

struct ServiceInstance {
  std::string service;
  std::string clientPattern; // UE address block served by this instance
  IpAddr addr = 0;
};

struct AppServerConfig {
  std::optional<IpAddr> addr;
  std::vector<Name> serves;       // producer prefixes answered with Data
  std::uint32_t payloadSize = 1200;
  Transport transport = Transport::ICN;
  ConsumerConfig consumer;
  NodeId defaultPeer;             // adjacent router/anchor for outbound traffic
  std::vector<std::pair<std::string, NodeId>> ipRoutes;
  // DNS service
  bool dnsServer = false;
  std::vector<ServiceInstance> services;
  std::optional<IpAddr> dnsAddr;  // resolver used when this node is an IP client
  // sensing/monitoring pipeline stage
  std::optional<NodeId> pushNext;
  std::optional<IpAddr> pushNextAddr;
  TimeMs translationDelay = 0;    // app-level gateway cost, IP mode only
};

/// Application endpoint in the data network: ICN producer/consumer, IP
/// server/client, DNS resolver, or a stage of the traffic-sensing pipeline.
class AppServerNode : public Node {
public:
  AppServerNode(NodeId id, AppServerConfig config)
    : Node(std::move(id), NodeRole::APP_SERVER)
    , m_config(std::move(config))
  {
  }

  const AppServerConfig& config() const { return m_config; }
  void reconfigure(AppServerConfig config) { m_config = std::move(config); }
  const ConsumerLedger& ledger() const { return m_ledger; }
  std::int64_t requestsServed() const { return m_requestsServed; }
  std::int64_t publicationsReceived() const { return m_publicationsReceived; }

  // Dynamic service registration (IP producer mobility rendezvous).
  void registerService(const std::string& service, IpAddr addr)
  {
    m_dynamicServices[service] = addr;
  }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void onTimer(Sim& sim, const TimerTag& timer) override;
  void onAction(Sim& sim, const WorkloadAction& action) override;

private:
  void handleIcn(Sim& sim, const NodeId& from, const InnerPdu& pdu);
  void handleIp(Sim& sim, const IpPacket& packet);
  void sendIcnRequest(Sim& sim, const Name& name, bool isRetry);
  void sendIpRequest(Sim& sim, const std::string& service, const std::string& object,
                     bool isRetry);
  void sendIp(Sim& sim, IpPacket packet);
  // `adaptation` marks the DSRC ingest point, where IP mode pays the
  // application-level gateway cost.
  void forwardPublication(Sim& sim, const Name& name, std::uint32_t size, bool adaptation);
  std::optional<IpAddr> resolveLocal(const std::string& service, IpAddr client) const;

  AppServerConfig m_config;
  ConsumerLedger m_ledger;
  std::int64_t m_requestsServed = 0;
  std::int64_t m_publicationsReceived = 0;
  std::map<std::string, IpAddr> m_dnsCache;
  std::map<std::string, IpAddr> m_dynamicServices; // registered IP producers
  std::map<std::string, std::pair<std::string, std::string>> m_awaitingDns;
};

struct UeSession {
  SessionId id = 0;
  std::string slice;
  Transport transport = Transport::ICN;
  IpAddr addr = 0;
  FiveTuple assoc;
  NodeId anchor;
  bool active = false;
};

struct UeConfig {
  std::optional<Name> producerPrefix; // set for mobile producers
  std::uint32_t payloadSize = 1200;
  ConsumerConfig consumer;
  std::optional<IpAddr> dnsAddr;
  std::optional<std::string> registersService; // IP rendezvous name
};

/// User equipment: radio attachment, NAS signaling, and the ICN/IP
/// applications (producer and consumer) living on top of PDU sessions.
class UeNode : public Node {
public:
  UeNode(NodeId id, UeConfig config)
    : Node(std::move(id), NodeRole::UE)
    , m_config(std::move(config))
  {
  }

  const UeConfig& config() const { return m_config; }
  const std::map<SessionId, UeSession>& sessions() const { return m_sessions; }
  const ConsumerLedger& ledger() const { return m_ledger; }
  const NodeId& servingRan() const { return m_servingRan; }
  std::int64_t producerServes() const { return m_producerServes; }
  bool lastEstablishRejected() const { return m_lastEstablishRejected; }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override;
  void onTimer(Sim& sim, const TimerTag& timer) override;
  void onAction(Sim& sim, const WorkloadAction& action) override;
  void dumpState(Sim& sim) const override;

private:
  void handleNas(Sim& sim, const ControlMessage& msg);
  void handlePdu(Sim& sim, const NodeId& fromRan, std::optional<SessionId> session,
                 const InnerPdu& pdu);
  UeSession* activeSession(Transport transport);
  void sendOnSession(Sim& sim, const UeSession& session, InnerPdu pdu);
  void sendNas(Sim& sim, ControlMessage msg);
  void sendIcnRequest(Sim& sim, const Name& name, bool isRetry);
  void sendIpRequest(Sim& sim, const std::string& service, const std::string& object,
                     bool isRetry);
  void registerWithDns(Sim& sim);

  UeConfig m_config;
  NodeId m_servingRan;
  std::map<SessionId, UeSession> m_sessions;
  ConsumerLedger m_ledger;
  std::int64_t m_producerServes = 0;
  bool m_lastEstablishRejected = false;
  std::map<std::string, IpAddr> m_dnsCache;
  std::map<std::string, std::pair<std::string, std::string>> m_awaitingDns;
  std::map<CorrelationId, Transport> m_pendingTransport; // establish in flight
  std::vector<WorkloadAction> m_queuedRequests; // issued once a session is up
};

// Builds the request key used by ledgers and app payload strings.
std::string requestKey(const std::string& service, const std::string& object);

} // namespace icn5g

#endif // ICN5G_APP_HPP
