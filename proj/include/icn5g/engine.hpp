#ifndef ICN5G_ENGINE_HPP
#define ICN5G_ENGINE_HPP

#include "icn5g/common.hpp"
#include "icn5g/messages.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace icn5g {

class Sim;

enum class NodeRole {
  UE, RAN, UL_CL, ICN_AP, ICN_DN_ROUTER,
  AMF, SMF, ICN_SMF, ICN_AF, NSSF, PCF_UDM, NRS, APP_SERVER,
};

const char* toString(NodeRole role);
std::optional<NodeRole> parseRole(const std::string& text);

struct TimerTag {
  std::string kind;
  std::string key;
};

struct WorkloadAction {
  std::string verb;
  std::vector<std::string> args;
};

struct SimMessage {
  NodeId from;
  WirePayload payload;
};

/// One timestamped simulator event; total order (time, seq), seq assigned
/// deterministically from insertion order.
struct Event {
  TimeMs time = 0;
  std::uint64_t seq = 0;
  NodeId target;
  std::variant<SimMessage, TimerTag, WorkloadAction> payload;
};

enum class LinkKind { DATA, CONTROL, RADIO };

const char* toString(LinkKind kind);

struct Link {
  NodeId a;
  NodeId b;
  TimeMs latency = 1; // >= 0
  double lossRate = 0.0;
  LinkKind kind = LinkKind::DATA;
};

/// A network function or host driven by the event loop. Handlers are atomic
/// per event; nodes interact only through scheduled messages.
class Node {
public:
  Node(NodeId id, NodeRole role)
    : m_id(std::move(id))
    , m_role(role)
  {
  }

  virtual ~Node() = default;

  const NodeId& id() const { return m_id; }
  NodeRole role() const { return m_role; }

  int numericId() const { return m_numericId; }
  void setNumericId(int id) { m_numericId = id; }

  TimeMs processingDelay() const { return m_processingDelay; }
  void setProcessingDelay(TimeMs delay) { m_processingDelay = delay; }

  virtual void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) = 0;
  virtual void onTimer(Sim& sim, const TimerTag& timer) { (void)sim, (void)timer; }
  virtual void onAction(Sim& sim, const WorkloadAction& action) { (void)sim, (void)action; }

  // One "state kind=... ..." record per live table entry; used for the
  // on-demand state dump and the cleanup sweeps.
  virtual void dumpState(Sim& sim) const { (void)sim; }

private:
  NodeId m_id;
  NodeRole m_role;
  int m_numericId = 0;
  TimeMs m_processingDelay = 0;
};

struct StepRecord {
  int step = 0;
  NodeId from;
  NodeId to;
  std::string tag;
  TimeMs time = 0;
};

struct RunSummary {
  TimeMs finalClock = 0;
  bool quiescent = true;
  std::uint64_t eventsProcessed = 0;
  std::size_t eventsPending = 0;
};

/// Deterministic discrete-event kernel: clock, event queue, topology of
/// latency links, message delivery, counters, trace. (seed, config) fully
/// determine the event trace; the loop is single-threaded by contract.
class Sim {
public:
  explicit Sim(std::uint64_t seed = 1);

  TimeMs now() const { return m_clock; }

  // -------- topology --------

  Node& addNode(std::unique_ptr<Node> node);
  Node* findNode(const NodeId& id);
  const Node* findNode(const NodeId& id) const;
  Node& nodeAt(const NodeId& id); // throws ValidationError when missing
  const std::map<NodeId, std::unique_ptr<Node>>& nodes() const { return m_nodes; }

  void addLink(Link link);
  const Link* findLink(const NodeId& a, const NodeId& b) const;
  bool hasLink(const NodeId& a, const NodeId& b) const { return findLink(a, b) != nullptr; }
  std::vector<NodeId> neighbors(const NodeId& node, bool includeControl = true) const;

  // BFS hop count over data+radio links (control plane excluded); nullopt
  // when unreachable.
  std::optional<int> hopCount(const NodeId& from, const NodeId& to) const;

  // -------- events --------

  // Throws TimeTravel when time < now().
  void scheduleTimer(const NodeId& target, TimeMs time, TimerTag tag);
  void scheduleAction(const NodeId& target, TimeMs time, WorkloadAction action);

  // Schedules delivery at now + sender processing delay + link latency;
  // throws NoLink without a direct link. Lossy links drop with seeded
  // pseudo-randomness, counted per link.
  void send(const NodeId& from, const NodeId& to, WirePayload payload);

  // send() for control messages; step-tagged ones also land in the
  // handover step record (the Fig. 4 golden-trace surface).
  void sendControl(const NodeId& linkFrom, const NodeId& linkTo, ControlMessage msg);

  // Like sendControl with linkTo = msg.receiver, read after the move (safe
  // where `sendControl(from, msg.receiver, std::move(msg))` is not).
  void sendControlDirect(const NodeId& linkFrom, ControlMessage msg);

  RunSummary run(TimeMs maxTime);

  // -------- metrics --------

  void count(const std::string& name, const std::string& labels = "", std::int64_t delta = 1);
  std::int64_t counterValue(const std::string& name, const std::string& labels = "") const;
  std::int64_t counterTotal(const std::string& name) const; // summed over labels
  const std::map<std::string, std::map<std::string, std::int64_t>>& counters() const
  {
    return m_counters;
  }

  // -------- trace --------

  // Appends `<time> <seq> <node> <kind> <details>` for the event being
  // processed (stable field order for golden-trace diffing).
  void trace(const NodeId& node, const std::string& kind, const std::string& details);
  const std::vector<std::string>& traceLines() const { return m_trace; }

  void recordStep(int step, const NodeId& from, const NodeId& to, const std::string& tag);
  const std::vector<StepRecord>& stepRecords() const { return m_steps; }

  void dumpAllState(); // one state record per entry, every node

  // -------- misc --------

  CorrelationId nextCorrelation() { return ++m_nextCorrelation; }
  std::uint64_t nextNonce() { return ++m_nextNonce; }

private:
  void scheduleEvent(TimeMs time, const NodeId& target,
                     std::variant<SimMessage, TimerTag, WorkloadAction> payload);
  void dispatch(const Event& event);

  struct EventOrder {
    bool operator()(const Event& a, const Event& b) const
    {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  TimeMs m_clock = 0;
  std::uint64_t m_nextSeq = 0;
  std::uint64_t m_currentSeq = 0;
  std::uint64_t m_nextCorrelation = 0;
  std::uint64_t m_nextNonce = 0;
  int m_nextNumericId = 0;
  std::priority_queue<Event, std::vector<Event>, EventOrder> m_queue;
  std::map<NodeId, std::unique_ptr<Node>> m_nodes;
  std::map<std::pair<NodeId, NodeId>, Link> m_links; // key ordered (min,max)
  std::mt19937_64 m_rng;                             // loss decisions only
  std::map<std::string, std::map<std::string, std::int64_t>> m_counters;
  std::vector<std::string> m_trace;
  std::vector<StepRecord> m_steps;
};

} // namespace icn5g

#endif // ICN5G_ENGINE_HPP
