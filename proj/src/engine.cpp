#include "icn5g/engine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace icn5g {

const char*
toString(NodeRole role)
{
  switch (role) {
    case NodeRole::UE: return "UE";
    case NodeRole::RAN: return "RAN";
    case NodeRole::UL_CL: return "UL-CL";
    case NodeRole::ICN_AP: return "ICN-AP";
    case NodeRole::ICN_DN_ROUTER: return "ICN-DN-ROUTER";
    case NodeRole::AMF: return "AMF";
    case NodeRole::SMF: return "SMF";
    case NodeRole::ICN_SMF: return "ICN-SMF";
    case NodeRole::ICN_AF: return "ICN-AF";
    case NodeRole::NSSF: return "NSSF";
    case NodeRole::PCF_UDM: return "PCF-UDM";
    case NodeRole::NRS: return "NRS";
    default: return "APP-SERVER";
  }
}

std::optional<NodeRole>
parseRole(const std::string& text)
{
  static const std::map<std::string, NodeRole> table = {
    {"UE", NodeRole::UE},
    {"RAN", NodeRole::RAN},
    {"UL-CL", NodeRole::UL_CL},
    {"ICN-AP", NodeRole::ICN_AP},
    {"ICN-DN-ROUTER", NodeRole::ICN_DN_ROUTER},
    {"AMF", NodeRole::AMF},
    {"SMF", NodeRole::SMF},
    {"ICN-SMF", NodeRole::ICN_SMF},
    {"ICN-AF", NodeRole::ICN_AF},
    {"NSSF", NodeRole::NSSF},
    {"PCF-UDM", NodeRole::PCF_UDM},
    {"NRS", NodeRole::NRS},
    {"APP-SERVER", NodeRole::APP_SERVER},
  };
  auto it = table.find(text);
  if (it == table.end()) {
    return std::nullopt;
  }
  return it->second;
}

const char*
toString(LinkKind kind)
{
  switch (kind) {
    case LinkKind::DATA: return "data";
    case LinkKind::CONTROL: return "control";
    default: return "radio";
  }
}

Sim::Sim(std::uint64_t seed)
  : m_rng(seed)
{
}

Node&
Sim::addNode(std::unique_ptr<Node> node)
{
  node->setNumericId(++m_nextNumericId);
  NodeId id = node->id();
  auto [it, inserted] = m_nodes.emplace(std::move(id), std::move(node));
  if (!inserted) {
    throw ValidationError("duplicate node " + it->first);
  }
  return *it->second;
}

Node*
Sim::findNode(const NodeId& id)
{
  auto it = m_nodes.find(id);
  return it == m_nodes.end() ? nullptr : it->second.get();
}

const Node*
Sim::findNode(const NodeId& id) const
{
  auto it = m_nodes.find(id);
  return it == m_nodes.end() ? nullptr : it->second.get();
}

Node&
Sim::nodeAt(const NodeId& id)
{
  Node* node = findNode(id);
  if (node == nullptr) {
    throw ValidationError("unknown node " + id);
  }
  return *node;
}

static std::pair<NodeId, NodeId>
linkKey(const NodeId& a, const NodeId& b)
{
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void
Sim::addLink(Link link)
{
  if (link.latency < 0) {
    throw ValidationError("negative latency on link " + link.a + "-" + link.b);
  }
  if (findNode(link.a) == nullptr || findNode(link.b) == nullptr) {
    throw ValidationError("link references unknown node: " + link.a + "-" + link.b);
  }
  m_links[linkKey(link.a, link.b)] = std::move(link);
}

const Link*
Sim::findLink(const NodeId& a, const NodeId& b) const
{
  auto it = m_links.find(linkKey(a, b));
  return it == m_links.end() ? nullptr : &it->second;
}

std::vector<NodeId>
Sim::neighbors(const NodeId& node, bool includeControl) const
{
  std::vector<NodeId> result;
  for (const auto& [key, link] : m_links) {
    if (!includeControl && link.kind == LinkKind::CONTROL) {
      continue;
    }
    if (key.first == node) {
      result.push_back(key.second);
    }
    else if (key.second == node) {
      result.push_back(key.first);
    }
  }
  return result;
}

std::optional<int>
Sim::hopCount(const NodeId& from, const NodeId& to) const
{
  if (from == to) {
    return 0;
  }
  std::set<NodeId> seen{from};
  std::deque<std::pair<NodeId, int>> frontier{{from, 0}};
  while (!frontier.empty()) {
    auto [node, dist] = frontier.front();
    frontier.pop_front();
    for (const auto& next : neighbors(node, /*includeControl=*/false)) {
      if (next == to) {
        return dist + 1;
      }
      if (seen.insert(next).second) {
        frontier.emplace_back(next, dist + 1);
      }
    }
  }
  return std::nullopt;
}

void
Sim::scheduleEvent(TimeMs time, const NodeId& target,
                   std::variant<SimMessage, TimerTag, WorkloadAction> payload)
{
  if (time < m_clock) {
    std::ostringstream os;
    os << "event at " << time << " before clock " << m_clock;
    throw TimeTravel(os.str());
  }
  nodeAt(target);
  m_queue.push(Event{time, m_nextSeq++, target, std::move(payload)});
}

void
Sim::scheduleTimer(const NodeId& target, TimeMs time, TimerTag tag)
{
  scheduleEvent(time, target, std::move(tag));
}

void
Sim::scheduleAction(const NodeId& target, TimeMs time, WorkloadAction action)
{
  scheduleEvent(time, target, std::move(action));
}

void
Sim::send(const NodeId& from, const NodeId& to, WirePayload payload)
{
  const Link* link = findLink(from, to);
  if (link == nullptr) {
    throw NoLink(from + " -> " + to);
  }

  bool control = isControl(payload);
  count(control ? "control_messages_sent" : "packets_sent", "node=" + from);

  if (link->lossRate > 0.0) {
    double draw = std::uniform_real_distribution<double>(0.0, 1.0)(m_rng);
    if (draw < link->lossRate) {
      count("link_drops", "link=" + link->a + "-" + link->b);
      trace(from, "linkdrop", "to=" + to + " " + wireSummary(payload));
      return;
    }
  }

  TimeMs departure = m_clock;
  if (const Node* sender = findNode(from)) {
    departure += sender->processingDelay();
  }
  scheduleEvent(departure + link->latency, to, SimMessage{from, std::move(payload)});
}

void
Sim::sendControl(const NodeId& linkFrom, const NodeId& linkTo, ControlMessage msg)
{
  if (msg.step != 0) {
    recordStep(msg.step, msg.sender, msg.receiver, kindName(msg.body));
  }
  send(linkFrom, linkTo, WirePayload{std::move(msg)});
}

void
Sim::sendControlDirect(const NodeId& linkFrom, ControlMessage msg)
{
  NodeId linkTo = msg.receiver;
  sendControl(linkFrom, linkTo, std::move(msg));
}

RunSummary
Sim::run(TimeMs maxTime)
{
  RunSummary summary;
  while (!m_queue.empty()) {
    const Event& next = m_queue.top();
    if (next.time > maxTime) {
      break;
    }
    Event event = next;
    m_queue.pop();
    m_clock = event.time;
    m_currentSeq = event.seq;
    dispatch(event);
    ++summary.eventsProcessed;
  }
  summary.finalClock = m_clock;
  summary.eventsPending = m_queue.size();
  summary.quiescent = m_queue.empty();
  return summary;
}

void
Sim::dispatch(const Event& event)
{
  Node& node = nodeAt(event.target);
  if (const auto* msg = std::get_if<SimMessage>(&event.payload)) {
    trace(event.target, "deliver", "from=" + msg->from + " " + wireSummary(msg->payload));
    count(isControl(msg->payload) ? "control_messages_delivered" : "packets_delivered",
          "node=" + event.target);
    node.onMessage(*this, msg->from, msg->payload);
  }
  else if (const auto* timer = std::get_if<TimerTag>(&event.payload)) {
    trace(event.target, "timer", "kind=" + timer->kind +
                                 (timer->key.empty() ? "" : " key=" + timer->key));
    node.onTimer(*this, *timer);
  }
  else {
    const auto& action = std::get<WorkloadAction>(event.payload);
    std::string args;
    for (const auto& a : action.args) {
      args += ' ';
      args += a;
    }
    trace(event.target, "action", "verb=" + action.verb + args);
    node.onAction(*this, action);
  }
}

void
Sim::count(const std::string& name, const std::string& labels, std::int64_t delta)
{
  m_counters[name][labels] += delta; // counters are monotone within a run
}

std::int64_t
Sim::counterValue(const std::string& name, const std::string& labels) const
{
  auto it = m_counters.find(name);
  if (it == m_counters.end()) {
    return 0;
  }
  auto jt = it->second.find(labels);
  return jt == it->second.end() ? 0 : jt->second;
}

std::int64_t
Sim::counterTotal(const std::string& name) const
{
  auto it = m_counters.find(name);
  if (it == m_counters.end()) {
    return 0;
  }
  std::int64_t total = 0;
  for (const auto& [labels, value] : it->second) {
    total += value;
  }
  return total;
}

void
Sim::trace(const NodeId& node, const std::string& kind, const std::string& details)
{
  std::ostringstream os;
  os << m_clock << ' ' << m_currentSeq << ' ' << node << ' ' << kind << ' ' << details;
  m_trace.push_back(os.str());
}

void
Sim::recordStep(int step, const NodeId& from, const NodeId& to, const std::string& tag)
{
  m_steps.push_back(StepRecord{step, from, to, tag, m_clock});
  std::ostringstream os;
  os << "step=" << step << " from=" << from << " to=" << to << " tag=" << tag;
  trace(to, "hostep", os.str());
}

void
Sim::dumpAllState()
{
  for (const auto& [id, node] : m_nodes) {
    node->dumpState(*this);
  }
}

} // namespace icn5g
