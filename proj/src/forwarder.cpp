#include "icn5g/forwarder.hpp"

#include <algorithm>
#include <sstream>

namespace icn5g {

const char*
toString(FaceKind kind)
{
  switch (kind) {
    case FaceKind::LOCAL_APP:
      return "app";
    case FaceKind::TUNNEL:
      return "tunnel";
    default:
      return "link";
  }
}

std::string
Face::toString() const
{
  std::ostringstream os;
  os << icn5g::toString(kind) << ':' << target << "#" << id;
  return os.str();
}

const char*
toString(ForwardOutcome outcome)
{
  switch (outcome) {
    case ForwardOutcome::CS_HIT:
      return "cs_hit";
    case ForwardOutcome::AGGREGATED:
      return "aggregated";
    case ForwardOutcome::FORWARDED_LABEL:
      return "fwd_label";
    case ForwardOutcome::FORWARDED_FIB:
      return "fwd_fib";
    case ForwardOutcome::NO_ROUTE:
      return "no_route";
    case ForwardOutcome::DUPLICATE_NONCE:
      return "dup_nonce";
    case ForwardOutcome::SATISFIED_PIT:
      return "satisfied";
    default:
      return "unsolicited";
  }
}

void
Forwarder::setCsCapacity(std::size_t capacity)
{
  m_csCapacity = capacity;
  while (m_cs.size() > m_csCapacity && !m_csRecency.empty()) {
    Name victim = m_csRecency.front();
    m_csRecency.pop_front();
    m_csRecencyIndex.erase(victim);
    m_cs.erase(victim);
  }
}

Face&
Forwarder::addFace(FaceKind kind, const std::string& target)
{
  FaceId id = m_nextFaceId++;
  auto [it, inserted] = m_faces.emplace(id, Face{id, kind, target});
  return it->second;
}

const Face*
Forwarder::findFace(FaceId id) const
{
  auto it = m_faces.find(id);
  return it == m_faces.end() ? nullptr : &it->second;
}

const Face*
Forwarder::findTunnelFace(const TunnelId& tunnel) const
{
  for (const auto& [id, face] : m_faces) {
    if (face.kind == FaceKind::TUNNEL && face.target == tunnel) {
      return &face;
    }
  }
  return nullptr;
}

const Face*
Forwarder::findLinkFace(const std::string& peer) const
{
  for (const auto& [id, face] : m_faces) {
    if (face.kind == FaceKind::LINK && face.target == peer) {
      return &face;
    }
  }
  return nullptr;
}

void
Forwarder::removeFace(FaceId id)
{
  m_faces.erase(id);
  for (auto& [prefix, entries] : m_fib) {
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [id] (const FibEntry& e) { return e.nextHop == id; }),
                  entries.end());
  }
  std::erase_if(m_fib, [] (const auto& kv) { return kv.second.empty(); });
}

void
Forwarder::fibAdd(const Name& prefix, FaceId nextHop, int cost)
{
  auto& entries = m_fib[prefix];
  for (auto& e : entries) {
    if (e.nextHop == nextHop) {
      e.cost = cost;
      return;
    }
  }
  entries.push_back(FibEntry{prefix, nextHop, cost});
}

void
Forwarder::fibRemove(const Name& prefix, FaceId nextHop)
{
  auto it = m_fib.find(prefix);
  if (it == m_fib.end()) {
    return;
  }
  auto& entries = it->second;
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [nextHop] (const FibEntry& e) { return e.nextHop == nextHop; }),
                entries.end());
  if (entries.empty()) {
    m_fib.erase(it);
  }
}

void
Forwarder::fibRemovePrefix(const Name& prefix)
{
  m_fib.erase(prefix);
}

std::optional<FaceId>
Forwarder::fibLookup(const Name& name) const
{
  // Longest prefix first; names are short, so probing each prefix length is fine.
  for (std::size_t len = name.size(); len >= 1; --len) {
    auto it = m_fib.find(name.getPrefix(len));
    if (it == m_fib.end() || it->second.empty()) {
      continue;
    }
    const FibEntry* best = nullptr;
    for (const auto& e : it->second) {
      if (best == nullptr || e.cost < best->cost ||
          (e.cost == best->cost && e.nextHop < best->nextHop)) {
        best = &e;
      }
    }
    return best->nextHop;
  }
  return std::nullopt;
}

void
Forwarder::installForwardingLabel(const ForwardingLabel& label)
{
  if (!m_anchorRole) {
    throw RoleViolation("forwarding label requires ICN-AP role");
  }
  m_labels[label.coveredPrefix] = label;
}

void
Forwarder::removeForwardingLabel(const Name& prefix)
{
  if (m_labels.erase(prefix) == 0) {
    throw NotFound("no forwarding label for " + prefix.toUri());
  }
}

const ForwardingLabel*
Forwarder::findLabel(const Name& name) const
{
  const ForwardingLabel* best = nullptr;
  for (const auto& [prefix, label] : m_labels) {
    if (prefix.isPrefixOf(name) &&
        (best == nullptr || prefix.size() > best->coveredPrefix.size())) {
      best = &label;
    }
  }
  return best;
}

ForwarderActions
Forwarder::processInterest(const Interest& interest, FaceId inFace, TimeMs now)
{
  ForwarderActions result;

  // CS hit answers locally, no PIT change.
  if (const Data* cached = csFind(interest.name, now)) {
    ++m_counters.csHits;
    result.outcome = ForwardOutcome::CS_HIT;
    ForwarderAction reply;
    reply.kind = ForwarderAction::Kind::SEND_DATA;
    reply.face = inFace;
    reply.data = *cached;
    result.actions.push_back(std::move(reply));
    return result;
  }

  auto pitIt = m_pit.find(interest.name);
  if (pitIt != m_pit.end() && pitIt->second.expiry > now) {
    PitEntry& entry = pitIt->second;
    if (entry.downstream.count({inFace, interest.nonce}) > 0) {
      // Same name+nonce on the same face while the entry is live: loop.
      ++m_counters.duplicateNonceDrops;
      result.outcome = ForwardOutcome::DUPLICATE_NONCE;
      return result;
    }
    entry.downstream.insert({inFace, interest.nonce});
    entry.expiry = std::max(entry.expiry, now + interest.lifetime);
    ++m_counters.aggregated;
    result.outcome = ForwardOutcome::AGGREGATED;
    return result; // exactly one upstream emission per pending window
  }
  if (pitIt != m_pit.end()) {
    // Stale entry whose expiry timer has not fired yet.
    m_pit.erase(pitIt);
    ++m_counters.pitTimeouts;
  }

  // Mobility label takes precedence over the FIB.
  FaceId outFace = -1;
  ForwardOutcome outcome = ForwardOutcome::FORWARDED_FIB;
  if (const ForwardingLabel* label = findLabel(interest.name)) {
    outFace = label->via;
    outcome = ForwardOutcome::FORWARDED_LABEL;
  }
  else if (auto fibFace = fibLookup(interest.name)) {
    outFace = *fibFace;
  }
  else {
    ++m_counters.noRouteNacks;
    result.outcome = ForwardOutcome::NO_ROUTE;
    ForwarderAction nack;
    nack.kind = ForwarderAction::Kind::SEND_NACK;
    nack.face = inFace;
    nack.nack = Nack{interest.name, interest.nonce, "no_route"};
    result.actions.push_back(std::move(nack));
    return result;
  }

  PitEntry entry;
  entry.name = interest.name;
  entry.downstream.insert({inFace, interest.nonce});
  entry.expiry = now + interest.lifetime;
  m_pit[interest.name] = std::move(entry);

  Interest upstream = interest;
  ++upstream.hopCount;
  ++m_counters.interestsForwarded;
  result.outcome = outcome;
  ForwarderAction fwd;
  fwd.kind = ForwarderAction::Kind::SEND_INTEREST;
  fwd.face = outFace;
  fwd.interest = std::move(upstream);
  result.actions.push_back(std::move(fwd));
  return result;
}

ForwarderActions
Forwarder::processData(const Data& data, FaceId inFace, TimeMs now)
{
  (void)inFace;
  ForwarderActions result;

  auto pitIt = m_pit.find(data.name);
  if (pitIt == m_pit.end() || pitIt->second.expiry <= now) {
    ++m_counters.unsolicitedDrops;
    result.outcome = ForwardOutcome::UNSOLICITED;
    return result; // unsolicited Data never propagates
  }

  // Emit once per distinct downstream face, in face-id order.
  std::set<FaceId> faces;
  for (const auto& d : pitIt->second.downstream) {
    faces.insert(d.face);
  }
  for (FaceId face : faces) {
    ForwarderAction out;
    out.kind = ForwarderAction::Kind::SEND_DATA;
    out.face = face;
    out.data = data;
    result.actions.push_back(std::move(out));
  }
  m_pit.erase(pitIt);
  ++m_counters.dataSatisfied;
  csInsert(data, now);
  result.outcome = ForwardOutcome::SATISFIED_PIT;
  return result;
}

ForwarderActions
Forwarder::processNack(const Nack& nack, FaceId inFace, TimeMs now)
{
  (void)inFace;
  ForwarderActions result;
  auto pitIt = m_pit.find(nack.name);
  if (pitIt == m_pit.end() || pitIt->second.expiry <= now) {
    ++m_counters.unsolicitedDrops;
    result.outcome = ForwardOutcome::UNSOLICITED;
    return result;
  }
  std::set<FaceId> faces;
  for (const auto& d : pitIt->second.downstream) {
    faces.insert(d.face);
  }
  for (FaceId face : faces) {
    ForwarderAction out;
    out.kind = ForwarderAction::Kind::SEND_NACK;
    out.face = face;
    out.nack = nack;
    result.actions.push_back(std::move(out));
  }
  m_pit.erase(pitIt);
  result.outcome = ForwardOutcome::SATISFIED_PIT;
  return result;
}

std::vector<Name>
Forwarder::expirePit(TimeMs now)
{
  std::vector<Name> expired;
  for (auto it = m_pit.begin(); it != m_pit.end();) {
    if (it->second.expiry <= now) { // boundary inclusive
      expired.push_back(it->first);
      it = m_pit.erase(it);
      ++m_counters.pitTimeouts;
    }
    else {
      ++it;
    }
  }
  return expired; // map iteration yields canonical name order
}

std::vector<Name>
Forwarder::csNamesByRecency() const
{
  return {m_csRecency.begin(), m_csRecency.end()};
}

void
Forwarder::csInsert(const Data& data, TimeMs now)
{
  if (m_csCapacity == 0) {
    return;
  }
  auto idxIt = m_csRecencyIndex.find(data.name);
  if (idxIt != m_csRecencyIndex.end()) {
    m_csRecency.erase(idxIt->second);
    m_csRecencyIndex.erase(idxIt);
  }
  else if (m_cs.size() >= m_csCapacity) {
    Name victim = m_csRecency.front(); // least recently used
    m_csRecency.pop_front();
    m_csRecencyIndex.erase(victim);
    m_cs.erase(victim);
  }
  m_cs[data.name] = CsEntry{data.name, data, now};
  m_csRecency.push_back(data.name);
  m_csRecencyIndex[data.name] = std::prev(m_csRecency.end());
}

const Data*
Forwarder::csFind(const Name& name, TimeMs now)
{
  auto it = m_cs.find(name);
  if (it == m_cs.end()) {
    return nullptr;
  }
  it->second.lastUsed = now;
  auto idxIt = m_csRecencyIndex.find(name);
  m_csRecency.erase(idxIt->second);
  m_csRecency.push_back(name);
  idxIt->second = std::prev(m_csRecency.end());
  return &it->second.data;
}

void
Forwarder::dumpState(const std::function<void(const std::string&)>& sink) const
{
  for (const auto& [prefix, entries] : m_fib) {
    for (const auto& e : entries) {
      std::ostringstream os;
      os << "fib prefix=" << prefix << " face=" << e.nextHop << " cost=" << e.cost;
      sink(os.str());
    }
  }
  for (const auto& [name, entry] : m_pit) {
    std::ostringstream os;
    os << "pit name=" << name << " downstream=" << entry.downstream.size()
       << " expiry=" << entry.expiry;
    sink(os.str());
  }
  for (const auto& [name, entry] : m_cs) {
    std::ostringstream os;
    os << "cs name=" << name << " size=" << entry.data.payloadSize
       << " last_used=" << entry.lastUsed;
    sink(os.str());
  }
  for (const auto& [prefix, label] : m_labels) {
    std::ostringstream os;
    os << "label prefix=" << prefix << " anchor=" << label.targetAnchor
       << " face=" << label.via;
    sink(os.str());
  }
}

} // namespace icn5g
