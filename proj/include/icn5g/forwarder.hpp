#ifndef ICN5G_FORWARDER_HPP
#define ICN5G_FORWARDER_HPP

#include "icn5g/common.hpp"
#include "icn5g/name.hpp"
#include "icn5g/packet.hpp"

#include <cstdint>
#include <functional>
#include <list>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace icn5g {

enum class FaceKind { LOCAL_APP, TUNNEL, LINK };

const char* toString(FaceKind kind);

/// Adjacency abstraction: where a PDU came from or goes to at one node.
struct Face {
  FaceId id = -1;
  FaceKind kind = FaceKind::LOCAL_APP;
  std::string target; // tunnel id for TUNNEL, link peer for LINK, app tag otherwise

  bool operator==(const Face&) const = default;

  std::string toString() const;
};

struct FibEntry {
  Name prefix;
  FaceId nextHop = -1;
  int cost = 0;
};

struct PitDownstream {
  FaceId face = -1;
  Nonce nonce = 0;

  auto operator<=>(const PitDownstream&) const = default;
};

struct PitEntry {
  Name name;
  std::set<PitDownstream> downstream; // non-empty while the entry is live
  TimeMs expiry = 0;
};

struct CsEntry {
  Name name;
  Data data;
  TimeMs lastUsed = 0;
};

/// Redirect installed at a previous anchor during producer mobility:
/// Interests under coveredPrefix leave via `via` regardless of the FIB.
struct ForwardingLabel {
  Name coveredPrefix;
  NodeId targetAnchor;
  FaceId via = -1;
};

// One outgoing emission or local outcome produced while handling a PDU.
struct ForwarderAction {
  enum class Kind { SEND_INTEREST, SEND_DATA, SEND_NACK };
  Kind kind = Kind::SEND_INTEREST;
  FaceId face = -1;
  Interest interest; // SEND_INTEREST
  Data data;         // SEND_DATA
  Nack nack;         // SEND_NACK
};

// What happened to the PDU, for counters and trace records.
enum class ForwardOutcome {
  CS_HIT,
  AGGREGATED,
  FORWARDED_LABEL,
  FORWARDED_FIB,
  NO_ROUTE,
  DUPLICATE_NONCE,
  SATISFIED_PIT,
  UNSOLICITED,
};

const char* toString(ForwardOutcome outcome);

struct ForwarderActions {
  ForwardOutcome outcome = ForwardOutcome::NO_ROUTE;
  std::vector<ForwarderAction> actions;
};

struct ForwarderCounters {
  std::uint64_t csHits = 0;
  std::uint64_t aggregated = 0;
  std::uint64_t interestsForwarded = 0;
  std::uint64_t noRouteNacks = 0;
  std::uint64_t duplicateNonceDrops = 0;
  std::uint64_t unsolicitedDrops = 0;
  std::uint64_t pitTimeouts = 0;
  std::uint64_t dataSatisfied = 0;
};

/// CCN-style per-node forwarding engine: FIB, PIT, Content Store, and the
/// forwarding-label redirect table used for producer mobility. Mutated only
/// by the single-threaded simulation loop.
class Forwarder {
public:
  explicit Forwarder(bool anchorRole = false, std::size_t csCapacity = 0)
    : m_anchorRole(anchorRole)
    , m_csCapacity(csCapacity)
  {
  }

  bool isAnchor() const { return m_anchorRole; }

  std::size_t csCapacity() const { return m_csCapacity; }
  void setCsCapacity(std::size_t capacity);

  // -------- faces --------

  Face& addFace(FaceKind kind, const std::string& target);
  const Face* findFace(FaceId id) const;
  const Face* findTunnelFace(const TunnelId& tunnel) const;
  const Face* findLinkFace(const std::string& peer) const;
  void removeFace(FaceId id);

  // -------- FIB --------

  // At most one entry per (prefix, nextHop); re-adding updates the cost.
  void fibAdd(const Name& prefix, FaceId nextHop, int cost = 0);
  void fibRemove(const Name& prefix, FaceId nextHop);
  void fibRemovePrefix(const Name& prefix);

  // Longest matching prefix; ties broken by lower cost, then lower face id.
  // nullopt when nothing matches (NoRoute).
  std::optional<FaceId> fibLookup(const Name& name) const;

  // -------- labels --------

  // Only an ICN-AP may hold mobility labels; throws RoleViolation otherwise.
  void installForwardingLabel(const ForwardingLabel& label);
  // Throws NotFound when no label covers exactly `prefix`.
  void removeForwardingLabel(const Name& prefix);
  const ForwardingLabel* findLabel(const Name& name) const; // longest covering label

  // -------- data path --------

  ForwarderActions processInterest(const Interest& interest, FaceId inFace, TimeMs now);
  ForwarderActions processData(const Data& data, FaceId inFace, TimeMs now);
  // Propagates a negative acknowledgment along the PIT reverse path and
  // consumes the entry; nothing is cached.
  ForwarderActions processNack(const Nack& nack, FaceId inFace, TimeMs now);

  // Removes every PIT entry with expiry <= now; returns their names in
  // canonical order and bumps the timeout counter per entry.
  std::vector<Name> expirePit(TimeMs now);

  // -------- inspection --------

  const ForwarderCounters& counters() const { return m_counters; }
  const std::map<Name, std::vector<FibEntry>>& fib() const { return m_fib; }
  const std::map<Name, PitEntry>& pit() const { return m_pit; }
  const std::map<Name, ForwardingLabel>& labels() const { return m_labels; }
  std::size_t csSize() const { return m_cs.size(); }
  bool csContains(const Name& name) const { return m_cs.count(name) > 0; }
  std::vector<Name> csNamesByRecency() const; // least recently used first

  // One record per FIB/PIT/CS/label entry, for the trace state dump.
  void dumpState(const std::function<void(const std::string&)>& sink) const;

private:
  void csInsert(const Data& data, TimeMs now);
  const Data* csFind(const Name& name, TimeMs now);

  bool m_anchorRole;
  std::size_t m_csCapacity;
  FaceId m_nextFaceId = 1;
  std::map<FaceId, Face> m_faces;
  std::map<Name, std::vector<FibEntry>> m_fib;
  std::map<Name, PitEntry> m_pit;
  std::map<Name, ForwardingLabel> m_labels;
  std::map<Name, CsEntry> m_cs;
  std::list<Name> m_csRecency; // front = least recently used
  std::map<Name, std::list<Name>::iterator> m_csRecencyIndex;
  ForwarderCounters m_counters;
};

} // namespace icn5g

#endif // ICN5G_FORWARDER_HPP
