#ifndef ICN5G_REPORT_HPP
#define ICN5G_REPORT_HPP

#include "icn5g/engine.hpp"
#include "icn5g/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace icn5g {

/// Per-run comparison surface: edge-serving counters, signaling volume,
/// request latencies, and the Fig. 4 step timeline.
struct Report {
  std::string scenario;
  ScenarioMode mode = ScenarioMode::HANDOVER;
  Transport transport = Transport::ICN;
  std::uint64_t seed = 1;
  bool quiescent = true;
  TimeMs finalClock = 0;

  std::int64_t upstreamFetches = 0;   // requests served by app servers
  std::int64_t cacheHits = 0;         // CS hits, all caching nodes
  std::int64_t aggregatedHits = 0;    // PIT-aggregated satisfactions
  std::int64_t signalingMessages = 0;
  std::int64_t interestsLost = 0;     // consumer requests never satisfied
  std::int64_t dnsLookups = 0;
  std::int64_t sessionReestablishments = 0;
  std::int64_t sessionsRefused = 0;
  std::int64_t duplicateDeliveries = 0;
  std::int64_t requestsIssued = 0;
  std::int64_t requestsSatisfied = 0;
  std::int64_t retransmissions = 0;
  std::int64_t producerServes = 0;
  std::int64_t linkDrops = 0;
  std::int64_t pitTimeouts = 0;
  std::int64_t handoverAborts = 0;
  std::int64_t translationDelays = 0;

  std::vector<std::pair<std::string, TimeMs>> latencies; // per satisfied request
  std::vector<StepRecord> steps;
  TimeMs handoverStart = 0;
  TimeMs handoverEnd = 0;
  bool handoverCompleted = false;

  TimeMs handoverDuration() const { return handoverEnd - handoverStart; }
  TimeMs firstStepTime(int step) const; // -1 when the step never ran

  // The report's internal consistency identities; throws ValidationError.
  void checkIdentities() const;

  std::string toTable() const;
  std::vector<std::string> metricsLines() const;
};

Report buildReport(const ScenarioConfig& cfg, Sim& sim, const RunSummary& summary);

std::string comparisonTable(const Report& a, const Report& b);

// Writes line records; throws IoError on an unwritable path.
void writeLines(const std::string& path, const std::vector<std::string>& lines);

} // namespace icn5g

#endif // ICN5G_REPORT_HPP
