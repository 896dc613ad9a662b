#include "icn5g/report.hpp"

#include "icn5g/app.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace icn5g {

TimeMs
Report::firstStepTime(int step) const
{
  for (const auto& record : steps) {
    if (record.step == step) {
      return record.time;
    }
  }
  return -1;
}

void
Report::checkIdentities() const
{
  if (requestsSatisfied + interestsLost != requestsIssued) {
    throw ValidationError("report: satisfied + lost != issued");
  }
  if (mode == ScenarioMode::ICN_MEC && retransmissions == 0) {
    // Every request served at the edge came from the CS, an aggregated PIT
    // entry, or one upstream fetch.
    if (cacheHits + aggregatedHits + upstreamFetches != requestsSatisfied) {
      throw ValidationError("report: cache_hits + aggregated + upstream != served");
    }
  }
  if (mode == ScenarioMode::IP_MEC && cacheHits != 0) {
    throw ValidationError("report: IP mode cannot have cache hits");
  }
}

std::string
Report::toTable() const
{
  std::ostringstream os;
  os << "scenario: " << scenario << " (mode=" << toString(mode)
     << " transport=" << toString(transport) << " seed=" << seed << ")\n";
  os << "quiescent: " << (quiescent ? "yes" : "NO") << "  final-clock: " << finalClock
     << " ms\n";
  auto row = [&] (const char* label, std::int64_t value) {
    os << "  " << std::left << std::setw(26) << label << value << "\n";
  };
  row("upstream_fetches", upstreamFetches);
  row("cache_hits", cacheHits);
  row("aggregated_hits", aggregatedHits);
  row("signaling_messages", signalingMessages);
  row("interests_lost", interestsLost);
  row("dns_lookups", dnsLookups);
  row("session_reestablishments", sessionReestablishments);
  row("sessions_refused", sessionsRefused);
  row("duplicate_deliveries", duplicateDeliveries);
  row("requests_issued", requestsIssued);
  row("requests_satisfied", requestsSatisfied);
  row("retransmissions", retransmissions);
  row("producer_serves", producerServes);
  row("link_drops", linkDrops);
  row("pit_timeouts", pitTimeouts);
  row("handover_aborts", handoverAborts);
  row("translation_delays", translationDelays);

  if (!latencies.empty()) {
    TimeMs min = latencies.front().second, max = min, sum = 0;
    for (const auto& [key, ms] : latencies) {
      min = std::min(min, ms);
      max = std::max(max, ms);
      sum += ms;
    }
    os << "  request latency ms        min=" << min << " mean="
       << (sum / static_cast<TimeMs>(latencies.size())) << " max=" << max
       << " n=" << latencies.size() << "\n";
  }
  if (!steps.empty()) {
    os << "  handover: " << (handoverCompleted ? "completed" : "NOT completed")
       << " duration=" << handoverDuration() << " ms\n";
    os << "  step timeline:\n";
    int last = 0;
    for (const auto& record : steps) {
      if (record.step != last) {
        os << "    step " << std::setw(2) << record.step << " t=" << std::setw(6)
           << record.time << "  " << record.from << " -> " << record.to << "  "
           << record.tag << "\n";
        last = record.step;
      }
    }
  }
  return os.str();
}

std::vector<std::string>
Report::metricsLines() const
{
  std::vector<std::string> lines;
  auto put = [&] (const std::string& name, std::int64_t value) {
    lines.push_back(name + " - " + std::to_string(value));
  };
  put("report.upstream_fetches", upstreamFetches);
  put("report.cache_hits", cacheHits);
  put("report.aggregated_hits", aggregatedHits);
  put("report.signaling_messages", signalingMessages);
  put("report.interests_lost", interestsLost);
  put("report.dns_lookups", dnsLookups);
  put("report.session_reestablishments", sessionReestablishments);
  put("report.sessions_refused", sessionsRefused);
  put("report.duplicate_deliveries", duplicateDeliveries);
  put("report.requests_issued", requestsIssued);
  put("report.requests_satisfied", requestsSatisfied);
  put("report.retransmissions", retransmissions);
  put("report.producer_serves", producerServes);
  put("report.handover_duration_ms", steps.empty() ? 0 : handoverDuration());
  for (const auto& [key, ms] : latencies) {
    lines.push_back("latency request=" + key + " " + std::to_string(ms));
  }
  for (const auto& record : steps) {
    std::ostringstream os;
    os << "hostep step=" << record.step << ",from=" << record.from << ",to=" << record.to
       << ",tag=" << record.tag << " " << record.time;
    lines.push_back(os.str());
  }
  return lines;
}

Report
buildReport(const ScenarioConfig& cfg, Sim& sim, const RunSummary& summary)
{
  Report report;
  report.scenario = cfg.name;
  report.mode = cfg.mode;
  report.transport = cfg.transport;
  report.seed = cfg.seed;
  report.quiescent = summary.quiescent;
  report.finalClock = summary.finalClock;

  report.upstreamFetches = sim.counterTotal("app_requests_served");
  report.cacheHits = sim.counterTotal("cs_hits");
  report.aggregatedHits = sim.counterTotal("pit_aggregations");
  report.dnsLookups = sim.counterTotal("dns_lookups");
  report.sessionReestablishments = sim.counterTotal("session_reestablishments");
  report.sessionsRefused = sim.counterTotal("sessions_refused");
  report.duplicateDeliveries = sim.counterTotal("duplicate_data");
  report.retransmissions = sim.counterTotal("retransmissions");
  report.producerServes = sim.counterTotal("producer_serves");
  report.linkDrops = sim.counterTotal("link_drops");
  report.pitTimeouts = sim.counterTotal("pit_timeouts");
  report.handoverAborts = sim.counterTotal("handover_aborts");
  report.translationDelays = sim.counterTotal("translation_delays");

  report.steps = sim.stepRecords();
  if (!report.steps.empty()) {
    report.handoverStart = report.steps.front().time;
    report.handoverEnd = report.steps.back().time;
  }
  report.handoverCompleted = sim.counterTotal("handovers_completed") > 0;
  report.signalingMessages = cfg.mode == ScenarioMode::HANDOVER
                               ? static_cast<std::int64_t>(report.steps.size())
                               : sim.counterTotal("control_messages_sent");

  // Request accounting comes from the consumer ledgers, the ground truth
  // for satisfaction and latency.
  for (const auto& [id, node] : sim.nodes()) {
    const ConsumerLedger* ledger = nullptr;
    if (const auto* ue = dynamic_cast<const UeNode*>(node.get())) {
      ledger = &ue->ledger();
    }
    else if (const auto* app = dynamic_cast<const AppServerNode*>(node.get())) {
      ledger = &app->ledger();
    }
    if (ledger == nullptr) {
      continue;
    }
    report.requestsIssued += static_cast<std::int64_t>(ledger->requests.size());
    report.interestsLost += ledger->unsatisfied();
    for (const auto& [key, ms] : ledger->latencies()) {
      ++report.requestsSatisfied;
      report.latencies.emplace_back(id + ":" + key, ms);
    }
  }

  report.checkIdentities();
  return report;
}

std::string
comparisonTable(const Report& a, const Report& b)
{
  std::ostringstream os;
  os << std::left << std::setw(28) << "counter" << std::setw(16) << a.scenario
     << std::setw(16) << b.scenario << "delta\n";
  auto row = [&] (const char* label, std::int64_t va, std::int64_t vb) {
    os << std::left << std::setw(28) << label << std::setw(16) << va << std::setw(16) << vb
       << (vb - va) << "\n";
  };
  row("upstream_fetches", a.upstreamFetches, b.upstreamFetches);
  row("cache_hits", a.cacheHits, b.cacheHits);
  row("aggregated_hits", a.aggregatedHits, b.aggregatedHits);
  row("signaling_messages", a.signalingMessages, b.signalingMessages);
  row("interests_lost", a.interestsLost, b.interestsLost);
  row("dns_lookups", a.dnsLookups, b.dnsLookups);
  row("session_reestablishments", a.sessionReestablishments, b.sessionReestablishments);
  row("requests_issued", a.requestsIssued, b.requestsIssued);
  row("requests_satisfied", a.requestsSatisfied, b.requestsSatisfied);
  row("duplicate_deliveries", a.duplicateDeliveries, b.duplicateDeliveries);
  row("handover_duration_ms", a.steps.empty() ? 0 : a.handoverDuration(),
      b.steps.empty() ? 0 : b.handoverDuration());
  return os.str();
}

void
writeLines(const std::string& path, const std::vector<std::string>& lines)
{
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path);
  }
  for (const auto& line : lines) {
    out << line << '\n';
  }
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

} // namespace icn5g
