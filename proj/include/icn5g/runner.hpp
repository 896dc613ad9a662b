#ifndef ICN5G_RUNNER_HPP
#define ICN5G_RUNNER_HPP

#include "icn5g/report.hpp"
#include "icn5g/scenario.hpp"

#include <memory>

namespace icn5g {

// Instantiates nodes, links, faces, static routes, and the scheduled
// workload from a validated config.
std::unique_ptr<Sim> buildSim(const ScenarioConfig& cfg);

struct RunResult {
  Report report;
  RunSummary summary;
  std::unique_ptr<Sim> sim; // kept alive for trace/metrics/state inspection
};

RunResult runScenario(const ScenarioConfig& cfg);

// Mode-checked entry points.
RunResult runMecScenario(const ScenarioConfig& cfg);      // IP_MEC | ICN_MEC
RunResult runHandoverScenario(const ScenarioConfig& cfg); // HANDOVER

// Flattened `name labels value` records for the metrics file: raw counters
// first, then the report records; stable ordering.
std::vector<std::string> metricsFileLines(const Sim& sim, const Report& report);

} // namespace icn5g

#endif // ICN5G_RUNNER_HPP
