#include "icn5g/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace icn5g;

namespace {

struct RunOptions {
  std::string scenarioPath;
  std::optional<std::uint64_t> seed;
  std::optional<long> maxTime;
  std::string tracePath;
  std::string metricsPath;
};

int
runOne(const RunOptions& opts)
{
  ScenarioConfig cfg = loadScenario(opts.scenarioPath);
  if (opts.seed) {
    cfg.seed = *opts.seed;
  }
  if (opts.maxTime) {
    cfg.maxTime = *opts.maxTime;
  }

  RunResult result = runScenario(cfg);
  std::cout << result.report.toTable();

  if (!opts.tracePath.empty()) {
    writeLines(opts.tracePath, result.sim->traceLines());
  }
  if (!opts.metricsPath.empty()) {
    writeLines(opts.metricsPath, metricsFileLines(*result.sim, result.report));
  }

  if (!result.summary.quiescent) {
    std::cerr << "nonquiescent: " << result.summary.eventsPending
              << " events pending at max-time " << cfg.maxTime << "\n";
    return 2;
  }
  if (result.report.handoverAborts > 0) {
    std::cerr << "handover aborted\n";
    return 3;
  }
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"ICN-enabled 5G core simulator"};
  app.require_subcommand(1);

  RunOptions runOpts;
  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("scenario", runOpts.scenarioPath, "scenario file")->required();
  std::uint64_t seedValue = 0;
  bool seedSet = false;
  run->add_option("--seed", seedValue, "override the scenario seed")
    ->each([&] (const std::string&) { seedSet = true; });
  long maxTimeValue = 0;
  bool maxTimeSet = false;
  run->add_option("--max-time", maxTimeValue, "simulation horizon in ms")
    ->each([&] (const std::string&) { maxTimeSet = true; });
  run->add_option("--trace", runOpts.tracePath, "write the event trace here");
  run->add_option("--metrics", runOpts.metricsPath, "write metrics records here");

  std::string pathA, pathB;
  auto* compare = app.add_subcommand("compare", "Run two scenarios and diff their reports");
  compare->add_option("scenario-a", pathA, "first scenario")->required();
  compare->add_option("scenario-b", pathB, "second scenario")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (seedSet) {
        runOpts.seed = seedValue;
      }
      if (maxTimeSet) {
        runOpts.maxTime = maxTimeValue;
      }
      return runOne(runOpts);
    }
    ScenarioConfig a = loadScenario(pathA);
    ScenarioConfig b = loadScenario(pathB);
    RunResult ra = runScenario(a);
    RunResult rb = runScenario(b);
    std::cout << ra.report.toTable() << "\n" << rb.report.toTable() << "\n";
    std::cout << comparisonTable(ra.report, rb.report);
    return ra.summary.quiescent && rb.summary.quiescent ? 0 : 2;
  }
  catch (const SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
