#include "properties_core.hpp"

#include "icn5g/app.hpp"
#include "icn5g/engine.hpp"
#include "icn5g/user-plane.hpp"

#include <doctest.h>

#include <random>

using namespace icn5g;

TEST_CASE("pit aggregation, cs lru, and label precedence hold over 10000 cases")
{
  auto result = props::runForwarderPropertySweep(/*iterations=*/500);
  CHECK(result.cases >= 10000);
  CHECK_MESSAGE(result.violations == 0, result.firstFailure);
}

// Conservation at desk scale: in a loop-free topology with a reachable
// producer and no expiries, every consumer interest is satisfied by exactly
// one data delivery (brute-force audit over the consumer ledgers).
TEST_CASE("interest/data conservation over random loop-free topologies")
{
  std::mt19937_64 seeder(7771);
  for (int iteration = 0; iteration < 200; ++iteration) {
    std::mt19937_64 rng(seeder());
    Sim sim(rng());

    int routerCount = 1 + static_cast<int>(rng() % 4);
    std::vector<NodeId> routers;
    std::vector<int> parent(routerCount, -1);
    for (int i = 0; i < routerCount; ++i) {
      NodeId id = "r" + std::to_string(i);
      sim.addNode(std::make_unique<RouterNode>(id, rng() % 3));
      routers.push_back(id);
      if (i > 0) {
        parent[i] = static_cast<int>(rng() % i);
        sim.addLink(Link{routers[parent[i]], id, 1 + static_cast<TimeMs>(rng() % 5), 0.0,
                         LinkKind::DATA});
      }
    }

    AppServerConfig producerCfg;
    producerCfg.serves = {Name::parse("/content")};
    producerCfg.defaultPeer = routers[0];
    sim.addNode(std::make_unique<AppServerNode>("producer", producerCfg));
    sim.addLink(Link{routers[0], "producer", 1, 0.0, LinkKind::DATA});

    int consumerCount = 1 + static_cast<int>(rng() % 2);
    for (int c = 0; c < consumerCount; ++c) {
      NodeId id = "consumer" + std::to_string(c);
      NodeId at = routers[rng() % routers.size()];
      AppServerConfig consumerCfg;
      consumerCfg.defaultPeer = at;
      sim.addNode(std::make_unique<AppServerNode>(id, consumerCfg));
      sim.addLink(Link{id, at, 1 + static_cast<TimeMs>(rng() % 5), 0.0, LinkKind::DATA});
    }

    for (const auto& router : routers) {
      auto& node = dynamic_cast<RouterNode&>(sim.nodeAt(router));
      for (const auto& peer : sim.neighbors(router, false)) {
        node.addLinkFace(peer);
      }
    }
    for (int i = 0; i < routerCount; ++i) {
      auto& node = dynamic_cast<RouterNode&>(sim.nodeAt(routers[i]));
      NodeId nextHop = i == 0 ? NodeId("producer") : routers[parent[i]];
      node.forwarder().fibAdd(Name::parse("/content"),
                              node.forwarder().findLinkFace(nextHop)->id);
    }

    int requestCount = 1 + static_cast<int>(rng() % 20);
    for (int r = 0; r < requestCount; ++r) {
      NodeId consumer = "consumer" + std::to_string(rng() % consumerCount);
      std::string name = "/content/n" + std::to_string(rng() % 20);
      sim.scheduleAction(consumer, 1 + static_cast<TimeMs>(rng() % 200),
                         WorkloadAction{"request", {name}});
    }

    auto summary = sim.run(100000);
    REQUIRE(summary.quiescent);

    std::int64_t satisfied = 0, issued = 0, duplicates = 0;
    for (int c = 0; c < consumerCount; ++c) {
      const auto& app =
        dynamic_cast<const AppServerNode&>(sim.nodeAt("consumer" + std::to_string(c)));
      issued += static_cast<std::int64_t>(app.ledger().requests.size());
      duplicates += app.ledger().duplicates;
      for (const auto& [key, req] : app.ledger().requests) {
        REQUIRE(req.satisfied);
        REQUIRE(req.deliveries == 1);
        ++satisfied;
      }
    }
    REQUIRE(satisfied == issued);
    REQUIRE(duplicates == 0);
  }
}
