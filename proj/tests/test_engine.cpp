#include "icn5g/engine.hpp"

#include <doctest.h>

using namespace icn5g;

namespace {

/// Records everything it sees; optionally bounces messages back.
class ProbeNode : public Node {
public:
  ProbeNode(NodeId id, NodeRole role = NodeRole::APP_SERVER)
    : Node(std::move(id), role)
  {
  }

  void onMessage(Sim& sim, const NodeId& from, const WirePayload& payload) override
  {
    deliveries.emplace_back(sim.now(), from);
    if (bounce && std::holds_alternative<InnerPdu>(payload)) {
      sim.send(id(), from, payload);
    }
  }

  void onTimer(Sim& sim, const TimerTag& timer) override
  {
    timers.emplace_back(sim.now(), timer.kind);
  }

  std::vector<std::pair<TimeMs, NodeId>> deliveries;
  std::vector<std::pair<TimeMs, std::string>> timers;
  bool bounce = false;
};

InnerPdu
somePdu()
{
  return Interest{Name::parse("/t"), 1, 4000, 0};
}

} // namespace

TEST_CASE("empty scenario: clock zero, zero counters")
{
  Sim sim(1);
  auto summary = sim.run(1000);
  CHECK(summary.finalClock == 0);
  CHECK(summary.quiescent);
  CHECK(summary.eventsProcessed == 0);
  CHECK(sim.counters().empty());
}

TEST_CASE("link latency delivers at send time + latency")
{
  Sim sim(1);
  auto& a = sim.addNode(std::make_unique<ProbeNode>("a"));
  auto& b = sim.addNode(std::make_unique<ProbeNode>("b"));
  (void)a;
  sim.addLink(Link{"a", "b", 5, 0.0, LinkKind::DATA});
  sim.send("a", "b", WirePayload{somePdu()});
  auto summary = sim.run(1000);
  CHECK(summary.finalClock == 5);
  auto& probe = static_cast<ProbeNode&>(b);
  REQUIRE(probe.deliveries.size() == 1);
  CHECK(probe.deliveries[0].first == 5);
}

TEST_CASE("same-time events run in insertion order")
{
  Sim sim(1);
  auto& a = sim.addNode(std::make_unique<ProbeNode>("a"));
  auto& probe = static_cast<ProbeNode&>(a);
  sim.scheduleTimer("a", 10, TimerTag{"first", ""});
  sim.scheduleTimer("a", 10, TimerTag{"second", ""});
  sim.run(100);
  REQUIRE(probe.timers.size() == 2);
  CHECK(probe.timers[0].second == "first");
  CHECK(probe.timers[1].second == "second");
}

TEST_CASE("scheduling in the past is time travel")
{
  Sim sim(1);
  sim.addNode(std::make_unique<ProbeNode>("a"));
  sim.scheduleTimer("a", 10, TimerTag{"x", ""});
  sim.run(100);
  CHECK(sim.now() == 10);
  CHECK_THROWS_AS(sim.scheduleTimer("a", 9, TimerTag{"late", ""}), TimeTravel);
  CHECK_NOTHROW(sim.scheduleTimer("a", 10, TimerTag{"now", ""}));
}

TEST_CASE("sending without a link fails")
{
  Sim sim(1);
  sim.addNode(std::make_unique<ProbeNode>("a"));
  sim.addNode(std::make_unique<ProbeNode>("b"));
  CHECK_THROWS_AS(sim.send("a", "b", WirePayload{somePdu()}), NoLink);
}

TEST_CASE("loss rate 1.0 always drops and counts")
{
  Sim sim(1);
  sim.addNode(std::make_unique<ProbeNode>("a"));
  auto& b = sim.addNode(std::make_unique<ProbeNode>("b"));
  sim.addLink(Link{"a", "b", 1, 1.0, LinkKind::DATA});
  for (int i = 0; i < 10; ++i) {
    sim.send("a", "b", WirePayload{somePdu()});
  }
  sim.run(100);
  CHECK(static_cast<ProbeNode&>(b).deliveries.empty());
  CHECK(sim.counterValue("link_drops", "link=a-b") == 10);
}

TEST_CASE("loss-free runs conserve messages")
{
  Sim sim(1);
  auto& a = sim.addNode(std::make_unique<ProbeNode>("a"));
  auto& b = sim.addNode(std::make_unique<ProbeNode>("b"));
  static_cast<ProbeNode&>(b).bounce = true;
  sim.addLink(Link{"a", "b", 3, 0.0, LinkKind::DATA});
  sim.send("a", "b", WirePayload{somePdu()});
  sim.run(100);
  auto sent = sim.counterTotal("packets_sent");
  auto delivered = sim.counterTotal("packets_delivered");
  CHECK(sent == delivered);
  CHECK(static_cast<ProbeNode&>(a).deliveries.size() == 1);
}

TEST_CASE("nonquiescent run reports pending events")
{
  Sim sim(1);
  sim.addNode(std::make_unique<ProbeNode>("a"));
  sim.scheduleTimer("a", 50, TimerTag{"x", ""});
  sim.scheduleTimer("a", 500, TimerTag{"y", ""});
  auto summary = sim.run(100);
  CHECK_FALSE(summary.quiescent);
  CHECK(summary.eventsPending == 1);
  CHECK(summary.finalClock == 50);
}

TEST_CASE("same seed and config give identical traces")
{
  auto runOnce = [] () {
    Sim sim(77);
    sim.addNode(std::make_unique<ProbeNode>("a"));
    sim.addNode(std::make_unique<ProbeNode>("b"));
    sim.addLink(Link{"a", "b", 2, 0.5, LinkKind::DATA});
    for (int i = 0; i < 20; ++i) {
      sim.send("a", "b", WirePayload{somePdu()});
    }
    sim.run(100);
    return sim.traceLines();
  };
  CHECK(runOnce() == runOnce());
}

TEST_CASE("processing delay defers emissions")
{
  Sim sim(1);
  auto& a = sim.addNode(std::make_unique<ProbeNode>("a"));
  a.setProcessingDelay(7);
  auto& b = sim.addNode(std::make_unique<ProbeNode>("b"));
  sim.addLink(Link{"a", "b", 2, 0.0, LinkKind::DATA});
  sim.send("a", "b", WirePayload{somePdu()});
  sim.run(100);
  auto& probe = static_cast<ProbeNode&>(b);
  REQUIRE(probe.deliveries.size() == 1);
  CHECK(probe.deliveries[0].first == 9); // 7 processing + 2 link
}

TEST_CASE("hop count ignores control links")
{
  Sim sim(1);
  sim.addNode(std::make_unique<ProbeNode>("tran"));
  sim.addNode(std::make_unique<ProbeNode>("ulcl1"));
  sim.addNode(std::make_unique<ProbeNode>("ulcl2"));
  sim.addNode(std::make_unique<ProbeNode>("amf"));
  sim.addLink(Link{"tran", "ulcl2", 1, 0.0, LinkKind::DATA});
  sim.addLink(Link{"tran", "amf", 1, 0.0, LinkKind::CONTROL});
  sim.addLink(Link{"amf", "ulcl1", 1, 0.0, LinkKind::CONTROL});
  CHECK(sim.hopCount("tran", "ulcl2") == 1);
  CHECK_FALSE(sim.hopCount("tran", "ulcl1").has_value()); // control path doesn't count
  CHECK(sim.hopCount("tran", "tran") == 0);
}
