#include "icn5g/user-plane.hpp"

#include <doctest.h>

using namespace icn5g;

namespace {

N4Op
addTunnelOp(const TunnelId& id, const NodeId& peer, bool towardRan, SessionId session,
            FiveTuple assoc = {})
{
  N4Op op;
  op.kind = N4Op::Kind::ADD_TUNNEL;
  op.tunnel = id;
  op.peer = peer;
  op.towardRan = towardRan;
  op.session = session;
  op.assoc = assoc;
  return op;
}

N4Op
addRuleOp(Direction dir, FiveTuplePattern match, const TunnelId& action, int priority,
          SessionId session)
{
  N4Op op;
  op.kind = N4Op::Kind::ADD_RULE;
  op.rule = ClassifierRule{dir, match, action, priority, session};
  return op;
}

} // namespace

TEST_CASE("classifier picks the matching rule by equality")
{
  UpfState upf;
  IpAddr target = makeAddr(10, 0, 0, 5);
  FiveTuplePattern match;
  match.dstAddr = target;
  REQUIRE_FALSE(upf.applyOps({addTunnelOp("t-icn", "ap", false, 1),
                              addRuleOp(Direction::UL, match, "t-icn", 5, 1)}));

  FiveTuple hit;
  hit.dstAddr = target;
  CHECK(upf.classify(hit, Direction::UL) == TunnelId{"t-icn"});

  FiveTuple miss;
  miss.dstAddr = makeAddr(10, 0, 0, 9);
  CHECK_FALSE(upf.classify(miss, Direction::UL).has_value()); // NoMatch
}

TEST_CASE("higher priority wins, ties go to insertion order")
{
  UpfState upf;
  FiveTuplePattern any; // all wildcards
  REQUIRE_FALSE(upf.applyOps({addTunnelOp("t5", "a", false, 1),
                              addTunnelOp("t9", "b", false, 1),
                              addTunnelOp("t9b", "c", false, 1),
                              addRuleOp(Direction::UL, any, "t5", 5, 1)}));
  FiveTuplePattern any2;
  any2.srcPort = 0;
  REQUIRE_FALSE(upf.applyOps({addRuleOp(Direction::UL, any2, "t9", 9, 1)}));

  FiveTuple pkt;
  CHECK(upf.classify(pkt, Direction::UL) == TunnelId{"t9"}); // priority 9 beats 5

  FiveTuplePattern any3;
  any3.dstPort = 0;
  REQUIRE_FALSE(upf.applyOps({addRuleOp(Direction::UL, any3, "t9b", 9, 1)}));
  CHECK(upf.classify(pkt, Direction::UL) == TunnelId{"t9"}); // earlier insertion kept
}

TEST_CASE("n4 deltas are atomic: a dangling action tunnel rejects everything")
{
  UpfState upf;
  REQUIRE_FALSE(upf.applyOps({addTunnelOp("t2", "peer", false, 1)}));

  FiveTuplePattern any;
  auto error = upf.applyOps({addRuleOp(Direction::UL, any, "t9", 1, 1),
                             addTunnelOp("t3", "x", false, 1)});
  REQUIRE(error.has_value()); // DanglingTunnel
  CHECK(upf.tunnels().count("t3") == 0); // state unchanged
  CHECK(upf.rules(Direction::UL).empty());
  CHECK(upf.rulesResolve());

  // within one delta, tunnel-then-rule ordering is satisfied
  CHECK_FALSE(upf.applyOps({addTunnelOp("t9", "y", false, 1),
                            addRuleOp(Direction::UL, any, "t9", 1, 1)}));
}

TEST_CASE("remove-session strips a session's rules and tunnels only")
{
  UpfState upf;
  FiveTuplePattern any;
  REQUIRE_FALSE(upf.applyOps({addTunnelOp("a1", "x", false, 1),
                              addTunnelOp("b1", "y", false, 2),
                              addRuleOp(Direction::UL, any, "a1", 1, 1)}));
  FiveTuplePattern other;
  other.srcPort = 7;
  REQUIRE_FALSE(upf.applyOps({addRuleOp(Direction::DL, other, "b1", 1, 2)}));

  N4Op remove;
  remove.kind = N4Op::Kind::REMOVE_SESSION;
  remove.session = 1;
  REQUIRE_FALSE(upf.applyOps({remove}));
  CHECK(upf.tunnels().count("a1") == 0);
  CHECK(upf.tunnels().count("b1") == 1);
  CHECK(upf.rules(Direction::UL).empty());
  CHECK(upf.rules(Direction::DL).size() == 1);
  CHECK(upf.rulesResolve());
}

TEST_CASE("tunnel release cascades to the rules steering into it")
{
  UpfState upf;
  FiveTuplePattern any;
  REQUIRE_FALSE(upf.applyOps({addTunnelOp("t1", "x", true, 1),
                              addRuleOp(Direction::DL, any, "t1", 1, 1)}));
  upf.removeTunnelCascade("t1");
  CHECK(upf.tunnels().empty());
  CHECK(upf.rules(Direction::DL).empty());
  CHECK(upf.rulesResolve()); // no dangling action tunnels, ever
}

TEST_CASE("ip pattern matching covers exact, block, default")
{
  CHECK(ipPatternMatches("10.1.0.7", makeAddr(10, 1, 0, 7)));
  CHECK_FALSE(ipPatternMatches("10.1.0.7", makeAddr(10, 1, 0, 8)));
  CHECK(ipPatternMatches("10.1.0.*", makeAddr(10, 1, 0, 200)));
  CHECK_FALSE(ipPatternMatches("10.1.0.*", makeAddr(10, 2, 0, 1)));
  CHECK(ipPatternMatches("default", makeAddr(1, 2, 3, 4)));
}

// --- node-level behavior through a tiny Sim ---------------------------------

namespace {

struct UlclRig {
  Sim sim{1};
  UlClNode* ulcl = nullptr;
  IcnApNode* ap = nullptr;
  FiveTuple assoc;

  UlclRig()
  {
    sim.addNode(std::make_unique<RanNode>("ran1"));
    ulcl = &static_cast<UlClNode&>(sim.addNode(std::make_unique<UlClNode>("ulcl1")));
    ap = &static_cast<IcnApNode&>(sim.addNode(std::make_unique<IcnApNode>("ap1", 8)));
    sim.addLink(Link{"ran1", "ulcl1", 1, 0.0, LinkKind::DATA});
    sim.addLink(Link{"ulcl1", "ap1", 1, 0.0, LinkKind::DATA});

    assoc.srcAddr = makeAddr(10, 1, 0, 1);
    assoc.dstAddr = makeAddr(10, 1, 0, 254);

    FiveTuplePattern ul;
    ul.srcAddr = assoc.srcAddr;
    FiveTuplePattern dl;
    dl.dstAddr = assoc.srcAddr;
    auto error = ulcl->upf().applyOps({
      addTunnelOp("tr", "ran1", true, 1, assoc),
      addTunnelOp("ta", "ap1", false, 1, assoc),
      addRuleOp(Direction::UL, ul, "ta", 10, 1),
      addRuleOp(Direction::DL, dl, "tr", 10, 1),
    });
    REQUIRE_FALSE(error.has_value());
  }
};

} // namespace

TEST_CASE("ulcl steers tunneled icn pdus by the session association")
{
  UlclRig rig;
  Interest interest{Name::parse("/traffic/x"), 1, 4000, 0};
  rig.sim.send("ran1", "ulcl1", WirePayload{TunneledPacket{"tr", interest}});
  rig.sim.run(100);
  // the AP received the interest on tunnel "ta" and created its face
  CHECK(rig.ap->forwarder().findTunnelFace("ta") != nullptr);
}

TEST_CASE("ulcl drops unknown tunnels and unmatched flows, counted per cause")
{
  UlclRig rig;
  Interest interest{Name::parse("/x"), 1, 4000, 0};
  rig.sim.send("ran1", "ulcl1", WirePayload{TunneledPacket{"t-unknown", interest}});
  rig.sim.run(100);
  CHECK(rig.sim.counterValue("drops", "node=ulcl1,cause=unknown_tunnel") == 1);

  FiveTuple odd;
  odd.srcAddr = makeAddr(99, 0, 0, 1); // no rule matches this association
  REQUIRE_FALSE(rig.ulcl->upf().applyOps({addTunnelOp("tz", "ran1", true, 2, odd)}));
  rig.sim.send("ran1", "ulcl1", WirePayload{TunneledPacket{"tz", interest}});
  rig.sim.run(200);
  CHECK(rig.sim.counterValue("drops", "node=ulcl1,cause=no_match") == 1);
}

TEST_CASE("anchor install gives the ap a dl tunnel, fib entry, and face")
{
  Sim sim(1);
  auto& ap = static_cast<IcnApNode&>(sim.addNode(std::make_unique<IcnApNode>("ap1", 8)));
  sim.addNode(std::make_unique<UlClNode>("ulcl1"));
  sim.addLink(Link{"ap1", "ulcl1", 1, 0.0, LinkKind::CONTROL});

  ControlMessage install{"ulcl1", "ap1", 9, 6,
                         IcnAnchorInstall{4, "t9", "ulcl1", Name::parse("/ue7")}};
  ap.onMessage(sim, "ulcl1", WirePayload{install});

  CHECK(ap.dlTunnels().at(4) == "t9");
  CHECK(ap.upf().findTunnel("t9") != nullptr);
  const Face* face = ap.forwarder().findTunnelFace("t9");
  REQUIRE(face != nullptr);
  CHECK(ap.forwarder().fibLookup(Name::parse("/ue7/live")) == face->id);

  SUBCASE("session release clears anchor state completely")
  {
    ControlMessage release{"ulcl1", "ap1", 10, 12,
                           IcnSessionRelease{4, Name::parse("/ue7"), false}};
    ap.onMessage(sim, "ulcl1", WirePayload{release});
    CHECK(ap.dlTunnels().empty());
    CHECK(ap.upf().findTunnel("t9") == nullptr);
    CHECK_FALSE(ap.forwarder().fibLookup(Name::parse("/ue7/live")).has_value());
  }
}

TEST_CASE("label install at the anchor requires adjacency to the target")
{
  Sim sim(1);
  auto& ap = static_cast<IcnApNode&>(sim.addNode(std::make_unique<IcnApNode>("ap1", 8)));
  sim.addNode(std::make_unique<IcnApNode>("ap2", 8));
  sim.addNode(std::make_unique<UlClNode>("ctrl"));
  sim.addLink(Link{"ap1", "ap2", 1, 0.0, LinkKind::DATA});
  sim.addLink(Link{"ap1", "ctrl", 1, 0.0, LinkKind::CONTROL});
  ap.addLinkFace("ap2");

  ControlMessage install{"ctrl", "ap1", 1, 6, IcnLabelInstall{4, Name::parse("/ue7"), "ap2"}};
  ap.onMessage(sim, "ctrl", WirePayload{install});
  CHECK(ap.forwarder().findLabel(Name::parse("/ue7/live")) != nullptr);

  // unreachable target anchor: nacked, nothing installed
  ControlMessage bad{"ctrl", "ap1", 2, 6, IcnLabelInstall{4, Name::parse("/ue8"), "ap9"}};
  ap.onMessage(sim, "ctrl", WirePayload{bad});
  CHECK(ap.forwarder().findLabel(Name::parse("/ue8/live")) == nullptr);
}

TEST_CASE("ran holds tunneled packets that arrive before their tunnel")
{
  Sim sim(1);
  sim.addNode(std::make_unique<RanNode>("ran1"));
  sim.addNode(std::make_unique<UlClNode>("ulcl1"));
  sim.addLink(Link{"ran1", "ulcl1", 1, 0.0, LinkKind::DATA});

  Interest early{Name::parse("/ue7/live/seg0"), 1, 4000, 0};
  sim.send("ulcl1", "ran1", WirePayload{TunneledPacket{"t-new", early}});
  sim.run(10);
  CHECK(sim.counterValue("ran_held", "node=ran1") == 1);
  CHECK(sim.counterValue("drops", "node=ran1,cause=unknown_tunnel") == 0);
}
