#include "icn5g/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace icn5g {

const char*
toString(ScenarioMode mode)
{
  switch (mode) {
    case ScenarioMode::IP_MEC: return "ip_mec";
    case ScenarioMode::ICN_MEC: return "icn_mec";
    default: return "handover";
  }
}

const NodeSpec*
ScenarioConfig::findNode(const NodeId& id) const
{
  for (const auto& node : nodes) {
    if (node.id == id) {
      return &node;
    }
  }
  return nullptr;
}

void
ScenarioConfig::validate() const
{
  std::set<NodeId> ids;
  for (const auto& node : nodes) {
    if (!ids.insert(node.id).second) {
      throw ValidationError(name + ": duplicate node " + node.id);
    }
  }
  auto requireNode = [&] (const NodeId& id, const std::string& where) {
    if (ids.count(id) == 0) {
      throw ValidationError(name + ": " + where + " references undefined node " + id);
    }
  };
  for (const auto& link : links) {
    requireNode(link.a, "link");
    requireNode(link.b, "link");
    if (link.latency < 0) {
      throw ValidationError(name + ": negative latency on " + link.a + "-" + link.b);
    }
    if (link.loss < 0.0 || link.loss > 1.0) {
      throw ValidationError(name + ": loss rate out of [0,1] on " + link.a + "-" + link.b);
    }
  }
  for (const auto& slice : slices) {
    if (slice.ulclCandidates.empty() || slice.anchorCandidates.empty()) {
      throw ValidationError(name + ": slice " + slice.sliceId + " needs candidates");
    }
    for (const auto& c : slice.ulclCandidates) {
      requireNode(c, "slice " + slice.sliceId);
    }
    for (const auto& c : slice.anchorCandidates) {
      requireNode(c, "slice " + slice.sliceId);
    }
  }
  for (const auto& route : routes) {
    requireNode(route.node, "route");
    requireNode(route.nextHop, "route");
  }
  for (const auto& route : ipRoutes) {
    requireNode(route.node, "ip-route");
    requireNode(route.nextHop, "ip-route");
  }
  for (const auto& item : workload) {
    if (item.time < 0) {
      throw ValidationError(name + ": negative workload time");
    }
    requireNode(item.node, "workload");
    if (item.verb == "attach" || item.verb == "handover") {
      if (item.args.empty()) {
        throw ValidationError(name + ": " + item.verb + " needs a RAN argument");
      }
      requireNode(item.args[0], "workload " + item.verb);
    }
  }
  for (const auto& profile : profiles) {
    requireNode(profile.ue, "profile");
  }
}

namespace {

struct Cursor {
  std::string source;
  int line = 0;

  [[noreturn]] void fail(const std::string& what) const
  {
    std::ostringstream os;
    os << source << ":" << line << ": " << what;
    throw ParseError(os.str());
  }
};

std::vector<std::string>
tokenize(const std::string& line)
{
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string token;
  while (is >> token) {
    tokens.push_back(token);
  }
  return tokens;
}

bool
splitKeyValue(const std::string& token, std::string& key, std::string& value)
{
  auto eq = token.find('=');
  if (eq == std::string::npos) {
    return false;
  }
  key = token.substr(0, eq);
  value = token.substr(eq + 1);
  return true;
}

std::vector<std::string>
splitList(const std::string& text)
{
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) {
      comma = text.size();
    }
    if (comma > pos) {
      items.push_back(text.substr(pos, comma - pos));
    }
    pos = comma + 1;
  }
  return items;
}

IpAddr
parseAddrOrFail(const Cursor& at, const std::string& text)
{
  auto addr = parseAddr(text);
  if (!addr) {
    at.fail("bad address " + text);
  }
  return *addr;
}

long
parseIntOrFail(const Cursor& at, const std::string& text)
{
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size()) {
      at.fail("bad integer " + text);
    }
    return v;
  }
  catch (const std::exception&) {
    at.fail("bad integer " + text);
  }
}

} // namespace

ScenarioConfig
parseScenario(std::istream& in, const std::string& sourceName)
{
  ScenarioConfig cfg;
  cfg.name = sourceName;
  Cursor at{sourceName, 0};
  std::string section;
  std::string line;
  bool transportSet = false;

  while (std::getline(in, line)) {
    ++at.line;
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    auto tokens = tokenize(line);
    if (tokens.empty()) {
      continue;
    }
    if (tokens[0].front() == '[') {
      std::string s = tokens[0];
      if (s.back() != ']') {
        at.fail("malformed section header " + s);
      }
      section = s.substr(1, s.size() - 2);
      continue;
    }

    if (section == "scenario") {
      if (tokens.size() < 3 || tokens[1] != "=") {
        at.fail("expected `key = value`");
      }
      const std::string& key = tokens[0];
      const std::string& value = tokens[2];
      if (key == "name") {
        cfg.name = value;
      }
      else if (key == "mode") {
        if (value == "ip_mec") {
          cfg.mode = ScenarioMode::IP_MEC;
        }
        else if (value == "icn_mec") {
          cfg.mode = ScenarioMode::ICN_MEC;
        }
        else if (value == "handover") {
          cfg.mode = ScenarioMode::HANDOVER;
        }
        else {
          at.fail("unknown mode " + value);
        }
      }
      else if (key == "transport") {
        cfg.transport = value == "ip" ? Transport::IP : Transport::ICN;
        transportSet = true;
      }
      else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parseIntOrFail(at, value));
      }
      else if (key == "max-time") {
        cfg.maxTime = parseIntOrFail(at, value);
      }
      else if (key == "interest-lifetime") {
        cfg.interestLifetime = parseIntOrFail(at, value);
      }
      else if (key == "retry-period") {
        cfg.retryPeriod = parseIntOrFail(at, value);
      }
      else if (key == "max-retries") {
        cfg.maxRetries = static_cast<int>(parseIntOrFail(at, value));
      }
      else if (key == "translation-delay") {
        cfg.translationDelay = parseIntOrFail(at, value);
      }
      else if (key == "colocate-ran-ulcl") {
        cfg.colocateRanUlcl = value == "true" || value == "1";
      }
      else {
        at.fail("unknown scenario key " + key);
      }
    }
    else if (section == "nodes") {
      if (tokens.size() < 2) {
        at.fail("node needs `<name> <ROLE>`");
      }
      NodeSpec node;
      node.id = tokens[0];
      auto role = parseRole(tokens[1]);
      if (!role) {
        at.fail("unknown role " + tokens[1]);
      }
      node.role = *role;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        std::string key, value;
        if (!splitKeyValue(tokens[i], key, value)) {
          at.fail("expected key=value, got " + tokens[i]);
        }
        if (key == "cache") {
          node.cache = static_cast<std::size_t>(parseIntOrFail(at, value));
        }
        else if (key == "delay") {
          node.delay = parseIntOrFail(at, value);
        }
        else if (key == "addr") {
          node.addr = parseAddrOrFail(at, value);
        }
        else if (key == "addr-base") {
          node.addrBase = parseAddrOrFail(at, value);
        }
        else if (key == "dns-addr") {
          node.dnsAddr = parseAddrOrFail(at, value);
        }
        else if (key == "prefix") {
          node.prefix = Name::parse(value);
        }
        else if (key == "serves") {
          for (const auto& p : splitList(value)) {
            node.serves.push_back(Name::parse(p));
          }
        }
        else if (key == "payload") {
          node.payload = static_cast<std::uint32_t>(parseIntOrFail(at, value));
        }
        else if (key == "dns") {
          node.dns = value == "true" || value == "1";
        }
        else if (key == "registers") {
          node.registers = value;
        }
        else if (key == "peer") {
          node.peer = value;
        }
        else if (key == "push-next") {
          node.pushNext = value;
        }
        else if (key == "push-addr") {
          node.pushAddr = parseAddrOrFail(at, value);
        }
        else {
          at.fail("unknown node key " + key);
        }
      }
      cfg.nodes.push_back(std::move(node));
    }
    else if (section == "links") {
      if (tokens.size() < 3) {
        at.fail("link needs `<a> <b> <latency>`");
      }
      ScenarioLink link;
      link.a = tokens[0];
      link.b = tokens[1];
      link.latency = parseIntOrFail(at, tokens[2]);
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        std::string key, value;
        if (splitKeyValue(tokens[i], key, value)) {
          if (key == "loss") {
            link.loss = std::stod(value);
          }
          else {
            at.fail("unknown link key " + key);
          }
        }
        else if (tokens[i] == "data") {
          link.kind = LinkKind::DATA;
        }
        else if (tokens[i] == "control") {
          link.kind = LinkKind::CONTROL;
        }
        else if (tokens[i] == "radio") {
          link.kind = LinkKind::RADIO;
        }
        else {
          at.fail("unknown link attribute " + tokens[i]);
        }
      }
      cfg.links.push_back(std::move(link));
    }
    else if (section == "profiles") {
      if (tokens.size() < 2) {
        at.fail("profile needs `<ue> <true|false> [slices]`");
      }
      SubscriptionProfile profile;
      profile.ue = tokens[0];
      profile.icnServiceEnabled = tokens[1] == "true" || tokens[1] == "1";
      if (tokens.size() > 2) {
        profile.allowedSlices = splitList(tokens[2]);
      }
      cfg.profiles.push_back(std::move(profile));
    }
    else if (section == "slices") {
      if (tokens.size() < 3) {
        at.fail("slice needs `<id> ulcls=... anchors=...`");
      }
      SliceDescriptor slice;
      slice.sliceId = tokens[0];
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string key, value;
        if (!splitKeyValue(tokens[i], key, value)) {
          at.fail("expected key=value, got " + tokens[i]);
        }
        if (key == "ulcls") {
          slice.ulclCandidates = splitList(value);
        }
        else if (key == "anchors") {
          slice.anchorCandidates = splitList(value);
        }
        else {
          at.fail("unknown slice key " + key);
        }
      }
      cfg.slices.push_back(std::move(slice));
    }
    else if (section == "routes") {
      if (tokens.size() != 3) {
        at.fail("route needs `<node> <prefix> <next-hop>`");
      }
      cfg.routes.push_back(StaticRoute{tokens[0], Name::parse(tokens[1]), tokens[2]});
    }
    else if (section == "ip-routes") {
      if (tokens.size() != 3) {
        at.fail("ip-route needs `<node> <pattern> <next-hop>`");
      }
      cfg.ipRoutes.push_back(StaticIpRoute{tokens[0], tokens[1], tokens[2]});
    }
    else if (section == "services") {
      if (tokens.size() != 3) {
        at.fail("service needs `<name> <client-pattern> <addr>`");
      }
      cfg.services.push_back(
        ServiceInstanceSpec{tokens[0], tokens[1], parseAddrOrFail(at, tokens[2])});
    }
    else if (section == "workload") {
      if (tokens.size() < 3) {
        at.fail("workload needs `<time> <node> <verb> [args]`");
      }
      WorkloadItem item;
      item.time = parseIntOrFail(at, tokens[0]);
      item.node = tokens[1];
      item.verb = tokens[2];
      item.args.assign(tokens.begin() + 3, tokens.end());

      if (item.verb == "stream") {
        // stream <prefix> <count> <period> -> count requests for /prefix/seg<i>
        if (item.args.size() < 3) {
          at.fail("stream needs `<prefix> <count> <period>`");
        }
        long count = parseIntOrFail(at, item.args[1]);
        long period = parseIntOrFail(at, item.args[2]);
        for (long i = 0; i < count; ++i) {
          WorkloadItem req;
          req.time = item.time + i * period;
          req.node = item.node;
          req.verb = "request";
          req.args = {item.args[0] + "/seg" + std::to_string(i)};
          cfg.workload.push_back(std::move(req));
        }
      }
      else if (item.verb == "stream-ip") {
        if (item.args.size() < 3) {
          at.fail("stream-ip needs `<service> <count> <period>`");
        }
        long count = parseIntOrFail(at, item.args[1]);
        long period = parseIntOrFail(at, item.args[2]);
        for (long i = 0; i < count; ++i) {
          WorkloadItem req;
          req.time = item.time + i * period;
          req.node = item.node;
          req.verb = "request";
          req.args = {item.args[0], "seg" + std::to_string(i)};
          cfg.workload.push_back(std::move(req));
        }
      }
      else {
        cfg.workload.push_back(std::move(item));
      }
    }
    else if (section.empty()) {
      at.fail("content before any [section]");
    }
    else {
      at.fail("unknown section " + section);
    }
  }

  if (!transportSet) {
    cfg.transport = cfg.mode == ScenarioMode::IP_MEC ? Transport::IP : Transport::ICN;
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig
loadScenario(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open scenario file " + path);
  }
  return parseScenario(in, path);
}

} // namespace icn5g
