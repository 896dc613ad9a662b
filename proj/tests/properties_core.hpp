#ifndef ICN5G_TESTS_PROPERTIES_CORE_HPP
#define ICN5G_TESTS_PROPERTIES_CORE_HPP

#include "icn5g/forwarder.hpp"

#include <algorithm>
#include <list>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace icn5g::props {

struct SweepResult {
  long long cases = 0;
  long long violations = 0;
  std::string firstFailure;

  void fail(const std::string& what)
  {
    ++violations;
    if (firstFailure.empty()) {
      firstFailure = what;
    }
  }
};

// Randomized forwarder instances (<= 6 faces, <= 20 names) exercising PIT
// aggregation, CS capacity/LRU, and label-over-FIB precedence against
// independent shadow models. `iterations` instances x 20 operations each.
inline SweepResult
runForwarderPropertySweep(int iterations, std::uint64_t seed = 20240801)
{
  SweepResult result;
  std::mt19937_64 seeder(seed);

  for (int iteration = 0; iteration < iterations; ++iteration) {
    std::mt19937_64 rng(seeder());
    std::size_t capacity = 1 + rng() % 4;
    int nameCount = 1 + static_cast<int>(rng() % 20);

    Forwarder fw(/*anchorRole=*/true, capacity);
    std::vector<FaceId> faces;
    int faceCount = 2 + static_cast<int>(rng() % 4);
    for (int i = 0; i < faceCount; ++i) {
      faces.push_back(fw.addFace(FaceKind::LINK, "peer" + std::to_string(i)).id);
    }
    FaceId upstream = faces[0];
    fw.fibAdd(Name({"p"}), upstream);

    struct Window {
      bool open = false;
      TimeMs expiry = 0;
    };
    std::map<Name, Window> windows;
    auto closeExpired = [&] (TimeMs at) {
      for (auto& [n, w] : windows) {
        if (w.open && w.expiry <= at) {
          w.open = false; // the pending window ended by timeout
        }
      }
    };
    std::list<Name> lruShadow; // front = least recently used
    auto shadowTouch = [&] (const Name& n) {
      lruShadow.remove(n);
      lruShadow.push_back(n);
    };
    auto shadowInsert = [&] (const Name& n) {
      if (capacity == 0) {
        return;
      }
      auto it = std::find(lruShadow.begin(), lruShadow.end(), n);
      if (it != lruShadow.end()) {
        lruShadow.erase(it);
      }
      else if (lruShadow.size() >= capacity) {
        lruShadow.pop_front();
      }
      lruShadow.push_back(n);
    };

    std::map<Name, FaceId> labels;
    TimeMs now = 0;
    Nonce nonce = 0;

    for (int op = 0; op < 20; ++op) {
      ++result.cases;
      now += 1 + rng() % 50;
      Name name({"p", "n" + std::to_string(rng() % static_cast<unsigned>(nameCount))});
      FaceId inFace = faces[rng() % faces.size()];

      switch (rng() % 6) {
        case 0:
        case 1: {
          closeExpired(now);
          Interest interest{name, ++nonce, 200, 0};
          auto r = fw.processInterest(interest, inFace, now);
          if (r.outcome == ForwardOutcome::FORWARDED_FIB ||
              r.outcome == ForwardOutcome::FORWARDED_LABEL) {
            if (windows[name].open) {
              result.fail("second upstream emission for " + name.toUri());
            }
            windows[name].open = true;
            windows[name].expiry = now + interest.lifetime;
            if (r.actions.size() != 1) {
              result.fail("forward must emit exactly once");
            }
            else {
              const ForwardingLabel* covering = fw.findLabel(name);
              if (covering != nullptr) {
                if (r.actions[0].face != covering->via ||
                    r.outcome != ForwardOutcome::FORWARDED_LABEL) {
                  result.fail("label did not take precedence for " + name.toUri());
                }
              }
              else if (r.actions[0].face != upstream) {
                result.fail("fib forward used wrong face");
              }
            }
          }
          else if (r.outcome == ForwardOutcome::AGGREGATED) {
            if (!windows[name].open) {
              result.fail("aggregation without an open window");
            }
            if (!r.actions.empty()) {
              result.fail("aggregation emitted upstream");
            }
            windows[name].expiry = std::max(windows[name].expiry, now + interest.lifetime);
          }
          else if (r.outcome == ForwardOutcome::CS_HIT) {
            shadowTouch(name);
          }
          break;
        }
        case 2: {
          closeExpired(now);
          Data data{name, 100, "prod", true};
          auto r = fw.processData(data, upstream, now);
          if (r.outcome == ForwardOutcome::SATISFIED_PIT) {
            if (!windows[name].open) {
              result.fail("data satisfied a closed window");
            }
            windows[name].open = false;
            shadowInsert(name);
          }
          break;
        }
        case 3: {
          for (const auto& n : fw.expirePit(now)) {
            windows[n].open = false;
          }
          break;
        }
        case 4: {
          Name prefix = name.getPrefix(1 + rng() % name.size());
          FaceId via = faces[rng() % faces.size()];
          fw.installForwardingLabel(ForwardingLabel{prefix, "anchor", via});
          labels[prefix] = via;
          break;
        }
        default: {
          if (!labels.empty()) {
            auto it = labels.begin();
            std::advance(it, rng() % labels.size());
            fw.removeForwardingLabel(it->first);
            labels.erase(it);
          }
          break;
        }
      }

      if (fw.csSize() > capacity) {
        result.fail("cs capacity exceeded");
      }
      if (fw.csNamesByRecency() != std::vector<Name>(lruShadow.begin(), lruShadow.end())) {
        result.fail("cs recency order diverged from the LRU shadow");
      }
    }
  }
  return result;
}

} // namespace icn5g::props

#endif // ICN5G_TESTS_PROPERTIES_CORE_HPP
