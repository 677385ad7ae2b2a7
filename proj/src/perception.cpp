#include "sitassess/perception.hpp"

#include <algorithm>

namespace sitassess {

void DomainEvent::validate() const {
  if (tick < 0) throw DomainError("event tick is negative");
  if (subject_kind.empty()) throw DomainError("event kind is empty");
  if (subject_id.empty()) throw DomainError("event id is empty");
  std::set<std::string> names;
  for (const auto& [name, value] : payload) {
    if (!names.insert(name).second) {
      throw DomainError("event payload repeats '" + name + "'");
    }
  }
}

void DomainConfig::validate() const {
  if (window < 1) throw ConfigError("window must be >= 1");
  if (proximity_d < 0) throw ConfigError("proximity_d must be >= 0");
  for (const auto& [kind, attrs] : magnitude_map) {
    for (const auto& [attr, values] : attrs) {
      for (const auto& [value, m] : values) {
        if (!std::isfinite(m) || m < 0) {
          throw ConfigError("magnitude_map." + kind + "." + attr + "." + value +
                            " must be finite and nonnegative");
        }
      }
    }
  }
}

DomainConfig DomainConfig::fire_domain() {
  DomainConfig c;
  c.magnitude_map["fire"]["intensity"] = {{"weak", 1.0}, {"moderate", 2.0}, {"strong", 3.0}};
  c.magnitude_map["fireBrigade"]["state"] = {
      {"idle", 0.0}, {"moving", 1.0}, {"fighting", 3.0}, {"blocked", 0.5}};
  c.terminal_payloads = {{"intensity", "extinguished"}, {"state", "extinguished"}};
  return c;
}

bool DomainConfig::is_terminal(const Attribute& a) const {
  return std::find(terminal_payloads.begin(), terminal_payloads.end(), a) !=
         terminal_payloads.end();
}

const AgentRecord* OrganizationSnapshot::find(AgentId id) const {
  auto it = std::lower_bound(agents.begin(), agents.end(), id,
                             [](const AgentRecord& r, AgentId v) { return r.id < v; });
  return it != agents.end() && it->id == id ? &*it : nullptr;
}

Organization::Organization(DomainConfig config) : config_(std::move(config)) {
  config_.validate();
}

AgentId Organization::ingest_event(const DomainEvent& event) {
  event.validate();
  if (event.tick < clock_) {
    throw OutOfOrderError("event at tick " + std::to_string(event.tick) +
                          " arrived after tick " + std::to_string(clock_));
  }
  clock_ = event.tick;

  FactualSemanticFeature fsf{event.subject_kind, event.subject_id, event.payload,
                             event.location, event.tick};
  const auto key = std::make_pair(event.subject_kind, event.subject_id);
  auto it = live_.find(key);
  if (it == live_.end()) {
    FactualAgent agent;
    agent.id = static_cast<AgentId>(agents_.size());
    agents_.push_back(std::move(agent));
    it = live_.emplace(key, agents_.back().id).first;
  }
  FactualAgent& agent = agents_[static_cast<std::size_t>(it->second)];
  agent.fsf = std::move(fsf);
  agent.event_ticks.push_back(event.tick);
  for (const auto& a : event.payload) {
    if (config_.is_terminal(a)) agent.terminal_seen = true;
  }
  return agent.id;
}

double Organization::magnitude(const FactualSemanticFeature& fsf) const {
  auto kind = config_.magnitude_map.find(fsf.subject_kind);
  if (kind == config_.magnitude_map.end()) return 0.0;
  double total = 0.0;
  for (const auto& [name, value] : fsf.attributes) {
    auto attr = kind->second.find(name);
    if (attr == kind->second.end()) continue;
    auto mapped = attr->second.find(value);
    if (mapped == attr->second.end()) {
      throw ConfigError("no magnitude mapping for " + fsf.subject_kind + "." + name + "=" +
                        value);
    }
    total += mapped->second;
  }
  return total;
}

void Organization::advance_tick(Tick tick) {
  if (tick < clock_) {
    throw OutOfOrderError("advance to tick " + std::to_string(tick) + " after tick " +
                          std::to_string(clock_));
  }
  clock_ = tick;
  const Tick w = config_.window;
  for (auto& agent : agents_) {
    if (!agent.alive) continue;
    if (agent.terminal_seen) {
      agent.alive = false;
      agent.acquaintances.clear();
      live_.erase({agent.fsf.subject_kind, agent.fsf.subject_id});
      continue;
    }
    const auto activity = std::count_if(agent.event_ticks.begin(), agent.event_ticks.end(),
                                        [&](Tick t) { return t > tick - w && t <= tick; });
    const Tick last = agent.event_ticks.empty() ? tick - w : agent.event_ticks.back();
    Indicators v(kIndicatorCount);
    v << static_cast<double>(activity), magnitude(agent.fsf),
        static_cast<double>(std::max<Tick>(0, w - (tick - last)));
    agent.indicators = std::move(v);
  }
}

void Organization::rebuild_acquaintances() {
  std::vector<FactualAgent*> live;
  for (auto& a : agents_) {
    if (!a.alive) continue;
    a.acquaintances.clear();
    live.push_back(&a);
  }
  for (std::size_t i = 0; i < live.size(); ++i) {
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      if (chebyshev_distance(live[i]->fsf.location, live[j]->fsf.location) <=
          config_.proximity_d) {
        live[i]->acquaintances.insert(live[j]->id);
        live[j]->acquaintances.insert(live[i]->id);
      }
    }
  }
}

OrganizationSnapshot Organization::snapshot() const {
  OrganizationSnapshot snap;
  snap.tick = clock_;
  for (const auto& a : agents_) {
    if (!a.alive) continue;
    snap.agents.push_back(
        {a.id, a.fsf, a.indicators, static_cast<std::int64_t>(a.acquaintances.size())});
  }
  return snap;
}

std::vector<OrganizationSnapshot> replay(const std::vector<DomainEvent>& events,
                                         const DomainConfig& config,
                                         const std::vector<Tick>& ticks) {
  if (!std::is_sorted(ticks.begin(), ticks.end())) {
    throw OutOfOrderError("replay ticks must be ascending");
  }
  std::vector<OrganizationSnapshot> out;
  if (ticks.empty()) return out;
  if (ticks.front() < 0) throw DomainError("replay tick is negative");

  Organization org(config);
  auto next_event = events.begin();
  auto wanted = ticks.begin();
  for (Tick t = 0; wanted != ticks.end(); ++t) {
    while (next_event != events.end() && next_event->tick == t) {
      org.ingest_event(*next_event++);
    }
    if (next_event != events.end() && next_event->tick < t) {
      throw OutOfOrderError("event log is not sorted by tick");
    }
    org.advance_tick(t);
    org.rebuild_acquaintances();
    while (wanted != ticks.end() && *wanted == t) {
      out.push_back(org.snapshot());
      ++wanted;
    }
  }
  return out;
}

OrganizationSnapshot replay_until(const std::vector<DomainEvent>& events,
                                  const DomainConfig& config, Tick tick) {
  return replay(events, config, {tick}).front();
}

}  // namespace sitassess
