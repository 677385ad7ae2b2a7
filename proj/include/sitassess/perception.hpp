#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sitassess/core_model.hpp"

namespace sitassess {

/// One timestamped observation fed by the environment.
struct DomainEvent {
  Tick tick = 0;
  std::string subject_kind;
  std::string subject_id;
  std::vector<Attribute> payload;
  GridCell location;

  void validate() const;

  friend bool operator==(const DomainEvent&, const DomainEvent&) = default;
};

/// Expert-supplied domain knowledge: qualitative-to-numeric table, terminal
/// payloads, indicator window, and the proximity radius of acquaintance.
struct DomainConfig {
  /// kind -> attribute -> value -> magnitude.
  std::map<std::string, std::map<std::string, std::map<std::string, double>>> magnitude_map;
  std::vector<Attribute> terminal_payloads;
  int window = 5;
  int proximity_d = 2;
  /// Per-dimension min-max rescaling before cosine matching. Off by default.
  bool min_max_scaling = false;

  void validate() const;

  /// Built-in table for the fire domain (fires and fire brigades).
  static DomainConfig fire_domain();

  bool is_terminal(const Attribute& a) const;
};

/// Number of indicators each factual agent carries.
inline constexpr Eigen::Index kIndicatorCount = 3;

struct FactualAgent {
  AgentId id = 0;
  FactualSemanticFeature fsf;
  Indicators indicators = Indicators::Zero(kIndicatorCount);
  std::set<AgentId> acquaintances;
  bool alive = true;
  /// Ticks of every event ingested for this agent, oldest first.
  std::vector<Tick> event_ticks;
  bool terminal_seen = false;
};

/// Frozen view of one live agent.
struct AgentRecord {
  AgentId id = 0;
  FactualSemanticFeature fsf;
  Indicators indicators;
  std::int64_t an_size = 0;

  friend bool operator==(const AgentRecord& a, const AgentRecord& b) {
    return a.id == b.id && a.fsf == b.fsf && a.an_size == b.an_size &&
           a.indicators.size() == b.indicators.size() && a.indicators == b.indicators;
  }
};

struct OrganizationSnapshot {
  Tick tick = 0;
  /// Live agents, ascending id.
  std::vector<AgentRecord> agents;

  const AgentRecord* find(AgentId id) const;

  friend bool operator==(const OrganizationSnapshot&, const OrganizationSnapshot&) = default;
};

/// Selections reported back by the assessment level for one tick. Recorded
/// only; nothing in perception reacts to them yet.
struct SelectionNote {
  Tick tick = 0;
  std::vector<std::string> selected_assessment_agents;
};

/// The factual-agent organization. Single writer: events and ticks must
/// arrive in order.
class Organization {
 public:
  explicit Organization(DomainConfig config = DomainConfig::fire_domain());

  /// Creates or updates the live agent for the event's subject.
  AgentId ingest_event(const DomainEvent& event);

  /// Recomputes indicators of every live agent at `tick` and retires agents
  /// that received a terminal payload. Throws ConfigError naming an
  /// unmapped qualitative value.
  void advance_tick(Tick tick);

  /// Recomputes the acquaintance relation from scratch.
  void rebuild_acquaintances();

  OrganizationSnapshot snapshot() const;

  void note_selection(SelectionNote note) { feedback_.push_back(std::move(note)); }
  const std::vector<SelectionNote>& selection_log() const { return feedback_; }

  const DomainConfig& config() const { return config_; }
  const std::vector<FactualAgent>& agents() const { return agents_; }
  Tick clock() const { return clock_; }

  /// Magnitude of an FSF under the configured table.
  double magnitude(const FactualSemanticFeature& fsf) const;

 private:
  DomainConfig config_;
  std::vector<FactualAgent> agents_;  // index == id
  std::map<std::pair<std::string, std::string>, AgentId> live_;
  std::vector<SelectionNote> feedback_;
  Tick clock_ = 0;
};

/// Replays `events` (sorted by tick) and returns the snapshot after each
/// requested tick, in the order given. Ticks must be ascending.
std::vector<OrganizationSnapshot> replay(const std::vector<DomainEvent>& events,
                                         const DomainConfig& config,
                                         const std::vector<Tick>& ticks);

OrganizationSnapshot replay_until(const std::vector<DomainEvent>& events,
                                  const DomainConfig& config, Tick tick);

}  // namespace sitassess
