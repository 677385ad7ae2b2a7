#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "sitassess/core_model.hpp"
#include "sitassess/perception.hpp"

namespace sitassess {

inline constexpr int kScenarioBaseVersion = 1;

/// Past situations captured by experts, one assessment agent each.
struct ScenarioBase {
  std::vector<Scenario> scenarios;
  int version = kScenarioBaseVersion;

  /// Throws FormatError with the offending path.
  void validate() const;
  const Scenario* find(const std::string& name) const;

  friend bool operator==(const ScenarioBase&, const ScenarioBase&) = default;
};

nlohmann::ordered_json to_json(const ScenarioBase& base);
ScenarioBase scenario_base_from_json(const nlohmann::ordered_json& doc);

ScenarioBase load_scenario_base(const std::filesystem::path& path);
void save_scenario_base(const ScenarioBase& base, const std::filesystem::path& path);

/// Named group of factual-agent ids, as chosen by a domain expert.
struct AgentGroup {
  std::string name;
  std::vector<AgentId> agents;
};

/// Freezes each group of live agents into a cluster of a new scenario.
Scenario capture_scenario(const OrganizationSnapshot& snapshot,
                          const std::vector<AgentGroup>& groups, const std::string& name);

/// Groups file: {"groups":[{"name":str,"agents":[int,...]},...]}.
std::vector<AgentGroup> load_groups(const std::filesystem::path& path);
void save_groups(const std::vector<AgentGroup>& groups, const std::filesystem::path& path);

}  // namespace sitassess
