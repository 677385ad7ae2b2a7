#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sitassess/assessment.hpp"
#include "sitassess/perception.hpp"

namespace sitassess {

/// Ranked, selected assessment of one tick.
struct AssessmentSection {
  OrganizationSnapshot snapshot;
  std::vector<AssessmentReport> reports;
  double theta = 0.9;
  double coverage = 0.0;
};

/// Replays to `snapshot`, assesses, and applies the covering selection.
AssessmentSection assess_section(OrganizationSnapshot snapshot, const ScenarioBase& base,
                                 double theta, const AssessmentOptions& options = {});

/// Factual agents matched by more than one report of the section.
std::vector<AgentId> shared_agents(const AssessmentSection& section);

/// Ranked table, relevances to two decimals:
///   <agent-id>  <cluster-name>  r=<value>  [SELECTED]
/// followed by the matched members of each cluster.
std::string render_table(const AssessmentSection& section);

/// Full-precision counterpart of the table.
nlohmann::ordered_json section_to_json(const AssessmentSection& section);

nlohmann::ordered_json report_document(const std::vector<AssessmentSection>& sections);

}  // namespace sitassess
