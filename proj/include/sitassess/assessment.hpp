#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sitassess/core_model.hpp"
#include "sitassess/perception.hpp"

namespace sitassess {

struct ScenarioBase;

/// Bound to exactly one stored scenario.
struct AssessmentAgent {
  std::string id;
  const Scenario* scenario = nullptr;
};

/// One assessment agent per scenario, named "Agent-1", "Agent-2", ... in base
/// order.
std::vector<AssessmentAgent> make_assessment_agents(const ScenarioBase& base);

struct ElementMatch {
  const ClusterElement* stored_element = nullptr;
  std::optional<AgentId> matched_agent_id;
  double similarity = 0.0;
};

struct ClusterAssessment {
  std::string cluster_name;
  std::vector<ElementMatch> matches;
  double relevance = 0.0;
};

struct AssessmentReport {
  std::string assessment_agent_id;
  std::string scenario_name;
  /// Position of the scenario in its base; orders ties.
  std::size_t agent_index = 0;
  std::vector<ClusterAssessment> per_cluster;
  double agent_relevance = 0.0;
  int rank = 0;
  bool selected = false;

  /// Every factual agent matched by any of this report's elements.
  std::set<AgentId> matched_agents() const;
};

/// Per-dimension affine map applied to element vectors before cosine.
/// Identity unless built by `fit`.
class VectorScaling {
 public:
  VectorScaling() = default;

  /// Min-max over every stored element of `base` and every agent of
  /// `snapshot`; constant dimensions map to 0.
  static VectorScaling fit(const OrganizationSnapshot& snapshot, const ScenarioBase& base);

  Indicators apply(const Indicators& v) const;
  bool identity() const { return offset_.size() == 0; }

 private:
  Indicators offset_;
  Indicators inverse_span_;
};

struct AssessmentOptions {
  bool min_max_scaling = false;
};

/// Greedy matching of a stored cluster against the snapshot.
///
/// Stored elements are visited in order; each takes the untaken live agent of
/// highest cosine similarity (smallest id on ties) and that id joins `taken`.
/// Elements left without a candidate are unmatched with similarity 0. Only
/// the numeric vectors are compared; FSF content is never read.
std::vector<ElementMatch> build_cluster(const Cluster& stored,
                                        const OrganizationSnapshot& snapshot,
                                        std::set<AgentId>& taken,
                                        const VectorScaling& scaling = {});

/// Runs every assessment agent over the snapshot and ranks the reports by
/// descending relevance, ties by base order. Throws ConfigError on an empty
/// base.
std::vector<AssessmentReport> assess(const OrganizationSnapshot& snapshot,
                                     const ScenarioBase& base,
                                     const AssessmentOptions& options = {});

/// Marks the rank prefix whose matched agents cover at least `theta` of the
/// live agents (or every report, if coverage never gets there). At least one
/// report is selected when any exist. Returns the coverage reached; an empty
/// snapshot counts as fully covered.
double select_covering(std::span<AssessmentReport> ranked,
                       const OrganizationSnapshot& snapshot, double theta);

}  // namespace sitassess
