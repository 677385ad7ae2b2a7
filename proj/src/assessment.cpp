#include "sitassess/assessment.hpp"

#include <algorithm>
#include <limits>

#include "sitassess/scenario_store.hpp"

namespace sitassess {

std::vector<AssessmentAgent> make_assessment_agents(const ScenarioBase& base) {
  std::vector<AssessmentAgent> agents;
  agents.reserve(base.scenarios.size());
  for (std::size_t i = 0; i < base.scenarios.size(); ++i) {
    agents.push_back({"Agent-" + std::to_string(i + 1), &base.scenarios[i]});
  }
  return agents;
}

std::set<AgentId> AssessmentReport::matched_agents() const {
  std::set<AgentId> ids;
  for (const auto& c : per_cluster) {
    for (const auto& m : c.matches) {
      if (m.matched_agent_id) ids.insert(*m.matched_agent_id);
    }
  }
  return ids;
}

VectorScaling VectorScaling::fit(const OrganizationSnapshot& snapshot,
                                 const ScenarioBase& base) {
  std::vector<Indicators> all;
  for (const auto& s : base.scenarios) {
    for (const auto& c : s.clusters) {
      for (const auto& e : c.elements) all.push_back(element_vector(e));
    }
  }
  for (const auto& a : snapshot.agents) all.push_back(element_vector(a.indicators, a.an_size));

  VectorScaling out;
  if (all.empty()) return out;
  const Eigen::Index n = all.front().size();
  Indicators lo = all.front();
  Indicators hi = all.front();
  for (const auto& v : all) {
    if (v.size() != n) throw DimensionError("mixed vector lengths in min-max fit");
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Indicators span = hi - lo;
  out.offset_ = lo;
  out.inverse_span_ = span.unaryExpr([](double d) { return d > 0 ? 1.0 / d : 0.0; });
  return out;
}

Indicators VectorScaling::apply(const Indicators& v) const {
  if (identity()) return v;
  if (v.size() != offset_.size()) throw DimensionError("scaling fitted for another length");
  return ((v - offset_).cwiseProduct(inverse_span_)).cwiseMax(0.0);
}

namespace {

struct Candidate {
  AgentId id;
  Indicators vector;
};

std::vector<Candidate> candidates_of(const OrganizationSnapshot& snapshot,
                                     const VectorScaling& scaling) {
  std::vector<Candidate> out;
  out.reserve(snapshot.agents.size());
  for (const auto& a : snapshot.agents) {
    out.push_back({a.id, scaling.apply(element_vector(a.indicators, a.an_size))});
  }
  return out;
}

std::vector<ElementMatch> match_cluster(const Cluster& stored,
                                        const std::vector<Candidate>& pool,
                                        std::set<AgentId>& taken,
                                        const VectorScaling& scaling) {
  std::vector<ElementMatch> matches;
  matches.reserve(stored.elements.size());
  for (const auto& element : stored.elements) {
    const Indicators target = scaling.apply(element_vector(element));
    const Candidate* best = nullptr;
    double best_similarity = -std::numeric_limits<double>::infinity();
    for (const auto& c : pool) {
      if (taken.contains(c.id)) continue;
      const double s = cosine_similarity(target, c.vector);
      if (s > best_similarity) {
        best = &c;
        best_similarity = s;
      }
    }
    ElementMatch m;
    m.stored_element = &element;
    if (best != nullptr) {
      m.matched_agent_id = best->id;
      m.similarity = best_similarity;
      taken.insert(best->id);
    }
    matches.push_back(m);
  }
  return matches;
}

}  // namespace

std::vector<ElementMatch> build_cluster(const Cluster& stored,
                                        const OrganizationSnapshot& snapshot,
                                        std::set<AgentId>& taken,
                                        const VectorScaling& scaling) {
  return match_cluster(stored, candidates_of(snapshot, scaling), taken, scaling);
}

std::vector<AssessmentReport> assess(const OrganizationSnapshot& snapshot,
                                     const ScenarioBase& base,
                                     const AssessmentOptions& options) {
  if (base.scenarios.empty()) {
    throw ConfigError("scenario base is empty; nothing to assess against");
  }
  const VectorScaling scaling =
      options.min_max_scaling ? VectorScaling::fit(snapshot, base) : VectorScaling{};
  const auto pool = candidates_of(snapshot, scaling);

  std::vector<AssessmentReport> reports;
  const auto agents = make_assessment_agents(base);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const Scenario& scenario = *agents[i].scenario;
    AssessmentReport report;
    report.assessment_agent_id = agents[i].id;
    report.scenario_name = scenario.name;
    report.agent_index = i;

    std::set<AgentId> taken;
    Indicators cluster_relevances(static_cast<Eigen::Index>(scenario.clusters.size()));
    for (std::size_t c = 0; c < scenario.clusters.size(); ++c) {
      ClusterAssessment ca;
      ca.cluster_name = scenario.clusters[c].name;
      ca.matches = match_cluster(scenario.clusters[c], pool, taken, scaling);
      Indicators sims(static_cast<Eigen::Index>(ca.matches.size()));
      for (std::size_t k = 0; k < ca.matches.size(); ++k) {
        sims(static_cast<Eigen::Index>(k)) = ca.matches[k].similarity;
      }
      ca.relevance = relevance(sims);
      cluster_relevances(static_cast<Eigen::Index>(c)) = ca.relevance;
      report.per_cluster.push_back(std::move(ca));
    }
    report.agent_relevance = relevance(cluster_relevances);
    reports.push_back(std::move(report));
  }

  std::stable_sort(reports.begin(), reports.end(),
                   [](const AssessmentReport& a, const AssessmentReport& b) {
                     if (a.agent_relevance != b.agent_relevance) {
                       return a.agent_relevance > b.agent_relevance;
                     }
                     return a.agent_index < b.agent_index;
                   });
  for (std::size_t i = 0; i < reports.size(); ++i) reports[i].rank = static_cast<int>(i + 1);
  return reports;
}

double select_covering(std::span<AssessmentReport> ranked,
                       const OrganizationSnapshot& snapshot, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw ConfigError("theta must lie in (0,1], got " + std::to_string(theta));
  }
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i].rank != static_cast<int>(i + 1)) {
      throw DomainError("select_covering expects reports in rank order");
    }
    ranked[i].selected = false;
  }

  std::set<AgentId> live;
  for (const auto& a : snapshot.agents) live.insert(a.id);
  if (ranked.empty()) return live.empty() ? 1.0 : 0.0;

  std::set<AgentId> covered;
  double coverage = 0.0;
  for (auto& report : ranked) {
    report.selected = true;
    for (AgentId id : report.matched_agents()) {
      if (live.contains(id)) covered.insert(id);
    }
    coverage = live.empty() ? 1.0
                            : static_cast<double>(covered.size()) /
                                  static_cast<double>(live.size());
    if (coverage >= theta) break;
  }
  return coverage;
}

}  // namespace sitassess
