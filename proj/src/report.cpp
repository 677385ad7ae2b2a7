#include "sitassess/report.hpp"

#include <cstdio>
#include <map>

#include "sitassess/scenario_store.hpp"

namespace sitassess {

using Json = nlohmann::ordered_json;

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string cluster_label(const AssessmentReport& r) {
  if (r.per_cluster.size() == 1) return r.per_cluster.front().cluster_name;
  return r.scenario_name;
}

std::string subject_of(const OrganizationSnapshot& snap, const ElementMatch& m) {
  if (!m.matched_agent_id) return "(unmatched)";
  const AgentRecord* rec = snap.find(*m.matched_agent_id);
  return rec != nullptr ? rec->fsf.label() : "agent " + std::to_string(*m.matched_agent_id);
}

}  // namespace

AssessmentSection assess_section(OrganizationSnapshot snapshot, const ScenarioBase& base,
                                 double theta, const AssessmentOptions& options) {
  AssessmentSection section;
  section.theta = theta;
  section.reports = assess(snapshot, base, options);
  section.coverage = select_covering(section.reports, snapshot, theta);
  section.snapshot = std::move(snapshot);
  return section;
}

std::vector<AgentId> shared_agents(const AssessmentSection& section) {
  std::map<AgentId, int> count;
  for (const auto& r : section.reports) {
    for (AgentId id : r.matched_agents()) ++count[id];
  }
  std::vector<AgentId> out;
  for (const auto& [id, n] : count) {
    if (n > 1) out.push_back(id);
  }
  return out;
}

std::string render_table(const AssessmentSection& section) {
  std::string out = "tick " + std::to_string(section.snapshot.tick) + "  live=" +
                    std::to_string(section.snapshot.agents.size()) +
                    "  coverage=" + fixed2(section.coverage) + "  theta=" + fixed2(section.theta) +
                    "\n";
  for (const auto& r : section.reports) {
    out += r.assessment_agent_id + "  " + cluster_label(r) + "  r=" + fixed2(r.agent_relevance);
    if (r.selected) out += "  [SELECTED]";
    out += "\n";
    for (const auto& c : r.per_cluster) {
      if (r.per_cluster.size() > 1) {
        out += "  " + c.cluster_name + "  r=" + fixed2(c.relevance) + "\n";
      }
      for (const auto& m : c.matches) {
        out += "    " + m.stored_element->fsf.label() + " -> " + subject_of(section.snapshot, m) +
               "  s=" + fixed2(m.similarity) + "\n";
      }
    }
  }
  return out;
}

Json section_to_json(const AssessmentSection& section) {
  Json reports = Json::array();
  for (const auto& r : section.reports) {
    Json clusters = Json::array();
    for (const auto& c : r.per_cluster) {
      Json matches = Json::array();
      for (const auto& m : c.matches) {
        Json jm;
        jm["stored"] = m.stored_element->fsf.label();
        if (m.matched_agent_id) {
          jm["matched_agent"] = *m.matched_agent_id;
          jm["matched_subject"] = subject_of(section.snapshot, m);
        } else {
          jm["matched_agent"] = nullptr;
          jm["matched_subject"] = nullptr;
        }
        jm["similarity"] = m.similarity;
        matches.push_back(std::move(jm));
      }
      Json jc;
      jc["name"] = c.cluster_name;
      jc["relevance"] = c.relevance;
      jc["matches"] = std::move(matches);
      clusters.push_back(std::move(jc));
    }
    Json jr;
    jr["assessment_agent"] = r.assessment_agent_id;
    jr["scenario"] = r.scenario_name;
    jr["rank"] = r.rank;
    jr["relevance"] = r.agent_relevance;
    jr["selected"] = r.selected;
    jr["clusters"] = std::move(clusters);
    reports.push_back(std::move(jr));
  }
  Json j;
  j["tick"] = section.snapshot.tick;
  j["live_agents"] = section.snapshot.agents.size();
  j["theta"] = section.theta;
  j["coverage"] = section.coverage;
  j["shared_agents"] = shared_agents(section);
  j["reports"] = std::move(reports);
  return j;
}

Json report_document(const std::vector<AssessmentSection>& sections) {
  Json arr = Json::array();
  for (const auto& s : sections) arr.push_back(section_to_json(s));
  Json j;
  j["sections"] = std::move(arr);
  return j;
}

}  // namespace sitassess
