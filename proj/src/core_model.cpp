#include "sitassess/core_model.hpp"

#include <set>

namespace sitassess {

void FactualSemanticFeature::validate() const {
  if (subject_kind.empty()) throw DomainError("FSF subject_kind is empty");
  if (subject_id.empty()) throw DomainError("FSF subject_id is empty");
  if (time < 0) throw DomainError("FSF time is negative");
  std::set<std::string> seen;
  for (const auto& [name, value] : attributes) {
    if (name.empty()) throw DomainError("FSF attribute name is empty");
    if (!seen.insert(name).second) {
      throw DomainError("FSF attribute '" + name + "' appears twice");
    }
  }
}

const std::string* FactualSemanticFeature::attribute(const std::string& name) const {
  for (const auto& [n, v] : attributes) {
    if (n == name) return &v;
  }
  return nullptr;
}

std::string FactualSemanticFeature::label() const {
  if (subject_id.rfind(subject_kind + "#", 0) == 0) return subject_id;
  return subject_kind + "#" + subject_id;
}

void ClusterElement::validate() const {
  fsf.validate();
  if (an_size < 0) throw DomainError("an_size is negative");
  if (indicators.size() == 0) throw DomainError("indicator vector is empty");
  check_nonnegative(indicators);
}

void Cluster::validate() const {
  if (name.empty()) throw DomainError("cluster name is empty");
  if (elements.empty()) throw DomainError("cluster '" + name + "' has no elements");
  for (const auto& e : elements) e.validate();
}

void Scenario::validate() const {
  if (name.empty()) throw DomainError("scenario name is empty");
  if (clusters.empty()) throw DomainError("scenario '" + name + "' has no clusters");
  if (captured_at < 0) throw DomainError("scenario '" + name + "' captured_at is negative");
  std::set<std::string> names;
  for (const auto& c : clusters) {
    c.validate();
    if (!names.insert(c.name).second) {
      throw DomainError("scenario '" + name + "' repeats cluster name '" + c.name + "'");
    }
  }
}

Indicators element_vector(const ClusterElement& element) {
  return element_vector(element.indicators, element.an_size);
}

}  // namespace sitassess
