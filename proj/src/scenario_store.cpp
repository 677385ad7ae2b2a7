#include "sitassess/scenario_store.hpp"

#include <set>

#include "json_util.hpp"
#include "sitassess/json_io.hpp"

namespace sitassess {

using detail::indexed;
using detail::Json;
using detail::StrictObject;

namespace {

template <typename Fn>
void with_path(const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const DomainError& err) {
    throw FormatError(path + ": " + err.what());
  }
}

Json fsf_to_json(const FactualSemanticFeature& fsf) {
  Json attrs = Json::array();
  for (const auto& [name, value] : fsf.attributes) attrs.push_back({name, value});
  Json j;
  j["kind"] = fsf.subject_kind;
  j["id"] = fsf.subject_id;
  j["attributes"] = std::move(attrs);
  j["x"] = fsf.location.x;
  j["y"] = fsf.location.y;
  j["time"] = fsf.time;
  return j;
}

FactualSemanticFeature fsf_from_json(const Json& j, const std::string& path) {
  StrictObject o(j, path);
  FactualSemanticFeature fsf;
  fsf.subject_kind = o.string("kind");
  fsf.subject_id = o.string("id");
  const Json& attrs = o.array("attributes");
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    const Json& a = attrs[i];
    if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string()) {
      StrictObject::fail(indexed(o.child("attributes"), i), "expected [name, value]");
    }
    fsf.attributes.emplace_back(a[0].get<std::string>(), a[1].get<std::string>());
  }
  fsf.location.x = static_cast<int>(o.integer("x"));
  fsf.location.y = static_cast<int>(o.integer("y"));
  fsf.time = o.integer("time");
  o.finish();
  return fsf;
}

ClusterElement element_from_json(const Json& j, const std::string& path) {
  StrictObject o(j, path);
  ClusterElement e;
  e.fsf = fsf_from_json(o.field("fsf"), o.child("fsf"));
  const Json& ind = o.array("indicators");
  e.indicators.resize(static_cast<Eigen::Index>(ind.size()));
  for (std::size_t i = 0; i < ind.size(); ++i) {
    if (!ind[i].is_number()) StrictObject::fail(indexed(o.child("indicators"), i), "expected a number");
    e.indicators(static_cast<Eigen::Index>(i)) = ind[i].get<double>();
  }
  e.an_size = o.integer("an_size");
  o.finish();
  with_path(path, [&] { e.validate(); });
  return e;
}

}  // namespace

void ScenarioBase::validate() const {
  if (version != kScenarioBaseVersion) {
    throw FormatError("$.version: unsupported version " + std::to_string(version));
  }
  std::set<std::string> names;
  Eigen::Index dim = -1;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    const Scenario& sc = scenarios[s];
    const std::string sp = indexed("$.scenarios", s);
    with_path(sp, [&] { sc.validate(); });
    if (!names.insert(sc.name).second) {
      throw FormatError(sp + ".name: duplicate scenario name '" + sc.name + "'");
    }
    for (std::size_t c = 0; c < sc.clusters.size(); ++c) {
      for (std::size_t e = 0; e < sc.clusters[c].elements.size(); ++e) {
        const Eigen::Index n = sc.clusters[c].elements[e].indicators.size();
        if (dim >= 0 && n != dim) {
          throw FormatError(indexed(indexed(sp + ".clusters", c) + ".elements", e) +
                            ".indicators: length " + std::to_string(n) + ", base uses " +
                            std::to_string(dim));
        }
        dim = n;
      }
    }
  }
}

const Scenario* ScenarioBase::find(const std::string& name) const {
  for (const auto& s : scenarios) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

Json to_json(const ScenarioBase& base) {
  Json scenarios = Json::array();
  for (const auto& s : base.scenarios) {
    Json clusters = Json::array();
    for (const auto& c : s.clusters) {
      Json elements = Json::array();
      for (const auto& e : c.elements) {
        Json ind = Json::array();
        for (Eigen::Index i = 0; i < e.indicators.size(); ++i) ind.push_back(e.indicators(i));
        Json je;
        je["fsf"] = fsf_to_json(e.fsf);
        je["indicators"] = std::move(ind);
        je["an_size"] = e.an_size;
        elements.push_back(std::move(je));
      }
      Json jc;
      jc["name"] = c.name;
      jc["elements"] = std::move(elements);
      clusters.push_back(std::move(jc));
    }
    Json js;
    js["name"] = s.name;
    js["captured_at"] = s.captured_at;
    js["clusters"] = std::move(clusters);
    scenarios.push_back(std::move(js));
  }
  Json j;
  j["version"] = base.version;
  j["scenarios"] = std::move(scenarios);
  return j;
}

ScenarioBase scenario_base_from_json(const Json& doc) {
  StrictObject top(doc, "$");
  ScenarioBase base;
  base.version = static_cast<int>(top.integer("version"));
  if (base.version != kScenarioBaseVersion) {
    throw FormatError("$.version: unsupported version " + std::to_string(base.version));
  }
  const Json& scenarios = top.array("scenarios");
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    const std::string sp = indexed("$.scenarios", s);
    StrictObject so(scenarios[s], sp);
    Scenario sc;
    sc.name = so.string("name");
    sc.captured_at = so.integer("captured_at");
    const Json& clusters = so.array("clusters");
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const std::string cp = indexed(so.child("clusters"), c);
      StrictObject co(clusters[c], cp);
      Cluster cl;
      cl.name = co.string("name");
      const Json& elements = co.array("elements");
      for (std::size_t e = 0; e < elements.size(); ++e) {
        cl.elements.push_back(element_from_json(elements[e], indexed(co.child("elements"), e)));
      }
      co.finish();
      with_path(cp, [&] { cl.validate(); });
      sc.clusters.push_back(std::move(cl));
    }
    so.finish();
    base.scenarios.push_back(std::move(sc));
  }
  top.finish();
  base.validate();
  return base;
}

ScenarioBase load_scenario_base(const std::filesystem::path& path) {
  try {
    return scenario_base_from_json(read_json_file(path));
  } catch (const FormatError& err) {
    const std::string msg = err.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw FormatError(path.string() + ": " + msg);
  }
}

void save_scenario_base(const ScenarioBase& base, const std::filesystem::path& path) {
  base.validate();
  write_text_file(path, to_json(base).dump(2) + "\n");
}

Scenario capture_scenario(const OrganizationSnapshot& snapshot,
                          const std::vector<AgentGroup>& groups, const std::string& name) {
  if (name.empty()) throw CaptureError("scenario name is empty");
  if (groups.empty()) throw CaptureError("scenario '" + name + "' has no groups");
  Scenario scenario;
  scenario.name = name;
  scenario.captured_at = snapshot.tick;
  std::set<std::string> group_names;
  std::set<AgentId> used;
  for (const auto& g : groups) {
    if (g.name.empty()) throw CaptureError("group name is empty");
    if (!group_names.insert(g.name).second) {
      throw CaptureError("group name '" + g.name + "' repeats");
    }
    if (g.agents.empty()) throw CaptureError("group '" + g.name + "' is empty");
    Cluster cluster;
    cluster.name = g.name;
    for (AgentId id : g.agents) {
      const AgentRecord* rec = snapshot.find(id);
      if (rec == nullptr) {
        throw CaptureError("group '" + g.name + "': agent " + std::to_string(id) +
                           " is not live at tick " + std::to_string(snapshot.tick));
      }
      if (!used.insert(id).second) {
        throw CaptureError("group '" + g.name + "': agent " + std::to_string(id) +
                           " already belongs to a cluster of this scenario");
      }
      cluster.elements.push_back({rec->fsf, rec->indicators, rec->an_size});
    }
    scenario.clusters.push_back(std::move(cluster));
  }
  return scenario;
}

std::vector<AgentGroup> load_groups(const std::filesystem::path& path) {
  const Json doc = read_json_file(path);
  StrictObject top(doc, "$");
  const Json& groups = top.array("groups");
  std::vector<AgentGroup> out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    StrictObject g(groups[i], indexed("$.groups", i));
    AgentGroup group;
    group.name = g.string("name");
    const Json& agents = g.array("agents");
    for (std::size_t k = 0; k < agents.size(); ++k) {
      if (!agents[k].is_number_integer()) {
        StrictObject::fail(indexed(g.child("agents"), k), "expected an integer");
      }
      group.agents.push_back(agents[k].get<AgentId>());
    }
    g.finish();
    out.push_back(std::move(group));
  }
  top.finish();
  return out;
}

void save_groups(const std::vector<AgentGroup>& groups, const std::filesystem::path& path) {
  Json arr = Json::array();
  for (const auto& g : groups) {
    Json j;
    j["name"] = g.name;
    j["agents"] = g.agents;
    arr.push_back(std::move(j));
  }
  Json doc;
  doc["groups"] = std::move(arr);
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace sitassess
