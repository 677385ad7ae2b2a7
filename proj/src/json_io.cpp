#include "sitassess/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace sitassess {

using detail::indexed;
using detail::Json;
using detail::StrictObject;

Json to_json(const DomainEvent& event) {
  Json payload = Json::object();
  for (const auto& [name, value] : event.payload) payload[name] = value;
  Json j;
  j["tick"] = event.tick;
  j["kind"] = event.subject_kind;
  j["id"] = event.subject_id;
  j["payload"] = std::move(payload);
  j["x"] = event.location.x;
  j["y"] = event.location.y;
  return j;
}

DomainEvent event_from_json(const Json& j, const std::string& where) {
  StrictObject o(j, where);
  DomainEvent e;
  e.tick = o.integer("tick");
  e.subject_kind = o.string("kind");
  e.subject_id = o.string("id");
  const Json& payload = o.field("payload");
  if (!payload.is_object()) StrictObject::fail(o.child("payload"), "expected an object");
  for (const auto& [name, value] : payload.items()) {
    if (!value.is_string()) StrictObject::fail(o.child("payload." + name), "expected a string");
    e.payload.emplace_back(name, value.get<std::string>());
  }
  e.location.x = static_cast<int>(o.integer("x"));
  e.location.y = static_cast<int>(o.integer("y"));
  o.finish();
  try {
    e.validate();
  } catch (const DomainError& err) {
    throw FormatError(where + ": " + err.what());
  }
  return e;
}

void write_event_log(const std::vector<DomainEvent>& events, std::ostream& out) {
  for (const auto& e : events) out << to_json(e).dump() << '\n';
}

void save_event_log(const std::vector<DomainEvent>& events, const std::filesystem::path& path) {
  std::ostringstream text;
  write_event_log(events, text);
  write_text_file(path, text.str());
}

std::vector<DomainEvent> read_event_log(std::istream& in) {
  std::vector<DomainEvent> events;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(number);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& err) {
      throw FormatError(where + ": " + err.what());
    }
    DomainEvent e = event_from_json(j, where);
    if (!events.empty() && e.tick < events.back().tick) {
      throw FormatError(where + ": tick " + std::to_string(e.tick) + " precedes tick " +
                        std::to_string(events.back().tick));
    }
    events.push_back(std::move(e));
  }
  return events;
}

std::vector<DomainEvent> load_event_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read event log " + path.string());
  try {
    return read_event_log(in);
  } catch (const FormatError& err) {
    throw FormatError(path.string() + ": " + err.what());
  }
}

Json to_json(const DomainConfig& config) {
  Json map = Json::object();
  for (const auto& [kind, attrs] : config.magnitude_map) {
    Json a = Json::object();
    for (const auto& [attr, values] : attrs) {
      Json v = Json::object();
      for (const auto& [value, m] : values) v[value] = m;
      a[attr] = std::move(v);
    }
    map[kind] = std::move(a);
  }
  Json terminal = Json::array();
  for (const auto& [name, value] : config.terminal_payloads) terminal.push_back({name, value});
  Json j;
  j["magnitude_map"] = std::move(map);
  j["terminal_payloads"] = std::move(terminal);
  j["window"] = config.window;
  j["proximity_d"] = config.proximity_d;
  j["min_max_scaling"] = config.min_max_scaling;
  return j;
}

DomainConfig domain_config_from_json(const Json& j) {
  StrictObject o(j, "$");
  DomainConfig c;
  const Json& map = o.field("magnitude_map");
  if (!map.is_object()) StrictObject::fail("$.magnitude_map", "expected an object");
  for (const auto& [kind, attrs] : map.items()) {
    const std::string kp = "$.magnitude_map." + kind;
    if (!attrs.is_object()) StrictObject::fail(kp, "expected an object");
    for (const auto& [attr, values] : attrs.items()) {
      if (!values.is_object()) StrictObject::fail(kp + "." + attr, "expected an object");
      for (const auto& [value, m] : values.items()) {
        if (!m.is_number()) StrictObject::fail(kp + "." + attr + "." + value, "expected a number");
        c.magnitude_map[kind][attr][value] = m.get<double>();
      }
    }
  }
  const Json& terminal = o.array("terminal_payloads");
  for (std::size_t i = 0; i < terminal.size(); ++i) {
    const Json& pair = terminal[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      StrictObject::fail(indexed("$.terminal_payloads", i), "expected [name, value]");
    }
    c.terminal_payloads.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  c.window = static_cast<int>(o.integer("window"));
  c.proximity_d = static_cast<int>(o.integer("proximity_d"));
  if (o.has("min_max_scaling")) c.min_max_scaling = o.boolean("min_max_scaling");
  o.finish();
  c.validate();
  return c;
}

DomainConfig load_domain_config(const std::filesystem::path& path) {
  try {
    return domain_config_from_json(read_json_file(path));
  } catch (const FormatError& err) {
    throw FormatError(path.string() + ": " + err.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw FormatError(path.string() + ": " + err.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace sitassess
