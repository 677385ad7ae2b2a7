#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "sitassess/perception.hpp"

namespace sitassess {

// Event log: one JSON object per line,
// {"tick":int,"kind":str,"id":str,"payload":{str:str,...},"x":int,"y":int},
// sorted by tick.

nlohmann::ordered_json to_json(const DomainEvent& event);
DomainEvent event_from_json(const nlohmann::ordered_json& j, const std::string& where);

void write_event_log(const std::vector<DomainEvent>& events, std::ostream& out);
void save_event_log(const std::vector<DomainEvent>& events, const std::filesystem::path& path);
std::vector<DomainEvent> read_event_log(std::istream& in);
std::vector<DomainEvent> load_event_log(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const DomainConfig& config);
DomainConfig domain_config_from_json(const nlohmann::ordered_json& j);
DomainConfig load_domain_config(const std::filesystem::path& path);

/// Parses a whole file; FormatError on malformed JSON, IoError if unreadable.
nlohmann::ordered_json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sitassess
