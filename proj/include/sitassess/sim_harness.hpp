#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sitassess/perception.hpp"

namespace sitassess::sim {

enum class Strategy {
  /// Every free brigade heads for the nearest lit fire.
  NearestFire,
  /// A brigade only answers lit fires inside the grid quadrant it starts in.
  AssignedSector,
};

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& token);

struct FireSpec {
  Tick ignite_tick = 0;
  int x = 0;
  int y = 0;
};

struct BrigadeSpec {
  /// Subject id; generated from the seed when empty.
  std::string id;
  int x = 0;
  int y = 0;
  int power = 1;
  bool blocked = false;
};

struct WorldScript {
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::vector<FireSpec> fires;
  std::vector<BrigadeSpec> brigades;
  Tick ticks = 1;
  Strategy strategy = Strategy::NearestFire;

  /// Throws ConfigError on out-of-grid positions, ticks < 1, power < 1.
  void validate() const;
};

enum class BrigadeState { Idle, Moving, Fighting, Blocked };

std::string to_string(BrigadeState s);

/// Intensity 0 = unlit or extinguished, 1 weak, 2 moderate, 3 strong.
inline constexpr int kMaxIntensity = 3;
/// Ticks a lit, unfought fire needs to gain one intensity level.
inline constexpr int kGrowthPeriod = 3;

std::string intensity_token(int level);

struct FireState {
  std::string subject_id;
  GridCell cell;
  int intensity = 0;
  bool ignited = false;
  int unfought_ticks = 0;

  bool lit() const { return ignited && intensity > 0; }
};

struct BrigadeRuntime {
  std::string subject_id;
  GridCell cell;
  int power = 1;
  bool blocked = false;
  BrigadeState state = BrigadeState::Idle;
  bool announced = false;
};

struct WorldState {
  std::vector<FireState> fires;
  std::vector<BrigadeRuntime> brigades;
};

inline const std::string kFireKind = "fire";
inline const std::string kBrigadeKind = "fireBrigade";

/// Fresh world: nothing lit, brigades at their start cells. Subject ids are
/// drawn from the script seed.
WorldState initial_state(const WorldScript& script);

struct StepResult {
  WorldState state;
  std::vector<DomainEvent> events;
};

/// Advances the world by one tick and lists what changed, fires first, then
/// brigades, each in script order.
StepResult step(WorldState state, const WorldScript& script, Tick tick);

/// Full event log of the script, ticks 0 .. ticks-1.
std::vector<DomainEvent> run(const WorldScript& script);

nlohmann::ordered_json to_json(const WorldScript& script);
WorldScript script_from_json(const nlohmann::ordered_json& j);
WorldScript load_script(const std::filesystem::path& path);

}  // namespace sitassess::sim
