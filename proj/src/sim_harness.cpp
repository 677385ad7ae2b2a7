#include "sitassess/sim_harness.hpp"

#include <limits>
#include <random>

#include "json_util.hpp"
#include "sitassess/json_io.hpp"

namespace sitassess::sim {

using detail::indexed;
using detail::Json;
using detail::StrictObject;

std::string to_string(Strategy s) {
  return s == Strategy::NearestFire ? "nearest-fire" : "assigned-sector";
}

Strategy strategy_from_string(const std::string& token) {
  if (token == "nearest-fire") return Strategy::NearestFire;
  if (token == "assigned-sector") return Strategy::AssignedSector;
  throw ConfigError("unknown strategy '" + token + "'");
}

std::string to_string(BrigadeState s) {
  switch (s) {
    case BrigadeState::Idle: return "idle";
    case BrigadeState::Moving: return "moving";
    case BrigadeState::Fighting: return "fighting";
    case BrigadeState::Blocked: return "blocked";
  }
  return "idle";
}

std::string intensity_token(int level) {
  switch (level) {
    case 1: return "weak";
    case 2: return "moderate";
    case 3: return "strong";
    default: return "extinguished";
  }
}

void WorldScript::validate() const {
  if (width < 1 || height < 1) throw ConfigError("script grid must be at least 1x1");
  if (ticks < 1) throw ConfigError("script ticks must be >= 1");
  auto inside = [&](int x, int y) { return x >= 0 && y >= 0 && x < width && y < height; };
  for (std::size_t i = 0; i < fires.size(); ++i) {
    if (!inside(fires[i].x, fires[i].y)) {
      throw ConfigError("fire " + std::to_string(i) + " lies outside the grid");
    }
    if (fires[i].ignite_tick < 0) {
      throw ConfigError("fire " + std::to_string(i) + " has a negative ignite_tick");
    }
  }
  for (std::size_t i = 0; i < brigades.size(); ++i) {
    if (!inside(brigades[i].x, brigades[i].y)) {
      throw ConfigError("brigade " + std::to_string(i) + " lies outside the grid");
    }
    if (brigades[i].power < 1) {
      throw ConfigError("brigade " + std::to_string(i) + " power must be >= 1");
    }
  }
}

namespace {

// Nine-digit ids in the style of the rescue simulator; taken straight from
// the engine output so every platform draws the same sequence.
std::string random_id(std::mt19937_64& rng, const std::string& kind) {
  return kind + "#" + std::to_string(100000000 + rng() % 900000000);
}

bool same_sector(GridCell a, GridCell b, const WorldScript& script) {
  const int hx = script.width / 2;
  const int hy = script.height / 2;
  return (a.x < hx) == (b.x < hx) && (a.y < hy) == (b.y < hy);
}

int nearest_fire(const WorldState& world, GridCell from, const WorldScript& script,
                 GridCell home, bool adjacent_only) {
  int best = -1;
  int best_distance = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < world.fires.size(); ++i) {
    const FireState& f = world.fires[i];
    if (!f.lit()) continue;
    if (adjacent_only) {
      if (chebyshev_distance(from, f.cell) > 1) continue;
    } else if (script.strategy == Strategy::AssignedSector && !same_sector(home, f.cell, script)) {
      continue;
    }
    const int d = manhattan_distance(from, f.cell);
    if (d < best_distance) {
      best = static_cast<int>(i);
      best_distance = d;
    }
  }
  return best;
}

GridCell step_toward(GridCell from, GridCell to) {
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  if (std::abs(dx) >= std::abs(dy) && dx != 0) {
    from.x += dx > 0 ? 1 : -1;
  } else if (dy != 0) {
    from.y += dy > 0 ? 1 : -1;
  }
  return from;
}

}  // namespace

WorldState initial_state(const WorldScript& script) {
  script.validate();
  std::mt19937_64 rng(script.seed);
  WorldState world;
  for (const auto& f : script.fires) {
    FireState fire;
    fire.subject_id = random_id(rng, kFireKind);
    fire.cell = {f.x, f.y};
    world.fires.push_back(fire);
  }
  for (const auto& b : script.brigades) {
    BrigadeRuntime brigade;
    brigade.subject_id = b.id.empty() ? random_id(rng, kBrigadeKind) : b.id;
    brigade.cell = {b.x, b.y};
    brigade.power = b.power;
    brigade.blocked = b.blocked;
    brigade.state = b.blocked ? BrigadeState::Blocked : BrigadeState::Idle;
    world.brigades.push_back(brigade);
  }
  return world;
}

StepResult step(WorldState world, const WorldScript& script, Tick tick) {
  if (tick < 0 || tick >= script.ticks) {
    throw DomainError("tick " + std::to_string(tick) + " outside script duration");
  }
  const std::vector<FireState> before_fires = world.fires;
  const std::vector<BrigadeRuntime> before_brigades = world.brigades;

  std::vector<bool> ignited_now(world.fires.size(), false);
  for (std::size_t i = 0; i < world.fires.size(); ++i) {
    if (!world.fires[i].ignited && script.fires[i].ignite_tick == tick) {
      world.fires[i].ignited = true;
      world.fires[i].intensity = 1;
      world.fires[i].unfought_ticks = 0;
      ignited_now[i] = true;
    }
  }

  std::vector<bool> fought(world.fires.size(), false);
  for (std::size_t b = 0; b < world.brigades.size(); ++b) {
    BrigadeRuntime& brigade = world.brigades[b];
    if (brigade.blocked) continue;
    const GridCell home{script.brigades[b].x, script.brigades[b].y};
    const int adjacent = nearest_fire(world, brigade.cell, script, home, true);
    if (adjacent >= 0) {
      FireState& fire = world.fires[static_cast<std::size_t>(adjacent)];
      fire.intensity = std::max(0, fire.intensity - brigade.power);
      fought[static_cast<std::size_t>(adjacent)] = true;
      brigade.state = BrigadeState::Fighting;
      continue;
    }
    const int target = nearest_fire(world, brigade.cell, script, home, false);
    if (target >= 0) {
      brigade.cell = step_toward(brigade.cell, world.fires[static_cast<std::size_t>(target)].cell);
      brigade.state = BrigadeState::Moving;
    } else {
      brigade.state = BrigadeState::Idle;
    }
  }

  for (std::size_t i = 0; i < world.fires.size(); ++i) {
    FireState& fire = world.fires[i];
    if (fought[i]) {
      fire.unfought_ticks = 0;
      continue;
    }
    if (!fire.lit() || ignited_now[i]) continue;
    if (++fire.unfought_ticks >= kGrowthPeriod) {
      fire.unfought_ticks = 0;
      fire.intensity = std::min(kMaxIntensity, fire.intensity + 1);
    }
  }

  StepResult out;
  for (std::size_t i = 0; i < world.fires.size(); ++i) {
    const FireState& now = world.fires[i];
    if (!now.ignited) continue;
    if (!ignited_now[i] && now.intensity == before_fires[i].intensity) continue;
    out.events.push_back(
        {tick, kFireKind, now.subject_id, {{"intensity", intensity_token(now.intensity)}}, now.cell});
  }
  for (std::size_t b = 0; b < world.brigades.size(); ++b) {
    BrigadeRuntime& now = world.brigades[b];
    const bool changed = !now.announced || now.state != before_brigades[b].state ||
                         now.cell != before_brigades[b].cell;
    if (!changed) continue;
    now.announced = true;
    out.events.push_back(
        {tick, kBrigadeKind, now.subject_id, {{"state", to_string(now.state)}}, now.cell});
  }
  out.state = std::move(world);
  return out;
}

std::vector<DomainEvent> run(const WorldScript& script) {
  WorldState world = initial_state(script);
  std::vector<DomainEvent> log;
  for (Tick t = 0; t < script.ticks; ++t) {
    StepResult r = step(std::move(world), script, t);
    world = std::move(r.state);
    log.insert(log.end(), std::make_move_iterator(r.events.begin()),
               std::make_move_iterator(r.events.end()));
  }
  return log;
}

Json to_json(const WorldScript& script) {
  Json fires = Json::array();
  for (const auto& f : script.fires) {
    Json j;
    j["ignite_tick"] = f.ignite_tick;
    j["x"] = f.x;
    j["y"] = f.y;
    fires.push_back(std::move(j));
  }
  Json brigades = Json::array();
  for (const auto& b : script.brigades) {
    Json j;
    if (!b.id.empty()) j["id"] = b.id;
    j["x"] = b.x;
    j["y"] = b.y;
    j["power"] = b.power;
    j["blocked"] = b.blocked;
    brigades.push_back(std::move(j));
  }
  Json j;
  j["width"] = script.width;
  j["height"] = script.height;
  j["seed"] = script.seed;
  j["ticks"] = script.ticks;
  j["strategy"] = to_string(script.strategy);
  j["fires"] = std::move(fires);
  j["brigades"] = std::move(brigades);
  return j;
}

WorldScript script_from_json(const Json& j) {
  StrictObject o(j, "$");
  WorldScript s;
  s.width = static_cast<int>(o.integer("width"));
  s.height = static_cast<int>(o.integer("height"));
  const Json& seed = o.field("seed");
  if (!seed.is_number_unsigned()) StrictObject::fail("$.seed", "expected a nonnegative integer");
  s.seed = seed.get<std::uint64_t>();
  s.ticks = o.integer("ticks");
  s.strategy = strategy_from_string(o.string("strategy"));
  const Json& fires = o.array("fires");
  for (std::size_t i = 0; i < fires.size(); ++i) {
    StrictObject f(fires[i], indexed("$.fires", i));
    s.fires.push_back({f.integer("ignite_tick"), static_cast<int>(f.integer("x")),
                       static_cast<int>(f.integer("y"))});
    f.finish();
  }
  const Json& brigades = o.array("brigades");
  for (std::size_t i = 0; i < brigades.size(); ++i) {
    StrictObject b(brigades[i], indexed("$.brigades", i));
    BrigadeSpec spec;
    if (b.has("id")) spec.id = b.string("id");
    spec.x = static_cast<int>(b.integer("x"));
    spec.y = static_cast<int>(b.integer("y"));
    spec.power = static_cast<int>(b.integer("power"));
    spec.blocked = b.boolean("blocked");
    b.finish();
    s.brigades.push_back(std::move(spec));
  }
  o.finish();
  s.validate();
  return s;
}

WorldScript load_script(const std::filesystem::path& path) {
  try {
    return script_from_json(read_json_file(path));
  } catch (const FormatError& err) {
    throw FormatError(path.string() + ": " + err.what());
  }
}

}  // namespace sitassess::sim
