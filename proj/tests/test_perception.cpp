#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sitassess/json_io.hpp"
#include "sitassess/perception.hpp"

using namespace sitassess;

namespace {

DomainEvent ev(Tick t, std::string kind, std::string id, std::vector<Attribute> payload,
               GridCell at = {0, 0}) {
  return {t, std::move(kind), std::move(id), std::move(payload), at};
}

Indicators vec(double a, double b, double c) {
  Indicators v(3);
  v << a, b, c;
  return v;
}

// Independent fold over the raw log: the organization state after running
// every tick 0..until, recomputed without touching Organization.
struct FoldedAgent {
  std::string kind, id;
  std::vector<Tick> ticks;
  std::vector<Attribute> payload;
  GridCell at;
  bool terminal = false;
};

std::vector<FoldedAgent> fold(const std::vector<DomainEvent>& log, const DomainConfig& cfg,
                              Tick until) {
  std::vector<FoldedAgent> all;
  std::vector<bool> alive;
  std::map<std::pair<std::string, std::string>, std::size_t> current;
  std::size_t next = 0;
  for (Tick t = 0; t <= until; ++t) {
    for (; next < log.size() && log[next].tick == t; ++next) {
      const auto& e = log[next];
      auto key = std::make_pair(e.subject_kind, e.subject_id);
      auto it = current.find(key);
      if (it == current.end()) {
        all.push_back({e.subject_kind, e.subject_id, {}, {}, {}, false});
        alive.push_back(true);
        it = current.emplace(key, all.size() - 1).first;
      }
      FoldedAgent& a = all[it->second];
      a.ticks.push_back(t);
      a.payload = e.payload;
      a.at = e.location;
      for (const auto& p : e.payload) {
        for (const auto& term : cfg.terminal_payloads) a.terminal = a.terminal || p == term;
      }
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (alive[i] && all[i].terminal) {
        alive[i] = false;
        current.erase({all[i].kind, all[i].id});
      }
    }
  }
  std::vector<FoldedAgent> live;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (alive[i]) live.push_back(all[i]);
  }
  return live;
}

std::vector<DomainEvent> random_log(oracle::Gen& gen, int ticks, int subjects) {
  static const std::vector<std::string> intensities{"weak", "moderate", "strong"};
  static const std::vector<std::string> states{"idle", "moving", "fighting", "blocked"};
  std::vector<DomainEvent> log;
  for (Tick t = 0; t < ticks; ++t) {
    const int n = gen.integer(0, 4);
    for (int k = 0; k < n; ++k) {
      const int s = gen.integer(0, subjects - 1);
      const bool fire = s % 2 == 0;
      std::vector<Attribute> payload;
      if (fire) {
        payload.emplace_back("intensity", gen.coin(0.1) ? "extinguished"
                                                         : intensities[gen.integer(0, 2)]);
      } else {
        payload.emplace_back("state", gen.coin(0.05) ? "extinguished" : states[gen.integer(0, 3)]);
      }
      log.push_back(ev(t, fire ? "fire" : "fireBrigade", "s" + std::to_string(s), payload,
                       {gen.integer(0, 8), gen.integer(0, 8)}));
    }
  }
  return log;
}

}  // namespace

TEST_CASE("ingest creates and updates agents by subject identity") {
  Organization org;
  CHECK(org.ingest_event(ev(0, "fire", "fire#7", {{"intensity", "weak"}}, {3, 4})) == 0);
  CHECK(org.agents()[0].indicators == vec(0, 0, 0));
  CHECK(org.ingest_event(ev(1, "fire", "fire#7", {{"intensity", "strong"}}, {3, 4})) == 0);
  CHECK(*org.agents()[0].fsf.attribute("intensity") == "strong");
  CHECK(org.ingest_event(ev(1, "fireBrigade", "fb#3", {{"state", "fighting"}}, {3, 5})) == 1);
  CHECK(org.agents().size() == 2);
}

TEST_CASE("ingest rejects out-of-order and invalid events") {
  Organization org;
  org.ingest_event(ev(3, "fire", "a", {}));
  CHECK_THROWS_AS(org.ingest_event(ev(2, "fire", "a", {})), OutOfOrderError);
  CHECK_THROWS_AS(org.ingest_event(ev(3, "", "a", {})), DomainError);
  CHECK_THROWS_AS(org.ingest_event(ev(3, "fire", "", {})), DomainError);
  CHECK_THROWS_AS(org.ingest_event(ev(3, "fire", "a", {{"x", "1"}, {"x", "2"}})), DomainError);
  CHECK_THROWS_AS(org.advance_tick(2), OutOfOrderError);
}

TEST_CASE("advance_tick computes activity, magnitude and recency") {
  Organization org;
  org.ingest_event(ev(3, "fire", "fire#7", {{"intensity", "moderate"}}));
  org.ingest_event(ev(7, "fire", "fire#7", {{"intensity", "strong"}}));
  org.advance_tick(7);
  // Events at 3 and 7 both fall in (2, 7].
  CHECK(org.agents()[0].indicators == vec(2, 3, 5));

  org.advance_tick(12);
  CHECK(org.agents()[0].indicators == vec(0, 3, 0));
  CHECK_THROWS_AS(org.advance_tick(9), OutOfOrderError);
}

TEST_CASE("empty window leaves magnitude unchanged") {
  Organization org;
  org.ingest_event(ev(0, "fireBrigade", "fb", {{"state", "blocked"}}));
  org.advance_tick(0);
  CHECK(org.agents()[0].indicators == vec(1, 0.5, 5));
  org.advance_tick(5);
  CHECK(org.agents()[0].indicators == vec(0, 0.5, 0));
  org.advance_tick(40);
  CHECK(org.agents()[0].indicators == vec(0, 0.5, 0));
}

TEST_CASE("window and mapping come from the domain configuration") {
  DomainConfig cfg = DomainConfig::fire_domain();
  cfg.window = 2;
  Organization org(cfg);
  org.ingest_event(ev(0, "fire", "f", {{"intensity", "weak"}}));
  org.ingest_event(ev(1, "fire", "f", {{"intensity", "weak"}}));
  org.ingest_event(ev(2, "fire", "f", {{"intensity", "weak"}}));
  org.advance_tick(2);
  CHECK(org.agents()[0].indicators == vec(2, 1, 2));

  CHECK(org.magnitude({"unknownKind", "x", {{"color", "red"}}, {0, 0}, 0}) == 0.0);
  CHECK(org.magnitude({"fire", "x", {{"smoke", "thick"}}, {0, 0}, 0}) == 0.0);
}

TEST_CASE("unmapped qualitative value is a configuration error") {
  Organization org;
  org.ingest_event(ev(0, "fire", "f", {{"intensity", "apocalyptic"}}));
  try {
    org.advance_tick(0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("fire.intensity=apocalyptic") != std::string::npos);
  }
}

TEST_CASE("terminal payload retires the agent") {
  Organization org;
  org.ingest_event(ev(0, "fire", "f0", {{"intensity", "weak"}}));
  org.ingest_event(ev(0, "fire", "f1", {{"intensity", "weak"}}));
  org.ingest_event(ev(0, "fire", "f2", {{"intensity", "weak"}}));
  org.advance_tick(0);
  org.rebuild_acquaintances();
  CHECK(org.snapshot().agents.size() == 3);
  org.ingest_event(ev(1, "fire", "f0", {{"state", "extinguished"}}));
  org.advance_tick(1);
  org.rebuild_acquaintances();
  const auto snap = org.snapshot();
  REQUIRE(snap.agents.size() == 2);
  CHECK(snap.agents[0].id == 1);
  CHECK(snap.agents[1].id == 2);
  CHECK_FALSE(org.agents()[0].alive);

  // A later fact about the same subject starts a new agent with a fresh id.
  CHECK(org.ingest_event(ev(2, "fire", "f0", {{"intensity", "weak"}})) == 3);
}

TEST_CASE("acquaintances follow Chebyshev proximity") {
  Organization org;
  org.ingest_event(ev(0, "fire", "a", {}, {3, 4}));
  org.ingest_event(ev(0, "fireBrigade", "b", {}, {3, 5}));
  org.ingest_event(ev(0, "fire", "far", {}, {10, 10}));
  org.ingest_event(ev(0, "fire", "origin", {}, {0, 0}));
  org.advance_tick(0);
  org.rebuild_acquaintances();
  const auto& agents = org.agents();
  CHECK(agents[0].acquaintances == std::set<AgentId>{1});
  CHECK(agents[1].acquaintances == std::set<AgentId>{0});
  CHECK(agents[2].acquaintances.empty());
  CHECK(agents[3].acquaintances.empty());
}

TEST_CASE("three mutually close agents each know two others") {
  Organization org;
  const std::vector<GridCell> cells{{5, 5}, {6, 7}, {7, 6}};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    org.ingest_event(ev(0, "fire", "f" + std::to_string(i), {}, cells[i]));
  }
  org.advance_tick(0);
  org.rebuild_acquaintances();
  const auto snap = org.snapshot();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    int expected = 0;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (i != j && std::max(std::abs(cells[i].x - cells[j].x), std::abs(cells[i].y - cells[j].y)) <= 2) {
        ++expected;
      }
    }
    CHECK(expected == 2);
    CHECK(snap.agents[i].an_size == expected);
  }
}

TEST_CASE("snapshot ordering and stability") {
  Organization org;
  CHECK(org.snapshot().agents.empty());
  for (int i = 0; i < 3; ++i) org.ingest_event(ev(0, "fire", "f" + std::to_string(i), {}));
  org.advance_tick(0);
  org.rebuild_acquaintances();
  const auto a = org.snapshot();
  const auto b = org.snapshot();
  CHECK(a == b);
  REQUIRE(a.agents.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(a.agents[static_cast<std::size_t>(i)].id == i);
  CHECK(a.find(1) != nullptr);
  CHECK(a.find(7) == nullptr);
}

TEST_CASE("selection notes are recorded without side effects") {
  Organization org;
  org.ingest_event(ev(0, "fire", "f", {}));
  org.advance_tick(0);
  const auto before = org.snapshot();
  org.note_selection({0, {"Agent-2", "Agent-1"}});
  CHECK(org.selection_log().size() == 1);
  CHECK(org.snapshot() == before);
}

TEST_CASE("perception properties over random logs") {
  oracle::Gen gen(2024);
  const DomainConfig cfg = DomainConfig::fire_domain();
  for (int trial = 0; trial < 60; ++trial) {
    const auto log = random_log(gen, gen.integer(1, 25), gen.integer(1, 10));
    const Tick last = log.empty() ? 0 : log.back().tick;
    std::vector<Tick> ticks;
    for (Tick t = 0; t <= last; ++t) ticks.push_back(t);
    const auto snaps = replay(log, cfg, ticks);
    const auto again = replay(log, cfg, ticks);
    CHECK(snaps == again);

    for (const auto& snap : snaps) {
      const auto folded = fold(log, cfg, snap.tick);
      REQUIRE(folded.size() == snap.agents.size());
      for (std::size_t i = 0; i < folded.size(); ++i) {
        const auto& rec = snap.agents[i];
        const auto& f = folded[i];
        CHECK(rec.fsf.subject_id == f.id);
        const auto activity = std::count_if(f.ticks.begin(), f.ticks.end(), [&](Tick t) {
          return t > snap.tick - cfg.window && t <= snap.tick;
        });
        double magnitude = 0;
        for (const auto& [name, value] : f.payload) {
          magnitude += cfg.magnitude_map.at(f.kind).at(name).at(value);
        }
        const double recency = std::max<Tick>(0, cfg.window - (snap.tick - f.ticks.back()));
        CHECK(rec.indicators == vec(static_cast<double>(activity), magnitude, recency));
        CHECK((rec.indicators.array() >= 0).all());

        std::int64_t an = 0;
        for (const auto& other : folded) {
          if (&other != &f &&
              std::max(std::abs(other.at.x - f.at.x), std::abs(other.at.y - f.at.y)) <= cfg.proximity_d) {
            ++an;
          }
        }
        CHECK(rec.an_size == an);
      }
      for (std::size_t i = 1; i < snap.agents.size(); ++i) {
        CHECK(snap.agents[i - 1].id < snap.agents[i].id);
      }
    }
  }
}

TEST_CASE("acquaintance relation is symmetric and irreflexive") {
  oracle::Gen gen(99);
  Organization org;
  const auto log = random_log(gen, 30, 12);
  std::size_t next = 0;
  for (Tick t = 0; t < 30; ++t) {
    for (; next < log.size() && log[next].tick == t; ++next) org.ingest_event(log[next]);
    org.advance_tick(t);
    org.rebuild_acquaintances();
    std::map<std::pair<std::string, std::string>, int> live;
    for (const auto& a : org.agents()) {
      if (!a.alive) continue;
      ++live[{a.fsf.subject_kind, a.fsf.subject_id}];
      CHECK_FALSE(a.acquaintances.contains(a.id));
      for (AgentId other : a.acquaintances) {
        const auto& b = org.agents()[static_cast<std::size_t>(other)];
        CHECK(b.alive);
        CHECK(b.acquaintances.contains(a.id));
      }
    }
    for (const auto& [key, n] : live) CHECK(n == 1);
  }
}

TEST_CASE("event log format") {
  const std::vector<DomainEvent> log{
      ev(0, "fire", "fire#1", {{"intensity", "weak"}}, {3, 4}),
      ev(0, "fireBrigade", "fb#2", {{"state", "moving"}, {"crew", "4"}}, {1, 1}),
      ev(2, "fire", "fire#1", {{"intensity", "extinguished"}}, {3, 4})};
  std::ostringstream out;
  write_event_log(log, out);
  const std::string text = out.str();
  CHECK(text.substr(0, text.find('\n')) ==
        R"({"tick":0,"kind":"fire","id":"fire#1","payload":{"intensity":"weak"},"x":3,"y":4})");
  std::istringstream in(text);
  CHECK(read_event_log(in) == log);
}

TEST_CASE("event log rejects malformed lines") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_event_log(in);
  };
  const std::string good = R"({"tick":1,"kind":"fire","id":"a","payload":{},"x":0,"y":0})";
  CHECK(parse(good + "\n\n" + good).size() == 2);
  auto rejects = [&](const std::string& text, const std::string& needle) {
    try {
      parse(text);
      FAIL("accepted: " << text);
    } catch (const FormatError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  rejects(good + "\n{", "line 2");
  rejects(R"({"tick":1,"kind":"fire","id":"a","payload":{},"x":0})", "line 1.y");
  rejects(R"({"tick":1,"kind":"fire","id":"a","payload":{},"x":0,"y":0,"z":1})", "line 1.z");
  rejects(R"({"tick":"1","kind":"fire","id":"a","payload":{},"x":0,"y":0})", "line 1.tick");
  rejects(R"({"tick":1,"kind":"fire","id":"a","payload":{"k":3},"x":0,"y":0})", "payload.k");
  rejects(R"({"tick":1,"kind":"","id":"a","payload":{},"x":0,"y":0})", "kind");
  rejects(R"({"tick":2,"kind":"fire","id":"a","payload":{},"x":0,"y":0})"
          "\n" + good, "line 2: tick 1 precedes tick 2");
}

TEST_CASE("domain configuration file") {
  const DomainConfig cfg = DomainConfig::fire_domain();
  const DomainConfig back = domain_config_from_json(to_json(cfg));
  CHECK(back.magnitude_map == cfg.magnitude_map);
  CHECK(back.terminal_payloads == cfg.terminal_payloads);
  CHECK(back.window == 5);
  CHECK(back.proximity_d == 2);

  const DomainConfig bundled = load_domain_config(SITASSESS_DATA_DIR "/domain.json");
  CHECK(bundled.magnitude_map == cfg.magnitude_map);
  CHECK(bundled.terminal_payloads == cfg.terminal_payloads);
  CHECK_FALSE(bundled.min_max_scaling);

  auto j = to_json(cfg);
  j["window"] = 0;
  CHECK_THROWS_AS(domain_config_from_json(j), ConfigError);
  j = to_json(cfg);
  j["colour"] = "red";
  CHECK_THROWS_AS(domain_config_from_json(j), FormatError);
  j = to_json(cfg);
  j["magnitude_map"]["fire"]["intensity"]["weak"] = "one";
  CHECK_THROWS_AS(domain_config_from_json(j), FormatError);
}
