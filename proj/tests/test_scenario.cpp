#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "backlog/scenario.hpp"
#include "backlog/strategies.hpp"
#include "backlog/trace.hpp"
#include "doctest.h"

using namespace backlog;

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  REQUIRE(res.ec == std::errc{});
  REQUIRE(res.ptr == s.data() + s.size());
  return v;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("minimal scenario resolves with derived defaults") {
  const Scenario sc = parse_scenario(
      R"({"cups": {"points": [[0, 0], [1, 0]]}, "horizon": 10})");
  CHECK(sc.strategy == "coroutine");
  CHECK(sc.adversary == AdversaryKind::uniform);
  CHECK(sc.seed == 1);
  const ResolvedScenario rs = resolve_scenario(sc);
  CHECK(rs.d == 1.0);
  CHECK(rs.cups.size() == 2);
  CHECK(rs.config.delta_adv == doctest::Approx(0.1));
  CHECK(rs.config.sample_interval == doctest::Approx(0.1));
  CHECK(rs.start == Point{0.5, 0.0});
  CHECK(*rs.scenario.adversary_seed == 2);
  CHECK(!rs.id.empty());
  CHECK(!rs.scenario.name.empty());
}

TEST_CASE("resolved config round-trips through the parser") {
  const Scenario sc = parse_scenario(R"({
    "name": "round-trip",
    "cups": {"generator": "uniform-random-in-square", "n": 7, "side": 2.0},
    "adversary": {"kind": "random", "seed": 11},
    "strategy": "greedy",
    "horizon": 42.5,
    "delta_adv": 0.5,
    "start": "center",
    "sample_interval": 1.25,
    "seed": 3
  })");
  const ResolvedScenario rs = resolve_scenario(sc);
  const std::string text = scenario_to_json(rs);
  const ResolvedScenario again = resolve_scenario(parse_scenario(text));
  CHECK(scenario_to_json(again) == text);
  CHECK(again.cups.size() == rs.cups.size());
  for (int i = 0; i < rs.cups.size(); ++i) {
    CHECK(again.cups[i] == rs.cups[i]);
  }
  CHECK(again.start == rs.start);
}

TEST_CASE("generator seed defaults to the scenario seed") {
  const char* with_default = R"({
    "cups": {"generator": "uniform-random-in-square", "n": 5},
    "horizon": 10, "seed": 5
  })";
  const char* with_explicit = R"({
    "cups": {"generator": "uniform-random-in-square", "n": 5, "seed": 5},
    "horizon": 10, "seed": 999
  })";
  const ResolvedScenario a = resolve_scenario(parse_scenario(with_default));
  const ResolvedScenario b = resolve_scenario(parse_scenario(with_explicit));
  REQUIRE(a.cups.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(a.cups[i] == b.cups[i]);
}

TEST_CASE("grid generator is row-major") {
  const Scenario sc = parse_scenario(R"({
    "cups": {"generator": "grid", "rows": 2, "cols": 3, "spacing": 2.0},
    "horizon": 10
  })");
  const ResolvedScenario rs = resolve_scenario(sc);
  REQUIRE(rs.cups.size() == 6);
  CHECK(rs.cups[0] == Point{0.0, 0.0});
  CHECK(rs.cups[1] == Point{2.0, 0.0});
  CHECK(rs.cups[2] == Point{4.0, 0.0});
  CHECK(rs.cups[3] == Point{0.0, 2.0});
  CHECK(rs.cups[5] == Point{4.0, 2.0});
}

TEST_CASE("two-point generator spans the requested distance") {
  const Scenario sc = parse_scenario(R"({
    "cups": {"generator": "two-point", "distance": 3.0},
    "horizon": 10
  })");
  const ResolvedScenario rs = resolve_scenario(sc);
  REQUIRE(rs.cups.size() == 2);
  CHECK(rs.d == 3.0);
  CHECK(rs.cups[0] == Point{0.0, 0.0});
  CHECK(rs.cups[1] == Point{3.0, 0.0});
}

TEST_CASE("bad configurations are rejected with context") {
  const char* cases[] = {
      R"(not json)",
      R"(["top","level","array"])",
      R"({"horizon": 10})",
      R"({"cups": {"points": [[0,0]]}, "horizon": 0})",
      R"({"cups": {"points": [[0,0]]}, "horizon": 10, "bogus": 1})",
      R"({"cups": {"points": []}, "horizon": 10})",
      R"({"cups": {"points": [[0,0]], "generator": "grid"}, "horizon": 10})",
      R"({"cups": {"generator": "hexagon", "n": 3}, "horizon": 10})",
      R"({"cups": {"generator": "grid", "rows": 0, "cols": 2}, "horizon": 10})",
      R"({"cups": {"generator": "uniform-random-in-square"}, "horizon": 10})",
      R"({"cups": {"generator": "two-point", "distance": -1}, "horizon": 10})",
      R"({"cups": {"points": [[0,0]]}, "horizon": 10, "strategy": "psychic"})",
      R"({"cups": {"points": [[0,0]]}, "horizon": 10, "adversary": {"kind": "nope"}})",
      R"({"cups": {"points": [[0,0]]}, "horizon": 10, "adversary": {"kind": "uniform", "x": 1}})",
      R"({"cups": {"points": [[0,0]]}, "horizon": 10, "sample_interval": -0.5})",
      R"({"cups": {"points": [[0,0]]}, "horizon": 10, "start": "corner"})",
      R"({"cups": {"points": [[0,0]]}, "horizon": 10, "start": [1]})",
      R"({"cups": {"points": [[0,0]]}, "horizon": 10, "seed": -4})",
      R"({"cups": {"points": [[0,0],[1,0]]}, "horizon": 10, "start": [9, 9]})",
  };
  for (const char* text : cases) {
    CAPTURE(text);
    CHECK_THROWS_AS(resolve_scenario(parse_scenario(text)),
                    std::invalid_argument);
  }
  try {
    parse_scenario(R"({"cups": {"points": [[0,0]]}, "horizon": 10, "x": 1})");
    FAIL("expected a config error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("scenario:") == 0);
    CHECK(std::string(e.what()).find("unknown scenario field") !=
          std::string::npos);
  }
}

TEST_CASE("strategy factory covers all names and rejects others") {
  CHECK(make_strategy("coroutine", 1.0, 100.0) != nullptr);
  CHECK(make_strategy("greedy", 1.0, 100.0) != nullptr);
  CHECK(make_strategy("static-loop", 1.0, 100.0) != nullptr);
  CHECK_THROWS_AS(make_strategy("psychic", 1.0, 100.0),
                  std::invalid_argument);
}

TEST_CASE("run_scenario is deterministic byte for byte") {
  const Scenario sc = parse_scenario(R"({
    "cups": {"generator": "uniform-random-in-square", "n": 6},
    "adversary": {"kind": "random"},
    "strategy": "coroutine",
    "horizon": 40,
    "seed": 12
  })");
  const ResolvedScenario rs = resolve_scenario(sc);
  MemoryTraceSink first;
  MemoryTraceSink second;
  const RunReport a = run_scenario(rs, &first);
  const RunReport b = run_scenario(rs, &second);
  CHECK(serialize_trace(first.events()) == serialize_trace(second.events()));
  CHECK(a.max_backlog == b.max_backlog);
  CHECK(a.total_poured == b.total_poured);
  CHECK(summary_csv_row(rs.id, a) == summary_csv_row(rs.id, b));
}

TEST_CASE("two-cup greedy summary row is stable") {
  const Scenario sc = parse_scenario(R"({
    "name": "two-cup-demo",
    "cups": {"generator": "two-point", "distance": 1.0},
    "adversary": {"kind": "diameter-endpoints"},
    "strategy": "greedy",
    "horizon": 60,
    "delta_adv": 0.25,
    "sample_interval": 0.5,
    "seed": 7
  })");
  const ResolvedScenario rs = resolve_scenario(sc);
  const RunReport report = run_scenario(rs, nullptr);
  CHECK(summary_csv_header() ==
        "scenario-id,n,D,adversary,strategy,horizon,max_backlog,"
        "max_backlog_over_D,bound_120D,feasible\n");
  CHECK(summary_csv_row(rs.id, report) ==
        "two-cup-demo,2,1,diameter-endpoints,greedy,60,1,1,120,true\n");
}

TEST_CASE("csv doubles use the shortest faithful form") {
  CHECK(format_csv_double(0.1) == "0.1");
  CHECK(format_csv_double(1.0) == "1");
  CHECK(format_csv_double(-2.5) == "-2.5");
  for (const double v : {1.0 / 3.0, 1e-300, 123456789.123456789, 5e-324}) {
    CHECK(parse_double(format_csv_double(v)) == v);
  }
}

TEST_CASE("backlog csv collects samples against the bound") {
  BacklogCsvSink sink(120.0);
  sink.on_event(TraceEvent{0.0, SampleEvent{0.0}});
  sink.on_event(TraceEvent{2.5, SampleEvent{1.25}});
  sink.on_event(TraceEvent{1.0, MoveEvent{0.5, Point{0, 0}, Point{1, 0}}});
  std::ostringstream os;
  sink.write(os);
  CHECK(os.str() == "t,max_backlog,bound_120D\n0,0,120\n2.5,1.25,120\n");
}

}  // TEST_SUITE
