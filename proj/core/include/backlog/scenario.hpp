#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "backlog/adversaries.hpp"
#include "backlog/engine.hpp"
#include "backlog/geometry.hpp"
#include "backlog/trace.hpp"

namespace backlog {

// Cup layout: either an explicit point list or one of the generators
// "uniform-random-in-square", "grid", "two-point".
struct GeneratorSpec {
  std::string kind = "explicit";
  std::vector<Point> points;            // explicit
  int n = 0;                            // uniform-random-in-square
  double side = 1.0;                    // uniform-random-in-square
  std::optional<std::uint64_t> seed;    // uniform-random-in-square
  int rows = 0;                         // grid
  int cols = 0;                         // grid
  double spacing = 1.0;                 // grid
  double dist = 1.0;                    // two-point
};

// One game setup as read from a config file. Optional fields resolve to
// defaults that depend on the cup diameter d: delta_adv = d/10,
// sample_interval = d/10, start = center of the bounding square,
// generator seed = seed, adversary seed = seed + 1.
struct Scenario {
  std::string name;  // empty: derived from the fields
  GeneratorSpec cups;
  AdversaryKind adversary = AdversaryKind::uniform;
  std::optional<std::uint64_t> adversary_seed;
  std::string strategy = "coroutine";
  double horizon = 0.0;
  std::optional<double> delta_adv;
  std::optional<Point> start;  // nullopt: "center"
  std::optional<double> sample_interval;
  std::uint64_t seed = 1;
};

// Scenario with every default filled in and the cup set generated.
struct ResolvedScenario {
  Scenario scenario;  // all optionals engaged, name set
  PointSet cups;
  Point start;
  double d = 0.0;
  RunConfig config;
  std::string id;
};

// Parses the JSON text of a scenario file. Unknown or ill-typed fields
// throw std::invalid_argument.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

PointSet build_cups(const GeneratorSpec& spec, std::uint64_t default_seed);

ResolvedScenario resolve_scenario(const Scenario& sc);

// "coroutine" | "greedy" | "static-loop"; anything else throws.
std::unique_ptr<Strategy> make_strategy(const std::string& name, double d,
                                        double horizon);

// Fully-resolved scenario as a pretty-printed JSON document, every default
// explicit; round-trips through parse_scenario.
std::string scenario_to_json(const ResolvedScenario& rs);

// Builds the simulation and plays it out; sink may be null.
RunReport run_scenario(const ResolvedScenario& rs, TraceSink* sink);

// Shortest decimal form that parses back to the same double.
std::string format_csv_double(double v);

std::string summary_csv_header();
std::string summary_csv_row(const std::string& id, const RunReport& report);

// Collects sampled backlog values as rows "t,max_backlog,bound_120D".
class BacklogCsvSink final : public TraceSink {
 public:
  explicit BacklogCsvSink(double bound) : bound_(bound) {}
  void on_event(const TraceEvent& ev) override;
  void write(std::ostream& os) const;

 private:
  double bound_;
  std::vector<std::pair<double, double>> samples_;
};

class MultiTraceSink final : public TraceSink {
 public:
  void add(TraceSink* sink) { sinks_.push_back(sink); }
  void on_event(const TraceEvent& ev) override {
    for (TraceSink* s : sinks_) s->on_event(ev);
  }

 private:
  std::vector<TraceSink*> sinks_;
};

}  // namespace backlog
