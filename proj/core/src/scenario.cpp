#include "backlog/scenario.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "backlog/rng.hpp"
#include "backlog/strategies.hpp"

namespace backlog {

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& msg) {
  throw std::invalid_argument("scenario: " + msg);
}

double require_positive(const json& j, const std::string& field) {
  if (!j.is_number()) bad_config(field + " must be a number");
  const double v = j.get<double>();
  if (!(v > 0.0)) bad_config(field + " must be positive");
  return v;
}

std::uint64_t require_seed(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(j.get<long long>());
  }
  bad_config(field + " must be a nonnegative integer");
}

Point parse_point(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    bad_config(field + " must be [x, y]");
  }
  return Point{j[0].get<double>(), j[1].get<double>()};
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (item.key() == a) {
        ok = true;
        break;
      }
    }
    if (!ok) bad_config("unknown " + where + " field: " + item.key());
  }
}

GeneratorSpec parse_cups(const json& j) {
  GeneratorSpec spec;
  if (!j.is_object()) bad_config("cups must be an object");
  if (j.contains("points")) {
    reject_unknown(j, {"points"}, "cups");
    spec.kind = "explicit";
    if (!j["points"].is_array() || j["points"].empty()) {
      bad_config("cups.points must be a nonempty array");
    }
    for (const auto& p : j["points"]) {
      spec.points.push_back(parse_point(p, "cups.points[]"));
    }
    return spec;
  }
  if (!j.contains("generator") || !j["generator"].is_string()) {
    bad_config("cups needs either points or a generator");
  }
  spec.kind = j["generator"].get<std::string>();
  if (spec.kind == "uniform-random-in-square") {
    reject_unknown(j, {"generator", "n", "side", "seed"}, "cups");
    if (!j.contains("n") || !j["n"].is_number_integer()) {
      bad_config("generator needs integer n");
    }
    spec.n = j["n"].get<int>();
    if (spec.n < 1) bad_config("cups.n must be at least 1");
    spec.side = j.contains("side") ? require_positive(j["side"], "cups.side")
                                   : 1.0;
    if (j.contains("seed")) spec.seed = require_seed(j["seed"], "cups.seed");
  } else if (spec.kind == "grid") {
    reject_unknown(j, {"generator", "rows", "cols", "spacing"}, "cups");
    if (!j.contains("rows") || !j["rows"].is_number_integer() ||
        !j.contains("cols") || !j["cols"].is_number_integer()) {
      bad_config("grid needs integer rows and cols");
    }
    spec.rows = j["rows"].get<int>();
    spec.cols = j["cols"].get<int>();
    if (spec.rows < 1 || spec.cols < 1) {
      bad_config("grid needs rows >= 1 and cols >= 1");
    }
    spec.spacing = j.contains("spacing")
                       ? require_positive(j["spacing"], "cups.spacing")
                       : 1.0;
  } else if (spec.kind == "two-point") {
    reject_unknown(j, {"generator", "distance"}, "cups");
    spec.dist = j.contains("distance")
                    ? require_positive(j["distance"], "cups.distance")
                    : 1.0;
  } else {
    bad_config("unknown generator: " + spec.kind);
  }
  return spec;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad_config(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) bad_config("top level must be an object");

  Scenario sc;
  bool saw_cups = false;
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const json& val = item.value();
    if (key == "name") {
      if (!val.is_string()) bad_config("name must be a string");
      sc.name = val.get<std::string>();
    } else if (key == "cups") {
      sc.cups = parse_cups(val);
      saw_cups = true;
    } else if (key == "adversary") {
      if (!val.is_object() || !val.contains("kind") ||
          !val["kind"].is_string()) {
        bad_config("adversary needs a kind");
      }
      reject_unknown(val, {"kind", "seed"}, "adversary");
      const auto kind =
          adversary_kind_from_name(val["kind"].get<std::string>());
      if (!kind) {
        bad_config("unknown adversary kind: " +
                   val["kind"].get<std::string>());
      }
      sc.adversary = *kind;
      if (val.contains("seed")) {
        sc.adversary_seed = require_seed(val["seed"], "adversary.seed");
      }
    } else if (key == "strategy") {
      if (!val.is_string()) bad_config("strategy must be a string");
      sc.strategy = val.get<std::string>();
      if (sc.strategy != "coroutine" && sc.strategy != "greedy" &&
          sc.strategy != "static-loop") {
        bad_config("unknown strategy: " + sc.strategy);
      }
    } else if (key == "horizon") {
      sc.horizon = require_positive(val, "horizon");
    } else if (key == "delta_adv") {
      sc.delta_adv = require_positive(val, "delta_adv");
    } else if (key == "start") {
      if (val.is_string()) {
        if (val.get<std::string>() != "center") {
          bad_config("start must be \"center\" or [x, y]");
        }
        sc.start.reset();
      } else {
        sc.start = parse_point(val, "start");
      }
    } else if (key == "sample_interval") {
      if (!val.is_number()) bad_config("sample_interval must be a number");
      const double v = val.get<double>();
      if (v < 0.0) bad_config("sample_interval must be nonnegative");
      sc.sample_interval = v;
    } else if (key == "seed") {
      sc.seed = require_seed(val, "seed");
    } else {
      bad_config("unknown scenario field: " + key);
    }
  }
  if (!saw_cups) bad_config("cups is required");
  if (!(sc.horizon > 0.0)) bad_config("horizon is required and must be positive");
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_config("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

PointSet build_cups(const GeneratorSpec& spec, std::uint64_t default_seed) {
  if (spec.kind == "explicit") return PointSet(spec.points);
  if (spec.kind == "uniform-random-in-square") {
    std::mt19937_64 gen(spec.seed.value_or(default_seed));
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(spec.n));
    while (static_cast<int>(pts.size()) < spec.n) {
      const Point p{uniform01(gen) * spec.side, uniform01(gen) * spec.side};
      bool dup = false;
      for (const Point& q : pts) {
        if (q == p) {
          dup = true;
          break;
        }
      }
      if (!dup) pts.push_back(p);
    }
    return PointSet(std::move(pts));
  }
  if (spec.kind == "grid") {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(spec.rows) *
                static_cast<std::size_t>(spec.cols));
    for (int r = 0; r < spec.rows; ++r) {
      for (int c = 0; c < spec.cols; ++c) {
        pts.push_back(Point{static_cast<double>(c) * spec.spacing,
                            static_cast<double>(r) * spec.spacing});
      }
    }
    return PointSet(std::move(pts));
  }
  if (spec.kind == "two-point") {
    return PointSet({Point{0.0, 0.0}, Point{spec.dist, 0.0}});
  }
  throw std::invalid_argument("scenario: unknown generator: " + spec.kind);
}

ResolvedScenario resolve_scenario(const Scenario& sc) {
  if (!(sc.horizon > 0.0)) bad_config("horizon must be positive");
  if (sc.strategy != "coroutine" && sc.strategy != "greedy" &&
      sc.strategy != "static-loop") {
    bad_config("unknown strategy: " + sc.strategy);
  }
  ResolvedScenario rs;
  rs.scenario = sc;
  if (rs.scenario.cups.kind == "uniform-random-in-square" &&
      !rs.scenario.cups.seed) {
    rs.scenario.cups.seed = sc.seed;
  }
  if (!rs.scenario.adversary_seed) rs.scenario.adversary_seed = sc.seed + 1;

  rs.cups = build_cups(rs.scenario.cups, sc.seed);
  rs.d = diameter(rs.cups);
  const Square sq = bounding_square(rs.cups);
  const double tick = rs.d > 0.0 ? rs.d / 10.0 : 0.1;
  if (!rs.scenario.delta_adv) rs.scenario.delta_adv = tick;
  if (!rs.scenario.sample_interval) rs.scenario.sample_interval = tick;
  if (!rs.scenario.start) {
    rs.scenario.start = Point{sq.origin.x + sq.side / 2.0,
                              sq.origin.y + sq.side / 2.0};
  }
  rs.start = *rs.scenario.start;
  if (!sq.contains(rs.start)) bad_config("start outside square");

  rs.config.horizon = sc.horizon;
  rs.config.delta_adv = *rs.scenario.delta_adv;
  rs.config.sample_interval = *rs.scenario.sample_interval;
  rs.config.burn_in = 0.0;

  if (!sc.name.empty()) {
    rs.id = sc.name;
  } else {
    std::ostringstream os;
    const GeneratorSpec& g = rs.scenario.cups;
    os << g.kind;
    if (g.kind == "uniform-random-in-square") {
      os << "-n" << g.n;
    } else if (g.kind == "grid") {
      os << "-" << g.rows << "x" << g.cols;
    } else if (g.kind == "two-point") {
      os << "-d" << format_csv_double(g.dist);
    } else {
      os << "-n" << g.points.size();
    }
    os << "-" << adversary_name(rs.scenario.adversary) << "-" << sc.strategy
       << "-h" << format_csv_double(sc.horizon) << "-seed" << sc.seed;
    rs.id = os.str();
  }
  rs.scenario.name = rs.id;
  return rs;
}

std::unique_ptr<Strategy> make_strategy(const std::string& name, double d,
                                        double horizon) {
  if (name == "coroutine") {
    return std::make_unique<CoroutineStrategy>(
        ScheduleParams::make(d, horizon));
  }
  if (name == "greedy") return std::make_unique<GreedyStrategy>();
  if (name == "static-loop") return std::make_unique<StaticLoopStrategy>();
  throw std::invalid_argument("unknown strategy: " + name);
}

std::string scenario_to_json(const ResolvedScenario& rs) {
  json j;
  j["name"] = rs.id;
  json cups;
  const GeneratorSpec& g = rs.scenario.cups;
  if (g.kind == "explicit") {
    json pts = json::array();
    for (const Point& p : g.points) pts.push_back(json::array({p.x, p.y}));
    cups["points"] = pts;
  } else {
    cups["generator"] = g.kind;
    if (g.kind == "uniform-random-in-square") {
      cups["n"] = g.n;
      cups["side"] = g.side;
      cups["seed"] = *g.seed;
    } else if (g.kind == "grid") {
      cups["rows"] = g.rows;
      cups["cols"] = g.cols;
      cups["spacing"] = g.spacing;
    } else {
      cups["distance"] = g.dist;
    }
  }
  j["cups"] = cups;
  j["adversary"] = {{"kind", adversary_name(rs.scenario.adversary)},
                    {"seed", *rs.scenario.adversary_seed}};
  j["strategy"] = rs.scenario.strategy;
  j["horizon"] = rs.scenario.horizon;
  j["delta_adv"] = *rs.scenario.delta_adv;
  j["start"] = json::array({rs.start.x, rs.start.y});
  j["sample_interval"] = *rs.scenario.sample_interval;
  j["seed"] = rs.scenario.seed;
  return j.dump(2) + "\n";
}

RunReport run_scenario(const ResolvedScenario& rs, TraceSink* sink) {
  Simulation sim(rs.cups, rs.start, sink);
  const auto strategy =
      make_strategy(rs.scenario.strategy, rs.d, rs.config.horizon);
  const auto adversary =
      make_adversary(rs.scenario.adversary, *rs.scenario.adversary_seed);
  return run_game(sim, *strategy, *adversary, rs.config);
}

std::string format_csv_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string summary_csv_header() {
  return "scenario-id,n,D,adversary,strategy,horizon,max_backlog,"
         "max_backlog_over_D,bound_120D,feasible\n";
}

std::string summary_csv_row(const std::string& id, const RunReport& report) {
  std::ostringstream os;
  os << id << ',' << report.n << ',' << format_csv_double(report.d) << ','
     << report.adversary << ',' << report.strategy << ','
     << format_csv_double(report.horizon) << ','
     << format_csv_double(report.max_backlog) << ','
     << format_csv_double(report.d > 0.0 ? report.max_backlog / report.d
                                         : 0.0)
     << ',' << format_csv_double(backlog_bound(report.d)) << ','
     << (report.feasible() ? "true" : "false") << '\n';
  return os.str();
}

void BacklogCsvSink::on_event(const TraceEvent& ev) {
  if (const auto* s = std::get_if<SampleEvent>(&ev.data)) {
    samples_.emplace_back(ev.t, s->backlog);
  }
}

void BacklogCsvSink::write(std::ostream& os) const {
  os << "t,max_backlog,bound_120D\n";
  const std::string bound = format_csv_double(bound_);
  for (const auto& [t, b] : samples_) {
    os << format_csv_double(t) << ',' << format_csv_double(b) << ',' << bound
       << '\n';
  }
}

}  // namespace backlog
