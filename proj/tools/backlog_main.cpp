#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "backlog/adversaries.hpp"
#include "backlog/few_tour.hpp"
#include "backlog/rng.hpp"
#include "backlog/scenario.hpp"
#include "backlog/strategies.hpp"
#include "backlog/tauk_game.hpp"
#include "backlog/trace.hpp"
#include "backlog/verify.hpp"

namespace fs = std::filesystem;
using namespace backlog;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

std::string fmt(double v) { return format_csv_double(v); }

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open " + p.string() + " for writing");
  }
  return out;
}

struct RunArgs {
  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> horizon;
  std::optional<double> delta_adv;
  bool print_config = false;
};

int cmd_run(const RunArgs& args) {
  Scenario sc = load_scenario_file(args.scenario_path);
  if (args.seed) sc.seed = *args.seed;
  if (args.horizon) sc.horizon = *args.horizon;
  if (args.delta_adv) sc.delta_adv = *args.delta_adv;
  const ResolvedScenario rs = resolve_scenario(sc);

  if (args.print_config) {
    std::cout << scenario_to_json(rs);
    return kExitPass;
  }

  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  auto trace_out = open_out(dir / "trace.jsonl");
  JsonlTraceSink jsonl(trace_out);
  BacklogCsvSink backlog_csv(backlog_bound(rs.d));
  MultiTraceSink sinks;
  sinks.add(&jsonl);
  sinks.add(&backlog_csv);

  const RunReport report = run_scenario(rs, &sinks);
  trace_out.close();

  auto summary_out = open_out(dir / "summary.csv");
  summary_out << summary_csv_header() << summary_csv_row(rs.id, report);
  summary_out.close();
  auto backlog_out = open_out(dir / "backlog.csv");
  backlog_csv.write(backlog_out);
  backlog_out.close();

  std::cout << rs.id << ": max backlog " << fmt(report.max_backlog)
            << " (bound " << fmt(backlog_bound(report.d)) << ") over horizon "
            << fmt(report.horizon) << "\n";
  for (const std::string& v : report.violations) {
    std::cerr << "violation: " << v << "\n";
  }
  return report.violations.empty() ? kExitPass : kExitViolation;
}

struct TaukArgs {
  int r = 50;
  double tau = 1.0;
  int k = 1;
  std::string adversary = "equalizing";
  std::uint64_t seed = 1;
  std::string out_dir;
};

int cmd_tauk(const TaukArgs& args) {
  TaukAdversary adversary;
  if (args.adversary == "equalizing") {
    adversary = make_equalizing_adversary(args.r, args.k, args.tau);
  } else if (args.adversary == "single-cup") {
    adversary = make_single_cup_adversary(args.tau);
  } else if (args.adversary == "uniform-spread") {
    adversary = make_spread_uniform_adversary(args.k, args.tau);
  } else if (args.adversary == "random") {
    adversary = make_random_tauk_adversary(args.seed, args.r, args.k, args.tau);
  } else {
    throw std::invalid_argument("unknown tauk adversary: " + args.adversary);
  }

  const TaukTrace trace = run_tauk(args.r, args.tau, args.k, adversary);
  bool ok = true;
  std::ostringstream csv;
  csv << "round,max_level,bound\n";
  for (const TaukRound& round : trace.rounds) {
    const double bound =
        lemma2_bound(static_cast<int>(round.round), args.tau, args.k);
    csv << round.round << ',' << fmt(round.max_level) << ',' << fmt(bound)
        << '\n';
    if (round.max_level > bound + 1e-9) ok = false;
  }
  std::cout << csv.str();
  if (!args.out_dir.empty()) {
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    auto out = open_out(dir / "tauk.csv");
    out << csv.str();
  }
  return ok ? kExitPass : kExitViolation;
}

struct TourArgs {
  int n = 0;
  std::string points_file;
  double side = 1.0;
  std::uint64_t seed = 1;
  bool closed = false;
  std::string out_dir;
};

std::vector<Point> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<Point> pts;
  std::string line;
  while (std::getline(in, line)) {
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream ls(line);
    double x = 0.0;
    double y = 0.0;
    if (!(ls >> x >> y)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::invalid_argument("bad point line: " + line);
    }
    pts.push_back(Point{x, y});
  }
  if (pts.empty()) throw std::invalid_argument("empty point set");
  return pts;
}

int cmd_tour(const TourArgs& args) {
  if ((args.n > 0) == !args.points_file.empty()) {
    throw std::invalid_argument("pass exactly one of --n and --points-file");
  }

  std::vector<Point> pts;
  Square sq{Point{0.0, 0.0}, args.side};
  std::mt19937_64 gen(args.seed);
  if (args.n > 0) {
    pts.reserve(static_cast<std::size_t>(args.n));
    while (static_cast<int>(pts.size()) < args.n) {
      pts.push_back(
          Point{uniform01(gen) * args.side, uniform01(gen) * args.side});
    }
  } else {
    pts = read_points_file(args.points_file);
    sq = bounding_square(PointSet(pts));
  }
  const PointSet ps(pts);

  std::vector<Point> waypoints;
  double length = 0.0;
  double bound = 0.0;
  if (args.closed) {
    int level = 0;
    long long cap = 1;
    while (cap < ps.size()) {
      cap *= 25;
      ++level;
    }
    const Point start{sq.origin.x + uniform01(gen) * sq.side,
                      sq.origin.y + uniform01(gen) * sq.side};
    const Tour tour = closed_tour(start, ps, sq);
    waypoints = tour.waypoints;
    length = tour.length;
    bound = closed_tour_bound(level, sq.side);
  } else {
    const Path path = few_path(ps, sq);
    waypoints = path.waypoints;
    length = path.length;
    bound = few_path_bound(ps.size(), sq.side);
  }

  std::ostringstream csv;
  csv << "x,y\n";
  for (const Point& p : waypoints) {
    csv << fmt(p.x) << ',' << fmt(p.y) << '\n';
  }
  csv << "\nlength,bound\n" << fmt(length) << ',' << fmt(bound) << '\n';
  std::cout << csv.str();
  if (!args.out_dir.empty()) {
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    auto out = open_out(dir / "tour.csv");
    out << csv.str();
  }
  return length <= bound ? kExitPass : kExitViolation;
}

int cmd_verify(const std::string& suite) {
  std::vector<CriterionResult> results;
  if (suite == "acceptance" || suite == "full") {
    results = run_acceptance_suite(&std::cout);
  } else if (suite == "quick") {
    const auto push = [&results](CriterionResult r) {
      std::cout << "criterion " << r.id << " (" << r.name
                << "): " << (r.passed ? "pass" : "FAIL") << " - " << r.details
                << std::endl;
      results.push_back(std::move(r));
    };
    push(criterion_tauk_tightness());
    push(criterion_few_path_bound());
    push(criterion_closed_tour_bound());
    push(criterion_two_cup_lower());
    push(criterion_w_calculus());
    push(criterion_decompose_time());
  } else {
    throw std::invalid_argument("unknown suite: " + suite +
                                " (expected acceptance, full, or quick)");
  }

  bool all_passed = true;
  std::cout << "\n id  criterion             result\n";
  for (const CriterionResult& r : results) {
    std::cout << std::setw(3) << r.id << "  " << std::left << std::setw(20)
              << r.name << std::right << "  "
              << (r.passed ? "pass" : "FAIL") << "\n";
    all_passed = all_passed && r.passed;
  }
  std::cout << (all_passed ? "verify: PASS\n" : "verify: FAIL\n");
  return all_passed ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar minimum-backlog game: simulator and verifier"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run =
      app.add_subcommand("run", "run one scenario; write trace.jsonl, "
                                "summary.csv, backlog.csv");
  run->add_option("--scenario", run_args.scenario_path,
                  "scenario JSON file")
      ->required();
  run->add_option("--out-dir", run_args.out_dir, "output directory");
  run->add_option("--seed", run_args.seed, "override the scenario seed");
  run->add_option("--horizon", run_args.horizon,
                  "override the scenario horizon")
      ->check(CLI::PositiveNumber);
  run->add_option("--delta-adv", run_args.delta_adv,
                  "override the adversary control interval")
      ->check(CLI::PositiveNumber);
  run->add_flag("--print-config", run_args.print_config,
                "print the resolved scenario JSON and exit");

  TaukArgs tauk_args;
  CLI::App* tauk = app.add_subcommand(
      "tauk", "run the abstract (tau,k)-game; emit per-round CSV");
  tauk->add_option("--r", tauk_args.r, "number of rounds")
      ->check(CLI::PositiveNumber);
  tauk->add_option("--tau", tauk_args.tau, "pour volume per round")
      ->check(CLI::PositiveNumber);
  tauk->add_option("--k", tauk_args.k, "cups emptied per round")
      ->check(CLI::PositiveNumber);
  tauk->add_option("--adversary", tauk_args.adversary,
                   "equalizing | single-cup | uniform-spread | random");
  tauk->add_option("--seed", tauk_args.seed, "seed for the random adversary");
  tauk->add_option("--out-dir", tauk_args.out_dir,
                   "also write tauk.csv here");

  TourArgs tour_args;
  CLI::App* tour = app.add_subcommand(
      "tour", "build a short path or closed tour; emit waypoints");
  tour->add_option("--n", tour_args.n, "generate n random points")
      ->check(CLI::PositiveNumber);
  tour->add_option("--points-file", tour_args.points_file,
                   "read points from a file, one x y pair per line");
  tour->add_option("--side", tour_args.side,
                   "square side for generated points")
      ->check(CLI::PositiveNumber);
  tour->add_option("--seed", tour_args.seed, "point generator seed");
  tour->add_flag("--closed", tour_args.closed,
                 "closed tour from a random start instead of an open path");
  tour->add_option("--out-dir", tour_args.out_dir, "also write tour.csv here");

  std::string suite = "acceptance";
  CLI::App* verify = app.add_subcommand(
      "verify", "run the verification suite and print a pass/fail table");
  verify->add_option("--suite", suite, "acceptance | full | quick");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (tauk->parsed()) return cmd_tauk(tauk_args);
    if (tour->parsed()) return cmd_tour(tour_args);
    if (verify->parsed()) return cmd_verify(suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitConfig;
}
