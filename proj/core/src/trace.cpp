#include "backlog/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace backlog {

namespace {

using nlohmann::json;

struct KindVisitor {
  const char* operator()(const PourEvent&) const { return "pour"; }
  const char* operator()(const MoveEvent&) const { return "move"; }
  const char* operator()(const EmptyEvent&) const { return "empty"; }
  const char* operator()(const InvokeEvent&) const { return "invoke"; }
  const char* operator()(const ResumeEvent&) const { return "resume"; }
  const char* operator()(const ReturnEvent&) const { return "return"; }
  const char* operator()(const SampleEvent&) const { return "sample"; }
};

json payload_json(const PourEvent& ev) {
  json rates = json::array();
  for (const auto& [id, rate] : ev.rates) rates.push_back({id, rate});
  return json{{"rates", std::move(rates)}};
}

json payload_json(const MoveEvent& ev) {
  return json{{"t0", ev.t_begin},
              {"from", {ev.from.x, ev.from.y}},
              {"to", {ev.to.x, ev.to.y}}};
}

json payload_json(const EmptyEvent& ev) {
  return json{{"cup", ev.cup}, {"amount", ev.amount}};
}

json payload_json(const InvokeEvent& ev) {
  return json{{"level", ev.level},   {"L", ev.L},
              {"ell", ev.ell},       {"tour_length", ev.tour_length},
              {"budget", ev.budget}, {"cups", ev.cups}};
}

json payload_json(const ResumeEvent& ev) { return json{{"level", ev.level}}; }

json payload_json(const ReturnEvent& ev) { return json{{"level", ev.level}}; }

json payload_json(const SampleEvent& ev) {
  return json{{"backlog", ev.backlog}};
}

}  // namespace

const char* event_kind(const TraceEvent& ev) {
  return std::visit(KindVisitor{}, ev.data);
}

std::string to_jsonl(const TraceEvent& ev) {
  json j = std::visit([](const auto& data) { return payload_json(data); },
                      ev.data);
  j["t"] = ev.t;
  j["kind"] = event_kind(ev);
  return j.dump();
}

TraceEvent parse_jsonl(const std::string& line) {
  const json j = json::parse(line);
  TraceEvent ev;
  ev.t = j.at("t").get<double>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pour") {
    PourEvent data;
    for (const auto& entry : j.at("rates")) {
      data.rates.emplace_back(entry.at(0).get<int>(),
                              entry.at(1).get<double>());
    }
    ev.data = std::move(data);
  } else if (kind == "move") {
    MoveEvent data;
    data.t_begin = j.at("t0").get<double>();
    data.from = Point{j.at("from").at(0).get<double>(),
                      j.at("from").at(1).get<double>()};
    data.to = Point{j.at("to").at(0).get<double>(),
                    j.at("to").at(1).get<double>()};
    ev.data = data;
  } else if (kind == "empty") {
    ev.data = EmptyEvent{j.at("cup").get<int>(), j.at("amount").get<double>()};
  } else if (kind == "invoke") {
    InvokeEvent data;
    data.level = j.at("level").get<int>();
    data.L = j.at("L").get<long>();
    data.ell = j.at("ell").get<int>();
    data.tour_length = j.at("tour_length").get<double>();
    data.budget = j.at("budget").get<double>();
    data.cups = j.at("cups").get<std::vector<int>>();
    ev.data = std::move(data);
  } else if (kind == "resume") {
    ev.data = ResumeEvent{j.at("level").get<int>()};
  } else if (kind == "return") {
    ev.data = ReturnEvent{j.at("level").get<int>()};
  } else if (kind == "sample") {
    ev.data = SampleEvent{j.at("backlog").get<double>()};
  } else {
    throw std::invalid_argument("unknown trace event kind: " + kind);
  }
  return ev;
}

void JsonlTraceSink::on_event(const TraceEvent& ev) {
  out_ << to_jsonl(ev) << '\n';
}

std::string serialize_trace(const std::vector<TraceEvent>& events) {
  std::string out;
  for (const TraceEvent& ev : events) {
    out += to_jsonl(ev);
    out += '\n';
  }
  return out;
}

std::vector<TraceEvent> parse_trace(std::istream& in) {
  std::vector<TraceEvent> events;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    events.push_back(parse_jsonl(line));
  }
  return events;
}

}  // namespace backlog
