#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "backlog/geometry.hpp"

namespace backlog {

// Piecewise-constant pour rates in force from time t onward, sparse by cup
// id, sorted by id.  Emitted only when the allocation actually changes.
struct PourEvent {
  std::vector<std::pair<int, double>> rates;
  bool operator==(const PourEvent&) const = default;
};

// Straight unit-speed segment finishing at the event time.
struct MoveEvent {
  double t_begin = 0.0;
  Point from;
  Point to;
  bool operator==(const MoveEvent&) const = default;
};

struct EmptyEvent {
  int cup = 0;
  double amount = 0.0;
  bool operator==(const EmptyEvent&) const = default;
};

// Coroutine invocation: level i invoked at epoch (10L+ell)*tau_i.
struct InvokeEvent {
  int level = 0;
  long L = 0;
  int ell = 0;
  double tour_length = 0.0;
  double budget = 0.0;
  std::vector<int> cups;
  bool operator==(const InvokeEvent&) const = default;
};

struct ResumeEvent {
  int level = 0;
  bool operator==(const ResumeEvent&) const = default;
};

struct ReturnEvent {
  int level = 0;
  bool operator==(const ReturnEvent&) const = default;
};

struct SampleEvent {
  double backlog = 0.0;
  bool operator==(const SampleEvent&) const = default;
};

struct TraceEvent {
  double t = 0.0;
  std::variant<PourEvent, MoveEvent, EmptyEvent, InvokeEvent, ResumeEvent,
               ReturnEvent, SampleEvent>
      data;
  bool operator==(const TraceEvent&) const = default;
};

// "pour" | "move" | "empty" | "invoke" | "resume" | "return" | "sample"
const char* event_kind(const TraceEvent& ev);

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void on_event(const TraceEvent& ev) = 0;
};

class MemoryTraceSink : public TraceSink {
 public:
  void on_event(const TraceEvent& ev) override { events_.push_back(ev); }
  const std::vector<TraceEvent>& events() const { return events_; }

 private:
  std::vector<TraceEvent> events_;
};

class NullTraceSink : public TraceSink {
 public:
  void on_event(const TraceEvent&) override {}
};

// Streams one JSON object per line as events arrive.
class JsonlTraceSink : public TraceSink {
 public:
  explicit JsonlTraceSink(std::ostream& out) : out_(out) {}
  void on_event(const TraceEvent& ev) override;

 private:
  std::ostream& out_;
};

// One JSON object, no trailing newline.  Doubles use the shortest decimal
// form that parses back to the identical bit pattern.
std::string to_jsonl(const TraceEvent& ev);
TraceEvent parse_jsonl(const std::string& line);

std::string serialize_trace(const std::vector<TraceEvent>& events);
std::vector<TraceEvent> parse_trace(std::istream& in);

}  // namespace backlog
