#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "abcrl/actions.hpp"

namespace abcrl {

// Time-ordered record of the discrete actions an agent (or human) took.
struct TraceStep {
  MoveAction move = MoveAction::NoMove;
  HorizontalAction rotate = HorizontalAction::NoOp;

  bool operator==(const TraceStep&) const = default;
};

using ActionTrace = std::vector<TraceStep>;

struct TraceParseError : std::runtime_error {
  TraceParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
  int line;
};

// Trace file format: a required `step,move,rotate` header, then one step per
// line with move in {F,B,N} and rotate in {L,R,N}. Throws TraceParseError
// with the offending line number.
ActionTrace parse_trace(std::istream& in);
ActionTrace load_trace(const std::string& path);  // also throws std::runtime_error on I/O

void write_trace(std::ostream& out, const ActionTrace& trace);

}  // namespace abcrl
