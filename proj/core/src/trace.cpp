#include "abcrl/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace abcrl {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

MoveAction parse_move(const std::string& field, int line) {
  if (field == "F") return MoveAction::Forward;
  if (field == "B") return MoveAction::Backward;
  if (field == "N") return MoveAction::NoMove;
  throw TraceParseError(line, "bad move field '" + field + "' (expected F, B, or N)");
}

HorizontalAction parse_rotate(const std::string& field, int line) {
  if (field == "L") return HorizontalAction::TurnLeft;
  if (field == "R") return HorizontalAction::TurnRight;
  if (field == "N") return HorizontalAction::NoOp;
  throw TraceParseError(line, "bad rotate field '" + field + "' (expected L, R, or N)");
}

}  // namespace

ActionTrace parse_trace(std::istream& in) {
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw TraceParseError(1, "missing header");
  ++line_no;
  if (trim(line) != "step,move,rotate") {
    throw TraceParseError(1, "expected header 'step,move,rotate'");
  }

  ActionTrace trace;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty()) continue;

    const auto c1 = row.find(',');
    const auto c2 = (c1 == std::string::npos) ? std::string::npos : row.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || row.find(',', c2 + 1) != std::string::npos) {
      throw TraceParseError(line_no, "expected 3 comma-separated fields");
    }

    const std::string step_field = trim(row.substr(0, c1));
    try {
      size_t used = 0;
      (void)std::stoll(step_field, &used);
      if (used != step_field.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw TraceParseError(line_no, "bad step field '" + step_field + "' (expected integer)");
    }

    trace.push_back(TraceStep{parse_move(trim(row.substr(c1 + 1, c2 - c1 - 1)), line_no),
                              parse_rotate(trim(row.substr(c2 + 1)), line_no)});
  }
  return trace;
}

ActionTrace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return parse_trace(in);
}

void write_trace(std::ostream& out, const ActionTrace& trace) {
  out << "step,move,rotate\n";
  for (size_t i = 0; i < trace.size(); ++i) {
    const char move = trace[i].move == MoveAction::Forward    ? 'F'
                      : trace[i].move == MoveAction::Backward ? 'B'
                                                              : 'N';
    const char rot = trace[i].rotate == HorizontalAction::TurnLeft    ? 'L'
                     : trace[i].rotate == HorizontalAction::TurnRight ? 'R'
                                                                      : 'N';
    out << i << ',' << move << ',' << rot << '\n';
  }
}

}  // namespace abcrl
