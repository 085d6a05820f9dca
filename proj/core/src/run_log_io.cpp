#include "abcrl/run_log_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace abcrl {
namespace {

using nlohmann::json;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.push_back("");
  }
  return fields;
}

double parse_double(const std::string& text, size_t line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw LogFormatError(line, "'" + text + "' is not a number");
  }
  return value;
}

long long parse_int(const std::string& text, size_t line) {
  size_t consumed = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != text.size() || text.empty()) {
    throw LogFormatError(line, "'" + text + "' is not an integer");
  }
  return value;
}

// Seeds use the full uint64 range, which parse_int would reject above 2^63-1.
std::uint64_t parse_uint64(const std::string& text, size_t line) {
  size_t consumed = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != text.size() || text.empty() || text[0] == '-') {
    throw LogFormatError(line, "'" + text + "' is not an unsigned integer");
  }
  return value;
}

}  // namespace

LogFormatError::LogFormatError(size_t line_number, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
      line(line_number) {}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

constexpr const char* kRunLogHeader =
    "episode,raw_return,adjusted_return,shaking_mean,spin_total,weight,lambda,v_avg,v_th";

void write_comment_headers(std::ostream& out, const std::string& config_hash,
                           const std::string& agent, std::uint64_t seed) {
  out << "# config_hash=" << config_hash << "\n";
  out << "# agent=" << agent << " seed=" << seed << "\n";
}

}  // namespace

void write_run_log(std::ostream& out, const std::vector<RunLogRow>& rows,
                   const std::string& config_hash, const std::string& agent, std::uint64_t seed) {
  write_comment_headers(out, config_hash, agent, seed);
  out << kRunLogHeader << "\n";
  for (const RunLogRow& row : rows) {
    out << row.episode << ',' << format_double(row.raw_return) << ','
        << format_double(row.adjusted_return) << ',' << format_double(row.shaking_mean) << ','
        << row.spin_total << ',' << format_double(row.weight) << ',' << format_double(row.lambda)
        << ',' << format_double(row.v_avg) << ',' << format_double(row.v_th) << "\n";
  }
}

ParsedRunLog read_run_log(std::istream& in) {
  ParsedRunLog log;
  std::string line;
  size_t line_no = 0;

  if (!std::getline(in, line)) {
    throw LogFormatError(1, "empty file (expected '# config_hash=...')");
  }
  ++line_no;
  const std::string hash_prefix = "# config_hash=";
  if (line.rfind(hash_prefix, 0) != 0 || line.size() <= hash_prefix.size()) {
    throw LogFormatError(line_no, "expected '# config_hash=<hex>'");
  }
  log.config_hash = line.substr(hash_prefix.size());

  if (!std::getline(in, line)) {
    throw LogFormatError(2, "missing '# agent=<name> seed=<n>' header");
  }
  ++line_no;
  const std::string agent_prefix = "# agent=";
  size_t seed_at = line.find(" seed=");
  if (line.rfind(agent_prefix, 0) != 0 || seed_at == std::string::npos ||
      seed_at <= agent_prefix.size()) {
    throw LogFormatError(line_no, "expected '# agent=<name> seed=<n>'");
  }
  log.agent = line.substr(agent_prefix.size(), seed_at - agent_prefix.size());
  std::string seed_text = line.substr(seed_at + 6);
  log.seed = parse_uint64(seed_text, line_no);

  if (!std::getline(in, line)) {
    throw LogFormatError(3, "missing column header");
  }
  ++line_no;
  if (line != kRunLogHeader) {
    throw LogFormatError(line_no, "unexpected column header (schema mismatch)");
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 9) {
      throw LogFormatError(line_no,
                           "expected 9 fields, got " + std::to_string(fields.size()));
    }
    RunLogRow row;
    row.episode = static_cast<int>(parse_int(fields[0], line_no));
    row.raw_return = parse_double(fields[1], line_no);
    row.adjusted_return = parse_double(fields[2], line_no);
    row.shaking_mean = parse_double(fields[3], line_no);
    row.spin_total = static_cast<int>(parse_int(fields[4], line_no));
    row.weight = parse_double(fields[5], line_no);
    row.lambda = parse_double(fields[6], line_no);
    row.v_avg = parse_double(fields[7], line_no);
    row.v_th = parse_double(fields[8], line_no);
    log.rows.push_back(row);
  }
  return log;
}

ParsedRunLog load_run_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw LogFormatError(0, "cannot open '" + path + "'");
  }
  return read_run_log(in);
}

void write_scheduler_log(std::ostream& out, const std::vector<SchedulerSnapshot>& rows,
                         const std::string& config_hash, const std::string& agent,
                         std::uint64_t seed) {
  write_comment_headers(out, config_hash, agent, seed);
  out << "episode,v_avg,v_max,v_th,lambda,weight\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const SchedulerSnapshot& row = rows[i];
    out << (i + 1) << ',' << format_double(row.v_avg) << ',' << format_double(row.v_max) << ','
        << format_double(row.v_th) << ',' << format_double(row.lambda) << ','
        << format_double(row.weight) << "\n";
  }
}

void write_cost_report(std::ostream& out, const std::vector<CostSignal>& signals) {
  out << "step,shaking,spin_count,combined\n";
  double shaking_sum = 0.0;
  long long spin_total = 0;
  for (size_t i = 0; i < signals.size(); ++i) {
    const CostSignal& s = signals[i];
    out << i << ',' << format_double(s.shaking.value()) << ',' << s.spin_count << ','
        << format_double(s.combined) << "\n";
    shaking_sum += s.shaking.value();
    spin_total += s.spin_count;
  }
  double mean_shaking = signals.empty() ? 0.0 : shaking_sum / static_cast<double>(signals.size());
  out << "# summary mean_shaking=" << format_double(mean_shaking) << " total_spins=" << spin_total
      << "\n";
}

void write_policy_json(std::ostream& out, const PolicyParams& params,
                       const std::string& config_hash) {
  json doc;
  doc["config_hash"] = config_hash;
  doc["feature_dim"] = params.feature_dim;
  doc["actions"] = kNumJointActions;
  doc["learning_rate"] = params.learning_rate;
  doc["clip_epsilon"] = params.clip_epsilon;
  doc["gamma"] = params.gamma;
  doc["weights"] = params.weights;
  out << doc.dump(2) << "\n";
}

PolicyParams read_policy_json(std::istream& in, std::string* config_hash) {
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw LogFormatError(1, std::string("policy file is not valid JSON: ") + e.what());
  }
  PolicyParams params;
  try {
    if (config_hash != nullptr) {
      *config_hash = doc.at("config_hash").get<std::string>();
    }
    params.feature_dim = doc.at("feature_dim").get<int>();
    int actions = doc.at("actions").get<int>();
    if (actions != kNumJointActions) {
      throw LogFormatError(1, "policy file has " + std::to_string(actions) +
                                  " actions, expected " + std::to_string(kNumJointActions));
    }
    params.learning_rate = doc.at("learning_rate").get<double>();
    params.clip_epsilon = doc.at("clip_epsilon").get<double>();
    params.gamma = doc.at("gamma").get<double>();
    params.weights = doc.at("weights").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw LogFormatError(1, std::string("policy file field error: ") + e.what());
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw LogFormatError(1, e.what());
  }
  return params;
}

}  // namespace abcrl
