#include "abcrl/summary.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

namespace abcrl {

SeedStats terminal_stats(const ParsedRunLog& log) {
  SeedStats stats;
  stats.agent = log.agent;
  stats.seed = log.seed;
  stats.episodes = static_cast<int>(log.rows.size());
  if (log.rows.empty()) {
    return stats;
  }
  size_t tail = std::max<size_t>(1, log.rows.size() / 10);
  size_t begin = log.rows.size() - tail;
  double raw = 0.0;
  double shaking = 0.0;
  double spins = 0.0;
  for (size_t i = begin; i < log.rows.size(); ++i) {
    raw += log.rows[i].raw_return;
    shaking += log.rows[i].shaking_mean;
    spins += log.rows[i].spin_total;
  }
  stats.mean_raw_return = raw / static_cast<double>(tail);
  stats.mean_shaking = shaking / static_cast<double>(tail);
  stats.mean_spins = spins / static_cast<double>(tail);
  return stats;
}

std::vector<AgentAggregate> aggregate_runs(const std::vector<ParsedRunLog>& logs) {
  for (size_t i = 1; i < logs.size(); ++i) {
    if (logs[i].config_hash != logs[0].config_hash) {
      throw LogFormatError(0, "config hash mismatch across run logs ('" + logs[0].config_hash +
                                  "' vs '" + logs[i].config_hash +
                                  "'); refusing to aggregate different experiments");
    }
  }
  std::map<std::string, std::vector<SeedStats>> by_agent;
  for (const ParsedRunLog& log : logs) {
    by_agent[log.agent].push_back(terminal_stats(log));
  }
  std::vector<AgentAggregate> aggregates;
  for (auto& [agent, stats] : by_agent) {
    AgentAggregate agg;
    agg.agent = agent;
    agg.seed_count = static_cast<int>(stats.size());
    for (const SeedStats& s : stats) {
      agg.mean_raw_return += s.mean_raw_return;
      agg.mean_shaking += s.mean_shaking;
      agg.mean_spins += s.mean_spins;
    }
    agg.mean_raw_return /= agg.seed_count;
    agg.mean_shaking /= agg.seed_count;
    agg.mean_spins /= agg.seed_count;
    aggregates.push_back(std::move(agg));
  }
  return aggregates;
}

void write_aggregate_csv(std::ostream& out, const std::vector<AgentAggregate>& aggregates,
                         const std::string& config_hash) {
  out << "# config_hash=" << config_hash << "\n";
  out << "agent,seeds,mean_raw_return,mean_shaking,mean_spins\n";
  for (const AgentAggregate& agg : aggregates) {
    out << agg.agent << ',' << agg.seed_count << ',' << format_double(agg.mean_raw_return) << ','
        << format_double(agg.mean_shaking) << ',' << format_double(agg.mean_spins) << "\n";
  }
}

std::vector<HumanCostRow> read_human_summary(std::istream& in) {
  std::string line;
  size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw LogFormatError(1, "empty human summary (expected 'trace,mean_shaking,total_spins')");
  }
  ++line_no;
  if (line != "trace,mean_shaking,total_spins") {
    throw LogFormatError(line_no, "expected header 'trace,mean_shaking,total_spins'");
  }
  std::vector<HumanCostRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    HumanCostRow row;
    std::string mean_text;
    std::string spins_text;
    if (!std::getline(fields, row.trace, ',') || !std::getline(fields, mean_text, ',') ||
        !std::getline(fields, spins_text)) {
      throw LogFormatError(line_no, "expected 3 fields");
    }
    char* end = nullptr;
    row.mean_shaking = std::strtod(mean_text.c_str(), &end);
    if (end == mean_text.c_str() || *end != '\0') {
      throw LogFormatError(line_no, "'" + mean_text + "' is not a number");
    }
    try {
      size_t consumed = 0;
      row.total_spins = std::stoll(spins_text, &consumed);
      if (consumed != spins_text.size()) {
        throw std::invalid_argument(spins_text);
      }
    } catch (const std::exception&) {
      throw LogFormatError(line_no, "'" + spins_text + "' is not an integer");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

void write_metric_row(std::ostream& out, const std::string& agent, std::uint64_t seed, int episode,
                      const char* metric, double value) {
  out << agent << ',' << seed << ',' << episode << ',' << metric << ','
      << format_double(value) << "\n";
}

}  // namespace

void write_curves_csv(std::ostream& out, const std::vector<ParsedRunLog>& logs,
                      const std::string& config_hash, int smoothing_window,
                      const std::vector<HumanCostRow>& human) {
  out << "# config_hash=" << config_hash << "\n";
  out << "agent,seed,episode,metric,value\n";

  std::vector<const ParsedRunLog*> ordered;
  ordered.reserve(logs.size());
  for (const ParsedRunLog& log : logs) {
    ordered.push_back(&log);
  }
  std::sort(ordered.begin(), ordered.end(), [](const ParsedRunLog* a, const ParsedRunLog* b) {
    return a->agent != b->agent ? a->agent < b->agent : a->seed < b->seed;
  });

  size_t window = smoothing_window < 1 ? 1 : static_cast<size_t>(smoothing_window);
  for (const ParsedRunLog* log : ordered) {
    const auto& rows = log->rows;
    double raw_sum = 0.0;
    double shaking_sum = 0.0;
    double spin_sum = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
      raw_sum += rows[i].raw_return;
      shaking_sum += rows[i].shaking_mean;
      spin_sum += rows[i].spin_total;
      if (i >= window) {
        raw_sum -= rows[i - window].raw_return;
        shaking_sum -= rows[i - window].shaking_mean;
        spin_sum -= rows[i - window].spin_total;
      }
      double n = static_cast<double>(std::min(window, i + 1));
      write_metric_row(out, log->agent, log->seed, rows[i].episode, "raw_return",
                       rows[i].raw_return);
      write_metric_row(out, log->agent, log->seed, rows[i].episode, "raw_return_smooth",
                       raw_sum / n);
      write_metric_row(out, log->agent, log->seed, rows[i].episode, "shaking_mean_smooth",
                       shaking_sum / n);
      write_metric_row(out, log->agent, log->seed, rows[i].episode, "spin_total_smooth",
                       spin_sum / n);
      write_metric_row(out, log->agent, log->seed, rows[i].episode, "weight", rows[i].weight);
      write_metric_row(out, log->agent, log->seed, rows[i].episode, "lambda", rows[i].lambda);
    }
  }

  if (!human.empty()) {
    double shaking = 0.0;
    double spins = 0.0;
    for (const HumanCostRow& row : human) {
      shaking += row.mean_shaking;
      spins += static_cast<double>(row.total_spins);
    }
    double n = static_cast<double>(human.size());
    write_metric_row(out, "human", 0, 0, "shaking_mean", shaking / n);
    write_metric_row(out, "human", 0, 0, "spin_total", spins / n);
  }
}

}  // namespace abcrl
