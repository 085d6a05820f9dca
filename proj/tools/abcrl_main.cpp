#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abcrl/behavior_costs.hpp"
#include "abcrl/run_config.hpp"
#include "abcrl/run_log_io.hpp"
#include "abcrl/summary.hpp"
#include "abcrl/trace.hpp"
#include "abcrl/training.hpp"
#include "abcrl/verify.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: identical bytes on every platform
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  return out;
}

int cmd_train(const std::string& config_path) {
  abcrl::RunConfig config;
  try {
    config = abcrl::load_run_config(config_path);
    if (const char* override_seeds = std::getenv("ABCRL_SEED_OVERRIDE")) {
      abcrl::apply_seed_override(config, override_seeds);
    }
  } catch (const abcrl::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    fs::create_directories(config.output_dir);
    const std::string hash = abcrl::config_hash_hex(config);
    for (const abcrl::AgentSpec& agent : config.agents) {
      for (std::uint64_t seed : config.seeds) {
        abcrl::RunLog log = abcrl::run_training(config.env, agent.scheduler, config.learner,
                                                config.cost, config.episodes, seed);
        const std::string stem = agent.name + "_" + std::to_string(seed);
        fs::path run_path = fs::path(config.output_dir) / ("run_" + stem + ".csv");
        {
          std::ofstream out = open_output(run_path);
          abcrl::write_run_log(out, log.rows, hash, agent.name, seed);
        }
        {
          std::ofstream out =
              open_output(fs::path(config.output_dir) / ("sched_" + stem + ".csv"));
          abcrl::write_scheduler_log(out, log.scheduler_rows, hash, agent.name, seed);
        }
        {
          std::ofstream out =
              open_output(fs::path(config.output_dir) / ("policy_" + stem + ".json"));
          abcrl::write_policy_json(out, log.final_params, hash);
        }
        {
          std::ofstream out =
              open_output(fs::path(config.output_dir) / ("trace_" + stem + ".csv"));
          abcrl::write_trace(out, log.final_episode_trace);
        }
        std::cout << "wrote " << run_path.string() << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_cost(const std::string& trace_path, int w, double alpha, int step_angle,
             const std::string& output_path) {
  abcrl::ActionTrace trace;
  abcrl::CostConfig cost_config;
  cost_config.window = w;
  cost_config.alpha = alpha;
  cost_config.step_angle_deg = step_angle;
  try {
    cost_config.validate();
    trace = abcrl::load_trace(trace_path);
  } catch (const abcrl::TraceParseError& e) {
    std::cerr << "error: " << trace_path << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    std::vector<abcrl::CostSignal> signals = abcrl::trace_costs(trace, cost_config);
    if (output_path.empty()) {
      abcrl::write_cost_report(std::cout, signals);
    } else {
      std::ofstream out = open_output(output_path);
      abcrl::write_cost_report(out, signals);
      std::cout << "wrote " << output_path << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_verify(int samples, std::uint64_t seed, const std::string& output_path,
               bool corrupt_closed_form) {
  try {
    abcrl::VerifyOptions options;
    options.prop1_samples = samples;
    options.seed = seed;
    options.corrupt_closed_form = corrupt_closed_form;
    std::vector<abcrl::CheckReport> reports = abcrl::run_all_checks(options);

    nlohmann::json doc;
    doc["checks"] = nlohmann::json::array();
    bool all_pass = true;
    for (const abcrl::CheckReport& report : reports) {
      nlohmann::json entry;
      entry["check"] = report.check;
      entry["samples"] = report.samples;
      entry["max_gap"] = report.max_gap;
      entry["pass"] = report.pass;
      doc["checks"].push_back(entry);
      all_pass = all_pass && report.pass;
    }
    doc["pass"] = all_pass;
    std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!output_path.empty()) {
      std::ofstream out = open_output(output_path);
      out << text;
    }
    return all_pass ? kExitOk : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_compare(const std::string& dir, const std::string& human_path) {
  std::vector<abcrl::ParsedRunLog> logs;
  std::vector<abcrl::HumanCostRow> human;
  try {
    std::vector<fs::path> run_files;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.rfind("run_", 0) == 0 &&
          name.size() > 8 && name.substr(name.size() - 4) == ".csv") {
        run_files.push_back(entry.path());
      }
    }
    std::sort(run_files.begin(), run_files.end());
    if (run_files.empty()) {
      std::cerr << "error: no run_*.csv logs in '" << dir << "'\n";
      return kExitConfig;
    }
    for (const fs::path& path : run_files) {
      logs.push_back(abcrl::load_run_log(path.string()));
    }
    if (!human_path.empty()) {
      std::ifstream in(human_path);
      if (!in) {
        std::cerr << "error: cannot open '" << human_path << "'\n";
        return kExitConfig;
      }
      human = abcrl::read_human_summary(in);
    }

    std::vector<abcrl::AgentAggregate> aggregates = abcrl::aggregate_runs(logs);
    const std::string hash = logs.front().config_hash;
    fs::path summary_path = fs::path(dir) / "summary_agents.csv";
    {
      std::ofstream out = open_output(summary_path);
      abcrl::write_aggregate_csv(out, aggregates, hash);
    }
    fs::path curves_path = fs::path(dir) / "curves.csv";
    {
      std::ofstream out = open_output(curves_path);
      abcrl::write_curves_csv(out, logs, hash, 50, human);
    }
    std::cout << "wrote " << summary_path.string() << "\n";
    std::cout << "wrote " << curves_path.string() << "\n";
  } catch (const abcrl::LogFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained-RL toolkit: train weight-scheduled agents on the grid collector, "
               "score behavior traces, verify the penalty math, compare runs"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* train = app.add_subcommand("train", "Run the configured agents x seeds, write logs");
  train->add_option("config", config_path, "JSON experiment config")->required();

  std::string trace_path;
  std::string cost_output;
  int cost_w = 8;
  double cost_alpha = 1.0;
  int cost_step_angle = 72;
  CLI::App* cost = app.add_subcommand("cost", "Score a recorded action trace");
  cost->add_option("trace", trace_path, "trace CSV (step,move,rotate)")->required();
  cost->add_option("--w", cost_w, "shaking window size");
  cost->add_option("--alpha", cost_alpha, "spin cost weight");
  cost->add_option("--step-angle", cost_step_angle, "degrees per rotation action");
  cost->add_option("-o,--output", cost_output, "write the report here instead of stdout");

  int verify_samples = 1000;
  std::uint64_t verify_seed = 12345;
  std::string verify_output;
  bool negative_control = false;
  CLI::App* verify = app.add_subcommand("verify", "Check the penalty math against oracles");
  verify->add_option("--samples", verify_samples, "random instances for the closed-form check");
  verify->add_option("--seed", verify_seed, "RNG seed for the random instances");
  verify->add_option("-o,--output", verify_output, "also write the JSON report here");
  verify->add_flag("--negative-control", negative_control)->group("");  // test fixture, hidden

  std::string compare_dir;
  std::string human_path;
  CLI::App* compare = app.add_subcommand("compare", "Aggregate run logs into summaries + curves");
  compare->add_option("dir", compare_dir, "directory holding run_*.csv logs")->required();
  compare->add_option("--human", human_path, "human cost summary (trace,mean_shaking,total_spins)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (train->parsed()) {
    return cmd_train(config_path);
  }
  if (cost->parsed()) {
    return cmd_cost(trace_path, cost_w, cost_alpha, cost_step_angle, cost_output);
  }
  if (verify->parsed()) {
    return cmd_verify(verify_samples, verify_seed, verify_output, negative_control);
  }
  return cmd_compare(compare_dir, human_path);
}
