#include "abcrl/run_config.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace abcrl {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

int get_int(const json& obj, const std::string& field, const std::string& key, int fallback) {
  const json* v = find(obj, key);
  if (v == nullptr) {
    return fallback;
  }
  if (!v->is_number_integer()) {
    fail(field + "." + key, "expected an integer");
  }
  return v->get<int>();
}

double get_double(const json& obj, const std::string& field, const std::string& key,
                  double fallback) {
  const json* v = find(obj, key);
  if (v == nullptr) {
    return fallback;
  }
  if (!v->is_number()) {
    fail(field + "." + key, "expected a number");
  }
  return v->get<double>();
}

bool get_bool(const json& obj, const std::string& field, const std::string& key, bool fallback) {
  const json* v = find(obj, key);
  if (v == nullptr) {
    return fallback;
  }
  if (!v->is_boolean()) {
    fail(field + "." + key, "expected a boolean");
  }
  return v->get<bool>();
}

std::string get_string(const json& obj, const std::string& field, const std::string& key,
                       const std::string& fallback) {
  const json* v = find(obj, key);
  if (v == nullptr) {
    return fallback;
  }
  if (!v->is_string()) {
    fail(field + "." + key, "expected a string");
  }
  return v->get<std::string>();
}

EnvConfig parse_env(const json& obj, const std::string& field) {
  if (!obj.is_object()) {
    fail(field, "expected an object");
  }
  EnvConfig env;
  env.grid_size = get_int(obj, field, "grid_size", env.grid_size);
  env.episode_steps = get_int(obj, field, "episode_steps", env.episode_steps);
  env.yellow_count = get_int(obj, field, "yellow_count", env.yellow_count);
  env.blue_count = get_int(obj, field, "blue_count", env.blue_count);
  env.refill_interval = get_int(obj, field, "refill_interval", env.refill_interval);
  env.heading_steps = get_int(obj, field, "heading_steps", env.heading_steps);
  env.observation_radius = get_int(obj, field, "observation_radius", env.observation_radius);
  env.fov_half_width = get_int(obj, field, "fov_half_width", env.fov_half_width);
  return env;
}

SchedulerConfig parse_scheduler(const json& obj, const std::string& field) {
  if (!obj.is_object()) {
    fail(field, "expected an object");
  }
  SchedulerConfig sched;
  const json* kind = find(obj, "kind");
  if (kind == nullptr || !kind->is_string()) {
    fail(field + ".kind", "expected a string (baseline, const, abc_sigmoid or ab_cpo)");
  }
  try {
    sched.kind = scheduler_kind_from_name(kind->get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(field + ".kind", e.what());
  }
  sched.max_weight = get_double(obj, field, "max_weight", sched.max_weight);
  sched.slope_h = get_double(obj, field, "slope_h", sched.slope_h);
  sched.mu = get_double(obj, field, "mu", sched.mu);
  sched.lambda0 = get_double(obj, field, "lambda0", sched.lambda0);
  sched.delta = get_double(obj, field, "delta", sched.delta);
  sched.stability_loss_threshold =
      get_double(obj, field, "stability_loss_threshold", sched.stability_loss_threshold);
  sched.window_k = get_int(obj, field, "window_k", sched.window_k);
  if (const json* vth = find(obj, "v_th")) {
    if (!vth->is_object()) {
      fail(field + ".v_th", "expected an object {mode, value}");
    }
    std::string mode = get_string(*vth, field + ".v_th", "mode", "");
    if (mode == "fixed") {
      sched.v_th_mode.kind = VthMode::Kind::Fixed;
    } else if (mode == "fraction_of_max") {
      sched.v_th_mode.kind = VthMode::Kind::FractionOfMax;
    } else {
      fail(field + ".v_th.mode", "expected 'fixed' or 'fraction_of_max'");
    }
    const json* value = find(*vth, "value");
    if (value == nullptr || !value->is_number()) {
      fail(field + ".v_th.value", "expected a number");
    }
    sched.v_th_mode.value = value->get<double>();
  }
  try {
    sched.validate();
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
  return sched;
}

bool filename_safe(const std::string& name) {
  if (name.empty()) {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') {
      return false;
    }
  }
  return true;
}

void hash_append(std::uint64_t& h, const std::string& text) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;  // FNV-1a 64 prime
  }
}

std::string canonical_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  if (config_version != 1) {
    fail("config_version", "unsupported version (expected 1)");
  }
  try {
    env.validate();
  } catch (const std::invalid_argument& e) {
    fail("env", e.what());
  }
  if (agents.empty()) {
    fail("agents", "at least one agent (or a top-level scheduler) is required");
  }
  std::set<std::string> names;
  for (size_t i = 0; i < agents.size(); ++i) {
    const std::string field = "agents[" + std::to_string(i) + "]";
    if (!filename_safe(agents[i].name)) {
      fail(field + ".name", "must be non-empty and contain only [A-Za-z0-9_-]");
    }
    if (!names.insert(agents[i].name).second) {
      fail(field + ".name", "duplicate agent name '" + agents[i].name + "'");
    }
    try {
      agents[i].scheduler.validate();
    } catch (const std::invalid_argument& e) {
      fail(field, e.what());
    }
  }
  try {
    learner.validate();
  } catch (const std::invalid_argument& e) {
    fail("learner", e.what());
  }
  if (episodes < 0) {
    fail("episodes", "must be >= 0");
  }
  if (seeds.empty()) {
    fail("seeds", "must be non-empty");
  }
  try {
    cost.validate();
  } catch (const std::invalid_argument& e) {
    fail("cost", e.what());
  }
  if (cost.step_angle_deg != env.step_angle_deg()) {
    fail("cost.step_angle",
         "must equal the environment rotation step (360 / env.heading_steps) so trained and "
         "reported spin counts agree");
  }
  if (output_dir.empty()) {
    fail("output_dir", "must be a non-empty path");
  }
}

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }

  RunConfig config;
  const json* version = find(root, "config_version");
  if (version == nullptr || !version->is_number_integer()) {
    fail("config_version", "required integer field is missing");
  }
  config.config_version = version->get<int>();

  if (const json* env = find(root, "env")) {
    config.env = parse_env(*env, "env");
  }

  const json* scheduler = find(root, "scheduler");
  const json* agents = find(root, "agents");
  if (scheduler != nullptr && agents != nullptr) {
    throw ConfigError("config must define either 'scheduler' or 'agents', not both");
  }
  if (scheduler != nullptr) {
    AgentSpec spec;
    spec.scheduler = parse_scheduler(*scheduler, "scheduler");
    spec.name = get_string(*scheduler, "scheduler", "name", scheduler_kind_name(spec.scheduler.kind));
    config.agents.push_back(spec);
  } else if (agents != nullptr) {
    if (!agents->is_array() || agents->empty()) {
      fail("agents", "expected a non-empty array");
    }
    for (size_t i = 0; i < agents->size(); ++i) {
      const std::string field = "agents[" + std::to_string(i) + "]";
      const json& entry = (*agents)[i];
      AgentSpec spec;
      spec.scheduler = parse_scheduler(entry, field);
      spec.name = get_string(entry, field, "name", scheduler_kind_name(spec.scheduler.kind));
      config.agents.push_back(spec);
    }
  } else {
    throw ConfigError("config requires a 'scheduler' object or an 'agents' array");
  }

  if (const json* learner = find(root, "learner")) {
    if (!learner->is_object()) {
      fail("learner", "expected an object");
    }
    config.learner.learning_rate =
        get_double(*learner, "learner", "learning_rate", config.learner.learning_rate);
    config.learner.clip_epsilon =
        get_double(*learner, "learner", "clip_epsilon", config.learner.clip_epsilon);
    config.learner.gamma = get_double(*learner, "learner", "gamma", config.learner.gamma);
    config.learner.batch_episodes =
        get_int(*learner, "learner", "batch_episodes", config.learner.batch_episodes);
    config.learner.epochs = get_int(*learner, "learner", "epochs", config.learner.epochs);
    config.learner.collect_costs =
        get_bool(*learner, "learner", "collect_costs", config.learner.collect_costs);
  }

  const json* episodes = find(root, "episodes");
  if (episodes == nullptr || !episodes->is_number_integer()) {
    fail("episodes", "required integer field is missing");
  }
  config.episodes = episodes->get<int>();

  if (const json* seeds = find(root, "seeds")) {
    if (!seeds->is_array() || seeds->empty()) {
      fail("seeds", "expected a non-empty array of unsigned integers");
    }
    config.seeds.clear();
    for (size_t i = 0; i < seeds->size(); ++i) {
      const json& s = (*seeds)[i];
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
        fail("seeds[" + std::to_string(i) + "]", "expected an unsigned integer");
      }
      config.seeds.push_back(s.get<std::uint64_t>());
    }
  }

  if (const json* cost = find(root, "cost")) {
    if (!cost->is_object()) {
      fail("cost", "expected an object");
    }
    config.cost.window = get_int(*cost, "cost", "w", config.cost.window);
    config.cost.alpha = get_double(*cost, "cost", "alpha", config.cost.alpha);
    config.cost.step_angle_deg = get_int(*cost, "cost", "step_angle", config.cost.step_angle_deg);
  }

  const json* output_dir = find(root, "output_dir");
  if (output_dir == nullptr || !output_dir->is_string()) {
    fail("output_dir", "required string field is missing");
  }
  config.output_dir = output_dir->get<std::string>();

  config.validate();
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

void apply_seed_override(RunConfig& config, const std::string& override_value) {
  std::vector<std::uint64_t> seeds;
  std::string token;
  std::istringstream in(override_value);
  while (std::getline(in, token, ',')) {
    if (token.empty()) {
      throw ConfigError("ABCRL_SEED_OVERRIDE: empty seed in '" + override_value + "'");
    }
    std::uint64_t value = 0;
    size_t consumed = 0;
    try {
      value = std::stoull(token, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != token.size() || token[0] == '-') {
      throw ConfigError("ABCRL_SEED_OVERRIDE: '" + token + "' is not an unsigned integer");
    }
    seeds.push_back(value);
  }
  if (seeds.empty()) {
    throw ConfigError("ABCRL_SEED_OVERRIDE: no seeds given");
  }
  config.seeds = std::move(seeds);
}

std::string config_hash_hex(const RunConfig& config) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a 64 offset basis
  std::string canon;
  canon += "v=" + std::to_string(config.config_version);
  canon += ";grid=" + std::to_string(config.env.grid_size);
  canon += ";steps=" + std::to_string(config.env.episode_steps);
  canon += ";yellow=" + std::to_string(config.env.yellow_count);
  canon += ";blue=" + std::to_string(config.env.blue_count);
  canon += ";refill=" + std::to_string(config.env.refill_interval);
  canon += ";headings=" + std::to_string(config.env.heading_steps);
  canon += ";radius=" + std::to_string(config.env.observation_radius);
  canon += ";fov=" + std::to_string(config.env.fov_half_width);
  canon += ";lr=" + canonical_double(config.learner.learning_rate);
  canon += ";clip=" + canonical_double(config.learner.clip_epsilon);
  canon += ";gamma=" + canonical_double(config.learner.gamma);
  canon += ";batch=" + std::to_string(config.learner.batch_episodes);
  canon += ";epochs=" + std::to_string(config.learner.epochs);
  canon += ";costs=" + std::string(config.learner.collect_costs ? "1" : "0");
  canon += ";episodes=" + std::to_string(config.episodes);
  canon += ";w=" + std::to_string(config.cost.window);
  canon += ";alpha=" + canonical_double(config.cost.alpha);
  canon += ";angle=" + std::to_string(config.cost.step_angle_deg);
  hash_append(h, canon);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace abcrl
