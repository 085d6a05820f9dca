#include "abcrl/collector_env.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace abcrl {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct Delta {
  int dx;
  int dy;
};

// Cardinal unit vectors, clockwise from north.
constexpr Delta kCardinals[4] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};

Delta heading_delta(int heading, int step_angle_deg) {
  int angle = heading * step_angle_deg;
  int cardinal = static_cast<int>(std::lround(angle / 90.0)) % 4;
  return kCardinals[cardinal];
}

}  // namespace

void EnvConfig::validate() const {
  if (grid_size < 4) {
    throw std::invalid_argument("grid_size must be >= 4");
  }
  if (episode_steps < 1) {
    throw std::invalid_argument("episode_steps must be >= 1");
  }
  if (yellow_count < 0 || blue_count < 0) {
    throw std::invalid_argument("item counts must be >= 0");
  }
  if (refill_interval < 1) {
    throw std::invalid_argument("refill_interval must be >= 1");
  }
  if (heading_steps < 1 || 360 % heading_steps != 0) {
    throw std::invalid_argument("heading_steps must divide 360 evenly");
  }
  if (observation_radius < 1) {
    throw std::invalid_argument("observation_radius must be >= 1");
  }
  if (fov_half_width < 0) {
    throw std::invalid_argument("fov_half_width must be >= 0");
  }
  long long cells = static_cast<long long>(grid_size) * grid_size;
  if (yellow_count + blue_count > cells - 1) {
    throw std::invalid_argument("item count exceeds free cells (grid too small)");
  }
}

CollectorEnv::CollectorEnv(const EnvConfig& config) : config_(config) {
  config_.validate();
  rng_.seed(config_.seed);
  sync_rng_state();
}

void CollectorEnv::sync_rng_state() {
  std::ostringstream os;
  os << rng_;
  state_.rng_state = os.str();
}

bool CollectorEnv::cell_occupied(int x, int y) const {
  if (x == state_.agent_x && y == state_.agent_y) {
    return true;
  }
  for (const Item& item : state_.items) {
    if (item.x == x && item.y == y) {
      return true;
    }
  }
  return false;
}

void CollectorEnv::random_free_cell(int& out_x, int& out_y) {
  std::uniform_int_distribution<int> coord(0, config_.grid_size - 1);
  // Rejection sampling; config validation guarantees a free cell exists.
  for (;;) {
    int x = coord(rng_);
    int y = coord(rng_);
    if (!cell_occupied(x, y)) {
      out_x = x;
      out_y = y;
      return;
    }
  }
}

void CollectorEnv::place_items(int yellow, int blue) {
  for (int i = 0; i < yellow + blue; ++i) {
    Item item;
    item.color = i < yellow ? ItemColor::Yellow : ItemColor::Blue;
    random_free_cell(item.x, item.y);
    state_.items.push_back(item);
  }
}

Observation CollectorEnv::reset() {
  state_.agent_x = config_.grid_size / 2;
  state_.agent_y = config_.grid_size / 2;
  state_.agent_heading = 0;
  state_.step_count = 0;
  state_.consumed_yellow = 0;
  state_.consumed_blue = 0;
  state_.items.clear();
  place_items(config_.yellow_count, config_.blue_count);
  sync_rng_state();
  started_ = true;
  return observe();
}

StepResult CollectorEnv::step(JointAction action) {
  if (!started_) {
    throw std::logic_error("step called before reset");
  }
  if (done()) {
    throw std::logic_error("step called on a finished episode");
  }

  // Rotate first, then move along the updated heading.
  int h = config_.heading_steps;
  switch (action.rotate) {
    case HorizontalAction::TurnLeft:
      state_.agent_heading = (state_.agent_heading + h - 1) % h;
      break;
    case HorizontalAction::TurnRight:
      state_.agent_heading = (state_.agent_heading + 1) % h;
      break;
    case HorizontalAction::NoOp:
      break;
  }

  double reward = 0.0;
  if (action.move != MoveAction::NoMove) {
    Delta d = heading_delta(state_.agent_heading, config_.step_angle_deg());
    int sign = action.move == MoveAction::Forward ? 1 : -1;
    int nx = state_.agent_x + sign * d.dx;
    int ny = state_.agent_y + sign * d.dy;
    bool blocked = nx < 0 || nx >= config_.grid_size || ny < 0 || ny >= config_.grid_size;
    if (!blocked) {
      state_.agent_x = nx;
      state_.agent_y = ny;
      for (auto it = state_.items.begin(); it != state_.items.end(); ++it) {
        if (it->x == nx && it->y == ny) {
          if (it->color == ItemColor::Yellow) {
            reward = 1.0;
            ++state_.consumed_yellow;
          } else {
            reward = -1.0;
            ++state_.consumed_blue;
          }
          state_.items.erase(it);
          break;
        }
      }
    }
  }

  ++state_.step_count;
  if (state_.step_count % config_.refill_interval == 0 &&
      state_.consumed_yellow + state_.consumed_blue > 0) {
    place_items(state_.consumed_yellow, state_.consumed_blue);
    state_.consumed_yellow = 0;
    state_.consumed_blue = 0;
    sync_rng_state();
  }

  StepResult result;
  result.observation = observe();
  result.reward = reward;
  result.done = done();
  result.rotation = action.rotate;
  return result;
}

Observation CollectorEnv::observe() const {
  int h = config_.heading_steps;
  Observation obs(static_cast<size_t>(config_.feature_dim()), 0.0);
  obs[static_cast<size_t>(state_.agent_heading)] = 1.0;

  double radius = config_.observation_radius;
  double step_angle = config_.step_angle_deg();
  double heading_angle = state_.agent_heading * step_angle;
  for (const Item& item : state_.items) {
    double dx = item.x - state_.agent_x;
    double dy = item.y - state_.agent_y;
    double dist = std::sqrt(dx * dx + dy * dy);
    if (dist >= radius) {
      continue;
    }
    // Bearing clockwise from north (+y), relative to the current heading.
    double bearing = std::atan2(dx, dy) * 180.0 / kPi;
    double rel = std::fmod(bearing - heading_angle, 360.0);
    if (rel < 0) {
      rel += 360.0;
    }
    int sector = static_cast<int>(std::lround(rel / step_angle)) % h;
    int off_ahead = std::min(sector, h - sector);
    if (off_ahead > config_.fov_half_width) {
      continue;  // outside the field of view; rotating would reveal it
    }
    double proximity = (radius - dist) / radius;
    size_t slot = static_cast<size_t>(h + (item.color == ItemColor::Yellow ? 0 : h) + sector);
    obs[slot] = std::max(obs[slot], proximity);
  }

  // Wall proximities (north, east, south, west): 1 at the wall, 0 across the grid.
  double span = config_.grid_size - 1;
  obs[static_cast<size_t>(3 * h + 0)] = 1.0 - (span - state_.agent_y) / span;
  obs[static_cast<size_t>(3 * h + 1)] = 1.0 - (span - state_.agent_x) / span;
  obs[static_cast<size_t>(3 * h + 2)] = 1.0 - state_.agent_y / span;
  obs[static_cast<size_t>(3 * h + 3)] = 1.0 - state_.agent_x / span;
  obs[static_cast<size_t>(3 * h + 4)] = 1.0;
  return obs;
}

void CollectorEnv::set_state(const EnvState& state) {
  if (state.agent_x < 0 || state.agent_x >= config_.grid_size || state.agent_y < 0 ||
      state.agent_y >= config_.grid_size) {
    throw std::invalid_argument("agent position outside grid");
  }
  if (state.agent_heading < 0 || state.agent_heading >= config_.heading_steps) {
    throw std::invalid_argument("agent heading out of range");
  }
  if (state.step_count < 0 || state.step_count > config_.episode_steps) {
    throw std::invalid_argument("step_count out of range");
  }
  if (state.consumed_yellow < 0 || state.consumed_blue < 0) {
    throw std::invalid_argument("consumed counts must be >= 0");
  }
  for (size_t i = 0; i < state.items.size(); ++i) {
    for (size_t j = i + 1; j < state.items.size(); ++j) {
      if (state.items[i].x == state.items[j].x && state.items[i].y == state.items[j].y) {
        throw std::invalid_argument("two items share a cell");
      }
    }
  }
  std::istringstream is(state.rng_state);
  std::mt19937_64 restored;
  if (!(is >> restored)) {
    throw std::invalid_argument("malformed rng_state");
  }
  rng_ = restored;
  state_ = state;
  started_ = true;
}

}  // namespace abcrl
