#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "abcrl/actions.hpp"

namespace abcrl {

struct EnvConfig {
  int grid_size = 12;
  int episode_steps = 500;
  int yellow_count = 10;
  int blue_count = 10;
  int refill_interval = 100;
  int heading_steps = 5;    // discrete headings per revolution; 360 must divide evenly
  int observation_radius = 6;
  int fov_half_width = 1;   // visible sectors each side of straight ahead
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
  int step_angle_deg() const { return 360 / heading_steps; }
  int feature_dim() const { return 3 * heading_steps + 5; }
};

enum class ItemColor { Yellow, Blue };

struct Item {
  int x = 0;
  int y = 0;
  ItemColor color = ItemColor::Yellow;
};

struct EnvState {
  int agent_x = 0;
  int agent_y = 0;
  int agent_heading = 0;  // index in [0, heading_steps), clockwise from north
  int step_count = 0;
  std::vector<Item> items;
  int consumed_yellow = 0;  // eaten, awaiting refill
  int consumed_blue = 0;
  std::string rng_state;  // serialized engine, opaque
};

using Observation = std::vector<double>;

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  HorizontalAction rotation = HorizontalAction::NoOp;  // echo for cost detectors
};

// Grid-world item collector: rotate among discrete headings, move along the
// nearest cardinal direction, pick up +1/-1 items, periodic refill of eaten
// items. Fully deterministic given (seed, action sequence). The observation
// is egocentric: items are binned into heading sectors relative to the agent,
// and only sectors within fov_half_width of straight ahead are visible, so
// rotating genuinely reveals information.
//
// Feature layout (length 3*H + 5 for H = heading_steps):
//   [0, H)      heading one-hot
//   [H, 2H)     per-sector nearest-yellow proximity, sector 0 = ahead
//   [2H, 3H)    per-sector nearest-blue proximity
//   [3H, 3H+4)  wall proximities (north, east, south, west)
//   [3H+4]      bias, always 1
// Proximity = (R - d) / R clamped to [0,1] with R = observation_radius.
class CollectorEnv {
 public:
  explicit CollectorEnv(const EnvConfig& config);

  // Starts a new episode: agent at the grid center facing heading 0, items
  // re-placed on distinct free cells. The random stream continues across
  // resets, so episode n is reproducible only via the full history (or via
  // set_state). Construction + first reset is a pure function of the seed.
  Observation reset();

  // Advances one step: rotate, then move (walls block), then pick up an item
  // on the entered cell, then refill eaten items every refill_interval steps.
  // Throws std::logic_error if the episode is already done.
  StepResult step(JointAction action);

  Observation observe() const;
  bool done() const { return state_.step_count >= config_.episode_steps; }

  const EnvState& state() const { return state_; }
  void set_state(const EnvState& state);  // throws std::invalid_argument on bad state
  const EnvConfig& config() const { return config_; }

 private:
  void random_free_cell(int& out_x, int& out_y);
  void place_items(int yellow, int blue);
  bool cell_occupied(int x, int y) const;
  void sync_rng_state();  // serialize rng_ into state_.rng_state

  EnvConfig config_;
  EnvState state_;
  bool started_ = false;
  // Engine lives here; EnvState carries its serialized form for save/restore.
  std::mt19937_64 rng_;
};

}  // namespace abcrl
