#include "abcrl/collector_env.hpp"

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "abcrl/actions.hpp"
#include "gtest/gtest.h"

namespace abcrl {
namespace {

EnvConfig small_config(std::uint64_t seed) {
  EnvConfig config;
  config.seed = seed;
  return config;
}

EnvConfig empty_grid_config(std::uint64_t seed) {
  EnvConfig config = small_config(seed);
  config.yellow_count = 0;
  config.blue_count = 0;
  return config;
}

JointAction act(MoveAction move, HorizontalAction rotate) { return JointAction{move, rotate}; }

void expect_states_equal(const EnvState& a, const EnvState& b) {
  EXPECT_EQ(a.agent_x, b.agent_x);
  EXPECT_EQ(a.agent_y, b.agent_y);
  EXPECT_EQ(a.agent_heading, b.agent_heading);
  EXPECT_EQ(a.step_count, b.step_count);
  EXPECT_EQ(a.consumed_yellow, b.consumed_yellow);
  EXPECT_EQ(a.consumed_blue, b.consumed_blue);
  ASSERT_EQ(a.items.size(), b.items.size());
  for (size_t i = 0; i < a.items.size(); ++i) {
    EXPECT_EQ(a.items[i].x, b.items[i].x);
    EXPECT_EQ(a.items[i].y, b.items[i].y);
    EXPECT_EQ(a.items[i].color, b.items[i].color);
  }
  EXPECT_EQ(a.rng_state, b.rng_state);
}

// ---------------------------------------------------------------------------
// Action indexing
// ---------------------------------------------------------------------------

TEST(JointActionIndex, RoundTripsAllNineActions) {
  for (int index = 0; index < kNumJointActions; ++index) {
    EXPECT_EQ(index, joint_action_index(joint_action_from_index(index)));
  }
  EXPECT_EQ(0, joint_action_index(act(MoveAction::Forward, HorizontalAction::TurnLeft)));
  EXPECT_EQ(8, joint_action_index(act(MoveAction::NoMove, HorizontalAction::NoOp)));
  EXPECT_THROW(joint_action_from_index(-1), std::out_of_range);
  EXPECT_THROW(joint_action_from_index(9), std::out_of_range);
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

TEST(EnvConfig, DefaultsDescribeTheStandardArena) {
  EnvConfig config;
  EXPECT_EQ(12, config.grid_size);
  EXPECT_EQ(500, config.episode_steps);
  EXPECT_EQ(72, config.step_angle_deg());
  EXPECT_EQ(20, config.feature_dim());  // 3*5 sectors + 4 walls + bias
  EXPECT_NO_THROW(config.validate());
}

TEST(EnvConfig, RejectsInvalidFields) {
  auto expect_invalid = [](auto mutate) {
    EnvConfig config;
    mutate(config);
    EXPECT_THROW(config.validate(), std::invalid_argument);
  };
  expect_invalid([](EnvConfig& c) { c.grid_size = 3; });
  expect_invalid([](EnvConfig& c) { c.episode_steps = 0; });
  expect_invalid([](EnvConfig& c) { c.yellow_count = -1; });
  expect_invalid([](EnvConfig& c) { c.blue_count = -1; });
  expect_invalid([](EnvConfig& c) { c.refill_interval = 0; });
  expect_invalid([](EnvConfig& c) { c.heading_steps = 0; });
  expect_invalid([](EnvConfig& c) { c.heading_steps = 7; });  // 360 % 7 != 0
  expect_invalid([](EnvConfig& c) { c.observation_radius = 0; });
  expect_invalid([](EnvConfig& c) { c.fov_half_width = -1; });
  expect_invalid([](EnvConfig& c) {
    c.grid_size = 4;  // 16 cells, agent takes one
    c.yellow_count = 8;
    c.blue_count = 8;
  });
}

// ---------------------------------------------------------------------------
// Reset and placement
// ---------------------------------------------------------------------------

TEST(CollectorEnv, ResetCentersTheAgent) {
  CollectorEnv env(small_config(3));
  env.reset();
  EXPECT_EQ(6, env.state().agent_x);
  EXPECT_EQ(6, env.state().agent_y);
  EXPECT_EQ(0, env.state().agent_heading);
  EXPECT_EQ(0, env.state().step_count);
  EXPECT_FALSE(env.done());
}

TEST(CollectorEnv, PlacementIsCollisionFreeAndCorrectlyColored) {
  CollectorEnv env(small_config(99));
  env.reset();
  const EnvState& state = env.state();
  ASSERT_EQ(20u, state.items.size());
  std::set<std::pair<int, int>> cells;
  int yellow = 0;
  for (const Item& item : state.items) {
    EXPECT_GE(item.x, 0);
    EXPECT_LT(item.x, 12);
    EXPECT_GE(item.y, 0);
    EXPECT_LT(item.y, 12);
    EXPECT_TRUE(cells.insert({item.x, item.y}).second) << "duplicate cell";
    EXPECT_FALSE(item.x == state.agent_x && item.y == state.agent_y) << "item under agent";
    if (item.color == ItemColor::Yellow) {
      ++yellow;
    }
  }
  EXPECT_EQ(10, yellow);
}

TEST(CollectorEnv, SameSeedGivesIdenticalRuns) {
  CollectorEnv a(small_config(2024));
  CollectorEnv b(small_config(2024));
  Observation oa = a.reset();
  Observation ob = b.reset();
  EXPECT_EQ(oa, ob);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, kNumJointActions - 1);
  for (int step = 0; step < 200; ++step) {
    JointAction action = joint_action_from_index(pick(rng));
    StepResult ra = a.step(action);
    StepResult rb = b.step(action);
    ASSERT_EQ(ra.reward, rb.reward);
    ASSERT_EQ(ra.observation, rb.observation);
    ASSERT_EQ(ra.done, rb.done);
  }
  expect_states_equal(a.state(), b.state());
}

TEST(CollectorEnv, RngStreamContinuesAcrossResets) {
  CollectorEnv once(small_config(42));
  CollectorEnv twice(small_config(42));
  once.reset();
  twice.reset();
  std::vector<Item> first_layout = twice.state().items;
  twice.reset();
  // First resets agree; the second reset draws fresh placements from the
  // continuing stream rather than replaying the first.
  ASSERT_EQ(first_layout.size(), once.state().items.size());
  bool same_as_first = true;
  for (size_t i = 0; i < first_layout.size(); ++i) {
    same_as_first = same_as_first && first_layout[i].x == twice.state().items[i].x &&
                    first_layout[i].y == twice.state().items[i].y;
  }
  EXPECT_FALSE(same_as_first);
}

// ---------------------------------------------------------------------------
// Movement and rotation
// ---------------------------------------------------------------------------

TEST(CollectorEnv, RotationOnlyChangesHeading) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  // TurnLeft decrements the heading modulo 5; five of them come back around.
  std::vector<int> expected = {4, 3, 2, 1, 0};
  for (int i = 0; i < 5; ++i) {
    StepResult result = env.step(act(MoveAction::NoMove, HorizontalAction::TurnLeft));
    EXPECT_EQ(expected[static_cast<size_t>(i)], env.state().agent_heading);
    EXPECT_EQ(0.0, result.reward);
    EXPECT_EQ(HorizontalAction::TurnLeft, result.rotation);
  }
  EXPECT_EQ(6, env.state().agent_x);
  EXPECT_EQ(6, env.state().agent_y);
}

TEST(CollectorEnv, HeadingsSnapToNearestCardinal) {
  // 72-degree headings against 90-degree cardinals: 0->N, 72->E, 144->S,
  // 216->S (nearest), 288->W.
  struct Case {
    int heading;
    int dx;
    int dy;
  };
  const Case cases[] = {{0, 0, 1}, {1, 1, 0}, {2, 0, -1}, {3, 0, -1}, {4, -1, 0}};
  for (const Case& c : cases) {
    CollectorEnv env(empty_grid_config(1));
    env.reset();
    EnvState state = env.state();
    state.agent_heading = c.heading;
    env.set_state(state);
    env.step(act(MoveAction::Forward, HorizontalAction::NoOp));
    EXPECT_EQ(6 + c.dx, env.state().agent_x) << "heading " << c.heading;
    EXPECT_EQ(6 + c.dy, env.state().agent_y) << "heading " << c.heading;
  }
}

TEST(CollectorEnv, BackwardMovesAgainstTheHeading) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  env.step(act(MoveAction::Backward, HorizontalAction::NoOp));  // heading 0 = north
  EXPECT_EQ(6, env.state().agent_x);
  EXPECT_EQ(5, env.state().agent_y);
}

TEST(CollectorEnv, RotationAppliesBeforeTranslation) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  env.step(act(MoveAction::Forward, HorizontalAction::TurnRight));  // heading 1 = east
  EXPECT_EQ(7, env.state().agent_x);
  EXPECT_EQ(6, env.state().agent_y);
}

TEST(CollectorEnv, WallsBlockMovement) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  EnvState state = env.state();
  state.agent_x = 0;
  state.agent_y = 0;
  state.agent_heading = 2;  // faces south
  env.set_state(state);
  StepResult result = env.step(act(MoveAction::Forward, HorizontalAction::NoOp));
  EXPECT_EQ(0, env.state().agent_x);
  EXPECT_EQ(0, env.state().agent_y);
  EXPECT_EQ(0.0, result.reward);
}

TEST(CollectorEnv, IdleActionOnlyAdvancesTheClock) {
  CollectorEnv env(small_config(12));
  Observation before_obs = env.reset();
  EnvState before = env.state();
  StepResult result = env.step(act(MoveAction::NoMove, HorizontalAction::NoOp));
  EnvState after = env.state();
  EXPECT_EQ(before.step_count + 1, after.step_count);
  after.step_count = before.step_count;
  expect_states_equal(before, after);
  EXPECT_EQ(before_obs, result.observation);
  EXPECT_EQ(0.0, result.reward);
}

// ---------------------------------------------------------------------------
// Consumption, rewards, refill
// ---------------------------------------------------------------------------

TEST(CollectorEnv, SteppingOntoYellowPaysOne) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  EnvState state = env.state();
  state.items = {{6, 7, ItemColor::Yellow}};
  env.set_state(state);
  StepResult result = env.step(act(MoveAction::Forward, HorizontalAction::NoOp));
  EXPECT_EQ(1.0, result.reward);
  EXPECT_TRUE(env.state().items.empty());
  EXPECT_EQ(1, env.state().consumed_yellow);
  EXPECT_EQ(0, env.state().consumed_blue);
}

TEST(CollectorEnv, SteppingOntoBlueCostsOne) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  EnvState state = env.state();
  state.items = {{6, 7, ItemColor::Blue}};
  env.set_state(state);
  StepResult result = env.step(act(MoveAction::Forward, HorizontalAction::NoOp));
  EXPECT_EQ(-1.0, result.reward);
  EXPECT_TRUE(env.state().items.empty());
  EXPECT_EQ(0, env.state().consumed_yellow);
  EXPECT_EQ(1, env.state().consumed_blue);
}

TEST(CollectorEnv, RewardsStayInUnitBand) {
  CollectorEnv env(small_config(505));
  env.reset();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, kNumJointActions - 1);
  while (!env.done()) {
    StepResult result = env.step(joint_action_from_index(pick(rng)));
    ASSERT_TRUE(result.reward == -1.0 || result.reward == 0.0 || result.reward == 1.0);
  }
}

TEST(CollectorEnv, ConsumedItemsRespawnAtTheRefillBoundary) {
  EnvConfig config = empty_grid_config(1);
  config.refill_interval = 4;
  CollectorEnv env(config);
  env.reset();
  EnvState state = env.state();
  state.items = {{6, 7, ItemColor::Yellow}};
  env.set_state(state);

  env.step(act(MoveAction::Forward, HorizontalAction::NoOp));  // consume at step 1
  EXPECT_TRUE(env.state().items.empty());
  env.step(act(MoveAction::NoMove, HorizontalAction::NoOp));  // step 2
  env.step(act(MoveAction::NoMove, HorizontalAction::NoOp));  // step 3
  EXPECT_TRUE(env.state().items.empty());
  env.step(act(MoveAction::NoMove, HorizontalAction::NoOp));  // step 4: refill
  ASSERT_EQ(1u, env.state().items.size());
  EXPECT_EQ(ItemColor::Yellow, env.state().items[0].color);
  EXPECT_EQ(0, env.state().consumed_yellow);
}

TEST(CollectorEnv, ItemsAreConservedUpToRefillAccounting) {
  EnvConfig config = small_config(777);
  config.refill_interval = 10;
  CollectorEnv env(config);
  env.reset();
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> pick(0, kNumJointActions - 1);
  for (int step = 0; step < 300; ++step) {
    env.step(joint_action_from_index(pick(rng)));
    const EnvState& state = env.state();
    int live_yellow = 0;
    int live_blue = 0;
    for (const Item& item : state.items) {
      (item.color == ItemColor::Yellow ? live_yellow : live_blue) += 1;
    }
    ASSERT_EQ(10, live_yellow + state.consumed_yellow);
    ASSERT_EQ(10, live_blue + state.consumed_blue);
  }
}

TEST(CollectorEnv, RefillWithoutConsumptionDrawsNothing) {
  EnvConfig config = empty_grid_config(6);
  config.refill_interval = 2;
  CollectorEnv env(config);
  env.reset();
  std::string rng_before = env.state().rng_state;
  for (int step = 0; step < 10; ++step) {
    env.step(act(MoveAction::NoMove, HorizontalAction::NoOp));
  }
  EXPECT_EQ(rng_before, env.state().rng_state);
  EXPECT_TRUE(env.state().items.empty());
}

// ---------------------------------------------------------------------------
// Episode lifecycle
// ---------------------------------------------------------------------------

TEST(CollectorEnv, StepBeforeResetThrows) {
  CollectorEnv env(small_config(1));
  EXPECT_THROW(env.step(act(MoveAction::NoMove, HorizontalAction::NoOp)), std::logic_error);
}

TEST(CollectorEnv, EpisodeEndsAfterConfiguredSteps) {
  EnvConfig config = empty_grid_config(1);
  config.episode_steps = 3;
  CollectorEnv env(config);
  env.reset();
  EXPECT_FALSE(env.step(act(MoveAction::NoMove, HorizontalAction::NoOp)).done);
  EXPECT_FALSE(env.step(act(MoveAction::NoMove, HorizontalAction::NoOp)).done);
  EXPECT_TRUE(env.step(act(MoveAction::NoMove, HorizontalAction::NoOp)).done);
  EXPECT_TRUE(env.done());
  EXPECT_THROW(env.step(act(MoveAction::NoMove, HorizontalAction::NoOp)), std::logic_error);
  env.reset();  // a fresh episode is allowed
  EXPECT_FALSE(env.done());
}

TEST(CollectorEnv, SetStateRoundTripsAndContinuesDeterministically) {
  CollectorEnv original(small_config(31337));
  original.reset();
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> pick(0, kNumJointActions - 1);
  for (int step = 0; step < 50; ++step) {
    original.step(joint_action_from_index(pick(rng)));
  }

  CollectorEnv resumed(small_config(0));  // seed is irrelevant once state is set
  resumed.set_state(original.state());
  expect_states_equal(original.state(), resumed.state());
  EXPECT_EQ(original.observe(), resumed.observe());

  for (int step = 0; step < 150; ++step) {
    JointAction action = joint_action_from_index(pick(rng));
    StepResult ra = original.step(action);
    StepResult rb = resumed.step(action);
    ASSERT_EQ(ra.reward, rb.reward);
    ASSERT_EQ(ra.observation, rb.observation);
  }
  expect_states_equal(original.state(), resumed.state());
}

TEST(CollectorEnv, SetStateRejectsCorruptStates) {
  CollectorEnv env(small_config(4));
  env.reset();
  EnvState good = env.state();

  EnvState bad = good;
  bad.agent_x = 12;
  EXPECT_THROW(env.set_state(bad), std::invalid_argument);

  bad = good;
  bad.agent_heading = 5;
  EXPECT_THROW(env.set_state(bad), std::invalid_argument);

  bad = good;
  bad.step_count = 501;
  EXPECT_THROW(env.set_state(bad), std::invalid_argument);

  bad = good;
  bad.consumed_yellow = -1;
  EXPECT_THROW(env.set_state(bad), std::invalid_argument);

  bad = good;
  bad.items = {{3, 3, ItemColor::Yellow}, {3, 3, ItemColor::Blue}};
  EXPECT_THROW(env.set_state(bad), std::invalid_argument);

  bad = good;
  bad.rng_state = "not a generator";
  EXPECT_THROW(env.set_state(bad), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Observations
// ---------------------------------------------------------------------------

TEST(CollectorEnv, ObservationLayoutOnEmptyGrid) {
  CollectorEnv env(empty_grid_config(1));
  Observation obs = env.reset();
  ASSERT_EQ(20u, obs.size());
  EXPECT_EQ(1.0, obs[0]);  // heading one-hot, facing sector 0
  for (size_t i = 1; i < 15; ++i) {
    EXPECT_EQ(0.0, obs[i]) << "slot " << i;
  }
  // Agent at (6,6) on a 12-grid: span 11, five cells to the north/east walls.
  EXPECT_DOUBLE_EQ(1.0 - 5.0 / 11.0, obs[15]);  // north
  EXPECT_DOUBLE_EQ(1.0 - 5.0 / 11.0, obs[16]);  // east
  EXPECT_DOUBLE_EQ(1.0 - 6.0 / 11.0, obs[17]);  // south
  EXPECT_DOUBLE_EQ(1.0 - 6.0 / 11.0, obs[18]);  // west
  EXPECT_EQ(1.0, obs[19]);  // bias
}

TEST(CollectorEnv, HeadingOneHotTracksRotation) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  Observation obs = env.step(act(MoveAction::NoMove, HorizontalAction::TurnRight)).observation;
  EXPECT_EQ(0.0, obs[0]);
  EXPECT_EQ(1.0, obs[1]);
}

TEST(CollectorEnv, WallProximityReachesOneAtTheWall) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  EnvState state = env.state();
  state.agent_x = 0;
  state.agent_y = 11;
  env.set_state(state);
  Observation obs = env.observe();
  EXPECT_DOUBLE_EQ(1.0, obs[15]);  // at the north wall
  EXPECT_DOUBLE_EQ(0.0, obs[16]);  // farthest from the east wall
  EXPECT_DOUBLE_EQ(0.0, obs[17]);
  EXPECT_DOUBLE_EQ(1.0, obs[18]);  // at the west wall
}

TEST(CollectorEnv, ItemAheadLandsInForwardSectorWithLinearProximity) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  EnvState state = env.state();
  state.items = {{6, 8, ItemColor::Yellow}};  // two cells north, dead ahead
  env.set_state(state);
  Observation obs = env.observe();
  EXPECT_DOUBLE_EQ((6.0 - 2.0) / 6.0, obs[5]);  // yellow, sector 0
  EXPECT_EQ(0.0, obs[10]);                      // no blue anywhere
}

TEST(CollectorEnv, BlueAndYellowUseSeparateChannels) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  EnvState state = env.state();
  // Two cells east: bearing 90 deg, sector round(90/72) = 1.
  state.items = {{8, 6, ItemColor::Blue}};
  env.set_state(state);
  Observation obs = env.observe();
  EXPECT_DOUBLE_EQ((6.0 - 2.0) / 6.0, obs[11]);  // blue, sector 1
  EXPECT_EQ(0.0, obs[6]);                        // yellow sector 1 stays empty
}

TEST(CollectorEnv, ItemsBehindAreMaskedUntilTheAgentTurns) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  EnvState state = env.state();
  state.items = {{6, 4, ItemColor::Yellow}};  // two cells south, directly behind
  env.set_state(state);
  Observation masked = env.observe();
  for (size_t i = 5; i < 15; ++i) {
    EXPECT_EQ(0.0, masked[i]) << "slot " << i;
  }
  // Two right turns face heading 2 (144 deg); the item is now one sector off.
  env.step(act(MoveAction::NoMove, HorizontalAction::TurnRight));
  Observation still_masked = env.observe();
  for (size_t i = 5; i < 15; ++i) {
    EXPECT_EQ(0.0, still_masked[i]) << "slot " << i;
  }
  Observation revealed = env.step(act(MoveAction::NoMove, HorizontalAction::TurnRight)).observation;
  EXPECT_DOUBLE_EQ((6.0 - 2.0) / 6.0, revealed[6]);  // yellow, sector 1
}

TEST(CollectorEnv, ItemsAtOrBeyondTheSensingRadiusAreInvisible) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  EnvState state = env.state();
  state.items = {{6, 0, ItemColor::Yellow}};  // six cells south: dist == radius
  state.agent_heading = 2;                    // face it directly
  env.set_state(state);
  Observation obs = env.observe();
  for (size_t i = 5; i < 15; ++i) {
    EXPECT_EQ(0.0, obs[i]) << "slot " << i;
  }
  state.items = {{6, 1, ItemColor::Yellow}};  // five cells: inside the radius
  env.set_state(state);
  obs = env.observe();
  // Bearing 180 against heading 144 rounds to the adjacent sector 1.
  EXPECT_DOUBLE_EQ((6.0 - 5.0) / 6.0, obs[6]);
}

TEST(CollectorEnv, NearestItemDominatesASharedSector) {
  CollectorEnv env(empty_grid_config(1));
  env.reset();
  EnvState state = env.state();
  state.items = {{6, 8, ItemColor::Yellow}, {6, 10, ItemColor::Yellow}};
  env.set_state(state);
  Observation obs = env.observe();
  EXPECT_DOUBLE_EQ((6.0 - 2.0) / 6.0, obs[5]);  // max of 4/6 and 2/6
}

}  // namespace
}  // namespace abcrl
