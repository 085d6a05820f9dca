#pragma once

#include <cstdint>
#include <stdexcept>

namespace abcrl {

// Rotation channel of the action space. TurnLeft and TurnRight are opposite
// of each other; NoOp is opposite of nothing.
enum class HorizontalAction : std::uint8_t { TurnLeft = 0, TurnRight = 1, NoOp = 2 };

// Translation channel of the action space.
enum class MoveAction : std::uint8_t { Forward = 0, Backward = 1, NoMove = 2 };

inline bool opposite(HorizontalAction a, HorizontalAction b) {
  return (a == HorizontalAction::TurnLeft && b == HorizontalAction::TurnRight) ||
         (a == HorizontalAction::TurnRight && b == HorizontalAction::TurnLeft);
}

// One (move, rotate) pair; 9 combinations total.
struct JointAction {
  MoveAction move = MoveAction::NoMove;
  HorizontalAction rotate = HorizontalAction::NoOp;

  bool operator==(const JointAction&) const = default;
};

inline constexpr int kNumJointActions = 9;

// Joint actions are indexed move-major: index = 3*move + rotate.
inline int joint_action_index(const JointAction& a) {
  return 3 * static_cast<int>(a.move) + static_cast<int>(a.rotate);
}

inline JointAction joint_action_from_index(int index) {
  if (index < 0 || index >= kNumJointActions) {
    throw std::out_of_range("joint action index out of range");
  }
  return JointAction{static_cast<MoveAction>(index / 3),
                     static_cast<HorizontalAction>(index % 3)};
}

}  // namespace abcrl
