#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swarmsel/rng.hpp"

namespace swarmsel {

enum class TaskKind { Navigation, Foraging };

std::string_view to_token(TaskKind task);
TaskKind parse_task(std::string_view token);  // throws std::invalid_argument

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Segment {
    Vec2 a;
    Vec2 b;
};

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;  // radians, kept in [-pi, pi)
};

// Maps any finite angle into [-pi, pi).
double normalize_angle(double radians);

inline constexpr std::size_t kNumRays = 8;

struct SensorReading {
    std::array<double, kNumRays> proximity{};
    std::array<double, kNumRays> food{};  // all 1.0 outside the foraging task
};

// Geometry and sensing parameters for one world.
struct ArenaParams {
    double width = 1000.0;
    double height = 1000.0;
    std::vector<Segment> obstacles = default_obstacles();
    double agent_radius = 5.0;
    double food_radius = 5.0;
    double sensor_range = 64.0;
    double v_max = 2.0;                              // world-units per step
    double theta_max = std::numbers::pi / 8.0;       // radians per step

    static std::vector<Segment> default_obstacles();
};

class ArenaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bounded rectangle [0,width]x[0,height] with static obstacle segments and a
// constant-size set of food items.
class Arena {
public:
    explicit Arena(ArenaParams params);

    const ArenaParams& params() const { return params_; }
    // Boundary walls followed by the interior obstacles.
    std::span<const Segment> walls() const { return walls_; }
    std::span<const Vec2> food() const { return food_; }

    void set_food(std::vector<Vec2> items) { food_ = std::move(items); }
    // Replaces the food list with `count` uniformly placed valid items.
    void scatter_food(std::size_t count, Rng& rng);
    // Moves item i to a fresh uniformly sampled valid position.
    void respawn_food(std::size_t i, Rng& rng) { food_[i] = random_valid_position(rng, params_.agent_radius); }

    // Inside the rectangle and at least `clearance` from every wall.
    bool position_valid(Vec2 p, double clearance) const;
    Vec2 random_valid_position(Rng& rng, double clearance) const;

    static constexpr int kMaxPlacementAttempts = 10000;

private:
    ArenaParams params_;
    std::vector<Segment> walls_;
    std::vector<Vec2> food_;
};

double point_segment_distance(Vec2 p, const Segment& s);

// Eight rays at heading + k*45deg. Readings are the distance from the agent's
// surface to the first hit, saturated at sensor_range and scaled to [0,1].
// Proximity rays see walls and the other agents' discs; food rays see food
// discs only.
SensorReading sense(const Arena& arena, const Pose& self, std::span<const Pose> others,
                    TaskKind task);
// Same, with the other agents given as every pose except index `self`.
SensorReading sense(const Arena& arena, std::span<const Pose> poses, std::size_t self,
                    TaskKind task);

// One kinematic step. Commands must lie in [-1,1]. Rotation always applies;
// translation is cancelled if the moved disc would touch a wall.
Pose step_kinematics(const Arena& arena, const Pose& pose, double v_trans, double v_rot);

// Removes and respawns every item whose centre is within
// agent_radius + food_radius of the agent centre. Returns the number taken.
int collect_food(Arena& arena, const Pose& agent, Rng& rng);

// Indices j != self with |p_j - p_self| <= radius. No line-of-sight test.
std::vector<std::size_t> agents_within(std::span<const Pose> poses, std::size_t self,
                                       double radius);

}  // namespace swarmsel
