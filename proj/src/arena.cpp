#include "swarmsel/arena.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace swarmsel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Distance along the unit ray (o, d) to the segment, or +inf.
double ray_segment(Vec2 o, Vec2 d, const Segment& s) {
    const Vec2 e{s.b.x - s.a.x, s.b.y - s.a.y};
    const double denom = cross(d, e);
    if (denom == 0.0) return kInf;  // parallel
    const Vec2 ao{s.a.x - o.x, s.a.y - o.y};
    const double t = cross(ao, e) / denom;
    const double u = cross(ao, d) / denom;
    if (t < 0.0 || u < 0.0 || u > 1.0) return kInf;
    return t;
}

// Distance along the unit ray to the first point of the disc, 0 if the
// origin is inside it, or +inf.
double ray_circle(Vec2 o, Vec2 d, Vec2 c, double r) {
    const double ox = c.x - o.x;
    const double oy = c.y - o.y;
    const double oc2 = ox * ox + oy * oy;
    const double r2 = r * r;
    if (oc2 <= r2) return 0.0;
    const double tca = ox * d.x + oy * d.y;
    if (tca < 0.0) return kInf;
    const double perp2 = oc2 - tca * tca;
    if (perp2 > r2) return kInf;
    return tca - std::sqrt(r2 - perp2);
}

double to_reading(double hit_from_centre, double agent_radius, double range) {
    const double surface = std::clamp(hit_from_centre - agent_radius, 0.0, range);
    return surface / range;
}

template <typename OthersFn>
SensorReading sense_impl(const Arena& arena, const Pose& self, TaskKind task, OthersFn&& for_others) {
    const ArenaParams& p = arena.params();
    const Vec2 o{self.x, self.y};
    const double reach = p.sensor_range + p.agent_radius;

    // Only discs that some ray could reach within range are tested.
    thread_local std::vector<Vec2> near_agents;
    thread_local std::vector<Vec2> near_food;
    near_agents.clear();
    near_food.clear();

    const double agent_cut = reach + p.agent_radius;
    for_others([&](const Pose& q) {
        const double dx = q.x - o.x;
        const double dy = q.y - o.y;
        if (dx * dx + dy * dy <= agent_cut * agent_cut) near_agents.push_back({q.x, q.y});
    });
    const bool foraging = task == TaskKind::Foraging;
    if (foraging) {
        const double food_cut = reach + p.food_radius;
        for (const Vec2& f : arena.food()) {
            const double dx = f.x - o.x;
            const double dy = f.y - o.y;
            if (dx * dx + dy * dy <= food_cut * food_cut) near_food.push_back(f);
        }
    }

    // Walls whose nearest point is beyond reach cannot be hit within range.
    thread_local std::vector<Segment> near_walls;
    near_walls.clear();
    for (const Segment& s : arena.walls())
        if (point_segment_distance(o, s) <= reach) near_walls.push_back(s);

    // Ray k is the heading direction rotated k times by 45 degrees.
    constexpr double kC = std::numbers::sqrt2 / 2.0;
    Vec2 d{std::cos(self.heading), std::sin(self.heading)};

    SensorReading out;
    out.food.fill(1.0);
    for (std::size_t k = 0; k < kNumRays; ++k) {
        if (k > 0) d = {kC * (d.x - d.y), kC * (d.x + d.y)};

        double hit = kInf;
        for (const Segment& s : near_walls) hit = std::min(hit, ray_segment(o, d, s));
        for (const Vec2& c : near_agents) hit = std::min(hit, ray_circle(o, d, c, p.agent_radius));
        out.proximity[k] = to_reading(hit, p.agent_radius, p.sensor_range);

        if (foraging) {
            double food_hit = kInf;
            for (const Vec2& c : near_food) food_hit = std::min(food_hit, ray_circle(o, d, c, p.food_radius));
            out.food[k] = to_reading(food_hit, p.agent_radius, p.sensor_range);
        }
    }
    return out;
}

}  // namespace

std::string_view to_token(TaskKind task) {
    return task == TaskKind::Navigation ? "navigation" : "foraging";
}

TaskKind parse_task(std::string_view token) {
    if (token == "navigation") return TaskKind::Navigation;
    if (token == "foraging") return TaskKind::Foraging;
    throw std::invalid_argument("unknown task '" + std::string(token) + "' (expected navigation|foraging)");
}

double normalize_angle(double radians) {
    if (radians >= -kPi && radians < kPi) return radians;
    double a = std::fmod(radians + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    a -= kPi;
    // fmod rounding can land exactly on +pi.
    if (a >= kPi) a -= 2.0 * kPi;
    return a;
}

std::vector<Segment> ArenaParams::default_obstacles() {
    return {
        {{250.0, 250.0}, {450.0, 250.0}},
        {{750.0, 250.0}, {750.0, 450.0}},
        {{550.0, 750.0}, {750.0, 750.0}},
        {{250.0, 550.0}, {250.0, 750.0}},
    };
}

Arena::Arena(ArenaParams params) : params_(std::move(params)) {
    if (!(params_.width > 0.0) || !(params_.height > 0.0))
        throw ArenaError("arena width and height must be positive");
    const double w = params_.width;
    const double h = params_.height;
    walls_ = {
        {{0.0, 0.0}, {w, 0.0}},
        {{w, 0.0}, {w, h}},
        {{w, h}, {0.0, h}},
        {{0.0, h}, {0.0, 0.0}},
    };
    walls_.insert(walls_.end(), params_.obstacles.begin(), params_.obstacles.end());
}

void Arena::scatter_food(std::size_t count, Rng& rng) {
    food_.clear();
    food_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) food_.push_back(random_valid_position(rng, params_.agent_radius));
}

bool Arena::position_valid(Vec2 p, double clearance) const {
    if (p.x < clearance || p.y < clearance || p.x > params_.width - clearance || p.y > params_.height - clearance)
        return false;
    for (const Segment& s : walls_)
        if (point_segment_distance(p, s) < clearance) return false;
    return true;
}

Vec2 Arena::random_valid_position(Rng& rng, double clearance) const {
    for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
        const Vec2 p{rng.uniform(0.0, params_.width), rng.uniform(0.0, params_.height)};
        if (position_valid(p, clearance)) return p;
    }
    throw ArenaError("could not find a free position after " + std::to_string(kMaxPlacementAttempts) +
                     " attempts; arena too crowded");
}

double point_segment_distance(Vec2 p, const Segment& s) {
    const double ex = s.b.x - s.a.x;
    const double ey = s.b.y - s.a.y;
    const double len2 = ex * ex + ey * ey;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((p.x - s.a.x) * ex + (p.y - s.a.y) * ey) / len2, 0.0, 1.0);
    const double dx = p.x - (s.a.x + t * ex);
    const double dy = p.y - (s.a.y + t * ey);
    return std::sqrt(dx * dx + dy * dy);
}

SensorReading sense(const Arena& arena, const Pose& self, std::span<const Pose> others, TaskKind task) {
    assert(self.x >= 0.0 && self.x <= arena.params().width && self.y >= 0.0 && self.y <= arena.params().height);
    return sense_impl(arena, self, task, [&](auto&& visit) {
        for (const Pose& q : others) visit(q);
    });
}

SensorReading sense(const Arena& arena, std::span<const Pose> poses, std::size_t self, TaskKind task) {
    const Pose& me = poses[self];
    assert(me.x >= 0.0 && me.x <= arena.params().width && me.y >= 0.0 && me.y <= arena.params().height);
    return sense_impl(arena, me, task, [&](auto&& visit) {
        for (std::size_t j = 0; j < poses.size(); ++j)
            if (j != self) visit(poses[j]);
    });
}

Pose step_kinematics(const Arena& arena, const Pose& pose, double v_trans, double v_rot) {
    assert(v_trans >= -1.0 && v_trans <= 1.0 && v_rot >= -1.0 && v_rot <= 1.0);
    const ArenaParams& p = arena.params();
    Pose next = pose;
    next.heading = normalize_angle(pose.heading + v_rot * p.theta_max);
    if (v_trans == 0.0) return next;
    const double dist = v_trans * p.v_max;
    const Vec2 candidate{pose.x + dist * std::cos(next.heading), pose.y + dist * std::sin(next.heading)};
    if (arena.position_valid(candidate, p.agent_radius)) {
        next.x = candidate.x;
        next.y = candidate.y;
    }
    return next;
}

int collect_food(Arena& arena, const Pose& agent, Rng& rng) {
    const ArenaParams& p = arena.params();
    const double reach = p.agent_radius + p.food_radius;
    const auto items = arena.food();
    int taken = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const double dx = items[i].x - agent.x;
        const double dy = items[i].y - agent.y;
        if (dx * dx + dy * dy <= reach * reach) {
            arena.respawn_food(i, rng);
            ++taken;
        }
    }
    return taken;
}

std::vector<std::size_t> agents_within(std::span<const Pose> poses, std::size_t self, double radius) {
    std::vector<std::size_t> out;
    const Pose& c = poses[self];
    const double r2 = radius * radius;
    for (std::size_t j = 0; j < poses.size(); ++j) {
        if (j == self) continue;
        const double dx = poses[j].x - c.x;
        const double dy = poses[j].y - c.y;
        if (dx * dx + dy * dy <= r2) out.push_back(j);
    }
    return out;
}

}  // namespace swarmsel
