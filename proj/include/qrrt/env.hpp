#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrrt/geometry.hpp"
#include "qrrt/rng.hpp"

namespace qrrt {

/// Uniform bucket grid over the workspace bounds. Each obstacle is registered
/// in every cell its (slightly padded) footprint overlaps, so a walk over the
/// cells crossed by a segment sees every obstacle the segment can touch.
class ObstacleGrid {
public:
    ObstacleGrid() = default;
    ObstacleGrid(const Rect& bounds, const std::vector<Rect>& obstacles);

    bool enabled() const noexcept { return nx_ > 0; }

    /// Calls visit(obstacle_index) for candidate obstacles along [a, b];
    /// stops early and returns true as soon as visit returns true.
    template <typename Visit>
    bool any_along(Point a, Point b, Visit&& visit) const;

    template <typename Visit>
    bool any_at(Point p, Visit&& visit) const
    {
        for (auto id : cell(cell_x(p.x), cell_y(p.y))) {
            if (visit(id)) {
                return true;
            }
        }
        return false;
    }

private:
    int cell_x(double x) const noexcept;
    int cell_y(double y) const noexcept;
    const std::vector<std::uint32_t>& cell(int ix, int iy) const
    {
        return cells_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
                      static_cast<std::size_t>(ix)];
    }

    Rect bounds_{};
    int nx_ = 0;
    int ny_ = 0;
    double cw_ = 0.0;
    double ch_ = 0.0;
    std::vector<std::vector<std::uint32_t>> cells_;
};

/// Planar configuration space with closed rectangular obstacles. Immutable
/// once constructed, so it can be shared read-only between workers.
class Environment {
public:
    /// Throws std::invalid_argument when an invariant does not hold: bounds
    /// with positive area, obstacles inside bounds with positive extent, start
    /// and goal inside bounds and outside every obstacle, delta > 0.
    Environment(Rect bounds, std::vector<Rect> obstacles, Point start, Point goal,
                double delta, std::uint64_t seed);

    const Rect& bounds() const noexcept { return bounds_; }
    const std::vector<Rect>& obstacles() const noexcept { return obstacles_; }
    Point start() const noexcept { return start_; }
    Point goal() const noexcept { return goal_; }
    double delta() const noexcept { return delta_; }
    std::uint64_t seed() const noexcept { return seed_; }

    bool point_free(Point p) const noexcept;
    bool segment_free(Point a, Point b) const noexcept;

    /// Reference implementation of segment_free that tests every obstacle.
    bool segment_free_linear(Point a, Point b) const noexcept;

private:
    Rect bounds_;
    std::vector<Rect> obstacles_;
    Point start_;
    Point goal_;
    double delta_;
    std::uint64_t seed_;
    ObstacleGrid grid_;
};

inline bool point_free(const Environment& env, Point p) noexcept { return env.point_free(p); }
inline bool segment_free(const Environment& env, Point a, Point b) noexcept
{
    return env.segment_free(a, b);
}

/// Uniform over the rectangle; obstacles are not rejected here.
/// Throws std::invalid_argument for zero-area bounds.
Point sample_uniform(const Rect& bounds, Rng& rng);
inline Point sample_uniform(const Environment& env, Rng& rng) { return sample_uniform(env.bounds(), rng); }

struct CorridorSpec {
    double width = 1.0;
    /// Length along x of the two walls forming the passage, centred in bounds.
    double length = 8.0;
};

struct EnvironmentSpec {
    Rect bounds{0.0, 0.0, 20.0, 20.0};
    std::size_t obstacle_count = 0;
    double size_min = 0.5;
    double size_max = 2.0;
    std::optional<CorridorSpec> corridor;
    double delta = 0.5;
    /// Regions the start and goal are drawn from; whole bounds when absent.
    std::optional<Rect> start_region;
    std::optional<Rect> goal_region;
};

inline constexpr int kPlacementRetries = 10000;

/// Corridor passage rectangle (the gap between the two walls).
Rect corridor_gap(const EnvironmentSpec& spec);

/// Random environment. Throws std::invalid_argument for an inconsistent spec
/// and std::runtime_error if start/goal placement fails after kPlacementRetries.
Environment generate_random_env(const EnvironmentSpec& spec, std::uint64_t seed);

// --- ObstacleGrid template ---------------------------------------------------

template <typename Visit>
bool ObstacleGrid::any_along(Point a, Point b, Visit&& visit) const
{
    int ix = cell_x(a.x);
    int iy = cell_y(a.y);
    const int ex = cell_x(b.x);
    const int ey = cell_y(b.y);

    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
    const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
    constexpr double inf = 1e300;
    const double delta_x = step_x != 0 ? cw_ / std::abs(dx) : inf;
    const double delta_y = step_y != 0 ? ch_ / std::abs(dy) : inf;
    double next_x = inf;
    double next_y = inf;
    if (step_x != 0) {
        const double edge = bounds_.xmin + (ix + (step_x > 0 ? 1 : 0)) * cw_;
        next_x = (edge - a.x) / dx;
    }
    if (step_y != 0) {
        const double edge = bounds_.ymin + (iy + (step_y > 0 ? 1 : 0)) * ch_;
        next_y = (edge - a.y) / dy;
    }

    for (int guard = 0; guard < nx_ + ny_ + 4; ++guard) {
        for (auto id : cell(ix, iy)) {
            if (visit(id)) {
                return true;
            }
        }
        if ((ix == ex && iy == ey) || (next_x > 1.0 && next_y > 1.0)) {
            break;
        }
        if (next_x < next_y) {
            ix += step_x;
            next_x += delta_x;
        } else {
            iy += step_y;
            next_y += delta_y;
        }
        if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) {
            break;
        }
    }
    return false;
}

} // namespace qrrt
