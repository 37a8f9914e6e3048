#include "qrrt/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qrrt {

namespace {

constexpr std::size_t kLinearScanLimit = 48;

bool valid_rect(const Rect& r)
{
    return std::isfinite(r.xmin) && std::isfinite(r.ymin) && std::isfinite(r.xmax) &&
           std::isfinite(r.ymax) && r.xmax > r.xmin && r.ymax > r.ymin;
}

} // namespace

ObstacleGrid::ObstacleGrid(const Rect& bounds, const std::vector<Rect>& obstacles)
    : bounds_(bounds)
{
    const auto side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(obstacles.size()))));
    nx_ = std::clamp(side, 1, 256);
    ny_ = nx_;
    cw_ = bounds.width() / nx_;
    ch_ = bounds.height() / ny_;
    cells_.resize(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_));

    // Padding absorbs rounding in the cell walk for segments that run along
    // or through a cell boundary.
    const double pad_x = cw_ * 1e-7;
    const double pad_y = ch_ * 1e-7;
    for (std::size_t id = 0; id < obstacles.size(); ++id) {
        const Rect& o = obstacles[id];
        const int x0 = cell_x(o.xmin - pad_x);
        const int x1 = cell_x(o.xmax + pad_x);
        const int y0 = cell_y(o.ymin - pad_y);
        const int y1 = cell_y(o.ymax + pad_y);
        for (int iy = y0; iy <= y1; ++iy) {
            for (int ix = x0; ix <= x1; ++ix) {
                cells_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
                       static_cast<std::size_t>(ix)]
                    .push_back(static_cast<std::uint32_t>(id));
            }
        }
    }
}

int ObstacleGrid::cell_x(double x) const noexcept
{
    const auto i = static_cast<int>(std::floor((x - bounds_.xmin) / cw_));
    return std::clamp(i, 0, nx_ - 1);
}

int ObstacleGrid::cell_y(double y) const noexcept
{
    const auto i = static_cast<int>(std::floor((y - bounds_.ymin) / ch_));
    return std::clamp(i, 0, ny_ - 1);
}

Environment::Environment(Rect bounds, std::vector<Rect> obstacles, Point start, Point goal,
                         double delta, std::uint64_t seed)
    : bounds_(bounds), obstacles_(std::move(obstacles)), start_(start), goal_(goal),
      delta_(delta), seed_(seed)
{
    if (!valid_rect(bounds_)) {
        throw std::invalid_argument("environment bounds must have positive finite extent");
    }
    for (std::size_t i = 0; i < obstacles_.size(); ++i) {
        if (!valid_rect(obstacles_[i]) || !bounds_.contains(obstacles_[i])) {
            throw std::invalid_argument("obstacle " + std::to_string(i) +
                                        " is degenerate or not contained in bounds");
        }
    }
    if (!(delta_ > 0.0) || !std::isfinite(delta_)) {
        throw std::invalid_argument("goal radius delta must be positive");
    }
    if (obstacles_.size() > kLinearScanLimit) {
        grid_ = ObstacleGrid(bounds_, obstacles_);
    }
    if (!is_finite(start_) || !point_free(start_)) {
        throw std::invalid_argument("start must lie in bounds and outside every obstacle");
    }
    if (!is_finite(goal_) || !point_free(goal_)) {
        throw std::invalid_argument("goal must lie in bounds and outside every obstacle");
    }
}

bool Environment::point_free(Point p) const noexcept
{
    if (!bounds_.contains(p)) {
        return false;
    }
    if (grid_.enabled()) {
        return !grid_.any_at(p, [&](std::uint32_t id) { return obstacles_[id].contains(p); });
    }
    return std::none_of(obstacles_.begin(), obstacles_.end(),
                        [&](const Rect& o) { return o.contains(p); });
}

bool Environment::segment_free(Point a, Point b) const noexcept
{
    // Bounds are convex: both endpoints inside keeps the segment inside.
    if (!bounds_.contains(a) || !bounds_.contains(b)) {
        return false;
    }
    if (grid_.enabled()) {
        return !grid_.any_along(
            a, b, [&](std::uint32_t id) { return segment_intersects_rect(a, b, obstacles_[id]); });
    }
    return segment_free_linear(a, b);
}

bool Environment::segment_free_linear(Point a, Point b) const noexcept
{
    if (!bounds_.contains(a) || !bounds_.contains(b)) {
        return false;
    }
    return std::none_of(obstacles_.begin(), obstacles_.end(),
                        [&](const Rect& o) { return segment_intersects_rect(a, b, o); });
}

Point sample_uniform(const Rect& bounds, Rng& rng)
{
    if (!(bounds.area() > 0.0)) {
        throw std::invalid_argument("cannot sample from zero-area bounds");
    }
    const double x = rng.uniform(bounds.xmin, bounds.xmax);
    const double y = rng.uniform(bounds.ymin, bounds.ymax);
    return {x, y};
}

Rect corridor_gap(const EnvironmentSpec& spec)
{
    if (!spec.corridor) {
        throw std::invalid_argument("environment spec has no corridor");
    }
    const Point c = spec.bounds.center();
    const double half_l = spec.corridor->length / 2;
    const double half_w = spec.corridor->width / 2;
    return {c.x - half_l, c.y - half_w, c.x + half_l, c.y + half_w};
}

Environment generate_random_env(const EnvironmentSpec& spec, std::uint64_t seed)
{
    if (!valid_rect(spec.bounds)) {
        throw std::invalid_argument("generator bounds must have positive extent");
    }
    if (!(spec.size_min > 0.0) || spec.size_max < spec.size_min ||
        spec.size_max > std::min(spec.bounds.width(), spec.bounds.height())) {
        throw std::invalid_argument("obstacle size range must satisfy 0 < min <= max <= bounds");
    }

    Rng rng(seed);
    std::vector<Rect> obstacles;
    obstacles.reserve(spec.obstacle_count + 2);

    std::optional<Rect> gap;
    if (spec.corridor) {
        const Rect g = corridor_gap(spec);
        if (!(spec.corridor->width > 0.0) || !(spec.corridor->length > 0.0) ||
            !spec.bounds.contains(g) || g.ymin <= spec.bounds.ymin || g.ymax >= spec.bounds.ymax) {
            throw std::invalid_argument("corridor must fit strictly inside bounds");
        }
        obstacles.push_back({g.xmin, spec.bounds.ymin, g.xmax, g.ymin});
        obstacles.push_back({g.xmin, g.ymax, g.xmax, spec.bounds.ymax});
        gap = g;
    }

    std::size_t placed = 0;
    int failures = 0;
    while (placed < spec.obstacle_count) {
        const double w = rng.uniform(spec.size_min, spec.size_max);
        const double h = rng.uniform(spec.size_min, spec.size_max);
        const double x = rng.uniform(spec.bounds.xmin, spec.bounds.xmax - w);
        const double y = rng.uniform(spec.bounds.ymin, spec.bounds.ymax - h);
        const Rect o{x, y, x + w, y + h};
        if (gap && o.intersects(*gap)) {
            if (++failures > kPlacementRetries * 10) {
                throw std::runtime_error("could not place obstacles outside the corridor");
            }
            continue;
        }
        obstacles.push_back(o);
        ++placed;
    }

    // Free-space test against the final obstacle set, before the grid exists.
    const auto free = [&](Point p) {
        return spec.bounds.contains(p) &&
               std::none_of(obstacles.begin(), obstacles.end(),
                            [&](const Rect& o) { return o.contains(p); });
    };
    const auto place = [&](const std::optional<Rect>& region, const char* what) {
        const Rect r = region.value_or(spec.bounds);
        for (int i = 0; i < kPlacementRetries; ++i) {
            const Point p = sample_uniform(r, rng);
            if (free(p)) {
                return p;
            }
        }
        throw std::runtime_error(std::string("no free ") + what + " position found after " +
                                 std::to_string(kPlacementRetries) + " attempts");
    };
    const Point start = place(spec.start_region, "start");
    const Point goal = place(spec.goal_region, "goal");
    return Environment(spec.bounds, std::move(obstacles), start, goal, spec.delta, seed);
}

} // namespace qrrt
