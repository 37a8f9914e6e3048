#pragma once

#include <cmath>
#include <compare>

namespace qrrt {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point a) noexcept { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point a, Point b) noexcept = default;
    friend constexpr auto operator<=>(Point a, Point b) noexcept = default;
};

inline double norm(Point p) noexcept { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) noexcept { return norm(a - b); }
constexpr double squared_distance(Point a, Point b) noexcept
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline bool is_finite(Point p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Closed axis-aligned rectangle [xmin, xmax] x [ymin, ymax].
struct Rect {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    constexpr double width() const noexcept { return xmax - xmin; }
    constexpr double height() const noexcept { return ymax - ymin; }
    constexpr double area() const noexcept { return width() * height(); }
    constexpr Point center() const noexcept { return {(xmin + xmax) / 2, (ymin + ymax) / 2}; }

    constexpr bool contains(Point p) const noexcept
    {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
    constexpr bool contains(const Rect& r) const noexcept
    {
        return r.xmin >= xmin && r.xmax <= xmax && r.ymin >= ymin && r.ymax <= ymax;
    }
    constexpr bool intersects(const Rect& r) const noexcept
    {
        return r.xmin <= xmax && r.xmax >= xmin && r.ymin <= ymax && r.ymax >= ymin;
    }

    friend constexpr bool operator==(const Rect&, const Rect&) noexcept = default;
};

/// Exact test of the closed segment [a, b] against the closed rectangle r
/// (Liang-Barsky parametric clipping). Touching an edge or corner counts.
bool segment_intersects_rect(Point a, Point b, const Rect& r) noexcept;

} // namespace qrrt
