#include "qrrt/geometry.hpp"

#include <algorithm>

namespace qrrt {

bool segment_intersects_rect(Point a, Point b, const Rect& r) noexcept
{
    double lo = 0.0;
    double hi = 1.0;
    const auto clip = [&](double origin, double dir, double min, double max) {
        if (dir == 0.0) {
            return origin >= min && origin <= max;
        }
        double t0 = (min - origin) / dir;
        double t1 = (max - origin) / dir;
        if (t0 > t1) {
            std::swap(t0, t1);
        }
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
        return lo <= hi;
    };
    return clip(a.x, b.x - a.x, r.xmin, r.xmax) && clip(a.y, b.y - a.y, r.ymin, r.ymax);
}

} // namespace qrrt
