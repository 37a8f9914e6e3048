#include "qrrt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qrrt {

Heatmap::Heatmap(GridSpec spec) : spec_(spec)
{
    if (spec_.width < 1 || spec_.height < 1) {
        throw std::invalid_argument("heatmap grid must be at least 1x1");
    }
    if (!(spec_.bounds.width() > 0.0) || !(spec_.bounds.height() > 0.0)) {
        throw std::invalid_argument("heatmap bounds must have positive area");
    }
    counts_.assign(static_cast<std::size_t>(spec_.width) * static_cast<std::size_t>(spec_.height), 0);
}

std::uint64_t Heatmap::at(int ix, int iy) const
{
    if (ix < 0 || iy < 0 || ix >= spec_.width || iy >= spec_.height) {
        throw std::out_of_range("heatmap cell out of range");
    }
    return counts_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(spec_.width) +
                   static_cast<std::size_t>(ix)];
}

std::uint64_t Heatmap::max() const noexcept
{
    return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

namespace {

/// ceil(u) - 1 puts a point on the edge between two cells in the lower one.
int bin(double value, double lo, double span, int cells)
{
    const double u = (value - lo) / span * cells;
    const int i = static_cast<int>(std::ceil(u)) - 1;
    return std::clamp(i, 0, cells - 1);
}

} // namespace

void Heatmap::add(Point p)
{
    if (!spec_.bounds.contains(p)) {
        throw std::out_of_range("node position outside heatmap bounds");
    }
    const int ix = bin(p.x, spec_.bounds.xmin, spec_.bounds.width(), spec_.width);
    const int iy = bin(p.y, spec_.bounds.ymin, spec_.bounds.height(), spec_.height);
    ++counts_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(spec_.width) +
              static_cast<std::size_t>(ix)];
    ++total_;
}

std::string Heatmap::to_csv() const
{
    std::ostringstream out;
    for (int iy = 0; iy < spec_.height; ++iy) {
        for (int ix = 0; ix < spec_.width; ++ix) {
            if (ix > 0) {
                out << ',';
            }
            out << at(ix, iy);
        }
        out << '\n';
    }
    return out.str();
}

std::string Heatmap::to_pgm() const
{
    std::string out = "P5\n" + std::to_string(spec_.width) + " " + std::to_string(spec_.height) + "\n255\n";
    const std::uint64_t peak = max();
    out.reserve(out.size() + counts_.size());
    for (int iy = spec_.height - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < spec_.width; ++ix) {
            const std::uint64_t c = at(ix, iy);
            const auto v = peak == 0 ? 0 : static_cast<unsigned>(std::lround(255.0 * static_cast<double>(c) /
                                                                                static_cast<double>(peak)));
            out.push_back(static_cast<char>(static_cast<unsigned char>(v)));
        }
    }
    return out;
}

Heatmap accumulate_heatmap(std::span<const TrialRecord> records, const GridSpec& grid)
{
    Heatmap map(grid);
    for (const auto& r : records) {
        for (const auto& p : r.node_positions) {
            map.add(p);
        }
    }
    return map;
}

std::uint64_t count_in_region(std::span<const TrialRecord> records, const Rect& region)
{
    std::uint64_t n = 0;
    for (const auto& r : records) {
        n += static_cast<std::uint64_t>(std::count_if(r.node_positions.begin(), r.node_positions.end(),
                                                      [&](Point p) { return region.contains(p); }));
    }
    return n;
}

double oracle_efficiency(std::uint64_t nodes, std::uint64_t calls)
{
    if (calls == 0) {
        throw std::domain_error("oracle efficiency undefined with zero oracle calls");
    }
    return static_cast<double>(nodes) / static_cast<double>(calls);
}

double oracle_efficiency(std::span<const TrialRecord> records)
{
    std::uint64_t nodes = 0;
    std::uint64_t calls = 0;
    for (const auto& r : records) {
        nodes += r.nodes_admitted;
        calls += r.calls.total();
    }
    return oracle_efficiency(nodes, calls);
}

LineFit slope_fit(std::span<const std::pair<double, double>> points)
{
    if (points.size() < 2) {
        throw std::domain_error("least-squares fit needs at least two points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    const auto count = static_cast<double>(points.size());
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) {
        throw std::domain_error("least-squares fit needs at least two distinct x values");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double mean_edge_length(const Tree& tree)
{
    if (tree.size() < 2) {
        throw std::domain_error("tree has no edges");
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < tree.size(); ++i) {
        sum += distance(tree.node(i), tree.node(tree.parent(i)));
    }
    return sum / static_cast<double>(tree.size() - 1);
}

std::string records_csv(std::span<const TrialRecord> records, bool include_wall)
{
    std::ostringstream out;
    out << "algorithm,seed,calls_amp,calls_final,calls_classical,nodes,duplicates";
    if (include_wall) {
        out << ",wall_s";
    }
    out << '\n';
    char buf[32];
    for (const auto& r : records) {
        out << r.algorithm << ',' << r.seed << ',' << r.calls.amplification << ',' << r.calls.finalizer << ','
            << r.calls.classical << ',' << r.nodes_admitted << ',' << r.duplicates_discarded;
        if (include_wall) {
            std::snprintf(buf, sizeof buf, "%.6f", r.wall_time_s);
            out << ',' << buf;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace qrrt
