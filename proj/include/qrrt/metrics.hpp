#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrrt/geometry.hpp"
#include "qrrt/record.hpp"
#include "qrrt/tree.hpp"

namespace qrrt {

struct GridSpec {
    Rect bounds;
    int width = 100;
    int height = 100;
};

/// Node-placement counts over a regular grid. Row 0 is the lowest-y row.
class Heatmap {
public:
    /// Throws std::invalid_argument for non-positive dimensions or bounds.
    explicit Heatmap(GridSpec spec);

    const GridSpec& spec() const noexcept { return spec_; }
    std::uint64_t at(int ix, int iy) const;
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t max() const noexcept;
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

    /// Bins p; points on a shared cell edge go to the lower-index cell.
    /// Throws std::out_of_range for points outside the bounds.
    void add(Point p);

    /// Row-major counts, one grid row per line, lowest y first.
    std::string to_csv() const;
    /// Binary graymap (P5), counts scaled to 0..255 by the maximum. The first
    /// image row is the highest-y grid row, so the image is upright.
    std::string to_pgm() const;

private:
    GridSpec spec_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

Heatmap accumulate_heatmap(std::span<const TrialRecord> records, const GridSpec& grid);

/// Node positions inside the closed region, summed over records.
std::uint64_t count_in_region(std::span<const TrialRecord> records, const Rect& region);

/// Total nodes over total (inclusive) oracle calls. Throws std::domain_error
/// when no calls were made.
double oracle_efficiency(std::span<const TrialRecord> records);
double oracle_efficiency(std::uint64_t nodes, std::uint64_t calls);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Throws std::domain_error
/// if fewer than two distinct x values are given.
LineFit slope_fit(std::span<const std::pair<double, double>> points);

/// Mean parent-child distance. Throws std::domain_error for a root-only tree.
double mean_edge_length(const Tree& tree);

/// Columns: algorithm, seed, calls_amp, calls_final, calls_classical, nodes,
/// duplicates, wall_s (the last only when include_wall is set).
std::string records_csv(std::span<const TrialRecord> records, bool include_wall = true);

} // namespace qrrt
