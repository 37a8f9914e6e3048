#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "qrrt/geometry.hpp"

namespace qrrt {

/// Rooted planning tree with an incremental 2-d tree for nearest queries.
/// Node coordinates are unique.
class Tree {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit Tree(Point root);

    std::size_t size() const noexcept { return nodes_.size(); }
    Point node(std::size_t i) const { return nodes_.at(i); }
    /// npos for the root.
    std::size_t parent(std::size_t i) const { return parents_.at(i); }
    std::span<const Point> nodes() const noexcept { return nodes_; }
    std::span<const std::size_t> parents() const noexcept { return parents_; }

    bool contains(Point p) const { return coordinates_.contains(p); }

    /// Adds p under parent. Throws std::invalid_argument for an unknown parent
    /// or a coordinate already present.
    std::size_t add(Point p, std::size_t parent);

    /// Index of the node closest to t; ties go to the lowest index.
    std::size_t nearest(Point t) const;
    /// Same contract, by exhaustive scan.
    std::size_t nearest_linear(Point t) const;

    bool goal_reached() const noexcept { return goal_.has_value(); }
    std::optional<std::size_t> goal_index() const noexcept { return goal_; }
    void mark_goal(std::size_t i);

private:
    struct KdNode {
        int left = -1;
        int right = -1;
    };

    std::vector<Point> nodes_;
    std::vector<std::size_t> parents_;
    std::vector<KdNode> kd_;
    std::vector<int> depth_;
    std::set<Point> coordinates_;
    std::optional<std::size_t> goal_;
};

/// Root-to-goal node sequence. Throws std::logic_error if the goal has not
/// been reached.
std::vector<Point> extract_path(const Tree& tree);
/// Same chain as node indices.
std::vector<std::size_t> extract_path_indices(const Tree& tree);

} // namespace qrrt
