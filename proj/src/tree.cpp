#include "qrrt/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace qrrt {

namespace {

double coord(Point p, int axis) { return axis == 0 ? p.x : p.y; }

} // namespace

Tree::Tree(Point root) : nodes_{root}, parents_{npos}, kd_(1), depth_{0}, coordinates_{root} {}

std::size_t Tree::add(Point p, std::size_t parent)
{
    if (parent >= nodes_.size()) {
        throw std::invalid_argument("parent index out of range");
    }
    if (!coordinates_.insert(p).second) {
        throw std::invalid_argument("node coordinates already present in tree");
    }
    const std::size_t id = nodes_.size();
    nodes_.push_back(p);
    parents_.push_back(parent);
    kd_.emplace_back();

    int cur = 0;
    for (;;) {
        const int axis = depth_[static_cast<std::size_t>(cur)] % 2;
        int& child = coord(p, axis) < coord(nodes_[static_cast<std::size_t>(cur)], axis)
                         ? kd_[static_cast<std::size_t>(cur)].left
                         : kd_[static_cast<std::size_t>(cur)].right;
        if (child < 0) {
            child = static_cast<int>(id);
            depth_.push_back(depth_[static_cast<std::size_t>(cur)] + 1);
            break;
        }
        cur = child;
    }
    return id;
}

std::size_t Tree::nearest(Point t) const
{
    std::size_t best = 0;
    double best_d2 = squared_distance(t, nodes_[0]);
    // Explicit stack: insertion order can make the 2-d tree deep.
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const auto ucur = static_cast<std::size_t>(cur);
        const Point q = nodes_[ucur];
        const double d2 = squared_distance(t, q);
        if (d2 < best_d2 || (d2 == best_d2 && ucur < best)) {
            best = ucur;
            best_d2 = d2;
        }
        const int axis = depth_[ucur] % 2;
        const double diff = coord(t, axis) - coord(q, axis);
        const int near = diff < 0 ? kd_[ucur].left : kd_[ucur].right;
        const int far = diff < 0 ? kd_[ucur].right : kd_[ucur].left;
        // Far side is kept on ties so equal-distance nodes are still compared.
        if (far >= 0 && diff * diff <= best_d2) {
            stack.push_back(far);
        }
        if (near >= 0) {
            stack.push_back(near);
        }
    }
    return best;
}

std::size_t Tree::nearest_linear(Point t) const
{
    std::size_t best = 0;
    double best_d2 = squared_distance(t, nodes_[0]);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        const double d2 = squared_distance(t, nodes_[i]);
        if (d2 < best_d2) {
            best = i;
            best_d2 = d2;
        }
    }
    return best;
}

void Tree::mark_goal(std::size_t i)
{
    if (i >= nodes_.size()) {
        throw std::invalid_argument("goal index out of range");
    }
    goal_ = i;
}

std::vector<std::size_t> extract_path_indices(const Tree& tree)
{
    const auto goal = tree.goal_index();
    if (!goal) {
        throw std::logic_error("goal not reached: no path to extract");
    }
    std::vector<std::size_t> chain;
    for (std::size_t i = *goal; i != Tree::npos; i = tree.parent(i)) {
        chain.push_back(i);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

std::vector<Point> extract_path(const Tree& tree)
{
    std::vector<Point> path;
    for (auto i : extract_path_indices(tree)) {
        path.push_back(tree.node(i));
    }
    return path;
}

} // namespace qrrt
