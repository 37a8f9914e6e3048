#pragma once

#include "qrrt/dynamics.hpp"
#include "qrrt/env.hpp"
#include "qrrt/planner.hpp"
#include "qrrt/tree.hpp"

namespace fixtures {

/// Seeded 20-obstacle environment used for golden counts.
inline qrrt::Environment twenty_obstacles()
{
    qrrt::EnvironmentSpec spec;
    spec.obstacle_count = 20;
    spec.start_region = qrrt::Rect{0, 0, 5, 5};
    spec.goal_region = qrrt::Rect{15, 15, 20, 20};
    return qrrt::generate_random_env(spec, 20);
}

/// Re-verifies every edge of a tree against ground-truth reachability.
inline bool admissible(const qrrt::Environment& env, const qrrt::LinearSystem& sys, const qrrt::Tree& tree)
{
    for (std::size_t i = 1; i < tree.size(); ++i) {
        if (!qrrt::reachable(env, sys, tree.node(tree.parent(i)), tree.node(i))) {
            return false;
        }
    }
    return true;
}

/// Workspace for hand-built databases: a block obstacle away from the root.
inline qrrt::Environment controlled_env()
{
    return qrrt::Environment({0, 0, 10, 10}, {{5, 5, 9, 9}}, {1, 1}, {9.5, 0.5}, 0.5, 1);
}

/// 2^n entries rooted at (1, 1): the first m are short free hops, the rest
/// land inside the obstacle. Tagged with ground truth.
inline qrrt::Database controlled_database(const qrrt::Environment& env, const qrrt::LinearSystem& sys, int n,
                                          std::uint64_t m)
{
    qrrt::Database db;
    db.n = n;
    const std::size_t size = std::size_t{1} << n;
    const qrrt::Point root = env.start();
    for (std::size_t i = 0; i < size; ++i) {
        const double t = static_cast<double>(i);
        const qrrt::Point sample = i < m ? root + qrrt::Point{0.2 + 0.01 * t, 0.3}
                                         : qrrt::Point{5.5 + 0.01 * (t - m) / 256.0 * 3.0, 7.0};
        db.entries.push_back({sample, 0, root});
    }
    qrrt::tag_database(env, sys, db);
    return db;
}

} // namespace fixtures
