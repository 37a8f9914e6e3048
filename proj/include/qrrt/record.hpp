#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrrt/geometry.hpp"

namespace qrrt {

/// Oracle calls by category. Amplification counts one call per Grover
/// iteration; finalizer counts classical verifications of a measured element
/// (and of goal snaps); classical counts reachability tests made by the
/// classical planners.
struct OracleCalls {
    std::uint64_t amplification = 0;
    std::uint64_t finalizer = 0;
    std::uint64_t classical = 0;

    constexpr std::uint64_t total() const noexcept { return amplification + finalizer + classical; }
    /// Calls charged against an oracle-call cutoff; finalizer calls excluded.
    constexpr std::uint64_t cutoff_total() const noexcept { return amplification + classical; }

    constexpr OracleCalls& operator+=(const OracleCalls& o) noexcept
    {
        amplification += o.amplification;
        finalizer += o.finalizer;
        classical += o.classical;
        return *this;
    }
    friend constexpr bool operator==(const OracleCalls&, const OracleCalls&) = default;
};

struct TracePoint {
    std::uint64_t nodes = 0;
    std::uint64_t calls = 0;
    friend constexpr bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct TrialRecord {
    std::string algorithm;
    std::uint64_t seed = 0;
    OracleCalls calls;
    /// Oracle evaluations the simulator spends building masks; not oracle
    /// calls in the quantum cost model.
    std::uint64_t tag_evaluations = 0;
    std::uint64_t nodes_admitted = 0;
    std::uint64_t duplicates_discarded = 0;
    std::uint64_t steps = 0;
    bool goal_reached = false;
    double wall_time_s = 0.0;
    /// Admitted nodes, root excluded, in admission order.
    std::vector<Point> node_positions;
    /// Tagged-good count of each database built (one per step in shared and
    /// single-database modes, one per worker in unshared mode).
    std::vector<std::uint64_t> per_step_m;
    /// (nodes admitted, inclusive calls) after every step.
    std::vector<TracePoint> trace;
};

} // namespace qrrt
