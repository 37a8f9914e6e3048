#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qrrt/dynamics.hpp"
#include "qrrt/env.hpp"
#include "qrrt/qsim.hpp"
#include "qrrt/record.hpp"
#include "qrrt/rng.hpp"
#include "qrrt/tree.hpp"

namespace qrrt {

struct DatabaseEntry {
    Point sample;
    std::size_t parent = 0;
    Point parent_point;
};

/// 2^n candidate (sample, parent) pairs built against one tree snapshot.
struct Database {
    int n = 0;
    std::vector<DatabaseEntry> entries;
    /// Oracle tags; empty until tag_database runs.
    std::vector<std::uint8_t> good;
    std::uint64_t m = 0;

    bool tagged() const noexcept { return good.size() == entries.size() && !entries.empty(); }
};

struct TemperatureStage {
    std::uint64_t duration = 1;
    double r_min = 0.0;
    double r_max = 0.0;
    /// Optional database size override for this stage.
    std::optional<int> n;
};

/// Piecewise-constant sample-distance schedule indexed by admitted node count.
class TemperatureSchedule {
public:
    /// Throws std::invalid_argument for an empty list, a zero duration or
    /// radii outside 0 < r_min <= r_max.
    explicit TemperatureSchedule(std::vector<TemperatureStage> stages, std::uint64_t h = 0);

    std::uint64_t h() const noexcept { return h_; }
    const std::vector<TemperatureStage>& stages() const noexcept { return stages_; }
    /// Stage covering h; the last stage persists once the durations run out.
    const TemperatureStage& current() const noexcept;
    std::size_t current_index() const noexcept;

    void advance() noexcept { ++h_; }

private:
    std::vector<TemperatureStage> stages_;
    std::uint64_t h_;
};

inline TemperatureSchedule advance_temperature(TemperatureSchedule s)
{
    s.advance();
    return s;
}

/// Grover iteration count per database.
struct IterationPolicy {
    enum class Kind { optimal, fixed };
    Kind kind = Kind::optimal;
    int k = 0;

    static IterationPolicy optimal() { return {Kind::optimal, 0}; }
    /// Throws std::invalid_argument for k < 0.
    static IterationPolicy fixed(int k);

    /// The optimal count uses the exact good count from tagging, which a
    /// real device would have to estimate.
    int iterations(int n, std::uint64_t m) const;
};

/// Every sample is uniform over bounds, paired with its nearest tree node.
/// Samples landing exactly on an existing node are redrawn.
Database build_database(const Environment& env, const Tree& tree, int n, Rng& rng);

/// As build_database, then each sample is moved along its parent direction to
/// a distance drawn uniformly from the current stage's [r_min, r_max]. Does
/// not advance the schedule.
Database build_database_annealed(const Environment& env, const Tree& tree, int n,
                                 const TemperatureSchedule& schedule, Rng& rng);

/// Fills the oracle tags with ground-truth reachability and returns the
/// number of oracle evaluations spent (2^n).
std::uint64_t tag_database(const Environment& env, const LinearSystem& sys, Database& db);

enum class StepOutcome { added, duplicate, failed, budget_exhausted };

struct StepReport {
    StepOutcome outcome = StepOutcome::failed;
    std::vector<std::size_t> added;
    std::uint64_t duplicates = 0;
    OracleCalls calls;
    std::uint64_t tag_evaluations = 0;
    /// Tagged-good counts of the databases built this step.
    std::vector<std::uint64_t> database_m;
    std::optional<std::size_t> measured_index;
};

using AmplifiedHook = std::function<void(const AmplifiedState&)>;

struct StepOptions {
    /// Annealed database construction when set.
    const TemperatureSchedule* schedule = nullptr;
    /// Remaining cutoff-category calls; a step that would exceed it is not
    /// taken and reports budget_exhausted without charging anything.
    std::optional<std::uint64_t> budget;
    AmplifiedHook on_amplified;
};

/// Result of offering a verified (sample, parent) pair to the tree.
struct Admission {
    bool added = false;
    bool duplicate = false;
    std::size_t index = Tree::npos;
};

/// Adds a verified candidate. A candidate within delta of the goal is moved
/// onto the goal when the edge from its parent to the goal verifies (one
/// finalizer call); otherwise it is admitted where it is.
Admission admit_candidate(const Environment& env, const LinearSystem& sys, Tree& tree, Point sample,
                          std::size_t parent, OracleCalls& calls);

/// Classical step: one sample, one nearest query, one reachability test.
StepReport rrt_step(const Environment& env, const LinearSystem& sys, Tree& tree, Rng& rng,
                    const StepOptions& options = {});

/// Quantum step: build and tag a database, amplify, measure one index, verify
/// it with the finalizer and admit it on success.
StepReport qrrt_step(const Environment& env, const LinearSystem& sys, Tree& tree, int n,
                     const IterationPolicy& policy, Rng& rng, const StepOptions& options = {});

struct PlanLimits {
    std::uint64_t max_steps = 100000;
    /// Stop once the tree (root included) has this many nodes.
    std::optional<std::size_t> max_nodes;
    /// Cutoff on amplification + classical calls.
    std::optional<std::uint64_t> oracle_cutoff;
    bool stop_at_goal = true;
};

struct PlanResult {
    Tree tree;
    std::vector<Point> path;
    TrialRecord record;
};

using StepFunction = std::function<StepReport(Tree&, const StepOptions&)>;

/// Shared outer loop: repeats step until the goal is in the tree or a limit
/// is hit, advancing the schedule per admitted node and filling the record.
PlanResult drive_plan(const Environment& env, std::string algorithm, std::uint64_t seed,
                      const PlanLimits& limits, std::optional<TemperatureSchedule> schedule,
                      const StepFunction& step, AmplifiedHook on_amplified = {});

PlanResult rrt_plan(const Environment& env, const LinearSystem& sys, const PlanLimits& limits,
                    std::uint64_t seed);

PlanResult qrrt_plan(const Environment& env, const LinearSystem& sys, int n,
                     const IterationPolicy& policy, const PlanLimits& limits, std::uint64_t seed,
                     std::optional<TemperatureSchedule> schedule = std::nullopt,
                     AmplifiedHook on_amplified = {});

} // namespace qrrt
