#include "qrrt/planner.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrrt {

TemperatureSchedule::TemperatureSchedule(std::vector<TemperatureStage> stages, std::uint64_t h)
    : stages_(std::move(stages)), h_(h)
{
    if (stages_.empty()) {
        throw std::invalid_argument("temperature schedule needs at least one stage");
    }
    for (const auto& s : stages_) {
        if (s.duration < 1) {
            throw std::invalid_argument("stage durations must be at least 1");
        }
        if (!(s.r_min > 0.0) || !(s.r_max >= s.r_min) || !std::isfinite(s.r_max)) {
            throw std::invalid_argument("stage radii must satisfy 0 < r_min <= r_max");
        }
        if (s.n && (*s.n < 1 || *s.n > kMaxQubits)) {
            throw std::invalid_argument("stage database size override out of range");
        }
    }
}

std::size_t TemperatureSchedule::current_index() const noexcept
{
    std::uint64_t end = 0;
    for (std::size_t i = 0; i < stages_.size(); ++i) {
        end += stages_[i].duration;
        if (h_ < end) {
            return i;
        }
    }
    return stages_.size() - 1;
}

const TemperatureStage& TemperatureSchedule::current() const noexcept
{
    return stages_[current_index()];
}

IterationPolicy IterationPolicy::fixed(int k)
{
    if (k < 0) {
        throw std::invalid_argument("fixed iteration count must be non-negative");
    }
    return {Kind::fixed, k};
}

int IterationPolicy::iterations(int n, std::uint64_t m) const
{
    return kind == Kind::optimal ? optimal_iterations(n, m) : k;
}

namespace {

void check_database_size(int n)
{
    if (n < 0 || n > kMaxQubits) {
        throw std::invalid_argument("database exponent n must be in [0, " + std::to_string(kMaxQubits) + "]");
    }
}

/// Uniform sample not coinciding with a tree node, and its nearest node.
std::pair<Point, std::size_t> sample_with_parent(const Environment& env, const Tree& tree, Rng& rng)
{
    Point t = sample_uniform(env, rng);
    while (tree.contains(t)) {
        t = sample_uniform(env, rng);
    }
    return {t, tree.nearest(t)};
}

} // namespace

Database build_database(const Environment& env, const Tree& tree, int n, Rng& rng)
{
    check_database_size(n);
    Database db;
    db.n = n;
    const std::size_t size = std::size_t{1} << n;
    db.entries.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        const auto [t, parent] = sample_with_parent(env, tree, rng);
        db.entries.push_back({t, parent, tree.node(parent)});
    }
    return db;
}

Database build_database_annealed(const Environment& env, const Tree& tree, int n,
                                 const TemperatureSchedule& schedule, Rng& rng)
{
    check_database_size(n);
    const TemperatureStage& stage = schedule.current();
    Database db;
    db.n = n;
    const std::size_t size = std::size_t{1} << n;
    db.entries.reserve(size);
    while (db.entries.size() < size) {
        const auto [t, parent] = sample_with_parent(env, tree, rng);
        const Point origin = tree.node(parent);
        const Point dir = t - origin;
        const double len = norm(dir);
        const double r = rng.uniform(stage.r_min, stage.r_max);
        const Point moved = origin + (r / len) * dir;
        if (tree.contains(moved)) {
            continue;
        }
        db.entries.push_back({moved, parent, origin});
    }
    return db;
}

std::uint64_t tag_database(const Environment& env, const LinearSystem& sys, Database& db)
{
    db.good.assign(db.entries.size(), 0);
    db.m = 0;
    for (std::size_t i = 0; i < db.entries.size(); ++i) {
        const auto& e = db.entries[i];
        if (reachable(env, sys, e.parent_point, e.sample)) {
            db.good[i] = 1;
            ++db.m;
        }
    }
    return db.entries.size();
}

Admission admit_candidate(const Environment& env, const LinearSystem& sys, Tree& tree, Point sample,
                          std::size_t parent, OracleCalls& calls)
{
    Admission result;
    if (tree.contains(sample)) {
        result.duplicate = true;
        return result;
    }
    const Point goal = env.goal();
    bool at_goal = false;
    if (!tree.goal_reached() && !tree.contains(goal) && distance(sample, goal) < env.delta()) {
        ++calls.finalizer;
        if (reachable(env, sys, tree.node(parent), goal)) {
            sample = goal;
            at_goal = true;
        }
    }
    result.index = tree.add(sample, parent);
    result.added = true;
    if (at_goal) {
        tree.mark_goal(result.index);
    }
    return result;
}

StepReport rrt_step(const Environment& env, const LinearSystem& sys, Tree& tree, Rng& rng,
                    const StepOptions& options)
{
    StepReport report;
    if (options.budget && *options.budget < 1) {
        report.outcome = StepOutcome::budget_exhausted;
        return report;
    }
    const auto [t, parent] = sample_with_parent(env, tree, rng);
    ++report.calls.classical;
    if (!reachable(env, sys, tree.node(parent), t)) {
        report.outcome = StepOutcome::failed;
        return report;
    }
    const Admission a = admit_candidate(env, sys, tree, t, parent, report.calls);
    if (a.added) {
        report.added.push_back(a.index);
        report.outcome = StepOutcome::added;
    } else {
        report.duplicates = 1;
        report.outcome = StepOutcome::duplicate;
    }
    return report;
}

StepReport qrrt_step(const Environment& env, const LinearSystem& sys, Tree& tree, int n,
                     const IterationPolicy& policy, Rng& rng, const StepOptions& options)
{
    const int qubits = options.schedule ? options.schedule->current().n.value_or(n) : n;
    if (qubits < 1 || qubits > kMaxQubits) {
        throw std::invalid_argument("quantum step needs 1 <= n <= " + std::to_string(kMaxQubits));
    }
    StepReport report;
    Database db = options.schedule ? build_database_annealed(env, tree, qubits, *options.schedule, rng)
                                   : build_database(env, tree, qubits, rng);
    const std::uint64_t evaluations = tag_database(env, sys, db);

    const int k = policy.iterations(qubits, db.m);
    if (options.budget && static_cast<std::uint64_t>(k) > *options.budget) {
        report.outcome = StepOutcome::budget_exhausted;
        return report;
    }
    report.tag_evaluations = evaluations;
    report.database_m.push_back(db.m);

    AmplifiedState state(qubits, db.good);
    for (int i = 0; i < k; ++i) {
        state.apply_grover();
    }
    report.calls.amplification += state.oracle_calls();
    if (options.on_amplified) {
        options.on_amplified(state);
    }

    const std::size_t idx = state.measure(rng);
    report.measured_index = idx;
    const DatabaseEntry& entry = db.entries[idx];
    ++report.calls.finalizer;
    if (!reachable(env, sys, entry.parent_point, entry.sample)) {
        report.outcome = StepOutcome::failed;
        return report;
    }
    const Admission a = admit_candidate(env, sys, tree, entry.sample, entry.parent, report.calls);
    if (a.added) {
        report.added.push_back(a.index);
        report.outcome = StepOutcome::added;
    } else {
        report.duplicates = 1;
        report.outcome = StepOutcome::duplicate;
    }
    return report;
}

PlanResult drive_plan(const Environment& env, std::string algorithm, std::uint64_t seed,
                      const PlanLimits& limits, std::optional<TemperatureSchedule> schedule,
                      const StepFunction& step, AmplifiedHook on_amplified)
{
    const auto started = std::chrono::steady_clock::now();
    if (limits.max_steps < 1) {
        throw std::invalid_argument("step budget must be at least 1");
    }
    PlanResult result{Tree(env.start()), {}, {}};
    if (env.start() == env.goal()) {
        result.tree.mark_goal(0);
    }
    TrialRecord& rec = result.record;
    rec.algorithm = std::move(algorithm);
    rec.seed = seed;
    Tree& tree = result.tree;

    while (rec.steps < limits.max_steps) {
        if (limits.stop_at_goal && tree.goal_reached()) {
            break;
        }
        if (limits.max_nodes && tree.size() >= *limits.max_nodes) {
            break;
        }
        StepOptions options;
        options.schedule = schedule ? &*schedule : nullptr;
        options.on_amplified = on_amplified;
        if (limits.oracle_cutoff) {
            const std::uint64_t used = rec.calls.cutoff_total();
            if (used >= *limits.oracle_cutoff) {
                break;
            }
            options.budget = *limits.oracle_cutoff - used;
        }
        StepReport report = step(tree, options);
        if (report.outcome == StepOutcome::budget_exhausted) {
            break;
        }
        ++rec.steps;
        rec.calls += report.calls;
        rec.tag_evaluations += report.tag_evaluations;
        rec.duplicates_discarded += report.duplicates;
        rec.per_step_m.insert(rec.per_step_m.end(), report.database_m.begin(), report.database_m.end());
        for (auto idx : report.added) {
            rec.node_positions.push_back(tree.node(idx));
            if (schedule) {
                schedule->advance();
            }
        }
        rec.nodes_admitted = rec.node_positions.size();
        rec.trace.push_back({rec.nodes_admitted, rec.calls.total()});
    }

    rec.goal_reached = tree.goal_reached();
    if (tree.goal_reached()) {
        result.path = extract_path(tree);
    }
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

PlanResult rrt_plan(const Environment& env, const LinearSystem& sys, const PlanLimits& limits,
                    std::uint64_t seed)
{
    Rng rng(seed);
    return drive_plan(env, "rrt", seed, limits, std::nullopt,
                      [&](Tree& tree, const StepOptions& o) { return rrt_step(env, sys, tree, rng, o); });
}

PlanResult qrrt_plan(const Environment& env, const LinearSystem& sys, int n,
                     const IterationPolicy& policy, const PlanLimits& limits, std::uint64_t seed,
                     std::optional<TemperatureSchedule> schedule, AmplifiedHook on_amplified)
{
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("quantum planner needs 1 <= n <= " + std::to_string(kMaxQubits));
    }
    Rng rng(seed);
    const char* name = schedule ? "qrrt-qda" : "qrrt";
    return drive_plan(env, name, seed, limits, std::move(schedule),
                      [&](Tree& tree, const StepOptions& o) {
                          return qrrt_step(env, sys, tree, n, policy, rng, o);
                      },
                      std::move(on_amplified));
}

} // namespace qrrt
