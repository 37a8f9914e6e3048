#include "qrrt/parallel.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qrrt/thread_pool.hpp"

namespace qrrt {

WorkerPool WorkerPool::make(int p, PoolMode mode, std::uint64_t seed_base)
{
    WorkerPool pool;
    pool.p = p;
    pool.mode = mode;
    for (int w = 0; w < p; ++w) {
        pool.seeds.push_back(derive_seed(seed_base, static_cast<std::uint64_t>(w)));
    }
    pool.validate();
    return pool;
}

void WorkerPool::validate() const
{
    if (p < 1) {
        throw std::invalid_argument("worker pool needs p >= 1");
    }
    if (seeds.size() != static_cast<std::size_t>(p)) {
        throw std::invalid_argument("worker pool needs exactly p seeds");
    }
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw std::invalid_argument("worker seeds must be distinct");
    }
    if (per_worker_budget < 1) {
        throw std::invalid_argument("per-worker budget must be at least 1");
    }
}

namespace {

void require_mode(const WorkerPool& pool, PoolMode mode, const char* step)
{
    pool.validate();
    if (pool.mode != mode) {
        throw std::invalid_argument(std::string(step) + " called with a pool in a different mode");
    }
}

Rng worker_rng(const WorkerPool& pool, int w, std::uint64_t step_key)
{
    return Rng(derive_seed(pool.seeds[static_cast<std::size_t>(w)], step_key));
}

/// Amplify a private copy of a tagged database, measure, verify.
WorkerResult amplify_and_measure(const Environment& env, const LinearSystem& sys, const Database& db,
                                 int k, int worker_id, Rng& rng)
{
    WorkerResult r;
    r.worker_id = worker_id;
    AmplifiedState state(db.n, db.good);
    for (int i = 0; i < k; ++i) {
        state.apply_grover();
    }
    r.calls.amplification = state.oracle_calls();
    const std::size_t idx = state.measure(rng);
    r.measured_index = idx;
    const DatabaseEntry& e = db.entries[idx];
    ++r.calls.finalizer;
    if (reachable(env, sys, e.parent_point, e.sample)) {
        r.candidate = e;
    }
    return r;
}

int step_qubits(int n, const StepOptions& options)
{
    const int qubits = options.schedule ? options.schedule->current().n.value_or(n) : n;
    if (qubits < 1 || qubits > kMaxQubits) {
        throw std::invalid_argument("quantum step needs 1 <= n <= " + std::to_string(kMaxQubits));
    }
    return qubits;
}

Database make_database(const Environment& env, const Tree& tree, int n, Rng& rng,
                       const StepOptions& options)
{
    return options.schedule ? build_database_annealed(env, tree, n, *options.schedule, rng)
                            : build_database(env, tree, n, rng);
}

} // namespace

StepReport admit_worker_results(const Environment& env, const LinearSystem& sys, Tree& tree,
                                const std::vector<WorkerResult>& results, bool dedupe_by_index)
{
    StepReport report;
    std::set<std::size_t> seen;
    for (const auto& r : results) {
        report.calls += r.calls;
        report.tag_evaluations += r.tag_evaluations;
        if (r.database_m) {
            report.database_m.push_back(*r.database_m);
        }
        if (!r.candidate) {
            continue;
        }
        if (dedupe_by_index && r.measured_index && !seen.insert(*r.measured_index).second) {
            ++report.duplicates;
            continue;
        }
        const Admission a = admit_candidate(env, sys, tree, r.candidate->sample, r.candidate->parent,
                                            report.calls);
        if (a.added) {
            report.added.push_back(a.index);
        } else {
            ++report.duplicates;
        }
    }
    if (!report.added.empty()) {
        report.outcome = StepOutcome::added;
    } else {
        report.outcome = report.duplicates > 0 ? StepOutcome::duplicate : StepOutcome::failed;
    }
    return report;
}

std::vector<WorkerResult> shared_database_workers(const Environment& env, const LinearSystem& sys,
                                                  const Database& db, const WorkerPool& pool,
                                                  int k, std::uint64_t step_key)
{
    if (!db.tagged()) {
        throw std::invalid_argument("shared database must be tagged before dispatch");
    }
    return map_indexed(pool.executor, static_cast<std::size_t>(pool.p), [&](std::size_t w) {
        Rng rng = worker_rng(pool, static_cast<int>(w), step_key);
        return amplify_and_measure(env, sys, db, k, static_cast<int>(w), rng);
    });
}

StepReport pqrrt_shared_step_on_database(const Environment& env, const LinearSystem& sys, Tree& tree,
                                         const Database& db, const WorkerPool& pool, int k,
                                         std::uint64_t step_key, std::optional<std::uint64_t> budget)
{
    const auto kk = static_cast<std::uint64_t>(k);
    const std::uint64_t cost = pool.shared_amplification ? kk : kk * static_cast<std::uint64_t>(pool.p);
    if (budget && cost > *budget) {
        StepReport r;
        r.outcome = StepOutcome::budget_exhausted;
        return r;
    }
    const auto results = shared_database_workers(env, sys, db, pool, k, step_key);
    StepReport report = admit_worker_results(env, sys, tree, results, true);
    if (pool.shared_amplification) {
        report.calls.amplification = kk;
    }
    report.database_m.push_back(db.m);
    return report;
}

StepReport pqrrt_manager_step(const Environment& env, const LinearSystem& sys, Tree& tree, int n,
                              const WorkerPool& pool, const IterationPolicy& policy, Rng& rng,
                              const StepOptions& options)
{
    require_mode(pool, PoolMode::quantum_shared, "pqrrt_manager_step");
    const int qubits = step_qubits(n, options);
    Database db = make_database(env, tree, qubits, rng, options);
    const std::uint64_t evaluations = tag_database(env, sys, db);
    const int k = policy.iterations(qubits, db.m);
    const std::uint64_t step_key = rng.next_u64();
    StepReport report = pqrrt_shared_step_on_database(env, sys, tree, db, pool, k, step_key, options.budget);
    if (report.outcome != StepOutcome::budget_exhausted) {
        report.tag_evaluations += evaluations;
    }
    return report;
}

StepReport pqrrt_unshared_step(const Environment& env, const LinearSystem& sys, Tree& tree, int n,
                               const WorkerPool& pool, const IterationPolicy& policy, Rng& rng,
                               const StepOptions& options)
{
    require_mode(pool, PoolMode::quantum_unshared, "pqrrt_unshared_step");
    const int qubits = step_qubits(n, options);
    const std::uint64_t step_key = rng.next_u64();
    const Tree& snapshot = tree;
    const auto results = map_indexed(pool.executor, static_cast<std::size_t>(pool.p), [&](std::size_t w) {
        Rng wrng = worker_rng(pool, static_cast<int>(w), step_key);
        Database db = make_database(env, snapshot, qubits, wrng, options);
        const std::uint64_t evaluations = tag_database(env, sys, db);
        const int k = policy.iterations(qubits, db.m);
        WorkerResult r = amplify_and_measure(env, sys, db, k, static_cast<int>(w), wrng);
        r.tag_evaluations = evaluations;
        r.database_m = db.m;
        return r;
    });

    if (options.budget) {
        std::uint64_t cost = 0;
        for (const auto& r : results) {
            cost += r.calls.amplification;
        }
        if (cost > *options.budget) {
            StepReport report;
            report.outcome = StepOutcome::budget_exhausted;
            return report;
        }
    }
    // Distinct databases: a repeated index is not a repeated element.
    return admit_worker_results(env, sys, tree, results, false);
}

StepReport prrt_manager_step(const Environment& env, const LinearSystem& sys, Tree& tree,
                             const WorkerPool& pool, Rng& rng, const StepOptions& options)
{
    require_mode(pool, PoolMode::classical_rrt, "prrt_manager_step");
    std::uint64_t budget = pool.per_worker_budget;
    if (options.budget) {
        budget = std::min<std::uint64_t>(budget, *options.budget / static_cast<std::uint64_t>(pool.p));
        if (budget == 0) {
            StepReport report;
            report.outcome = StepOutcome::budget_exhausted;
            return report;
        }
    }
    const std::uint64_t step_key = rng.next_u64();
    const Tree& snapshot = tree;
    const auto results = map_indexed(pool.executor, static_cast<std::size_t>(pool.p), [&](std::size_t w) {
        Rng wrng = worker_rng(pool, static_cast<int>(w), step_key);
        WorkerResult r;
        r.worker_id = static_cast<int>(w);
        for (std::uint64_t i = 0; i < budget; ++i) {
            Point t = sample_uniform(env, wrng);
            while (snapshot.contains(t)) {
                t = sample_uniform(env, wrng);
            }
            const std::size_t parent = snapshot.nearest(t);
            ++r.calls.classical;
            if (reachable(env, sys, snapshot.node(parent), t)) {
                r.candidate = DatabaseEntry{t, parent, snapshot.node(parent)};
                break;
            }
        }
        return r;
    });
    return admit_worker_results(env, sys, tree, results, false);
}

PlanResult run_parallel_plan(const Environment& env, const LinearSystem& sys,
                             const ParallelPlanConfig& config)
{
    config.pool.validate();
    Rng rng(config.seed);
    const WorkerPool& pool = config.pool;
    switch (pool.mode) {
    case PoolMode::classical_rrt:
        return drive_plan(env, "prrt", config.seed, config.limits, std::nullopt,
                          [&](Tree& tree, const StepOptions& o) {
                              return prrt_manager_step(env, sys, tree, pool, rng, o);
                          });
    case PoolMode::quantum_shared:
        return drive_plan(env, "pqrrt-shared", config.seed, config.limits, config.schedule,
                          [&](Tree& tree, const StepOptions& o) {
                              return pqrrt_manager_step(env, sys, tree, config.n, pool, config.policy, rng, o);
                          });
    case PoolMode::quantum_unshared:
        return drive_plan(env, "pqrrt-unshared", config.seed, config.limits, config.schedule,
                          [&](Tree& tree, const StepOptions& o) {
                              return pqrrt_unshared_step(env, sys, tree, config.n, pool, config.policy, rng, o);
                          });
    }
    throw std::invalid_argument("unknown pool mode");
}

} // namespace qrrt
