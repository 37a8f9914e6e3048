#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrrt/planner.hpp"

namespace qrrt {

class ThreadPool;

enum class PoolMode { classical_rrt, quantum_shared, quantum_unshared };

inline constexpr std::uint64_t kDefaultWorkerBudget = 64;

struct WorkerPool {
    int p = 1;
    std::vector<std::uint64_t> seeds;
    PoolMode mode = PoolMode::quantum_shared;
    /// Reachability tests a classical worker may spend per task.
    std::uint64_t per_worker_budget = kDefaultWorkerBudget;
    /// Charge one amplification per shared database instead of one per
    /// worker. Only meaningful in simulation, where the amplified state can
    /// be copied; a device would amplify once per worker.
    bool shared_amplification = false;
    /// Workers run here when set, inline otherwise. Observable behaviour is
    /// the same either way.
    ThreadPool* executor = nullptr;

    /// Seeds derived from seed_base, one per worker.
    static WorkerPool make(int p, PoolMode mode, std::uint64_t seed_base);
    /// Throws std::invalid_argument for p < 1, a seed count other than p,
    /// repeated seeds or a zero classical budget.
    void validate() const;
};

struct WorkerResult {
    int worker_id = 0;
    /// Present only for a finalizer-verified pair.
    std::optional<DatabaseEntry> candidate;
    OracleCalls calls;
    std::optional<std::size_t> measured_index;
    std::uint64_t tag_evaluations = 0;
    std::optional<std::uint64_t> database_m;
};

/// Manager-side admission of worker results in worker-id order. Repeated
/// database indices (shared mode) and repeated coordinates are discarded.
StepReport admit_worker_results(const Environment& env, const LinearSystem& sys, Tree& tree,
                                const std::vector<WorkerResult>& results, bool dedupe_by_index);

/// Worker phase on an already tagged shared database: each worker amplifies
/// its own copy with k iterations, measures, and verifies the measured pair.
std::vector<WorkerResult> shared_database_workers(const Environment& env, const LinearSystem& sys,
                                                  const Database& db, const WorkerPool& pool,
                                                  int k, std::uint64_t step_key);

/// Manager step on a given tagged database (the part of the shared step that
/// follows construction).
StepReport pqrrt_shared_step_on_database(const Environment& env, const LinearSystem& sys, Tree& tree,
                                         const Database& db, const WorkerPool& pool, int k,
                                         std::uint64_t step_key,
                                         std::optional<std::uint64_t> budget = std::nullopt);

/// Shared-database step: the manager builds and tags one database, p workers
/// amplify and measure copies of it.
StepReport pqrrt_manager_step(const Environment& env, const LinearSystem& sys, Tree& tree, int n,
                              const WorkerPool& pool, const IterationPolicy& policy, Rng& rng,
                              const StepOptions& options = {});

/// Unshared step: every worker builds, tags, amplifies and measures its own
/// database against the same tree snapshot.
StepReport pqrrt_unshared_step(const Environment& env, const LinearSystem& sys, Tree& tree, int n,
                               const WorkerPool& pool, const IterationPolicy& policy, Rng& rng,
                               const StepOptions& options = {});

/// Classical manager-worker step: each worker repeats (sample, nearest on the
/// snapshot, reachability test) until success or its budget runs out.
StepReport prrt_manager_step(const Environment& env, const LinearSystem& sys, Tree& tree,
                             const WorkerPool& pool, Rng& rng, const StepOptions& options = {});

struct ParallelPlanConfig {
    WorkerPool pool;
    int n = 8;
    IterationPolicy policy = IterationPolicy::optimal();
    std::optional<TemperatureSchedule> schedule;
    PlanLimits limits;
    std::uint64_t seed = 0;
};

PlanResult run_parallel_plan(const Environment& env, const LinearSystem& sys,
                             const ParallelPlanConfig& config);

} // namespace qrrt
