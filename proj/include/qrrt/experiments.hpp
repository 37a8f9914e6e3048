#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrrt/env.hpp"
#include "qrrt/metrics.hpp"
#include "qrrt/parallel.hpp"
#include "qrrt/planner.hpp"

namespace qrrt {

enum class Algorithm { rrt, prrt, qrrt, qrrt_qda, pqrrt_shared, pqrrt_unshared };

std::string_view algorithm_name(Algorithm a);
/// Accepts the names printed by algorithm_name. Throws std::invalid_argument.
Algorithm parse_algorithm(std::string_view name);

struct TrialConfig {
    Algorithm algorithm = Algorithm::qrrt;
    int n = 8;
    IterationPolicy policy = IterationPolicy::optimal();
    /// Required for qrrt-qda; optional annealing for the pooled quantum modes.
    std::optional<TemperatureSchedule> schedule;
    int p = 8;
    std::uint64_t per_worker_budget = kDefaultWorkerBudget;
    bool shared_amplification = false;
    PlanLimits limits;
    std::uint64_t seed = 0;
    ThreadPool* executor = nullptr;
    AmplifiedHook on_amplified;
};

PlanResult run_trial(const Environment& env, const LinearSystem& sys, const TrialConfig& config);

/// Runs the configured planner until amplification + classical calls reach
/// the cutoff (finalizer calls are not charged). The goal does not end the run.
TrialRecord cutoff_run(const Environment& env, const LinearSystem& sys, TrialConfig config,
                       std::uint64_t oracle_call_cutoff);

// --- bench recipes ---------------------------------------------------------

/// Output files produced by a recipe, keyed by file name.
using RecipeFiles = std::map<std::string, std::string>;

struct SlopesConfig {
    EnvironmentSpec env_spec = dense_spec();
    int env_count = 20;
    std::size_t tree_nodes = 30;
    int n = 8;
    int p = 8;
    std::uint64_t seed = 7;
    ThreadPool* executor = nullptr;

    static EnvironmentSpec dense_spec();
};

struct SlopesResult {
    /// Least-squares calls-per-node slope by algorithm name.
    std::map<std::string, LineFit> fits;
    std::vector<TrialRecord> records;
    RecipeFiles files;
};

SlopesResult run_slopes(const SlopesConfig& config);

struct HeatmapConfig {
    EnvironmentSpec env_spec = SlopesConfig::dense_spec();
    std::uint64_t env_seed = 11;
    int trials = 100;
    std::vector<std::uint64_t> cutoffs{10, 20, 40};
    int grid = 100;
    int n = 8;
    std::uint64_t seed = 13;
    ThreadPool* executor = nullptr;
};

struct HeatmapSummaryRow {
    std::string algorithm;
    std::uint64_t cutoff = 0;
    std::uint64_t nodes = 0;
    std::uint64_t calls_total = 0;
    std::uint64_t calls_cutoff = 0;
    double efficiency = 0.0;
};

struct HeatmapResult {
    std::vector<HeatmapSummaryRow> summary;
    RecipeFiles files;
};

HeatmapResult run_heatmap(const HeatmapConfig& config);

struct CorridorConfig {
    EnvironmentSpec env_spec = corridor_spec();
    std::uint64_t env_seed = 17;
    int trials = 50;
    std::uint64_t cutoff = 25;
    int n = 8;
    int grid = 100;
    std::uint64_t seed = 19;
    ThreadPool* executor = nullptr;

    static EnvironmentSpec corridor_spec();
};

struct CorridorResult {
    Rect corridor;
    std::uint64_t qrrt_count = 0;
    std::uint64_t rrt_count = 0;
    std::uint64_t qrrt_nodes = 0;
    std::uint64_t rrt_nodes = 0;
    RecipeFiles files;
};

CorridorResult run_corridor(const CorridorConfig& config);

struct AnnealingConfig {
    EnvironmentSpec env_spec = cluttered_spec();
    std::uint64_t env_seed = 23;
    int trials = 5;
    std::size_t tree_nodes = 16;
    int n = 9;
    std::vector<TemperatureStage> stages{{16, 2.7, 4.2, std::nullopt}, {32, 0.8, 2.0, std::nullopt}};
    IterationPolicy policy = IterationPolicy::optimal();
    std::uint64_t seed = 29;
    ThreadPool* executor = nullptr;

    static EnvironmentSpec cluttered_spec();
};

struct AnnealingResult {
    double annealed_mean_edge = 0.0;
    double standard_mean_edge = 0.0;
    double annealed_min_edge = 0.0;
    double annealed_max_edge = 0.0;
    std::uint64_t annealed_calls = 0;
    std::uint64_t standard_calls = 0;
    RecipeFiles files;
};

AnnealingResult run_annealing(const AnnealingConfig& config);

} // namespace qrrt
