#include "qrrt/experiments.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qrrt/thread_pool.hpp"

namespace qrrt {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 6> kAlgorithms{{
    {Algorithm::rrt, "rrt"},
    {Algorithm::prrt, "prrt"},
    {Algorithm::qrrt, "qrrt"},
    {Algorithm::qrrt_qda, "qrrt-qda"},
    {Algorithm::pqrrt_shared, "pqrrt-shared"},
    {Algorithm::pqrrt_unshared, "pqrrt-unshared"},
}};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string_view algorithm_name(Algorithm a)
{
    for (const auto& [alg, name] : kAlgorithms) {
        if (alg == a) {
            return name;
        }
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name)
{
    for (const auto& [alg, n] : kAlgorithms) {
        if (n == name) {
            return alg;
        }
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                                "' (expected rrt, prrt, qrrt, qrrt-qda, pqrrt-shared, pqrrt-unshared)");
}

PlanResult run_trial(const Environment& env, const LinearSystem& sys, const TrialConfig& config)
{
    const auto pool_for = [&](PoolMode mode) {
        WorkerPool pool = WorkerPool::make(config.p, mode, derive_seed(config.seed, 0x9001));
        pool.per_worker_budget = config.per_worker_budget;
        pool.shared_amplification = config.shared_amplification;
        pool.executor = config.executor;
        return pool;
    };
    const auto parallel = [&](PoolMode mode) {
        ParallelPlanConfig pc;
        pc.pool = pool_for(mode);
        pc.n = config.n;
        pc.policy = config.policy;
        pc.schedule = config.schedule;
        pc.limits = config.limits;
        pc.seed = config.seed;
        return run_parallel_plan(env, sys, pc);
    };

    switch (config.algorithm) {
    case Algorithm::rrt:
        return rrt_plan(env, sys, config.limits, config.seed);
    case Algorithm::qrrt:
        return qrrt_plan(env, sys, config.n, config.policy, config.limits, config.seed, std::nullopt,
                         config.on_amplified);
    case Algorithm::qrrt_qda:
        if (!config.schedule) {
            throw std::invalid_argument("qrrt-qda needs a temperature schedule");
        }
        return qrrt_plan(env, sys, config.n, config.policy, config.limits, config.seed, config.schedule,
                         config.on_amplified);
    case Algorithm::prrt:
        return parallel(PoolMode::classical_rrt);
    case Algorithm::pqrrt_shared:
        return parallel(PoolMode::quantum_shared);
    case Algorithm::pqrrt_unshared:
        return parallel(PoolMode::quantum_unshared);
    }
    throw std::invalid_argument("unknown algorithm");
}

TrialRecord cutoff_run(const Environment& env, const LinearSystem& sys, TrialConfig config,
                       std::uint64_t oracle_call_cutoff)
{
    if (oracle_call_cutoff < 1) {
        throw std::invalid_argument("oracle-call cutoff must be at least 1");
    }
    config.limits.oracle_cutoff = oracle_call_cutoff;
    config.limits.stop_at_goal = false;
    // Steps on an untaggable database are not charged to the cutoff; bound them.
    config.limits.max_steps = std::min<std::uint64_t>(config.limits.max_steps, 100 * oracle_call_cutoff + 100);
    return run_trial(env, sys, config).record;
}

// --- slopes -------------------------------------------------------------------

EnvironmentSpec SlopesConfig::dense_spec()
{
    EnvironmentSpec s;
    s.bounds = {0.0, 0.0, 20.0, 20.0};
    s.obstacle_count = 60;
    s.size_min = 1.0;
    s.size_max = 3.0;
    s.delta = 0.5;
    s.start_region = Rect{0.0, 0.0, 4.0, 4.0};
    s.goal_region = Rect{16.0, 16.0, 20.0, 20.0};
    return s;
}

SlopesResult run_slopes(const SlopesConfig& config)
{
    if (config.env_count < 1 || config.tree_nodes < 2) {
        throw std::invalid_argument("slopes recipe needs at least one environment and two-node trees");
    }
    constexpr std::array<Algorithm, 4> algorithms{Algorithm::rrt, Algorithm::prrt, Algorithm::qrrt,
                                                  Algorithm::pqrrt_shared};
    const LinearSystem sys = default_system();
    const auto per_env = map_indexed(config.executor, static_cast<std::size_t>(config.env_count), [&](std::size_t i) {
        const Environment env = generate_random_env(config.env_spec, derive_seed(config.seed, i));
        std::vector<TrialRecord> out;
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            TrialConfig tc;
            tc.algorithm = algorithms[a];
            tc.n = config.n;
            tc.p = config.p;
            tc.seed = derive_seed(config.seed, 1000 + i * 16 + a);
            tc.limits.max_nodes = config.tree_nodes;
            tc.limits.stop_at_goal = false;
            out.push_back(run_trial(env, sys, tc).record);
        }
        return out;
    });

    SlopesResult result;
    std::map<std::string, std::vector<std::pair<double, double>>> points;
    std::ostringstream pts;
    pts << "algorithm,env,nodes,calls\n";
    for (std::size_t i = 0; i < per_env.size(); ++i) {
        for (const auto& rec : per_env[i]) {
            // Calls at each admission, centred per environment so the pooled
            // fit measures the within-environment growth rate.
            std::vector<std::pair<double, double>> env_points;
            std::uint64_t last_nodes = 0;
            for (const auto& tp : rec.trace) {
                if (tp.nodes == last_nodes) {
                    continue;
                }
                last_nodes = tp.nodes;
                env_points.emplace_back(static_cast<double>(tp.nodes), static_cast<double>(tp.calls));
                pts << rec.algorithm << ',' << i << ',' << tp.nodes << ',' << tp.calls << '\n';
            }
            double mx = 0.0;
            double my = 0.0;
            for (const auto& [x, y] : env_points) {
                mx += x;
                my += y;
            }
            if (!env_points.empty()) {
                mx /= static_cast<double>(env_points.size());
                my /= static_cast<double>(env_points.size());
            }
            for (const auto& [x, y] : env_points) {
                points[rec.algorithm].emplace_back(x - mx, y - my);
            }
            result.records.push_back(rec);
        }
    }
    std::ostringstream summary;
    summary << "algorithm,slope_calls_per_node,points\n";
    for (Algorithm a : algorithms) {
        const std::string name(algorithm_name(a));
        const LineFit fit = slope_fit(points[name]);
        result.fits[name] = fit;
        summary << name << ',' << fmt(fit.slope) << ',' << points[name].size() << '\n';
    }
    result.files["slopes_points.csv"] = pts.str();
    result.files["slopes_summary.csv"] = summary.str();
    result.files["slopes_records.csv"] = records_csv(result.records);
    return result;
}

// --- heatmap ------------------------------------------------------------------

namespace {

std::vector<TrialRecord> cutoff_batch(const Environment& env, const LinearSystem& sys, Algorithm algorithm,
                                      int n, int trials, std::uint64_t cutoff, std::uint64_t seed,
                                      ThreadPool* executor)
{
    return map_indexed(executor, static_cast<std::size_t>(trials), [&](std::size_t t) {
        TrialConfig tc;
        tc.algorithm = algorithm;
        tc.n = n;
        tc.seed = derive_seed(seed, t);
        return cutoff_run(env, sys, tc, cutoff);
    });
}

} // namespace

HeatmapResult run_heatmap(const HeatmapConfig& config)
{
    if (config.trials < 1) {
        throw std::invalid_argument("heatmap recipe needs at least one trial");
    }
    const LinearSystem sys = default_system();
    const Environment env = generate_random_env(config.env_spec, config.env_seed);
    HeatmapResult result;
    std::ostringstream summary;
    summary << "algorithm,cutoff,trials,nodes,calls_total,calls_cutoff,efficiency\n";
    for (std::uint64_t cutoff : config.cutoffs) {
        for (Algorithm a : {Algorithm::rrt, Algorithm::qrrt}) {
            const std::string name(algorithm_name(a));
            const auto records = cutoff_batch(env, sys, a, config.n, config.trials, cutoff,
                                              derive_seed(derive_seed(config.seed, cutoff), static_cast<std::uint64_t>(a)),
                                              config.executor);
            HeatmapSummaryRow row{name, cutoff, 0, 0, 0, 0.0};
            for (const auto& r : records) {
                row.nodes += r.nodes_admitted;
                row.calls_total += r.calls.total();
                row.calls_cutoff += r.calls.cutoff_total();
            }
            row.efficiency = row.calls_total > 0 ? oracle_efficiency(row.nodes, row.calls_total) : 0.0;
            const Heatmap map = accumulate_heatmap(records, {env.bounds(), config.grid, config.grid});
            const std::string stem = "heatmap_" + name + "_" + std::to_string(cutoff);
            result.files[stem + ".csv"] = map.to_csv();
            result.files[stem + ".pgm"] = map.to_pgm();
            result.files["records_" + name + "_" + std::to_string(cutoff) + ".csv"] = records_csv(records);
            summary << name << ',' << cutoff << ',' << config.trials << ',' << row.nodes << ',' << row.calls_total
                    << ',' << row.calls_cutoff << ',' << fmt(row.efficiency) << '\n';
            result.summary.push_back(row);
        }
    }
    result.files["heatmap_summary.csv"] = summary.str();
    return result;
}

// --- corridor -----------------------------------------------------------------

EnvironmentSpec CorridorConfig::corridor_spec()
{
    EnvironmentSpec s;
    s.bounds = {0.0, 0.0, 20.0, 10.0};
    s.obstacle_count = 12;
    s.size_min = 0.5;
    s.size_max = 1.5;
    s.corridor = CorridorSpec{1.0, 8.0};
    s.delta = 0.5;
    s.start_region = Rect{3.0, 3.0, 5.0, 7.0};
    s.goal_region = Rect{15.0, 3.0, 17.0, 7.0};
    return s;
}

CorridorResult run_corridor(const CorridorConfig& config)
{
    if (config.trials < 1) {
        throw std::invalid_argument("corridor recipe needs at least one trial");
    }
    const LinearSystem sys = default_system();
    const Environment env = generate_random_env(config.env_spec, config.env_seed);
    CorridorResult result;
    result.corridor = corridor_gap(config.env_spec);
    std::ostringstream summary;
    summary << "algorithm,trials,cutoff,corridor_nodes,total_nodes\n";
    for (Algorithm a : {Algorithm::qrrt, Algorithm::rrt}) {
        const std::string name(algorithm_name(a));
        const auto records = cutoff_batch(env, sys, a, config.n, config.trials, config.cutoff,
                                          derive_seed(config.seed, static_cast<std::uint64_t>(a)), config.executor);
        const std::uint64_t inside = count_in_region(records, result.corridor);
        std::uint64_t total = 0;
        for (const auto& r : records) {
            total += r.nodes_admitted;
        }
        (a == Algorithm::qrrt ? result.qrrt_count : result.rrt_count) = inside;
        (a == Algorithm::qrrt ? result.qrrt_nodes : result.rrt_nodes) = total;
        const Heatmap map = accumulate_heatmap(records, {env.bounds(), config.grid, config.grid});
        result.files["corridor_heatmap_" + name + ".csv"] = map.to_csv();
        result.files["corridor_heatmap_" + name + ".pgm"] = map.to_pgm();
        result.files["corridor_records_" + name + ".csv"] = records_csv(records);
        summary << name << ',' << config.trials << ',' << config.cutoff << ',' << inside << ',' << total << '\n';
    }
    result.files["corridor_summary.csv"] = summary.str();
    return result;
}

// --- annealing ----------------------------------------------------------------

EnvironmentSpec AnnealingConfig::cluttered_spec()
{
    EnvironmentSpec s;
    s.bounds = {0.0, 0.0, 40.0, 40.0};
    s.obstacle_count = 6025;
    s.size_min = 0.1;
    s.size_max = 0.4;
    s.delta = 0.5;
    s.start_region = Rect{18.0, 18.0, 22.0, 22.0};
    s.goal_region = Rect{36.0, 36.0, 40.0, 40.0};
    return s;
}

AnnealingResult run_annealing(const AnnealingConfig& config)
{
    if (config.trials < 1 || config.tree_nodes < 2) {
        throw std::invalid_argument("annealing recipe needs at least one trial and two-node trees");
    }
    const LinearSystem sys = default_system();
    const Environment env = generate_random_env(config.env_spec, config.env_seed);
    const TemperatureSchedule schedule(config.stages);

    struct Edges {
        TrialRecord record;
        std::vector<double> lengths;
    };
    const auto run = [&](Algorithm a) {
        return map_indexed(config.executor, static_cast<std::size_t>(config.trials), [&](std::size_t t) {
            TrialConfig tc;
            tc.algorithm = a;
            tc.n = config.n;
            tc.policy = config.policy;
            if (a == Algorithm::qrrt_qda) {
                tc.schedule = schedule;
            }
            tc.seed = derive_seed(derive_seed(config.seed, static_cast<std::uint64_t>(a)), t);
            tc.limits.max_nodes = config.tree_nodes;
            tc.limits.stop_at_goal = false;
            PlanResult r = run_trial(env, sys, tc);
            Edges e{std::move(r.record), {}};
            for (std::size_t i = 1; i < r.tree.size(); ++i) {
                e.lengths.push_back(distance(r.tree.node(i), r.tree.node(r.tree.parent(i))));
            }
            return e;
        });
    };

    AnnealingResult result;
    std::ostringstream summary;
    summary << "algorithm,trials,edges,mean_edge,min_edge,max_edge,calls_total\n";
    std::vector<TrialRecord> records;
    for (Algorithm a : {Algorithm::qrrt_qda, Algorithm::qrrt}) {
        const auto trials = run(a);
        double sum = 0.0;
        double lo = 1e300;
        double hi = 0.0;
        std::size_t count = 0;
        std::uint64_t calls = 0;
        for (const auto& t : trials) {
            for (double l : t.lengths) {
                sum += l;
                lo = std::min(lo, l);
                hi = std::max(hi, l);
                ++count;
            }
            calls += t.record.calls.total();
            records.push_back(t.record);
        }
        if (count == 0) {
            throw std::runtime_error("annealing recipe produced no edges");
        }
        const double mean = sum / static_cast<double>(count);
        if (a == Algorithm::qrrt_qda) {
            result.annealed_mean_edge = mean;
            result.annealed_min_edge = lo;
            result.annealed_max_edge = hi;
            result.annealed_calls = calls;
        } else {
            result.standard_mean_edge = mean;
            result.standard_calls = calls;
        }
        summary << algorithm_name(a) << ',' << config.trials << ',' << count << ',' << fmt(mean) << ','
                << fmt(lo) << ',' << fmt(hi) << ',' << calls << '\n';
    }
    result.files["annealing_summary.csv"] = summary.str();
    result.files["annealing_records.csv"] = records_csv(records);
    return result;
}

} // namespace qrrt
