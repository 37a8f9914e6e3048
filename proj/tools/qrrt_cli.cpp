// Command-line driver: plan, analyze, bench and gen-env.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qrrt/experiments.hpp"
#include "qrrt/io.hpp"
#include "qrrt/prob.hpp"
#include "qrrt/thread_pool.hpp"

namespace fs = std::filesystem;
using namespace qrrt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitTolerance = 3;

struct ConfigFile {
    Json doc = Json::object();
    fs::path dir = ".";

    bool has(const char* key) const { return doc.contains(key) && !doc[key].is_null(); }

    template <typename T>
    T get(const char* key) const
    {
        try {
            return doc.at(key).get<T>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config field '") + key + "': " + e.what());
        }
    }

    /// Inline object, or a path relative to the config file.
    Json nested(const char* key) const
    {
        const Json& v = doc.at(key);
        if (v.is_string()) {
            return read_json_file(dir / v.get<std::string>());
        }
        return v;
    }
};

ConfigFile load_config(const std::string& path)
{
    ConfigFile c;
    if (!path.empty()) {
        c.doc = read_json_file(path);
        if (!c.doc.is_object()) {
            throw ConfigError(path + ": expected a JSON object");
        }
        c.dir = fs::path(path).parent_path();
    }
    return c;
}

/// "optimal" or "fixed:k".
IterationPolicy parse_policy_flag(const std::string& text)
{
    if (text == "optimal") {
        return IterationPolicy::optimal();
    }
    if (text.rfind("fixed:", 0) == 0) {
        try {
            const int k = std::stoi(text.substr(6));
            if (k >= 0) {
                return IterationPolicy::fixed(k);
            }
        } catch (const std::exception&) {
        }
    }
    throw ConfigError("--iterations: expected optimal or fixed:k, got '" + text + "'");
}

std::unique_ptr<ThreadPool> make_pool(int threads)
{
    if (threads < 0) {
        throw ConfigError("--threads must be non-negative");
    }
    return threads > 0 ? std::make_unique<ThreadPool>(static_cast<std::size_t>(threads)) : nullptr;
}

std::uint64_t require_seed(std::optional<std::uint64_t> flag, const ConfigFile& cfg, const char* key = "seed")
{
    if (flag) {
        return *flag;
    }
    if (cfg.has(key)) {
        return cfg.get<std::uint64_t>(key);
    }
    throw ConfigError(std::string("no ") + key + " given (use --" + key + " or the config field '" + key +
                      "'); seeds are never generated implicitly");
}

void write_files(const fs::path& out, const RecipeFiles& files)
{
    for (const auto& [name, content] : files) {
        write_text_file(out / name, content);
    }
}

EnvironmentSpec preset_spec(const std::string& name)
{
    if (name == "dense") {
        return SlopesConfig::dense_spec();
    }
    if (name == "corridor") {
        return CorridorConfig::corridor_spec();
    }
    if (name == "cluttered") {
        return AnnealingConfig::cluttered_spec();
    }
    throw ConfigError("unknown preset '" + name + "' (expected dense, corridor, cluttered)");
}

// --- plan ---------------------------------------------------------------------

struct PlanArgs {
    std::string config;
    std::string env;
    std::string system;
    std::string algo;
    std::optional<int> n;
    std::optional<int> p;
    std::optional<std::uint64_t> seed;
    std::string iterations;
    std::string schedule;
    std::optional<std::uint64_t> max_steps;
    std::optional<std::uint64_t> max_nodes;
    std::optional<std::uint64_t> cutoff;
    bool no_stop_at_goal = false;
    bool shared_amplification = false;
    std::optional<std::uint64_t> per_worker_budget;
    int threads = 0;
    std::string out = ".";
    std::string dump_amplitudes;
};

int cmd_plan(const PlanArgs& a)
{
    const ConfigFile cfg = load_config(a.config);

    Json env_json;
    if (!a.env.empty()) {
        env_json = read_json_file(a.env);
    } else if (cfg.has("env")) {
        env_json = cfg.nested("env");
    } else if (cfg.has("env_spec")) {
        const EnvironmentSpec spec = environment_spec_from_json(cfg.nested("env_spec"));
        env_json = environment_to_json(generate_random_env(spec, require_seed(std::nullopt, cfg, "env_seed")));
    } else {
        throw ConfigError("no environment given (use --env or the config field 'env' or 'env_spec')");
    }
    const Environment env = environment_from_json(env_json);

    const LinearSystem sys = !a.system.empty() ? system_from_json(read_json_file(a.system))
                             : cfg.has("system") ? system_from_json(cfg.nested("system"))
                                                 : default_system();

    TrialConfig tc;
    tc.algorithm = parse_algorithm(!a.algo.empty() ? a.algo : cfg.has("algorithm") ? cfg.get<std::string>("algorithm")
                                                                                   : std::string("qrrt"));
    tc.seed = require_seed(a.seed, cfg);
    tc.n = a.n.value_or(cfg.has("n") ? cfg.get<int>("n") : tc.n);
    if (tc.n < 1 || tc.n > kMaxQubits) {
        throw ConfigError("n must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    tc.p = a.p.value_or(cfg.has("p") ? cfg.get<int>("p") : tc.p);
    if (tc.p < 1) {
        throw ConfigError("p must be at least 1");
    }
    if (!a.iterations.empty()) {
        tc.policy = parse_policy_flag(a.iterations);
    } else if (cfg.has("iterations")) {
        tc.policy = policy_from_json(cfg.doc["iterations"]);
    }
    if (!a.schedule.empty()) {
        tc.schedule = TemperatureSchedule(stages_from_json(read_json_file(a.schedule)));
    } else if (cfg.has("schedule")) {
        tc.schedule = TemperatureSchedule(stages_from_json(cfg.nested("schedule")));
    }
    if (cfg.has("limits")) {
        const Json& l = cfg.doc["limits"];
        tc.limits.max_steps = l.value("max_steps", tc.limits.max_steps);
        if (l.contains("max_nodes")) {
            tc.limits.max_nodes = l["max_nodes"].get<std::size_t>();
        }
        if (l.contains("cutoff")) {
            tc.limits.oracle_cutoff = l["cutoff"].get<std::uint64_t>();
        }
        tc.limits.stop_at_goal = l.value("stop_at_goal", tc.limits.stop_at_goal);
    }
    if (a.max_steps) {
        tc.limits.max_steps = *a.max_steps;
    }
    if (a.max_nodes) {
        tc.limits.max_nodes = *a.max_nodes;
    }
    if (a.cutoff) {
        tc.limits.oracle_cutoff = *a.cutoff;
    }
    if (a.no_stop_at_goal) {
        tc.limits.stop_at_goal = false;
    }
    if (tc.limits.max_steps < 1) {
        throw ConfigError("max_steps must be at least 1");
    }
    tc.shared_amplification = a.shared_amplification || (cfg.has("shared_amplification") &&
                                                          cfg.get<bool>("shared_amplification"));
    tc.per_worker_budget = a.per_worker_budget.value_or(cfg.has("per_worker_budget")
                                                            ? cfg.get<std::uint64_t>("per_worker_budget")
                                                            : kDefaultWorkerBudget);

    std::ostringstream amplitudes;
    std::uint64_t dumps = 0;
    if (!a.dump_amplitudes.empty()) {
        if (tc.algorithm != Algorithm::qrrt && tc.algorithm != Algorithm::qrrt_qda) {
            throw ConfigError("--dump-amplitudes is available for qrrt and qrrt-qda");
        }
        amplitudes << "database,index,amplitude,good\n";
        tc.on_amplified = [&](const AmplifiedState& s) {
            const auto amps = s.amplitudes();
            const auto mask = s.good_mask();
            for (std::size_t i = 0; i < amps.size(); ++i) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", amps[i]);
                amplitudes << dumps << ',' << i << ',' << buf << ',' << int(mask[i]) << '\n';
            }
            ++dumps;
        };
    }

    const auto pool = make_pool(a.threads);
    tc.executor = pool.get();

    const bool parallel = tc.algorithm == Algorithm::prrt || tc.algorithm == Algorithm::pqrrt_shared ||
                          tc.algorithm == Algorithm::pqrrt_unshared;
    const auto run = [&]() -> PlanResult {
        if (!parallel || !cfg.has("pool")) {
            return run_trial(env, sys, tc);
        }
        ParallelPlanConfig pc;
        pc.pool = pool_from_json(cfg.doc["pool"]);
        const PoolMode expected = tc.algorithm == Algorithm::prrt           ? PoolMode::classical_rrt
                                  : tc.algorithm == Algorithm::pqrrt_shared ? PoolMode::quantum_shared
                                                                            : PoolMode::quantum_unshared;
        if (pc.pool.mode != expected) {
            throw ConfigError("pool mode does not match algorithm " + std::string(algorithm_name(tc.algorithm)));
        }
        if (a.shared_amplification) {
            pc.pool.shared_amplification = true;
        }
        pc.pool.executor = tc.executor;
        pc.n = tc.n;
        pc.policy = tc.policy;
        pc.schedule = tc.schedule;
        pc.limits = tc.limits;
        pc.seed = tc.seed;
        return run_parallel_plan(env, sys, pc);
    };
    const PlanResult result = run();

    const fs::path out(a.out);
    write_text_file(out / "tree.json", tree_to_json(result.tree).dump(1) + "\n");
    write_text_file(out / "path.json", path_to_json(result.tree).dump(1) + "\n");
    const std::vector<TrialRecord> records{result.record};
    write_text_file(out / "record.csv", records_csv(records));
    if (!a.dump_amplitudes.empty()) {
        write_text_file(a.dump_amplitudes, amplitudes.str());
    }

    const auto& r = result.record;
    std::cout << r.algorithm << ": nodes=" << r.nodes_admitted << " duplicates=" << r.duplicates_discarded
              << " steps=" << r.steps << " calls(amp/final/classical)=" << r.calls.amplification << '/'
              << r.calls.finalizer << '/' << r.calls.classical << " goal=" << (r.goal_reached ? "yes" : "no")
              << '\n';
    return kExitOk;
}

// --- analyze ------------------------------------------------------------------

struct AnalyzeArgs {
    std::string config;
    std::vector<int> n;
    std::vector<std::uint64_t> m;
    std::vector<int> p;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> episodes;
    std::optional<std::uint64_t> seed;
    std::optional<double> sigma;
    std::optional<double> rel_tol;
    std::string inject_fault;
    int threads = 0;
    std::string out;
};

int cmd_analyze(const AnalyzeArgs& a)
{
    const ConfigFile cfg = load_config(a.config);
    AnalysisGrid grid;
    if (cfg.has("n")) {
        grid.n_values = cfg.get<std::vector<int>>("n");
    }
    if (cfg.has("m")) {
        grid.m_values = cfg.get<std::vector<std::uint64_t>>("m");
    }
    if (cfg.has("p")) {
        grid.p_values = cfg.get<std::vector<int>>("p");
    }
    if (!a.n.empty()) {
        grid.n_values = a.n;
    }
    if (!a.m.empty()) {
        grid.m_values = a.m;
    }
    if (!a.p.empty()) {
        grid.p_values = a.p;
    }
    grid.mc.trials = a.trials.value_or(cfg.has("trials") ? cfg.get<std::uint64_t>("trials") : grid.mc.trials);
    grid.mc.cover_episodes =
        a.episodes.value_or(cfg.has("episodes") ? cfg.get<std::uint64_t>("episodes") : grid.mc.cover_episodes);
    grid.mc.seed = require_seed(a.seed, cfg);
    grid.sigma_multiple = a.sigma.value_or(cfg.has("sigma") ? cfg.get<double>("sigma") : grid.sigma_multiple);
    grid.expectation_rel_tol =
        a.rel_tol.value_or(cfg.has("rel_tol") ? cfg.get<double>("rel_tol") : grid.expectation_rel_tol);
    if (!a.inject_fault.empty()) {
        grid.inject_fault = a.inject_fault;
    }
    if (grid.mc.trials < 1 || grid.mc.cover_episodes < 1) {
        throw ConfigError("trials and episodes must be at least 1");
    }
    for (int n : grid.n_values) {
        if (n < 1 || n > kMaxQubits) {
            throw ConfigError("n must be in [1, " + std::to_string(kMaxQubits) + "]");
        }
    }
    for (int p : grid.p_values) {
        if (p < 1) {
            throw ConfigError("p must be at least 1");
        }
    }
    const auto pool = make_pool(a.threads);
    grid.mc.pool = pool.get();

    std::vector<AnalysisRow> rows;
    try {
        rows = analyze_grid(grid);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const std::string csv = analysis_csv(rows);
    if (a.out.empty()) {
        std::cout << csv;
    } else {
        write_text_file(a.out, csv);
    }
    std::size_t failed = 0;
    for (const auto& r : rows) {
        if (!r.passed) {
            ++failed;
            std::cerr << "tolerance exceeded: " << r.lemma_id << " n=" << r.n << " m=" << r.m
                      << (r.p ? " p=" + std::to_string(*r.p) : std::string()) << " closed_form=" << r.closed_form
                      << " monte_carlo=" << r.monte_carlo << '\n';
        }
    }
    std::cerr << rows.size() - failed << '/' << rows.size() << " rows within tolerance\n";
    return failed == 0 ? kExitOk : kExitTolerance;
}

// --- bench --------------------------------------------------------------------

struct BenchArgs {
    std::string recipe;
    std::string config;
    std::optional<int> trials;
    std::vector<std::uint64_t> cutoffs;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> env_seed;
    std::optional<int> n;
    std::optional<int> grid;
    std::optional<int> envs;
    std::optional<std::size_t> tree_nodes;
    int threads = 0;
    std::string out = ".";
};

template <typename Config>
void apply_common(Config& c, const BenchArgs& a, const ConfigFile& cfg)
{
    if (cfg.has("env_spec")) {
        c.env_spec = environment_spec_from_json(cfg.nested("env_spec"));
    }
    c.seed = a.seed.value_or(cfg.has("seed") ? cfg.get<std::uint64_t>("seed") : c.seed);
    c.n = a.n.value_or(cfg.has("n") ? cfg.get<int>("n") : c.n);
    if (c.n < 1 || c.n > kMaxQubits) {
        throw ConfigError("n must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
}

template <typename Config>
void apply_env_seed(Config& c, const BenchArgs& a, const ConfigFile& cfg)
{
    c.env_seed = a.env_seed.value_or(cfg.has("env_seed") ? cfg.get<std::uint64_t>("env_seed") : c.env_seed);
}

int trials_of(const BenchArgs& a, const ConfigFile& cfg, int fallback)
{
    const int t = a.trials.value_or(cfg.has("trials") ? cfg.get<int>("trials") : fallback);
    if (t < 1) {
        throw ConfigError("trials must be at least 1");
    }
    return t;
}

int grid_of(const BenchArgs& a, const ConfigFile& cfg, int fallback)
{
    const int g = a.grid.value_or(cfg.has("grid") ? cfg.get<int>("grid") : fallback);
    if (g < 1) {
        throw ConfigError("grid must be at least 1");
    }
    return g;
}

int cmd_bench(const BenchArgs& a)
{
    const ConfigFile cfg = load_config(a.config);
    const auto pool = make_pool(a.threads);
    const fs::path out(a.out);

    if (a.recipe == "slopes") {
        SlopesConfig c;
        apply_common(c, a, cfg);
        c.executor = pool.get();
        c.env_count = a.envs.value_or(cfg.has("env_count") ? cfg.get<int>("env_count") : c.env_count);
        c.tree_nodes = a.tree_nodes.value_or(cfg.has("tree_nodes") ? cfg.get<std::size_t>("tree_nodes") : c.tree_nodes);
        c.p = cfg.has("p") ? cfg.get<int>("p") : c.p;
        if (c.env_count < 1 || c.tree_nodes < 2 || c.p < 1) {
            throw ConfigError("slopes needs env_count >= 1, tree_nodes >= 2, p >= 1");
        }
        const auto r = run_slopes(c);
        write_files(out, r.files);
        std::cout << r.files.at("slopes_summary.csv");
    } else if (a.recipe == "heatmap") {
        HeatmapConfig c;
        apply_common(c, a, cfg);
        apply_env_seed(c, a, cfg);
        c.executor = pool.get();
        c.trials = trials_of(a, cfg, c.trials);
        c.grid = grid_of(a, cfg, c.grid);
        if (cfg.has("cutoffs")) {
            c.cutoffs = cfg.get<std::vector<std::uint64_t>>("cutoffs");
        }
        if (!a.cutoffs.empty()) {
            c.cutoffs = a.cutoffs;
        }
        for (auto cut : c.cutoffs) {
            if (cut < 1) {
                throw ConfigError("cutoffs must be at least 1");
            }
        }
        const auto r = run_heatmap(c);
        write_files(out, r.files);
        std::cout << r.files.at("heatmap_summary.csv");
    } else if (a.recipe == "corridor") {
        CorridorConfig c;
        apply_common(c, a, cfg);
        apply_env_seed(c, a, cfg);
        c.executor = pool.get();
        c.trials = trials_of(a, cfg, c.trials);
        c.grid = grid_of(a, cfg, c.grid);
        c.cutoff = cfg.has("cutoff") ? cfg.get<std::uint64_t>("cutoff") : c.cutoff;
        if (a.cutoffs.size() > 1) {
            throw ConfigError("corridor takes a single --cutoff");
        }
        if (!a.cutoffs.empty()) {
            c.cutoff = a.cutoffs.front();
        }
        if (c.cutoff < 1) {
            throw ConfigError("cutoff must be at least 1");
        }
        const auto r = run_corridor(c);
        write_files(out, r.files);
        std::cout << r.files.at("corridor_summary.csv");
    } else if (a.recipe == "annealing") {
        AnnealingConfig c;
        apply_common(c, a, cfg);
        apply_env_seed(c, a, cfg);
        c.executor = pool.get();
        c.trials = trials_of(a, cfg, c.trials);
        c.tree_nodes = a.tree_nodes.value_or(cfg.has("tree_nodes") ? cfg.get<std::size_t>("tree_nodes") : c.tree_nodes);
        if (cfg.has("schedule")) {
            c.stages = stages_from_json(cfg.nested("schedule"));
        }
        if (cfg.has("iterations")) {
            c.policy = policy_from_json(cfg.doc["iterations"]);
        }
        if (c.tree_nodes < 2) {
            throw ConfigError("tree_nodes must be at least 2");
        }
        const auto r = run_annealing(c);
        write_files(out, r.files);
        std::cout << r.files.at("annealing_summary.csv");
    } else {
        throw ConfigError("unknown recipe '" + a.recipe + "' (expected slopes, heatmap, corridor, annealing)");
    }
    return kExitOk;
}

// --- gen-env ------------------------------------------------------------------

struct GenEnvArgs {
    std::string spec;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> obstacles;
    std::string out;
};

int cmd_gen_env(const GenEnvArgs& a)
{
    if (!a.spec.empty() && !a.preset.empty()) {
        throw ConfigError("use either --spec or --preset");
    }
    EnvironmentSpec spec = !a.spec.empty()     ? environment_spec_from_json(read_json_file(a.spec))
                           : !a.preset.empty() ? preset_spec(a.preset)
                                               : EnvironmentSpec{};
    if (a.obstacles) {
        spec.obstacle_count = *a.obstacles;
    }
    if (!a.seed) {
        throw ConfigError("no seed given (use --seed); seeds are never generated implicitly");
    }
    Environment env = [&] {
        try {
            return generate_random_env(spec, *a.seed);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();
    const std::string text = environment_to_json(env).dump(1) + "\n";
    if (a.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(a.out, text);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum-accelerated RRT planning and analysis"};
    app.require_subcommand(1);

    PlanArgs plan;
    auto* p = app.add_subcommand("plan", "Run one planner and write tree.json, path.json and record.csv");
    p->add_option("--config", plan.config, "JSON run config");
    p->add_option("--env", plan.env, "Environment JSON");
    p->add_option("--system", plan.system, "System JSON (A, B, K, horizon, capture_radius)");
    p->add_option("--algo", plan.algo, "rrt | prrt | qrrt | qrrt-qda | pqrrt-shared | pqrrt-unshared");
    p->add_option("--n", plan.n, "Database qubits");
    p->add_option("--p", plan.p, "Worker count");
    p->add_option("--seed", plan.seed, "Planner seed");
    p->add_option("--iterations", plan.iterations, "optimal | fixed:k");
    p->add_option("--schedule", plan.schedule, "Temperature schedule JSON");
    p->add_option("--max-steps", plan.max_steps, "Step limit");
    p->add_option("--max-nodes", plan.max_nodes, "Tree size limit");
    p->add_option("--cutoff", plan.cutoff, "Oracle-call cutoff (amplification + classical)");
    p->add_flag("--no-stop-at-goal", plan.no_stop_at_goal, "Keep growing after the goal is reached");
    p->add_flag("--shared-amplification", plan.shared_amplification, "Charge one amplification per shared database");
    p->add_option("--per-worker-budget", plan.per_worker_budget, "Classical worker budget per task");
    p->add_option("--threads", plan.threads, "Worker threads (0 runs inline)");
    p->add_option("--out", plan.out, "Output directory");
    p->add_option("--dump-amplitudes", plan.dump_amplitudes, "Write amplified amplitudes to this CSV");

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "Closed forms against Monte Carlo over a parameter grid");
    an->add_option("--config", analyze.config, "JSON grid config");
    an->add_option("--n", analyze.n, "Qubit counts")->delimiter(',');
    an->add_option("--m", analyze.m, "Good counts")->delimiter(',');
    an->add_option("--p", analyze.p, "Worker counts")->delimiter(',');
    an->add_option("--trials", analyze.trials, "Monte Carlo trials per cell");
    an->add_option("--episodes", analyze.episodes, "Coverage episodes per cell");
    an->add_option("--seed", analyze.seed, "Monte Carlo seed");
    an->add_option("--sigma", analyze.sigma, "Probability tolerance in standard errors");
    an->add_option("--rel-tol", analyze.rel_tol, "Relative tolerance for expectations");
    an->add_option("--inject-fault", analyze.inject_fault, "Perturb the named lemma's closed form (negative control)");
    an->add_option("--threads", analyze.threads, "Worker threads (0 runs inline)");
    an->add_option("--out", analyze.out, "CSV output path (stdout when absent)");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Run a named experiment recipe");
    b->add_option("recipe", bench.recipe, "slopes | heatmap | corridor | annealing")->required();
    b->add_option("--config", bench.config, "JSON recipe overrides");
    b->add_option("--trials", bench.trials, "Trials per batch");
    b->add_option("--cutoff", bench.cutoffs, "Oracle-call cutoff(s)")->delimiter(',');
    b->add_option("--seed", bench.seed, "Trial seed (recipes ship a documented default)");
    b->add_option("--env-seed", bench.env_seed, "Environment seed");
    b->add_option("--n", bench.n, "Database qubits");
    b->add_option("--grid", bench.grid, "Heatmap cells per axis");
    b->add_option("--envs", bench.envs, "Environment count (slopes)");
    b->add_option("--tree-nodes", bench.tree_nodes, "Tree size (slopes, annealing)");
    b->add_option("--threads", bench.threads, "Worker threads (0 runs inline)");
    b->add_option("--out", bench.out, "Output directory");

    GenEnvArgs gen;
    auto* g = app.add_subcommand("gen-env", "Generate a random environment");
    g->add_option("--spec", gen.spec, "Environment spec JSON");
    g->add_option("--preset", gen.preset, "dense | corridor | cluttered");
    g->add_option("--seed", gen.seed, "Generator seed");
    g->add_option("--obstacles", gen.obstacles, "Override the obstacle count");
    g->add_option("--out", gen.out, "Output path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*p) {
            return cmd_plan(plan);
        }
        if (*an) {
            return cmd_analyze(analyze);
        }
        if (*b) {
            return cmd_bench(bench);
        }
        if (*g) {
            return cmd_gen_env(gen);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
