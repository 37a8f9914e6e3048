#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qrrt/dynamics.hpp"
#include "qrrt/env.hpp"
#include "qrrt/parallel.hpp"
#include "qrrt/planner.hpp"
#include "qrrt/tree.hpp"

namespace qrrt {

using Json = nlohmann::json;

/// Malformed or rejected configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws ConfigError when the file is missing or is not valid JSON.
Json read_json_file(const std::filesystem::path& path);
/// Creates parent directories. Throws std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// {bounds, obstacles, x0, xG, delta, seed}
Environment environment_from_json(const Json& j);
Json environment_to_json(const Environment& env);

/// {bounds, obstacle_count, size_range, corridor?, delta, start_region?, goal_region?}
EnvironmentSpec environment_spec_from_json(const Json& j);
Json environment_spec_to_json(const EnvironmentSpec& spec);

/// {A, B, K, horizon, capture_radius}. Unstable closed loops are rejected
/// with the spectral-radius diagnostic.
LinearSystem system_from_json(const Json& j);
Json system_to_json(const LinearSystem& sys);

/// [[duration, r_min, r_max], ...] or [[duration, r_min, r_max, n], ...].
std::vector<TemperatureStage> stages_from_json(const Json& j);

/// "optimal" or {"fixed": k}.
IterationPolicy policy_from_json(const Json& j);

/// {p, mode, seeds | seed_base, per_worker_budget, shared_amplification}
WorkerPool pool_from_json(const Json& j);
PoolMode parse_pool_mode(const std::string& name);

/// {nodes: [[x, y], ...], parent: [...]} with -1 for the root.
Json tree_to_json(const Tree& tree);
/// {path: [indices], points: [[x, y], ...]}; both empty when no goal.
Json path_to_json(const Tree& tree);

} // namespace qrrt
