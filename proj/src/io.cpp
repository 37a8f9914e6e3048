#include "qrrt/io.hpp"

#include <fstream>

namespace qrrt {

namespace {

template <typename T>
T field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback)
{
    return j.contains(key) ? field<T>(j, key) : fallback;
}

Point point_from(const Json& j, const char* what)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(std::string(what) + ": expected [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Rect rect_from(const Json& j, const char* what)
{
    if (!j.is_array() || j.size() != 4) {
        throw ConfigError(std::string(what) + ": expected [xmin, ymin, xmax, ymax]");
    }
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw ConfigError(std::string(what) + ": expected numbers");
        }
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

Json to_json(Point p) { return Json::array({p.x, p.y}); }
Json to_json(const Rect& r) { return Json::array({r.xmin, r.ymin, r.xmax, r.ymax}); }

Mat2 mat_from(const Json& j, const char* what)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2) {
        throw ConfigError(std::string(what) + ": expected a 2x2 matrix [[a, b], [c, d]]");
    }
    Mat2 m;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            if (!j[r][c].is_number()) {
                throw ConfigError(std::string(what) + ": expected numbers");
            }
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

Json to_json(const Mat2& m) { return Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})}); }

} // namespace

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

Environment environment_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw ConfigError("environment: expected an object");
    }
    std::vector<Rect> obstacles;
    if (j.contains("obstacles")) {
        if (!j["obstacles"].is_array()) {
            throw ConfigError("obstacles: expected an array");
        }
        for (const auto& o : j["obstacles"]) {
            obstacles.push_back(rect_from(o, "obstacle"));
        }
    }
    if (!j.contains("bounds") || !j.contains("x0") || !j.contains("xG")) {
        throw ConfigError("environment needs bounds, x0 and xG");
    }
    try {
        return Environment(rect_from(j["bounds"], "bounds"), std::move(obstacles), point_from(j["x0"], "x0"),
                           point_from(j["xG"], "xG"), field<double>(j, "delta"), field<std::uint64_t>(j, "seed"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("environment: ") + e.what());
    }
}

Json environment_to_json(const Environment& env)
{
    Json obstacles = Json::array();
    for (const auto& o : env.obstacles()) {
        obstacles.push_back(to_json(o));
    }
    return Json{{"bounds", to_json(env.bounds())}, {"obstacles", obstacles}, {"x0", to_json(env.start())},
                {"xG", to_json(env.goal())},       {"delta", env.delta()},   {"seed", env.seed()}};
}

EnvironmentSpec environment_spec_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw ConfigError("environment spec: expected an object");
    }
    EnvironmentSpec s;
    if (j.contains("bounds")) {
        s.bounds = rect_from(j["bounds"], "bounds");
    }
    s.obstacle_count = field_or<std::size_t>(j, "obstacle_count", s.obstacle_count);
    if (j.contains("size_range")) {
        const auto& r = j["size_range"];
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
            throw ConfigError("size_range: expected [min, max]");
        }
        s.size_min = r[0].get<double>();
        s.size_max = r[1].get<double>();
    }
    if (j.contains("corridor") && !j["corridor"].is_null()) {
        CorridorSpec c;
        c.width = field_or<double>(j["corridor"], "width", c.width);
        c.length = field_or<double>(j["corridor"], "length", c.length);
        s.corridor = c;
    }
    s.delta = field_or<double>(j, "delta", s.delta);
    if (j.contains("start_region")) {
        s.start_region = rect_from(j["start_region"], "start_region");
    }
    if (j.contains("goal_region")) {
        s.goal_region = rect_from(j["goal_region"], "goal_region");
    }
    return s;
}

Json environment_spec_to_json(const EnvironmentSpec& spec)
{
    Json j{{"bounds", to_json(spec.bounds)},
           {"obstacle_count", spec.obstacle_count},
           {"size_range", Json::array({spec.size_min, spec.size_max})},
           {"delta", spec.delta}};
    if (spec.corridor) {
        j["corridor"] = Json{{"width", spec.corridor->width}, {"length", spec.corridor->length}};
    }
    if (spec.start_region) {
        j["start_region"] = to_json(*spec.start_region);
    }
    if (spec.goal_region) {
        j["goal_region"] = to_json(*spec.goal_region);
    }
    return j;
}

LinearSystem system_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("A") || !j.contains("B") || !j.contains("K")) {
        throw ConfigError("system config needs A, B and K");
    }
    const Mat2 A = mat_from(j["A"], "A");
    const Mat2 B = mat_from(j["B"], "B");
    const Mat2 K = mat_from(j["K"], "K");
    const int horizon = field_or<int>(j, "horizon", kDefaultHorizon);
    std::optional<double> capture;
    if (j.contains("capture_radius") && !j["capture_radius"].is_null()) {
        capture = field<double>(j, "capture_radius");
        if (!(*capture > 0.0)) {
            throw ConfigError("capture_radius must be positive");
        }
    }
    try {
        return LinearSystem(A, B, K, horizon, capture);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("system config rejected: ") + e.what());
    }
}

Json system_to_json(const LinearSystem& sys)
{
    Json j{{"A", to_json(sys.A())}, {"B", to_json(sys.B())}, {"K", to_json(sys.K())}, {"horizon", sys.horizon()}};
    j["capture_radius"] = sys.capture_radius() ? Json(*sys.capture_radius()) : Json(nullptr);
    return j;
}

std::vector<TemperatureStage> stages_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        throw ConfigError("schedule: expected a non-empty array of [duration, r_min, r_max] stages");
    }
    std::vector<TemperatureStage> stages;
    for (const auto& s : j) {
        if (!s.is_array() || (s.size() != 3 && s.size() != 4)) {
            throw ConfigError("schedule stage: expected [duration, r_min, r_max] or [duration, r_min, r_max, n]");
        }
        try {
            TemperatureStage stage{s[0].get<std::uint64_t>(), s[1].get<double>(), s[2].get<double>(), std::nullopt};
            if (s.size() == 4) {
                stage.n = s[3].get<int>();
            }
            stages.push_back(stage);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("schedule stage: ") + e.what());
        }
    }
    try {
        TemperatureSchedule check(stages);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("schedule: ") + e.what());
    }
    return stages;
}

IterationPolicy policy_from_json(const Json& j)
{
    if (j.is_string() && j.get<std::string>() == "optimal") {
        return IterationPolicy::optimal();
    }
    if (j.is_object() && j.contains("fixed")) {
        const int k = field<int>(j, "fixed");
        if (k < 0) {
            throw ConfigError("iterations: fixed count must be non-negative");
        }
        return IterationPolicy::fixed(k);
    }
    throw ConfigError("iterations: expected \"optimal\" or {\"fixed\": k}");
}

PoolMode parse_pool_mode(const std::string& name)
{
    if (name == "classical_rrt") {
        return PoolMode::classical_rrt;
    }
    if (name == "quantum_shared") {
        return PoolMode::quantum_shared;
    }
    if (name == "quantum_unshared") {
        return PoolMode::quantum_unshared;
    }
    throw ConfigError("unknown pool mode '" + name + "' (expected classical_rrt, quantum_shared, quantum_unshared)");
}

WorkerPool pool_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw ConfigError("pool: expected an object");
    }
    const int p = field<int>(j, "p");
    if (p < 1) {
        throw ConfigError("pool: p must be at least 1");
    }
    const PoolMode mode = parse_pool_mode(field<std::string>(j, "mode"));
    WorkerPool pool;
    if (j.contains("seeds")) {
        pool.p = p;
        pool.mode = mode;
        pool.seeds = field<std::vector<std::uint64_t>>(j, "seeds");
    } else if (j.contains("seed_base")) {
        pool = WorkerPool::make(p, mode, field<std::uint64_t>(j, "seed_base"));
    } else {
        throw ConfigError("pool: needs seeds or seed_base");
    }
    pool.per_worker_budget = field_or<std::uint64_t>(j, "per_worker_budget", kDefaultWorkerBudget);
    pool.shared_amplification = field_or<bool>(j, "shared_amplification", false);
    try {
        pool.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("pool: ") + e.what());
    }
    return pool;
}

Json tree_to_json(const Tree& tree)
{
    Json nodes = Json::array();
    Json parent = Json::array();
    for (std::size_t i = 0; i < tree.size(); ++i) {
        nodes.push_back(to_json(tree.node(i)));
        const std::size_t par = tree.parent(i);
        parent.push_back(par == Tree::npos ? Json(-1) : Json(par));
    }
    return Json{{"nodes", nodes}, {"parent", parent}};
}

Json path_to_json(const Tree& tree)
{
    Json indices = Json::array();
    Json points = Json::array();
    if (tree.goal_reached()) {
        for (std::size_t i : extract_path_indices(tree)) {
            indices.push_back(i);
            points.push_back(to_json(tree.node(i)));
        }
    }
    return Json{{"path", indices}, {"points", points}};
}

} // namespace qrrt
