#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "fixtures.hpp"
#include "qrrt/io.hpp"

using namespace qrrt;

namespace {

const std::filesystem::path kConfigs = QRRT_CONFIG_DIR;

} // namespace

TEST_SUITE("io")
{
    TEST_CASE("environment round trip")
    {
        const Environment env = fixtures::twenty_obstacles();
        const Json j = environment_to_json(env);
        for (const char* key : {"bounds", "obstacles", "x0", "xG", "delta", "seed"}) {
            CHECK(j.contains(key));
        }
        const Environment back = environment_from_json(Json::parse(j.dump()));
        CHECK(back.obstacles() == env.obstacles());
        CHECK(back.start() == env.start());
        CHECK(back.goal() == env.goal());
        CHECK(back.bounds() == env.bounds());
        CHECK(back.delta() == env.delta());
        CHECK(back.seed() == env.seed());
    }

    TEST_CASE("malformed environments are config errors")
    {
        Json j = environment_to_json(fixtures::twenty_obstacles());
        Json no_seed = j;
        no_seed.erase("seed");
        CHECK_THROWS_AS(environment_from_json(no_seed), ConfigError);
        Json bad_point = j;
        bad_point["x0"] = Json::array({1});
        CHECK_THROWS_AS(environment_from_json(bad_point), ConfigError);
        Json blocked = j;
        blocked["x0"] = Json::array({j["obstacles"][0][0], j["obstacles"][0][1]});
        CHECK_THROWS_AS(environment_from_json(blocked), ConfigError);
        CHECK_THROWS_AS(read_json_file(kConfigs / "does_not_exist.json"), ConfigError);
    }

    TEST_CASE("shipped system configs")
    {
        const LinearSystem sys = system_from_json(read_json_file(kConfigs / "system_default.json"));
        CHECK(sys.K() == default_system().K());
        CHECK(spectral_radius(sys.closed_loop()) < 0.9);
        try {
            system_from_json(read_json_file(kConfigs / "system_paper.json"));
            FAIL("paper gain must be rejected");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("spectral radius") != std::string::npos);
        }
        const Json round = system_to_json(sys);
        CHECK(system_from_json(round).A() == sys.A());
        Json bad = round;
        bad["K"] = Json::array({1, 2});
        CHECK_THROWS_AS(system_from_json(bad), ConfigError);
    }

    TEST_CASE("schedules, policies and pools")
    {
        const auto stages = stages_from_json(read_json_file(kConfigs / "schedule_qda.json"));
        REQUIRE(stages.size() == 2);
        CHECK(stages[0].duration == 16);
        CHECK(stages[0].r_min == 2.7);
        CHECK(stages[0].r_max == 4.2);
        CHECK(stages_from_json(Json::parse("[[3, 1.0, 2.0, 6]]"))[0].n == 6);
        CHECK_THROWS_AS(stages_from_json(Json::parse("[[3, 2.0, 1.0]]")), ConfigError);
        CHECK_THROWS_AS(stages_from_json(Json::parse("[]")), ConfigError);

        CHECK(policy_from_json("optimal").kind == IterationPolicy::Kind::optimal);
        CHECK(policy_from_json(Json::parse(R"({"fixed": 2})")).k == 2);
        CHECK_THROWS_AS(policy_from_json("best"), ConfigError);

        const WorkerPool a = pool_from_json(Json::parse(R"({"p": 3, "mode": "quantum_unshared", "seed_base": 4})"));
        CHECK(a.p == 3);
        CHECK(a.mode == PoolMode::quantum_unshared);
        CHECK(a.per_worker_budget == kDefaultWorkerBudget);
        const WorkerPool b = pool_from_json(Json::parse(
            R"({"p": 2, "mode": "classical_rrt", "seeds": [5, 6], "per_worker_budget": 9, "shared_amplification": true})"));
        CHECK(b.seeds == std::vector<std::uint64_t>{5, 6});
        CHECK(b.per_worker_budget == 9);
        CHECK(b.shared_amplification);
        CHECK_THROWS_AS(pool_from_json(Json::parse(R"({"p": 2, "mode": "classical_rrt", "seeds": [5, 5]})")),
                        ConfigError);
        CHECK_THROWS_AS(pool_from_json(Json::parse(R"({"p": 2, "mode": "classical_rrt"})")), ConfigError);
        CHECK_THROWS_AS(pool_from_json(Json::parse(R"({"p": 2, "mode": "mystery", "seed_base": 1})")), ConfigError);
    }

    TEST_CASE("environment spec round trip")
    {
        const EnvironmentSpec spec = environment_spec_from_json(read_json_file(kConfigs / "spec_corridor.json"));
        REQUIRE(spec.corridor.has_value());
        CHECK(spec.corridor->width == 1.0);
        const EnvironmentSpec back = environment_spec_from_json(environment_spec_to_json(spec));
        CHECK(back.bounds == spec.bounds);
        CHECK(back.obstacle_count == spec.obstacle_count);
        CHECK(back.size_min == spec.size_min);
        CHECK(back.start_region == spec.start_region);
        CHECK(generate_random_env(back, 3).obstacles() == generate_random_env(spec, 3).obstacles());
    }

    TEST_CASE("tree and path documents")
    {
        Tree tree({0, 0});
        const auto a = tree.add({1, 0}, 0);
        tree.add({0, 1}, 0);
        const auto c = tree.add({2, 0}, a);
        CHECK(path_to_json(tree)["path"].empty());
        tree.mark_goal(c);
        const Json t = tree_to_json(tree);
        CHECK(t["nodes"].size() == 4);
        CHECK(t["parent"][0] == -1);
        CHECK(t["parent"][3] == 1);
        const Json p = path_to_json(tree);
        CHECK(p["path"] == Json::array({0, 1, 3}));
        CHECK(p["points"][2] == Json::array({2.0, 0.0}));
    }

    TEST_CASE("text files are written with their directories")
    {
        const auto dir = std::filesystem::temp_directory_path() / "qrrt_io_test" / "nested";
        std::filesystem::remove_all(dir.parent_path());
        write_text_file(dir / "x.txt", "hello\n");
        std::ifstream in(dir / "x.txt");
        std::string line;
        std::getline(in, line);
        CHECK(line == "hello");
        std::filesystem::remove_all(dir.parent_path());
    }
}
