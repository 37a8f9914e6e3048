#include "doctest.h"

#include <stdexcept>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qrrt/experiments.hpp"
#include "qrrt/metrics.hpp"

using namespace qrrt;

namespace {

TrialRecord record_with(std::vector<Point> nodes, std::uint64_t calls)
{
    TrialRecord r;
    r.algorithm = "test";
    r.node_positions = std::move(nodes);
    r.nodes_admitted = r.node_positions.size();
    r.calls.classical = calls;
    return r;
}

} // namespace

TEST_SUITE("heatmap")
{
    TEST_CASE("empty batch gives a zero grid")
    {
        const Heatmap h = accumulate_heatmap({}, {{0, 0, 10, 10}, 4, 4});
        CHECK(h.total() == 0);
        CHECK(h.max() == 0);
        CHECK(h.counts().size() == 16);
    }

    TEST_CASE("binning, edges and bounds")
    {
        Heatmap h({{0, 0, 10, 10}, 10, 10});
        h.add({5, 5});
        CHECK(h.at(4, 4) == 1);
        CHECK(h.total() == 1);
        h.add({0, 0});
        CHECK(h.at(0, 0) == 1);
        h.add({10, 10});
        CHECK(h.at(9, 9) == 1);
        h.add({3.0, 7.5});
        CHECK(h.at(2, 7) == 1);
        CHECK_THROWS_AS(h.add({10.01, 3}), std::out_of_range);
        CHECK_THROWS_AS(Heatmap({{0, 0, 10, 10}, 0, 10}), std::invalid_argument);
    }

    TEST_CASE("csv and graymap layout")
    {
        Heatmap h({{0, 0, 4, 2}, 4, 2});
        h.add({0.5, 0.5});
        h.add({0.5, 0.5});
        h.add({3.5, 1.5});
        CHECK(h.to_csv() == "2,0,0,0\n0,0,0,1\n");
        const std::string pgm = h.to_pgm();
        const std::string header = "P5\n4 2\n255\n";
        REQUIRE(pgm.size() == header.size() + 8);
        CHECK(pgm.substr(0, header.size()) == header);
        const auto px = [&](int i) { return static_cast<unsigned char>(pgm[header.size() + i]); };
        // Top image row is the highest-y grid row.
        CHECK(px(3) == 128);
        CHECK(px(4) == 255);
        CHECK(px(0) == 0);
    }

    TEST_CASE("counts are conserved over seeded cutoff trials")
    {
        const Environment env = fixtures::twenty_obstacles();
        const LinearSystem sys = default_system();
        std::vector<TrialRecord> records;
        std::uint64_t nodes = 0;
        for (std::uint64_t t = 0; t < 100; ++t) {
            TrialConfig tc;
            tc.algorithm = Algorithm::qrrt;
            tc.seed = t;
            records.push_back(cutoff_run(env, sys, tc, 10));
            nodes += records.back().nodes_admitted;
        }
        const Heatmap h = accumulate_heatmap(records, {env.bounds(), 100, 100});
        CHECK(h.total() == nodes);
        CHECK(nodes > 0);
        CHECK(count_in_region(records, env.bounds()) == nodes);
    }
}

TEST_SUITE("metrics")
{
    TEST_CASE("region counts")
    {
        const std::vector<TrialRecord> records{record_with({{1, 1}, {2, 2}}, 4), record_with({{2, 2}, {8, 8}}, 4)};
        CHECK(count_in_region(records, {0, 0, 3, 3}) == 3);
        CHECK(count_in_region(records, {20, 20, 21, 21}) == 0);
        CHECK(count_in_region(records, {2, 2, 2, 2}) == 2);
    }

    TEST_CASE("oracle efficiency")
    {
        const std::vector<TrialRecord> records{record_with({{1, 1}, {2, 2}}, 4), record_with({{8, 8}}, 2)};
        CHECK(oracle_efficiency(records) == doctest::Approx(0.5));
        CHECK_THROWS_AS(oracle_efficiency(3, 0), std::domain_error);
        CHECK_THROWS_AS(oracle_efficiency(std::vector<TrialRecord>{}), std::domain_error);
    }

    TEST_CASE("least-squares slope")
    {
        const std::vector<std::pair<double, double>> line{{1, 5}, {2, 7}, {3, 9}, {4, 11}};
        const LineFit f = slope_fit(line);
        CHECK(f.slope == doctest::Approx(2.0));
        CHECK(f.intercept == doctest::Approx(3.0));
        const std::vector<std::pair<double, double>> noisy{{0, 0}, {1, 1}, {2, 1}, {3, 3}};
        // Normal equations by hand: Sxy = 4.5, Sxx = 5, mean y = 1.25.
        CHECK(slope_fit(noisy).slope == doctest::Approx(0.9));
        CHECK(slope_fit(noisy).intercept == doctest::Approx(-0.1));
        const std::vector<std::pair<double, double>> flat{{1, 1}, {1, 3}};
        CHECK_THROWS_AS(slope_fit(flat), std::domain_error);
    }

    TEST_CASE("mean edge length")
    {
        Tree tree({0, 0});
        CHECK_THROWS_AS(mean_edge_length(tree), std::domain_error);
        tree.add({3, 4}, 0);
        tree.add({3, 5}, 1);
        CHECK(mean_edge_length(tree) == doctest::Approx(3.0));
    }

    TEST_CASE("record csv columns")
    {
        TrialRecord r = record_with({{1, 1}}, 7);
        r.seed = 9;
        r.calls.amplification = 2;
        r.calls.finalizer = 3;
        r.duplicates_discarded = 1;
        r.wall_time_s = 0.25;
        const std::vector<TrialRecord> rs{r};
        const std::string with = records_csv(rs);
        CHECK(with.rfind("algorithm,seed,calls_amp,calls_final,calls_classical,nodes,duplicates,wall_s\n", 0) == 0);
        CHECK(with.find("test,9,2,3,7,1,1,") != std::string::npos);
        CHECK(records_csv(rs, false) ==
              "algorithm,seed,calls_amp,calls_final,calls_classical,nodes,duplicates\ntest,9,2,3,7,1,1\n");
    }

    TEST_CASE("cutoff runs are prefix monotone")
    {
        const Environment env = fixtures::twenty_obstacles();
        const LinearSystem sys = default_system();
        for (auto alg : {Algorithm::rrt, Algorithm::qrrt, Algorithm::pqrrt_shared}) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                TrialConfig tc;
                tc.algorithm = alg;
                tc.seed = seed;
                tc.p = 3;
                std::uint64_t last_nodes = 0;
                std::vector<Point> last;
                for (std::uint64_t cutoff : {10, 20, 40, 80}) {
                    const TrialRecord r = cutoff_run(env, sys, tc, cutoff);
                    CHECK(r.calls.cutoff_total() <= cutoff);
                    CHECK(r.nodes_admitted >= last_nodes);
                    REQUIRE(r.node_positions.size() >= last.size());
                    CHECK(std::equal(last.begin(), last.end(), r.node_positions.begin()));
                    last_nodes = r.nodes_admitted;
                    last = r.node_positions;
                }
            }
        }
        TrialConfig tc;
        CHECK_THROWS_AS(cutoff_run(env, sys, tc, 0), std::invalid_argument);
    }
}

TEST_SUITE("recipes")
{
    TEST_CASE("recipes are deterministic apart from wall time")
    {
        SlopesConfig s;
        s.env_count = 2;
        s.tree_nodes = 8;
        CHECK(oracle::without_wall_time(run_slopes(s).files) == oracle::without_wall_time(run_slopes(s).files));

        HeatmapConfig h;
        h.trials = 5;
        h.cutoffs = {10};
        h.grid = 20;
        const auto h1 = oracle::without_wall_time(run_heatmap(h).files);
        CHECK(h1 == oracle::without_wall_time(run_heatmap(h).files));
        CHECK(h1.count("heatmap_qrrt_10.pgm") == 1);
        CHECK(h1.count("heatmap_rrt_10.pgm") == 1);

        CorridorConfig c;
        c.trials = 4;
        CHECK(oracle::without_wall_time(run_corridor(c).files) == oracle::without_wall_time(run_corridor(c).files));

        AnnealingConfig a;
        a.trials = 1;
        a.tree_nodes = 4;
        CHECK(oracle::without_wall_time(run_annealing(a).files) ==
              oracle::without_wall_time(run_annealing(a).files));
    }

    TEST_CASE("wall time is confined to the last records column")
    {
        const std::string csv = "algorithm,seed,nodes,wall_s\nrrt,1,4,0.01\nrrt,2,5,0.02\n";
        CHECK(oracle::strip_wall_column(csv) == "algorithm,seed,nodes\nrrt,1,4\nrrt,2,5\n");
        CHECK(oracle::strip_wall_column("a,b\n1,2\n") == "a,b\n1,2\n");
        HeatmapConfig h;
        h.trials = 2;
        h.cutoffs = {10};
        const auto files = run_heatmap(h).files;
        const std::string& rec = files.at("records_rrt_10.csv");
        CHECK(rec.rfind("algorithm,seed,calls_amp,calls_final,calls_classical,nodes,duplicates,wall_s\n", 0) == 0);
    }
}
