#include "doctest.h"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "qrrt/prob.hpp"
#include "qrrt/qsim.hpp"
#include "qrrt/thread_pool.hpp"

using namespace qrrt;

namespace {

/// Direct simulation of p independent draws from the post-amplification
/// distribution, using only the standard library.
struct DirectSim {
    double all_same = 0.0;
    double all_different = 0.0;
};

DirectSim simulate(std::uint64_t N, std::uint64_t m, int p, double pG, int trials, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> good(0, m - 1);
    std::uniform_int_distribution<std::uint64_t> bad(m, N - 1);
    int same = 0;
    int different = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<std::uint64_t> d;
        bool all_good = true;
        for (int w = 0; w < p; ++w) {
            const bool g = m == N || u(gen) < pG;
            all_good = all_good && g;
            d.push_back(g ? good(gen) : bad(gen));
        }
        if (!all_good) {
            continue;
        }
        const std::set<std::uint64_t> s(d.begin(), d.end());
        same += s.size() == 1 ? 1 : 0;
        different += s.size() == d.size() ? 1 : 0;
    }
    return {same / double(trials), different / double(trials)};
}

} // namespace

TEST_SUITE("prob")
{
    TEST_CASE("harmonic numbers")
    {
        CHECK(harmonic_number(1) == doctest::Approx(1.0));
        CHECK(harmonic_number(3) == doctest::Approx(11.0 / 6.0));
        CHECK(harmonic_number(100) == doctest::Approx(oracle::harmonic(100)));
        CHECK(harmonic_number(0) == 0.0);
    }

    TEST_CASE("all-same closed form")
    {
        CHECK(prob_all_same({8, 1, 4, 0.9}) == doctest::Approx(std::pow(0.9, 4)));
        CHECK(prob_all_same({8, 4, 1, 0.7}) == doctest::Approx(0.7));
        CHECK(prob_all_same({8, 4, 3, 1.0}) == doctest::Approx(1.0 / 16.0));
        CHECK_THROWS_AS(prob_all_same({8, 0, 2, 1.0}), std::domain_error);
    }

    TEST_CASE("all-different closed form and limit")
    {
        CHECK(prob_all_different({8, 4, 3, 1.0}) == doctest::Approx(4.0 * 3.0 * 2.0 / 64.0));
        CHECK_THROWS_AS(prob_all_different({8, 2, 3, 1.0}), std::domain_error);
        const ParallelSearchModel big{20, 100000, 3, 0.8};
        CHECK(prob_all_different(big) == doctest::Approx(prob_all_different_limit(big)).epsilon(1e-3));
        CHECK(prob_all_different_limit({8, 4, 3, 0.5}) == doctest::Approx(0.125));
    }

    TEST_CASE("two workers, two solutions: same and different partition the all-good event")
    {
        for (double pG : {1.0, 0.9, 0.5}) {
            const ParallelSearchModel model{4, 2, 2, pG};
            CHECK(prob_all_same(model) + prob_all_different(model) == doctest::Approx(pG * pG).epsilon(1e-15));
        }
    }

    TEST_CASE("coupon collector expectations")
    {
        CHECK(expected_workers_all_solutions({8, 3, 1, 1.0}) == doctest::Approx(5.5));
        CHECK(expected_workers_all_solutions({8, 8, 1, 0.5}) == doctest::Approx(2 * 8 * oracle::harmonic(8)));
        CHECK(expected_passes({8, 3, 1, 1.0}, 2) == doctest::Approx(2.75));
        CHECK_THROWS_AS(expected_workers_all_solutions({8, 0, 1, 1.0}), std::domain_error);
        CHECK_THROWS_AS(expected_workers_all_solutions({8, 2, 1, 0.0}), std::domain_error);
    }

    TEST_CASE("noisy oracle reduces to the exact oracle")
    {
        for (std::uint64_t m : {1, 2, 4, 16}) {
            const NoisyOracleModel exact{8, m, m, 0};
            const ParallelSearchModel model = ParallelSearchModel::optimally_amplified(8, m, 3);
            CHECK(prob_true_good(exact, model.pG) == model.pG);
            CHECK(prob_all_same_noisy(exact, 3, model.pG) == doctest::Approx(prob_all_same(model)).epsilon(1e-15));
            CHECK(expected_workers_noisy(exact, model.pG) ==
                  doctest::Approx(expected_workers_all_solutions(model)).epsilon(1e-15));
            CHECK(exact.false_positive_rate() == 0.0);
            CHECK(exact.false_negative_rate() == 0.0);
        }
    }

    TEST_CASE("noisy oracle rates and validation")
    {
        const NoisyOracleModel noisy{4, 4, 3, 2};
        CHECK(noisy.false_positive_rate() == doctest::Approx(0.25));
        CHECK(noisy.false_negative_rate() == doctest::Approx(2.0 / 12.0));
        CHECK(prob_true_good(noisy, 0.8) == doctest::Approx(0.75 * 0.8 + 2.0 / 12.0 * 0.2));
        CHECK(prob_all_same_noisy(noisy, 2, 0.8) ==
              doctest::Approx(3 * std::pow(0.2, 2) + 2 * std::pow(0.2 / 12.0, 2)));
        CHECK(expected_workers_noisy(noisy, 0.8) == doctest::Approx(3 * oracle::harmonic(3) / (0.75 * 0.8)));
        CHECK_THROWS_AS((NoisyOracleModel{4, 4, 5, 0}.validate()), std::invalid_argument);
        CHECK_THROWS_AS((NoisyOracleModel{4, 4, 2, 13}.validate()), std::invalid_argument);
        CHECK_THROWS_AS(prob_true_good(NoisyOracleModel{4, 0, 0, 0}, 0.5), std::domain_error);
        CHECK_THROWS_AS(expected_workers_noisy(NoisyOracleModel{4, 4, 0, 1}, 0.5), std::domain_error);
    }

    TEST_CASE("closed forms agree with a direct standard-library simulation")
    {
        constexpr int kTrials = 200000;
        std::uint64_t seed = 1;
        for (std::uint64_t m : {3, 4}) {
            for (int p : {2, 3}) {
                const ParallelSearchModel model = ParallelSearchModel::optimally_amplified(6, m, p);
                const DirectSim sim = simulate(64, m, p, model.pG, kTrials, seed++);
                const double same = prob_all_same(model);
                const double diff = prob_all_different(model);
                CHECK(std::abs(sim.all_same - same) <= 4 * oracle::binomial_sigma(same, kTrials));
                CHECK(std::abs(sim.all_different - diff) <= 4 * oracle::binomial_sigma(diff, kTrials));
            }
        }
    }

    TEST_CASE("library Monte Carlo matches closed forms and is pool independent")
    {
        const ParallelSearchModel model = ParallelSearchModel::optimally_amplified(4, 4, 3);
        MonteCarloOptions opts;
        opts.trials = 200000;
        opts.cover_episodes = 20000;
        opts.seed = 77;
        opts.batch_size = 10000;
        const ParallelDrawStats serial = monte_carlo_parallel_draws(DrawModel::from(model), 3, opts);
        ThreadPool pool(3);
        opts.pool = &pool;
        const ParallelDrawStats threaded = monte_carlo_parallel_draws(DrawModel::from(model), 3, opts);
        CHECK(serial.freq_all_same == threaded.freq_all_same);
        CHECK(serial.freq_all_different == threaded.freq_all_different);
        CHECK(serial.mean_workers_to_cover == threaded.mean_workers_to_cover);

        const double same = prob_all_same(model);
        CHECK(std::abs(serial.freq_all_same - same) <= 3 * oracle::binomial_sigma(same, 200000));
        const double diff = prob_all_different(model);
        CHECK(std::abs(serial.freq_all_different - diff) <= 3 * oracle::binomial_sigma(diff, 200000));
        CHECK(serial.mean_workers_to_cover ==
              doctest::Approx(expected_workers_all_solutions(model)).epsilon(0.02));
        CHECK(serial.trials == 200000);
        CHECK(serial.draws == 600000);
    }

    TEST_CASE("analysis grid passes and the fault hook fails it")
    {
        AnalysisGrid grid;
        grid.n_values = {4};
        grid.m_values = {2, 4};
        grid.p_values = {2, 3};
        grid.mc.trials = 100000;
        grid.mc.cover_episodes = 20000;
        grid.mc.seed = 9;
        const auto rows = analyze_grid(grid);
        REQUIRE_FALSE(rows.empty());
        std::set<std::string> lemmas;
        for (const auto& r : rows) {
            CHECK(r.passed);
            lemmas.insert(r.lemma_id);
        }
        CHECK(lemmas.size() == 6);

        grid.inject_fault = "lemma1";
        int failed = 0;
        for (const auto& r : analyze_grid(grid)) {
            failed += r.passed ? 0 : 1;
        }
        CHECK(failed > 0);

        const std::string csv = analysis_csv(rows);
        CHECK(csv.rfind("n,m,m1,m2,p,pG,lemma_id,closed_form,monte_carlo,abs_err,sigma\n", 0) == 0);

        grid.mc.trials = 0;
        CHECK_THROWS_AS(analyze_grid(grid), std::invalid_argument);
    }
}
