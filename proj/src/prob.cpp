#include "qrrt/prob.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qrrt/qsim.hpp"
#include "qrrt/rng.hpp"
#include "qrrt/thread_pool.hpp"

namespace qrrt {

ParallelSearchModel ParallelSearchModel::optimally_amplified(int n, std::uint64_t m, int p)
{
    ParallelSearchModel model{n, m, p, good_probability(n, m, optimal_iterations(n, m))};
    model.validate();
    return model;
}

void ParallelSearchModel::validate() const
{
    if (n < 0 || n > 62) {
        throw std::invalid_argument("qubit count out of range");
    }
    if (m > size()) {
        throw std::invalid_argument("m exceeds database size");
    }
    if (p < 1) {
        throw std::invalid_argument("worker count must be at least 1");
    }
    if (!(pG >= 0.0 && pG <= 1.0)) {
        throw std::invalid_argument("P(G) must lie in [0, 1]");
    }
}

void NoisyOracleModel::validate() const
{
    if (n < 0 || n > 62) {
        throw std::invalid_argument("qubit count out of range");
    }
    if (m > size()) {
        throw std::invalid_argument("m exceeds database size");
    }
    if (m1 > m) {
        throw std::invalid_argument("m1 must not exceed m");
    }
    if (m2 > size() - m) {
        throw std::invalid_argument("m2 must not exceed 2^n - m");
    }
}

double NoisyOracleModel::false_positive_rate() const
{
    validate();
    if (m == 0) {
        throw std::domain_error("false positive rate undefined without tagged solutions");
    }
    return static_cast<double>(m - m1) / static_cast<double>(m);
}

double NoisyOracleModel::false_negative_rate() const
{
    validate();
    if (m == size()) {
        throw std::domain_error("false negative rate undefined without untagged indices");
    }
    return static_cast<double>(m2) / static_cast<double>(size() - m);
}

double harmonic_number(std::uint64_t m)
{
    double h = 0.0;
    // Smallest terms first.
    for (std::uint64_t i = m; i >= 1; --i) {
        h += 1.0 / static_cast<double>(i);
    }
    return h;
}

double prob_all_same(const ParallelSearchModel& model)
{
    model.validate();
    if (model.m == 0) {
        throw std::domain_error("all-same probability undefined for m = 0");
    }
    const double md = static_cast<double>(model.m);
    return std::pow(model.pG, model.p) * std::pow(md, 1.0 - model.p);
}

double prob_all_different(const ParallelSearchModel& model)
{
    model.validate();
    if (static_cast<std::uint64_t>(model.p) > model.m) {
        throw std::domain_error("all-different probability requires p <= m");
    }
    // m! / (m^p (m-p)!) as a running product of (m - i) / m.
    const double md = static_cast<double>(model.m);
    double ratio = 1.0;
    for (int i = 0; i < model.p; ++i) {
        ratio *= (md - i) / md;
    }
    return std::pow(model.pG, model.p) * ratio;
}

double prob_all_different_limit(const ParallelSearchModel& model)
{
    model.validate();
    return std::pow(model.pG, model.p);
}

double expected_workers_all_solutions(const ParallelSearchModel& model)
{
    model.validate();
    if (model.m == 0) {
        throw std::domain_error("no solutions to collect");
    }
    if (model.pG <= 0.0) {
        throw std::domain_error("P(G) = 0: collection never terminates");
    }
    return static_cast<double>(model.m) * harmonic_number(model.m) / model.pG;
}

double expected_passes(const ParallelSearchModel& model, int p2)
{
    if (p2 < 1) {
        throw std::invalid_argument("pool size must be at least 1");
    }
    return expected_workers_all_solutions(model) / p2;
}

namespace {

void require_interior(const NoisyOracleModel& noisy)
{
    noisy.validate();
    if (noisy.m == 0 || noisy.m == noisy.size()) {
        throw std::domain_error("noisy-oracle forms require 0 < m < 2^n");
    }
}

void require_probability(double pG)
{
    if (!(pG >= 0.0 && pG <= 1.0)) {
        throw std::invalid_argument("P(G) must lie in [0, 1]");
    }
}

} // namespace

double prob_true_good(const NoisyOracleModel& noisy, double pG)
{
    require_interior(noisy);
    require_probability(pG);
    const double m = static_cast<double>(noisy.m);
    const double bad = static_cast<double>(noisy.size() - noisy.m);
    return static_cast<double>(noisy.m1) / m * pG + static_cast<double>(noisy.m2) / bad * (1.0 - pG);
}

double prob_all_same_noisy(const NoisyOracleModel& noisy, int p, double pG)
{
    require_interior(noisy);
    require_probability(pG);
    if (p < 1) {
        throw std::invalid_argument("worker count must be at least 1");
    }
    const double m = static_cast<double>(noisy.m);
    const double bad = static_cast<double>(noisy.size() - noisy.m);
    return static_cast<double>(noisy.m1) * std::pow(pG / m, p) +
           static_cast<double>(noisy.m2) * std::pow((1.0 - pG) / bad, p);
}

double expected_workers_noisy(const NoisyOracleModel& noisy, double pG)
{
    noisy.validate();
    require_probability(pG);
    if (noisy.m1 == 0) {
        throw std::domain_error("no true positives to collect");
    }
    if (pG <= 0.0) {
        throw std::domain_error("P(G) = 0: collection never terminates");
    }
    const double m1 = static_cast<double>(noisy.m1);
    return m1 * harmonic_number(noisy.m1) / (m1 / static_cast<double>(noisy.m) * pG);
}

DrawModel DrawModel::from(const ParallelSearchModel& model)
{
    model.validate();
    return {model.size(), model.m, model.m, 0, model.pG};
}

DrawModel DrawModel::from(const NoisyOracleModel& noisy, double pG)
{
    noisy.validate();
    require_probability(pG);
    return {noisy.size(), noisy.m, noisy.m1, noisy.m2, pG};
}

namespace {

struct BatchTally {
    std::uint64_t trials = 0;
    std::uint64_t all_same = 0;
    std::uint64_t all_different = 0;
    std::uint64_t draws = 0;
    std::uint64_t true_draws = 0;
};

struct CoverTally {
    std::uint64_t episodes = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
};

std::uint64_t draw_index(const DrawModel& d, Rng& rng)
{
    const bool tagged = d.m == d.size || (d.m > 0 && rng.uniform() < d.pG);
    return tagged ? rng.index(d.m) : d.m + rng.index(d.size - d.m);
}

bool is_true_solution(const DrawModel& d, std::uint64_t idx)
{
    return idx < d.m1 || (idx >= d.m && idx < d.m + d.m2);
}

} // namespace

ParallelDrawStats monte_carlo_parallel_draws(const DrawModel& model, int p,
                                             const MonteCarloOptions& options)
{
    if (p < 1) {
        throw std::invalid_argument("worker count must be at least 1");
    }
    if (model.m > model.size || model.m1 > model.m || model.m2 > model.size - model.m ||
        !(model.pG >= 0.0 && model.pG <= 1.0)) {
        throw std::invalid_argument("inconsistent draw model");
    }
    if (options.batch_size == 0) {
        throw std::invalid_argument("batch size must be positive");
    }
    if (options.cover_episodes > 0 && model.m1 > 0 && model.pG <= 0.0) {
        throw std::domain_error("P(G) = 0: coverage never completes");
    }

    const std::uint64_t batch = options.batch_size;
    const std::uint64_t draw_batches = (options.trials + batch - 1) / batch;
    const auto tallies = map_indexed(options.pool, draw_batches, [&](std::size_t b) {
        Rng rng(derive_seed(options.seed, 2 * b));
        const std::uint64_t begin = b * batch;
        const std::uint64_t count = std::min(batch, options.trials - begin);
        BatchTally t;
        std::vector<std::uint64_t> draws(static_cast<std::size_t>(p));
        for (std::uint64_t trial = 0; trial < count; ++trial) {
            bool all_true = true;
            for (auto& d : draws) {
                d = draw_index(model, rng);
                const bool good = is_true_solution(model, d);
                all_true = all_true && good;
                t.true_draws += good ? 1 : 0;
            }
            t.draws += draws.size();
            if (!all_true) {
                continue;
            }
            if (std::all_of(draws.begin(), draws.end(), [&](auto d) { return d == draws.front(); })) {
                ++t.all_same;
            }
            std::sort(draws.begin(), draws.end());
            if (std::adjacent_find(draws.begin(), draws.end()) == draws.end()) {
                ++t.all_different;
            }
        }
        t.trials = count;
        return t;
    });

    const std::uint64_t cover_batches =
        model.m1 == 0 ? 0 : (options.cover_episodes + batch - 1) / batch;
    const auto covers = map_indexed(options.pool, cover_batches, [&](std::size_t b) {
        Rng rng(derive_seed(options.seed, 2 * b + 1));
        const std::uint64_t begin = b * batch;
        const std::uint64_t count = std::min(batch, options.cover_episodes - begin);
        CoverTally t;
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(model.m1));
        for (std::uint64_t e = 0; e < count; ++e) {
            std::fill(seen.begin(), seen.end(), 0);
            std::uint64_t remaining = model.m1;
            std::uint64_t n_draws = 0;
            while (remaining > 0) {
                const auto d = draw_index(model, rng);
                ++n_draws;
                if (d < model.m1 && !seen[static_cast<std::size_t>(d)]) {
                    seen[static_cast<std::size_t>(d)] = 1;
                    --remaining;
                }
            }
            const auto x = static_cast<double>(n_draws);
            t.sum += x;
            t.sum_sq += x * x;
        }
        t.episodes = count;
        return t;
    });

    BatchTally total;
    for (const auto& t : tallies) {
        total.trials += t.trials;
        total.all_same += t.all_same;
        total.all_different += t.all_different;
        total.draws += t.draws;
        total.true_draws += t.true_draws;
    }
    CoverTally cover;
    for (const auto& c : covers) {
        cover.episodes += c.episodes;
        cover.sum += c.sum;
        cover.sum_sq += c.sum_sq;
    }

    ParallelDrawStats s;
    s.trials = total.trials;
    s.draws = total.draws;
    s.cover_episodes = cover.episodes;
    if (total.trials > 0) {
        const auto tr = static_cast<double>(total.trials);
        s.freq_all_same = static_cast<double>(total.all_same) / tr;
        s.freq_all_different = static_cast<double>(total.all_different) / tr;
        s.freq_true_good = static_cast<double>(total.true_draws) / static_cast<double>(total.draws);
    }
    if (cover.episodes > 0) {
        const auto e = static_cast<double>(cover.episodes);
        s.mean_workers_to_cover = cover.sum / e;
        const double var = std::max(0.0, cover.sum_sq / e - s.mean_workers_to_cover * s.mean_workers_to_cover);
        s.cover_std_error = std::sqrt(var / e);
    }
    return s;
}

NoisyOracleModel grid_noisy_model(int n, std::uint64_t m)
{
    NoisyOracleModel noisy{n, m, m - m / 4, 0};
    const std::uint64_t bad = noisy.size() - m;
    noisy.m2 = std::min(bad, std::max<std::uint64_t>(1, m / 2));
    noisy.validate();
    return noisy;
}

namespace {

AnalysisRow probability_row(const AnalysisGrid& grid, std::string lemma, double closed,
                            double observed, std::uint64_t samples)
{
    AnalysisRow row;
    row.lemma_id = std::move(lemma);
    row.closed_form = closed;
    row.monte_carlo = observed;
    row.abs_err = std::abs(observed - closed);
    row.sigma = std::sqrt(std::max(0.0, closed * (1.0 - closed)) / static_cast<double>(samples));
    row.passed = row.abs_err <= grid.sigma_multiple * row.sigma;
    return row;
}

AnalysisRow expectation_row(const AnalysisGrid& grid, std::string lemma, double closed,
                            const ParallelDrawStats& stats)
{
    AnalysisRow row;
    row.lemma_id = std::move(lemma);
    row.expectation = true;
    row.closed_form = closed;
    row.monte_carlo = stats.mean_workers_to_cover;
    row.abs_err = std::abs(row.monte_carlo - closed);
    row.sigma = stats.cover_std_error;
    row.passed = row.abs_err <= grid.expectation_rel_tol * closed;
    return row;
}

} // namespace

std::vector<AnalysisRow> analyze_grid(const AnalysisGrid& grid)
{
    if (grid.mc.trials == 0 || grid.mc.cover_episodes == 0) {
        throw std::invalid_argument("trials and cover episodes must be at least 1");
    }
    const auto fault = [&](const char* lemma, double value) {
        return grid.inject_fault && *grid.inject_fault == lemma ? value * 1.05 : value;
    };

    std::vector<AnalysisRow> rows;
    std::uint64_t stream = 0;
    const auto options = [&] {
        MonteCarloOptions o = grid.mc;
        o.seed = derive_seed(grid.mc.seed, stream++);
        return o;
    };
    const auto stamp = [](AnalysisRow row, int n, std::uint64_t m, std::uint64_t m1,
                          std::uint64_t m2, std::optional<int> p, double pG) {
        row.n = n;
        row.m = m;
        row.m1 = m1;
        row.m2 = m2;
        row.p = p;
        row.pG = pG;
        return row;
    };

    for (int n : grid.n_values) {
        for (std::uint64_t m : grid.m_values) {
            if (m == 0 || m > (std::uint64_t{1} << n)) {
                continue;
            }
            const auto base = ParallelSearchModel::optimally_amplified(n, m, 1);
            const double pG = base.pG;
            const bool interior = m < base.size();
            const NoisyOracleModel noisy = interior ? grid_noisy_model(n, m) : NoisyOracleModel{n, m, m, 0};

            MonteCarloOptions no_cover = options();
            no_cover.cover_episodes = 0;
            for (int p : grid.p_values) {
                ParallelSearchModel model = base;
                model.p = p;
                const auto stats = monte_carlo_parallel_draws(DrawModel::from(model), p, no_cover);
                rows.push_back(stamp(probability_row(grid, "lemma1", fault("lemma1", prob_all_same(model)),
                                                     stats.freq_all_same, stats.trials),
                                     n, m, m, 0, p, pG));
                if (static_cast<std::uint64_t>(p) <= m) {
                    rows.push_back(stamp(probability_row(grid, "lemma2",
                                                         fault("lemma2", prob_all_different(model)),
                                                         stats.freq_all_different, stats.trials),
                                         n, m, m, 0, p, pG));
                }
                if (interior) {
                    const auto ns = monte_carlo_parallel_draws(DrawModel::from(noisy, pG), p, no_cover);
                    rows.push_back(stamp(probability_row(grid, "lemma5",
                                                         fault("lemma5", prob_all_same_noisy(noisy, p, pG)),
                                                         ns.freq_all_same, ns.trials),
                                         n, m, noisy.m1, noisy.m2, p, pG));
                }
            }

            MonteCarloOptions cover_only = options();
            cover_only.trials = 0;
            const auto cover = monte_carlo_parallel_draws(DrawModel::from(base), 1, cover_only);
            rows.push_back(stamp(expectation_row(grid, "lemma3",
                                                 fault("lemma3", expected_workers_all_solutions(base)), cover),
                                 n, m, m, 0, std::nullopt, pG));
            if (interior) {
                MonteCarloOptions single = options();
                const auto ns = monte_carlo_parallel_draws(DrawModel::from(noisy, pG), 1, single);
                rows.push_back(stamp(probability_row(grid, "lemma4", fault("lemma4", prob_true_good(noisy, pG)),
                                                     ns.freq_true_good, ns.draws),
                                     n, m, noisy.m1, noisy.m2, std::nullopt, pG));
                rows.push_back(stamp(expectation_row(grid, "lemma6",
                                                     fault("lemma6", expected_workers_noisy(noisy, pG)), ns),
                                     n, m, noisy.m1, noisy.m2, std::nullopt, pG));
            }
        }
    }
    return rows;
}

std::string analysis_csv(const std::vector<AnalysisRow>& rows)
{
    std::ostringstream out;
    out << "n,m,m1,m2,p,pG,lemma_id,closed_form,monte_carlo,abs_err,sigma\n";
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    for (const auto& r : rows) {
        out << r.n << ',' << r.m << ',' << r.m1 << ',' << r.m2 << ',';
        if (r.p) {
            out << *r.p;
        }
        out << ',' << num(r.pG) << ',' << r.lemma_id << ',' << num(r.closed_form) << ','
            << num(r.monte_carlo) << ',' << num(r.abs_err) << ',' << num(r.sigma) << '\n';
    }
    return out.str();
}

} // namespace qrrt
