#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qrrt {

class ThreadPool;

/// p workers each measuring one amplified copy of a shared 2^n database that
/// holds m oracle-tagged solutions; pG is the per-worker probability of
/// measuring a tagged index.
struct ParallelSearchModel {
    int n = 0;
    std::uint64_t m = 0;
    int p = 1;
    double pG = 1.0;

    /// pG taken from the two-level closed form at the optimal iteration count.
    static ParallelSearchModel optimally_amplified(int n, std::uint64_t m, int p);
    /// Throws std::invalid_argument on an invariant violation.
    void validate() const;
    std::uint64_t size() const noexcept { return std::uint64_t{1} << n; }
};

/// Oracle with tagging errors: of the m tagged-good indices only m1 are true
/// solutions; of the 2^n - m tagged-bad indices m2 are true solutions.
struct NoisyOracleModel {
    int n = 0;
    std::uint64_t m = 0;
    std::uint64_t m1 = 0;
    std::uint64_t m2 = 0;

    void validate() const;
    std::uint64_t size() const noexcept { return std::uint64_t{1} << n; }
    /// (m - m1) / m. The form (1 - m1) / m goes negative for m1 > 1.
    double false_positive_rate() const;
    /// m2 / (2^n - m).
    double false_negative_rate() const;
};

/// H_m by direct summation.
double harmonic_number(std::uint64_t m);

/// pG^p m^(1-p). Throws std::domain_error for m = 0.
double prob_all_same(const ParallelSearchModel& model);
/// pG^p m! / (m^p (m-p)!). Throws std::domain_error for p > m.
double prob_all_different(const ParallelSearchModel& model);
/// Large-m limit of prob_all_different, pG^p.
double prob_all_different_limit(const ParallelSearchModel& model);
/// Coupon-collector expectation m H_m / pG. No p >= m precondition is imposed:
/// the expectation is over an unbounded sequence of worker draws.
/// Throws std::domain_error for m = 0 or pG = 0.
double expected_workers_all_solutions(const ParallelSearchModel& model);
/// Expected passes over one database for a pool of p2 workers.
double expected_passes(const ParallelSearchModel& model, int p2);

/// (m1/m) pG + (m2/(2^n - m)) (1 - pG). Throws std::domain_error for m in {0, 2^n}.
double prob_true_good(const NoisyOracleModel& noisy, double pG);
/// m1 (pG/m)^p + m2 ((1-pG)/(2^n-m))^p.
double prob_all_same_noisy(const NoisyOracleModel& noisy, int p, double pG);
/// m1 H_m1 / ((m1/m) pG). Throws std::domain_error for m1 = 0 or pG = 0.
double expected_workers_noisy(const NoisyOracleModel& noisy, double pG);

/// Post-amplification measurement distribution used by the Monte Carlo
/// oracle: tagged indices [0, m) share pG equally, untagged [m, 2^n) share
/// 1 - pG. Indices [0, m1) and [m, m + m2) are ground-truth solutions.
struct DrawModel {
    std::uint64_t size = 1;
    std::uint64_t m = 0;
    std::uint64_t m1 = 0;
    std::uint64_t m2 = 0;
    double pG = 1.0;

    static DrawModel from(const ParallelSearchModel& model);
    static DrawModel from(const NoisyOracleModel& noisy, double pG);
};

struct MonteCarloOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t cover_episodes = 100'000;
    std::uint64_t seed = 0;
    std::uint64_t batch_size = 1 << 16;
    ThreadPool* pool = nullptr;
};

struct ParallelDrawStats {
    std::uint64_t trials = 0;
    std::uint64_t draws = 0;
    std::uint64_t cover_episodes = 0;
    /// All p draws returned the same ground-truth solution.
    double freq_all_same = 0.0;
    /// All p draws returned pairwise distinct ground-truth solutions.
    double freq_all_different = 0.0;
    /// Fraction of single draws that hit a ground-truth solution.
    double freq_true_good = 0.0;
    /// Mean draws until every index in [0, m1) has been seen.
    double mean_workers_to_cover = 0.0;
    double cover_std_error = 0.0;
};

/// Independent sampling oracle for the closed forms. Work is split into
/// fixed-size batches seeded from (seed, batch index) and summed in batch
/// order, so the result does not depend on the pool or its size.
ParallelDrawStats monte_carlo_parallel_draws(const DrawModel& model, int p,
                                             const MonteCarloOptions& options);

// --- closed form vs Monte Carlo table ------------------------------------

struct AnalysisRow {
    int n = 0;
    std::uint64_t m = 0;
    std::uint64_t m1 = 0;
    std::uint64_t m2 = 0;
    std::optional<int> p;
    double pG = 0.0;
    std::string lemma_id;
    double closed_form = 0.0;
    double monte_carlo = 0.0;
    double abs_err = 0.0;
    double sigma = 0.0;
    bool expectation = false;
    bool passed = false;
};

struct AnalysisGrid {
    std::vector<int> n_values{4, 8};
    std::vector<std::uint64_t> m_values{1, 2, 4, 16};
    std::vector<int> p_values{2, 3, 8};
    MonteCarloOptions mc{};
    double sigma_multiple = 3.0;
    double expectation_rel_tol = 0.02;
    /// Test hook: scales the closed form of the named lemma by 1.05.
    std::optional<std::string> inject_fault;
};

/// Noisy companion used by the grid: m1 = m - floor(m/4), m2 = max(1, floor(m/2))
/// capped at 2^n - m.
NoisyOracleModel grid_noisy_model(int n, std::uint64_t m);

std::vector<AnalysisRow> analyze_grid(const AnalysisGrid& grid);
std::string analysis_csv(const std::vector<AnalysisRow>& rows);

} // namespace qrrt
