#include "qrrt/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qrrt {

AmplifiedState::AmplifiedState(int n, std::vector<std::uint8_t> good_mask)
    : n_(n), mask_(std::move(good_mask))
{
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(n));
    }
    const std::size_t size = std::size_t{1} << n;
    if (mask_.size() != size) {
        throw std::invalid_argument("oracle mask length must be 2^n");
    }
    amplitudes_.assign(size, 1.0 / std::sqrt(static_cast<double>(size)));
    m_ = static_cast<std::size_t>(std::count_if(mask_.begin(), mask_.end(), [](auto v) { return v != 0; }));
}

void AmplifiedState::apply_grover()
{
    ++iterations_;
    ++oracle_calls_;
    if (m_ == 0) {
        return;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (mask_[i]) {
            amplitudes_[i] = -amplitudes_[i];
        }
        sum += amplitudes_[i];
    }
    const double twice_mean = 2.0 * sum / static_cast<double>(amplitudes_.size());
    for (double& a : amplitudes_) {
        a = twice_mean - a;
    }
}

double AmplifiedState::good_probability() const noexcept
{
    double p = 0.0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (mask_[i]) {
            p += amplitudes_[i] * amplitudes_[i];
        }
    }
    return p;
}

double AmplifiedState::norm_squared() const noexcept
{
    return std::inner_product(amplitudes_.begin(), amplitudes_.end(), amplitudes_.begin(), 0.0);
}

std::size_t AmplifiedState::measure(Rng& rng) const
{
    const double u = rng.uniform() * norm_squared();
    double acc = 0.0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        acc += amplitudes_[i] * amplitudes_[i];
        if (u < acc) {
            return i;
        }
    }
    // Rounding left u at the very top of the cumulative sum; take the last
    // index with non-zero weight.
    for (std::size_t i = amplitudes_.size(); i-- > 0;) {
        if (amplitudes_[i] != 0.0) {
            return i;
        }
    }
    return amplitudes_.size() - 1;
}

TwoLevelState TwoLevelState::make(int n, std::uint64_t m, int k)
{
    if (n < 0 || n > 62) {
        throw std::invalid_argument("qubit count out of range");
    }
    const std::uint64_t size = std::uint64_t{1} << n;
    if (m > size) {
        throw std::invalid_argument("good count exceeds database size");
    }
    const double ratio = static_cast<double>(m) / static_cast<double>(size);
    return {n, m, std::asin(std::sqrt(ratio)), k};
}

double TwoLevelState::good_probability() const noexcept
{
    const double s = std::sin((2.0 * k + 1.0) * theta);
    return s * s;
}

double TwoLevelState::good_amplitude() const noexcept
{
    if (m == 0) {
        return 0.0;
    }
    return std::sin((2.0 * k + 1.0) * theta) / std::sqrt(static_cast<double>(m));
}

double TwoLevelState::bad_amplitude() const noexcept
{
    const std::uint64_t size = std::uint64_t{1} << n;
    if (m == size) {
        return 0.0;
    }
    return std::cos((2.0 * k + 1.0) * theta) / std::sqrt(static_cast<double>(size - m));
}

int optimal_iterations(int n, std::uint64_t m)
{
    const TwoLevelState s = TwoLevelState::make(n, m);
    const std::uint64_t size = std::uint64_t{1} << n;
    if (m == 0 || m == size) {
        return 0;
    }
    // sin^2((2k+1) theta) is periodic in k, so floor(pi / (4 theta)) is not
    // always the best count; take the first maximum over the search window.
    const int last = static_cast<int>(std::ceil(std::numbers::pi / (4.0 * s.theta))) + 1;
    const auto prob = [&](int k) { return std::pow(std::sin((2.0 * k + 1.0) * s.theta), 2); };
    // A mixed register always gets at least one iteration.
    int best = 1;
    for (int k = 2; k <= last; ++k) {
        if (prob(k) > prob(best) + 1e-12) {
            best = k;
        }
    }
    return best;
}

double good_probability(int n, std::uint64_t m, int k)
{
    if (k < 0) {
        throw std::invalid_argument("iteration count must be non-negative");
    }
    return TwoLevelState::make(n, m, k).good_probability();
}

} // namespace qrrt
