#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qrrt/rng.hpp"

namespace qrrt {

inline constexpr int kMaxQubits = 20;

/// Real-amplitude register over 2^n basis states together with the oracle
/// tags that drive the Grover operator. A phase oracle and the inversion about
/// the mean both keep amplitudes real when starting from the uniform state.
class AmplifiedState {
public:
    /// Uniform superposition (Walsh-Hadamard applied to |0...0>).
    /// Throws std::invalid_argument if n is outside [1, kMaxQubits] or the
    /// mask length is not 2^n.
    AmplifiedState(int n, std::vector<std::uint8_t> good_mask);

    int qubits() const noexcept { return n_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    std::size_t good_count() const noexcept { return m_; }
    std::span<const double> amplitudes() const noexcept { return amplitudes_; }
    std::span<const std::uint8_t> good_mask() const noexcept { return mask_; }
    int iterations_applied() const noexcept { return iterations_; }
    std::uint64_t oracle_calls() const noexcept { return oracle_calls_; }

    /// One Grover iteration: phase flip on tagged indices, then inversion
    /// about the mean. With no tagged index the state is left unchanged and
    /// only the counters move.
    void apply_grover();

    /// Summed Born probability over tagged indices.
    double good_probability() const noexcept;
    double norm_squared() const noexcept;

    /// Born-rule draw. Does not modify the state; collapse is modelled by the
    /// caller discarding it.
    std::size_t measure(Rng& rng) const;

private:
    int n_;
    std::vector<double> amplitudes_;
    std::vector<std::uint8_t> mask_;
    std::size_t m_ = 0;
    int iterations_ = 0;
    std::uint64_t oracle_calls_ = 0;
};

inline AmplifiedState init_uniform(int n, std::vector<std::uint8_t> good_mask)
{
    return AmplifiedState(n, std::move(good_mask));
}

inline AmplifiedState grover_iterate(AmplifiedState s)
{
    s.apply_grover();
    return s;
}

inline std::size_t measure(const AmplifiedState& s, Rng& rng) { return s.measure(rng); }

/// Closed-form description of the same state: sin^2(theta) = m / 2^n.
struct TwoLevelState {
    int n = 0;
    std::uint64_t m = 0;
    double theta = 0.0;
    int k = 0;

    /// Throws std::invalid_argument if m > 2^n or n outside [0, 62].
    static TwoLevelState make(int n, std::uint64_t m, int k = 0);

    double good_probability() const noexcept;
    /// Amplitude of each tagged (resp. untagged) basis state.
    double good_amplitude() const noexcept;
    double bad_amplitude() const noexcept;
};

/// For 0 < m < 2^n, the first k in [1, ceil(pi / (4 theta)) + 1] maximizing
/// sin^2((2k+1) theta); 0 when m = 0 or m = 2^n. This is
/// floor(pi / (4 theta)) except where a later revival of the success
/// probability is higher. Uses the exact angle rather than the large-N
/// approximation (pi/4) sqrt(2^n / m).
int optimal_iterations(int n, std::uint64_t m);

/// sin^2((2k+1) theta).
double good_probability(int n, std::uint64_t m, int k);

} // namespace qrrt
