#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "qrrt/env.hpp"
#include "qrrt/geometry.hpp"

namespace qrrt {

/// Row-major 2x2 matrix.
struct Mat2 {
    std::array<std::array<double, 2>, 2> m{};

    constexpr double operator()(int r, int c) const { return m[r][c]; }
    constexpr double& operator()(int r, int c) { return m[r][c]; }

    friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b)
    {
        Mat2 out;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
            }
        }
        return out;
    }
    friend constexpr Mat2 operator-(const Mat2& a, const Mat2& b)
    {
        Mat2 out;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out(r, c) = a(r, c) - b(r, c);
            }
        }
        return out;
    }
    friend constexpr Point operator*(const Mat2& a, Point v)
    {
        return {a(0, 0) * v.x + a(0, 1) * v.y, a(1, 0) * v.x + a(1, 1) * v.y};
    }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;

    constexpr double trace() const { return m[0][0] + m[1][1]; }
    constexpr double determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    static constexpr Mat2 identity() { return Mat2{{{{1.0, 0.0}, {0.0, 1.0}}}}; }
    static constexpr Mat2 diagonal(double a, double b) { return Mat2{{{{a, 0.0}, {0.0, b}}}}; }
};

/// Throws std::domain_error when the matrix is singular.
Mat2 inverse(const Mat2& a);

/// Eigenvalues from the characteristic polynomial.
std::array<std::complex<double>, 2> eigenvalues(const Mat2& a);
double spectral_radius(const Mat2& a);
/// Maximum absolute row sum.
double infinity_norm(const Mat2& a);

/// Gain K such that A - B K equals the requested closed-loop matrix.
/// Requires B invertible.
Mat2 gain_for_closed_loop(const Mat2& A, const Mat2& B, const Mat2& closed_loop);

inline constexpr int kDefaultHorizon = 50;

/// Discrete-time plant x(t+1) = A x(t) + B u(t) under the tracking law
/// u = -K (x - target). Construction rejects closed loops that are not
/// asymptotically stable.
class LinearSystem {
public:
    /// Throws std::invalid_argument with a spectral-radius diagnostic when
    /// rho(A - B K) >= 1, or when horizon < 1.
    LinearSystem(Mat2 A, Mat2 B, Mat2 K, int horizon = kDefaultHorizon,
                 std::optional<double> capture_radius = std::nullopt);

    const Mat2& A() const noexcept { return A_; }
    const Mat2& B() const noexcept { return B_; }
    const Mat2& K() const noexcept { return K_; }
    const Mat2& closed_loop() const noexcept { return closed_; }
    int horizon() const noexcept { return horizon_; }
    std::optional<double> capture_radius() const noexcept { return capture_; }
    /// Capture radius, falling back to the environment's goal radius.
    double capture_radius_or(double delta) const noexcept { return capture_.value_or(delta); }

private:
    Mat2 A_;
    Mat2 B_;
    Mat2 K_;
    Mat2 closed_;
    int horizon_;
    std::optional<double> capture_;
};

/// The plant and input matrices used in all experiments.
Mat2 reference_plant_A();
Mat2 reference_plant_B();
/// The gain printed alongside them; its closed loop has eigenvalues -2.7 and -4.
Mat2 reference_unstable_K();
/// Closed-loop matrix the shipped default gain is placed at (|lambda| ~ 0.583).
Mat2 default_closed_loop();
/// Plant A/B with the stabilizing gain and default horizon.
LinearSystem default_system();

/// One step of the tracking-error recursion e(t+1) = (A - B K) e(t).
Point closed_loop_step(const LinearSystem& sys, Point e);

/// Tracking trajectory from parent toward target: x(0) = parent, stopping at
/// the first state within the capture radius (or after the horizon), with the
/// target itself appended when captured.
std::vector<Point> tracking_trajectory(const LinearSystem& sys, Point parent, Point target,
                                       double capture_radius);

/// Ground-truth reachability: the tracking trajectory is captured within the
/// horizon and every segment of it (including the closing segment onto the
/// target) is collision free.
bool reachable(const Environment& env, const LinearSystem& sys, Point parent, Point target);

} // namespace qrrt
