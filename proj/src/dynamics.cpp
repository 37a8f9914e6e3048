#include "qrrt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qrrt {

Mat2 inverse(const Mat2& a)
{
    const double det = a.determinant();
    if (det == 0.0 || !std::isfinite(det)) {
        throw std::domain_error("matrix is singular");
    }
    return Mat2{{{{a(1, 1) / det, -a(0, 1) / det}, {-a(1, 0) / det, a(0, 0) / det}}}};
}

std::array<std::complex<double>, 2> eigenvalues(const Mat2& a)
{
    const double half_tr = a.trace() / 2;
    const std::complex<double> disc = std::sqrt(std::complex<double>(half_tr * half_tr - a.determinant()));
    return {half_tr + disc, half_tr - disc};
}

double spectral_radius(const Mat2& a)
{
    const auto ev = eigenvalues(a);
    return std::max(std::abs(ev[0]), std::abs(ev[1]));
}

double infinity_norm(const Mat2& a)
{
    return std::max(std::abs(a(0, 0)) + std::abs(a(0, 1)), std::abs(a(1, 0)) + std::abs(a(1, 1)));
}

Mat2 gain_for_closed_loop(const Mat2& A, const Mat2& B, const Mat2& closed_loop)
{
    return inverse(B) * (A - closed_loop);
}

LinearSystem::LinearSystem(Mat2 A, Mat2 B, Mat2 K, int horizon, std::optional<double> capture_radius)
    : A_(A), B_(B), K_(K), closed_(A - B * K), horizon_(horizon), capture_(capture_radius)
{
    const double rho = spectral_radius(closed_);
    if (!(rho < 1.0)) {
        const auto ev = eigenvalues(closed_);
        std::ostringstream msg;
        msg << "closed loop A - B*K is not stable: spectral radius " << rho << " >= 1 (eigenvalues "
            << ev[0].real();
        if (ev[0].imag() != 0.0) {
            msg << (ev[0].imag() > 0 ? "+" : "") << ev[0].imag() << "i";
        }
        msg << ", " << ev[1].real();
        if (ev[1].imag() != 0.0) {
            msg << (ev[1].imag() > 0 ? "+" : "") << ev[1].imag() << "i";
        }
        msg << ")";
        throw std::invalid_argument(msg.str());
    }
    if (horizon_ < 1) {
        throw std::invalid_argument("horizon must be at least 1 step");
    }
    if (capture_ && !(*capture_ > 0.0)) {
        throw std::invalid_argument("capture radius must be positive");
    }
}

Mat2 reference_plant_A() { return Mat2{{{{-1.5, -2.0}, {1.0, 3.0}}}}; }
Mat2 reference_plant_B() { return Mat2{{{{0.5, 0.25}, {0.0, 1.0}}}}; }
Mat2 reference_unstable_K() { return Mat2{{{{1.9, -7.5}, {1.0, 7.0}}}}; }
Mat2 default_closed_loop() { return Mat2{{{{0.5, -0.3}, {0.3, 0.5}}}}; }

LinearSystem default_system()
{
    const Mat2 A = reference_plant_A();
    const Mat2 B = reference_plant_B();
    return LinearSystem(A, B, gain_for_closed_loop(A, B, default_closed_loop()));
}

Point closed_loop_step(const LinearSystem& sys, Point e) { return sys.closed_loop() * e; }

std::vector<Point> tracking_trajectory(const LinearSystem& sys, Point parent, Point target,
                                       double capture_radius)
{
    std::vector<Point> traj{parent};
    Point e = parent - target;
    for (int t = 0; t <= sys.horizon(); ++t) {
        if (norm(e) <= capture_radius) {
            if (traj.back() != target) {
                traj.push_back(target);
            }
            return traj;
        }
        if (t == sys.horizon()) {
            break;
        }
        e = closed_loop_step(sys, e);
        traj.push_back(target + e);
    }
    return traj;
}

bool reachable(const Environment& env, const LinearSystem& sys, Point parent, Point target)
{
    const double capture = sys.capture_radius_or(env.delta());
    Point x = parent;
    Point e = parent - target;
    if (!env.point_free(parent)) {
        return false;
    }
    for (int t = 0; t <= sys.horizon(); ++t) {
        if (norm(e) <= capture) {
            return env.segment_free(x, target);
        }
        if (t == sys.horizon()) {
            break;
        }
        e = closed_loop_step(sys, e);
        const Point next = target + e;
        if (!env.segment_free(x, next)) {
            return false;
        }
        x = next;
    }
    return false;
}

} // namespace qrrt
