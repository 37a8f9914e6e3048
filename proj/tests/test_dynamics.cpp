#include "doctest.h"

#include <Eigen/Dense>
#include <random>
#include <stdexcept>
#include <string>

#include "qrrt/dynamics.hpp"

using namespace qrrt;

namespace {

Eigen::Matrix2d to_eigen(const Mat2& m)
{
    Eigen::Matrix2d e;
    e << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
    return e;
}

double eigen_radius(const Mat2& m)
{
    const Eigen::EigenSolver<Eigen::Matrix2d> solver(to_eigen(m));
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

TEST_SUITE("dynamics")
{
    TEST_CASE("eigenvalues agree with an independent solver")
    {
        std::mt19937_64 gen(1);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (int i = 0; i < 2000; ++i) {
            const Mat2 m{{{{u(gen), u(gen)}, {u(gen), u(gen)}}}};
            CHECK(spectral_radius(m) == doctest::Approx(eigen_radius(m)).epsilon(1e-9));
        }
    }

    TEST_CASE("reference gain gives the unstable diagonal closed loop")
    {
        const Eigen::Matrix2d cl = to_eigen(reference_plant_A()) -
                                   to_eigen(reference_plant_B()) * to_eigen(reference_unstable_K());
        CHECK(cl(0, 0) == doctest::Approx(-2.7));
        CHECK(cl(0, 1) == doctest::Approx(0.0));
        CHECK(cl(1, 0) == doctest::Approx(0.0));
        CHECK(cl(1, 1) == doctest::Approx(-4.0));
        CHECK(spectral_radius(reference_plant_A() - reference_plant_B() * reference_unstable_K()) ==
              doctest::Approx(4.0));
    }

    TEST_CASE("unstable gains are rejected with a spectral-radius diagnostic")
    {
        try {
            LinearSystem(reference_plant_A(), reference_plant_B(), reference_unstable_K());
            FAIL("expected rejection");
        } catch (const std::invalid_argument& e) {
            const std::string what = e.what();
            CHECK(what.find("spectral radius") != std::string::npos);
            CHECK(what.find("-2.7") != std::string::npos);
        }
        // A marginal closed loop is not asymptotically stable either.
        const Mat2 A = Mat2::identity();
        const Mat2 B = Mat2::identity();
        CHECK_THROWS_AS(LinearSystem(A, B, Mat2::diagonal(0.0, 0.0)), std::invalid_argument);
        CHECK_THROWS_AS(LinearSystem(A, B, Mat2::diagonal(0.5, 0.5), 0), std::invalid_argument);
    }

    TEST_CASE("default system is stable by an independent eigen solver")
    {
        const LinearSystem sys = default_system();
        const double rho = eigen_radius(sys.closed_loop());
        CHECK(rho < 0.9);
        CHECK(rho == doctest::Approx(std::sqrt(0.34)));
        const Eigen::Matrix2d cl = to_eigen(sys.A()) - to_eigen(sys.B()) * to_eigen(sys.K());
        CHECK((cl - to_eigen(default_closed_loop())).norm() < 1e-12);
    }

    TEST_CASE("gain placement and inverse")
    {
        const Mat2 K = gain_for_closed_loop(reference_plant_A(), reference_plant_B(), default_closed_loop());
        CHECK(K(0, 0) == doctest::Approx(-4.35));
        CHECK(K(0, 1) == doctest::Approx(-4.65));
        CHECK(K(1, 0) == doctest::Approx(0.7));
        CHECK(K(1, 1) == doctest::Approx(2.5));
        const Mat2 prod = inverse(reference_plant_B()) * reference_plant_B();
        CHECK(prod(0, 0) == doctest::Approx(1.0));
        CHECK(prod(0, 1) == doctest::Approx(0.0));
        CHECK_THROWS_AS(inverse(Mat2::diagonal(1.0, 0.0)), std::domain_error);
    }

    TEST_CASE("closed-loop step matches a direct matrix product")
    {
        const LinearSystem sys = default_system();
        const Eigen::Vector2d e = (to_eigen(sys.A()) - to_eigen(sys.B()) * to_eigen(sys.K())) *
                                  Eigen::Vector2d(1.0, 1.0);
        const Point got = closed_loop_step(sys, {1.0, 1.0});
        CHECK(got.x == doctest::Approx(e(0)).epsilon(1e-12));
        CHECK(got.y == doctest::Approx(e(1)).epsilon(1e-12));
        CHECK(got.x == doctest::Approx(0.2));
        CHECK(got.y == doctest::Approx(0.8));
    }

    TEST_CASE("tracking trajectory starts at the parent and ends on the target")
    {
        const LinearSystem sys = default_system();
        const Point parent{1, 1};
        const Point target{4, 3};
        const auto traj = tracking_trajectory(sys, parent, target, 0.1);
        REQUIRE(traj.size() >= 3);
        CHECK(traj.front() == parent);
        CHECK(traj.back() == target);
        // Error contracts like the closed-loop matrix: compare each state with
        // the recursion evaluated independently.
        Eigen::Vector2d e(parent.x - target.x, parent.y - target.y);
        const Eigen::Matrix2d cl = to_eigen(sys.closed_loop());
        for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
            e = cl * e;
            CHECK(traj[i].x == doctest::Approx(target.x + e(0)).epsilon(1e-12));
            CHECK(traj[i].y == doctest::Approx(target.y + e(1)).epsilon(1e-12));
        }
        CHECK(distance(traj[traj.size() - 2], target) <= 0.1);
    }

    TEST_CASE("reachability through free space and walls")
    {
        const Environment env({0, 0, 10, 10}, {{4, 0, 5, 8}}, {1, 1}, {9, 9}, 0.5, 1);
        const LinearSystem sys = default_system();
        CHECK(reachable(env, sys, {1, 1}, {2, 3}));
        CHECK_FALSE(reachable(env, sys, {1, 1}, {7, 1}));
        CHECK_FALSE(reachable(env, sys, {1, 1}, {4.5, 4}));
        // Reachability implies the straight chord's endpoints are joined by a
        // free polyline, never the other way round.
        for (double y = 8.0; y < 10.0; y += 0.05) {
            if (reachable(env, sys, {3.5, 8.5}, {5.5, y})) {
                CHECK(env.point_free({5.5, y}));
            }
        }
        // A one-step horizon cannot capture a distant target.
        const LinearSystem short_sys(sys.A(), sys.B(), sys.K(), 1, 0.01);
        CHECK_FALSE(reachable(env, short_sys, {1, 1}, {2, 3}));
    }
}
