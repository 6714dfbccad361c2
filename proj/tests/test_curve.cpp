#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "hz/curve/box.hpp"
#include "hz/curve/corpus.hpp"
#include "hz/curve/curvature.hpp"
#include "hz/curve/planar.hpp"

using namespace hz::curve;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Polygon oracle: walk the box (up, left, down, right with the stored
// lengths) and accumulate oint x dy over the vertical segments.
double shoelace_box_area(const BoxCurve& box) {
    double x = 0.0, y = 0.0, area = 0.0;
    for (std::size_t j = 0; j < box.vertical.size(); ++j) {
        const double dy = (j % 2 == 0) ? box.vertical[j] : -box.vertical[j];
        area += x * dy;
        y += dy;
        const double dx = (j % 2 == 0) ? -box.horizontal[j] : box.horizontal[j];
        x += dx;
    }
    return area;
}
}  // namespace

TEST_CASE("rotation integration on constant profiles") {
    const auto one = integrate_rotation([](double) { return 1.0; }, kTwoPi);
    CHECK(one.rotation_number() == 1);
    CHECK(one.theta_end() == doctest::Approx(kTwoPi).epsilon(1e-12));

    const auto two = integrate_rotation([](double) { return 2.0; }, kTwoPi);
    CHECK(two.rotation_number() == 2);
    CHECK(two.theta_end() == doctest::Approx(2 * kTwoPi).epsilon(1e-12));
}

TEST_CASE("rotation integration matches quadrature for a wavy profile") {
    // int_0^{2pi} (1 + 0.5 sin t) dt = 2 pi exactly.
    const auto trace =
        integrate_rotation([](double t) { return 1.0 + 0.5 * std::sin(t); }, kTwoPi);
    CHECK(trace.rotation_number() == 1);
    CHECK(trace.theta_end() == doctest::Approx(kTwoPi).epsilon(1e-12));
    // Interior value against the closed form theta(t) = t + 0.5 (1 - cos t).
    const double t = 1.3;
    CHECK(trace.theta_at(t) ==
          doctest::Approx(t + 0.5 * (1.0 - std::cos(t))).epsilon(1e-10));
}

TEST_CASE("rotation errors") {
    CHECK_THROWS_AS(
        integrate_rotation([](double t) { return 0.1 + std::sin(t); }, kTwoPi),
        NonPositiveCurvature);
    CHECK_THROWS_AS(integrate_rotation([](double) { return 1.0; }, 5.0),
                    NonIntegerRotation);
}

TEST_CASE("crossing times for circles") {
    const auto circle =
        PlanarCurve::from_curvature([](double) { return 1.0; }, 1.0, kTwoPi);
    const auto tj = circle.horizontal_tangent_times();
    REQUIRE(tj.size() == 2);
    CHECK(tj[0] == doctest::Approx(kPi).epsilon(1e-10));
    CHECK(tj[1] == doctest::Approx(kTwoPi).epsilon(1e-10));
    const auto tauj = circle.vertical_tangent_times();
    REQUIRE(tauj.size() == 2);
    CHECK(tauj[0] == doctest::Approx(kPi / 2).epsilon(1e-10));
    CHECK(tauj[1] == doctest::Approx(3 * kPi / 2).epsilon(1e-10));

    const auto doubled =
        PlanarCurve::from_curvature([](double) { return 2.0; }, 1.0, kTwoPi);
    const auto tj2 = doubled.horizontal_tangent_times();
    REQUIRE(tj2.size() == 4);
    for (int j = 0; j < 4; ++j)
        CHECK(tj2[j] == doctest::Approx((j + 1) * kPi / 2).epsilon(1e-10));
}

TEST_CASE("curve construction: circles close, strong waviness does not") {
    const auto circle =
        PlanarCurve::from_curvature([](double) { return 1.0; }, 1.0, kTwoPi);
    CHECK(circle.closure_gap() < 1e-10);
    CHECK(circle.signed_area() == doctest::Approx(kPi).epsilon(1e-10));

    const auto doubled =
        PlanarCurve::from_curvature([](double) { return 2.0; }, 1.0, kTwoPi);
    CHECK(doubled.closure_gap() < 1e-10);
    // Radius-1/2 circle traversed twice: area with multiplicity 2 pi (1/2)^2.
    CHECK(doubled.signed_area() == doctest::Approx(kPi / 2).epsilon(1e-10));

    auto wavy = [](double t) { return 1.0 + 0.9 * std::sin(t); };
    CHECK_THROWS_AS(PlanarCurve::from_curvature(wavy, 1.0, kTwoPi),
                    NotClosed);

    CurveOptions project;
    project.closure = ClosureMode::Project;
    const auto projected = PlanarCurve::from_curvature(wavy, 1.0, kTwoPi, project);
    CHECK(projected.closure_gap() < 1e-12);
    CHECK(projected.max_speed_deviation() > 0.0);
}

TEST_CASE("box curve of the unit circle is the circumscribed square") {
    const auto circle =
        PlanarCurve::from_curvature([](double) { return 1.0; }, 1.0, kTwoPi);
    const auto box = build_box_curve(circle);
    REQUIRE(box.vertical.size() == 2);
    REQUIRE(box.horizontal.size() == 2);
    for (double a : box.vertical) CHECK(a == doctest::Approx(2.0).epsilon(1e-9));
    for (double b : box.horizontal) CHECK(b == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(box_area(box) == doctest::Approx(4.0).epsilon(1e-9));

    const auto report = verify_curvature_area_bound(circle);
    CHECK(report.curve_area == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(report.box_area == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(report.bound == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(report.pass);
}

TEST_CASE("box curve of the double circle") {
    const auto doubled =
        PlanarCurve::from_curvature([](double) { return 2.0; }, 1.0, kTwoPi);
    const auto box = build_box_curve(doubled);
    REQUIRE(box.vertical.size() == 4);
    for (double a : box.vertical) CHECK(a == doctest::Approx(1.0).epsilon(1e-9));
    for (double b : box.horizontal) CHECK(b == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(box_area(box) == doctest::Approx(2.0).epsilon(1e-9));

    const auto report = verify_curvature_area_bound(doubled);
    CHECK(report.curve_area == doctest::Approx(kPi / 2).epsilon(1e-9));
    CHECK(report.bound == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(report.pass);
}

TEST_CASE("alternating area formula on synthetic sequences") {
    BoxCurve square{{2, 2}, {2, 2}, 1, 0};
    CHECK(box_area_signed(square) == doctest::Approx(4.0));

    BoxCurve doubled{{1, 1, 1, 1}, {1, 1, 1, 1}, 2, 0};
    CHECK(box_area_signed(doubled) == doctest::Approx(2.0));

    // Lemma equality case: a square of side c has area c^2 = k c^2.
    const double c = 0.37;
    BoxCurve small{{c, c}, {c, c}, 1, 0};
    CHECK(box_area_signed(small) == doctest::Approx(c * c));
}

TEST_CASE("box area equals the polygon shoelace on random sequences") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + trial % 3;
        const auto box = random_box_curve(rng, k);
        CHECK(box_area_signed(box) ==
              doctest::Approx(shoelace_box_area(box)).epsilon(1e-12));
    }
}

TEST_CASE("synthetic box corpus satisfies the area cap") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const int k = 1 + trial % 3;
        const auto box = random_box_curve(rng, k);
        CHECK(std::abs(box.vertical_alternating_sum()) < 1e-12);
        CHECK(std::abs(box.horizontal_alternating_sum()) < 1e-12);
        const double area = box_area_signed(box);
        const double cap = k * box.max_entry() * box.max_entry();
        CHECK(area > 0.0);
        CHECK(area <= cap * (1 + 1e-12));
    }
}

TEST_CASE("positivity needs realizability, not just the alternating sums") {
    // Left-turning box path whose signed area is negative: positive entries
    // and vanishing alternating sums are not enough for the area lemma.
    // The orientation-normalized area still satisfies the cap.
    BoxCurve rogue;
    rogue.rotation_number = 3;
    rogue.vertical = {1, 5, 2, 1, 4, 1};
    rogue.horizontal = {0.1, 0.1, 10, 0.1, 0.1, 10};
    CHECK(std::abs(rogue.vertical_alternating_sum()) < 1e-12);
    CHECK(std::abs(rogue.horizontal_alternating_sum()) < 1e-12);
    CHECK(box_area_signed(rogue) == doctest::Approx(-19.1));
    CHECK(box_area(rogue) == doctest::Approx(19.1));
    const double cap = 3 * rogue.max_entry() * rogue.max_entry();
    CHECK(box_area(rogue) <= cap);
}

TEST_CASE("k = 1 box equals the axis-aligned bounding rectangle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto curve = random_closed_curve(rng, 1);
        const auto box = build_box_curve(curve);

        const auto& xs = curve.x_nodes();
        const auto& ys = curve.y_nodes();
        const double w = *std::max_element(xs.begin(), xs.end()) -
                         *std::min_element(xs.begin(), xs.end());
        const double h = *std::max_element(ys.begin(), ys.end()) -
                         *std::min_element(ys.begin(), ys.end());
        for (double a : box.vertical) CHECK(a == doctest::Approx(h).epsilon(1e-7));
        for (double b : box.horizontal) CHECK(b == doctest::Approx(w).epsilon(1e-7));
        CHECK(box_area(box) == doctest::Approx(w * h).epsilon(1e-7));
    }
}

TEST_CASE("generated corpus satisfies the full area-bound chain") {
    std::mt19937_64 rng(1234);
    const double tol = 1e-6;
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 1 + trial % 3;
        const auto curve = random_closed_curve(rng, k);
        CHECK(curve.rotation_number() == k);
        CHECK(curve.closure_gap() < 1e-9);

        const auto report = verify_curvature_area_bound(curve, tol);
        CHECK(report.curve_area >= -tol);
        CHECK(report.curve_area <= report.box_area + tol);
        CHECK(report.box_area <= report.bound + tol);
        CHECK(report.pass);

        // Segment bound a_j, b_j <= 2 v / K_min.
        const auto box = build_box_curve(curve, tol);
        const double seg_cap = 2.0 * curve.speed() / curve.rate_min() + tol;
        for (double a : box.vertical) CHECK(a <= seg_cap);
        for (double b : box.horizontal) CHECK(b <= seg_cap);
        CHECK(std::abs(box.vertical_alternating_sum()) < 1e-8);
        CHECK(std::abs(box.horizontal_alternating_sum()) < 1e-8);
    }
}

TEST_CASE("circle equality across curvature and speed") {
    for (double K : {0.5, 1.0, 2.0, 3.0}) {
        for (double v : {1.0, 2.0}) {
            for (int k : {1, 2}) {
                const double T = k * kTwoPi / K;
                const auto circle = PlanarCurve::from_curvature(
                    [K](double) { return K; }, v, T);
                const auto report = verify_curvature_area_bound(circle);
                const double ratio = v / K;
                CHECK(report.box_area ==
                      doctest::Approx(k * 4 * ratio * ratio).epsilon(1e-9));
                CHECK(report.curve_area ==
                      doctest::Approx(k * kPi * ratio * ratio).epsilon(1e-6));
                CHECK(report.pass);
            }
        }
    }
}

TEST_CASE("degenerate segments are reported, not fatal") {
    const auto circle =
        PlanarCurve::from_curvature([](double) { return 1.0; }, 1.0, kTwoPi);
    CHECK(build_box_curve(circle).degenerate_segments == 0);
    // With an absurd tolerance every segment counts as degenerate, but the
    // lengths and the area are untouched.
    const auto coarse = build_box_curve(circle, 3.0);
    CHECK(coarse.degenerate_segments == 4);
    CHECK(box_area(coarse) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("curves from sampled columns") {
    const std::size_t n = 4096;
    std::vector<double> t(n + 1), x(n + 1), y(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        t[i] = kTwoPi * static_cast<double>(i) / n;
        x[i] = std::sin(t[i]);
        y[i] = 1.0 - std::cos(t[i]);
    }
    const auto curve = PlanarCurve::from_samples(t, x, y, 1e-4);
    CHECK(curve.rotation_number() == 1);
    CHECK(curve.speed() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(curve.max_speed_deviation() < 1e-5);
    CHECK(curve.signed_area() == doctest::Approx(kPi).epsilon(1e-6));
    const auto report = verify_curvature_area_bound(curve, 1e-4);
    CHECK(report.pass);

    // An ellipse parameterized by angle is not constant-speed; rejected.
    std::vector<double> ex(n + 1), ey(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        ex[i] = 2.0 * std::cos(t[i]);
        ey[i] = std::sin(t[i]);
    }
    CHECK_THROWS_AS(PlanarCurve::from_samples(t, ex, ey, 1e-4), hz::Error);
}
