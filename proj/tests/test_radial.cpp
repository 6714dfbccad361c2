#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "hz/ode.hpp"
#include "hz/radial/levels.hpp"
#include "hz/radial/profile.hpp"

using namespace hz::radial;

namespace {
constexpr double kPi = std::numbers::pi;

// Numerical flow of z' = 2 alpha'(|z|^2) J z in the plane; returns the first
// return time to the start (angle 2 pi swept), or +inf if the orbit is
// constant. Independent of the closed-form rotation used by hopf_flow.
double numeric_return_time(const RadialProfile& profile, double z1, double z2,
                           double t_cap) {
    using Stepper = hz::Dopri5<3>;  // (z1, z2, swept angle)
    Stepper::Options opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    Stepper stepper(
        [&profile](double, const Stepper::State& y, Stepper::State& dy) {
            const double s = y[0] * y[0] + y[1] * y[1];
            const double w = 2.0 * profile.slope(s);
            dy[0] = -w * y[1];
            dy[1] = w * y[0];
            const double r2 = std::max(s, 1e-300);
            dy[2] = (y[0] * dy[1] - y[1] * dy[0]) / r2;  // d/dt of the phase
        },
        opt);
    const double s0 = z1 * z1 + z2 * z2;
    if (std::abs(profile.slope(s0)) < 1e-14) return std::numeric_limits<double>::infinity();

    auto event = [](double, const Stepper::State& y) {
        return std::abs(y[2]) - 2.0 * kPi;
    };
    const auto res = stepper.integrate(0.0, {z1, z2, 0.0}, t_cap, event);
    if (!res.event_hit) return std::numeric_limits<double>::infinity();
    return res.t;
}
}  // namespace

TEST_CASE("hopf flow is the block rotation with period pi") {
    const std::vector<double> z0{1.0, 0.0};
    const auto full = hopf_flow(z0, kPi);
    CHECK(full[0] == doctest::Approx(1.0));
    CHECK(full[1] == doctest::Approx(0.0).epsilon(1e-12));
    const auto half = hopf_flow(z0, kPi / 2);
    CHECK(half[0] == doctest::Approx(-1.0));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> z{u(rng), u(rng), u(rng), u(rng)};
        const double t = 3.0 * u(rng);
        const auto w = hopf_flow(z, t);
        double n0 = 0, n1 = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            n0 += z[i] * z[i];
            n1 += w[i] * w[i];
        }
        CHECK(n1 == doctest::Approx(n0).epsilon(1e-12));
    }
}

TEST_CASE("model profile geometry") {
    const auto profile = RadialProfile::make_model(4.05, 1.0, 0.80, 0.06, 0.06);
    CHECK(profile.max_value() == doctest::Approx(4.05));
    CHECK(profile.value(0.0) == doctest::Approx(4.05));
    CHECK(profile.value(0.5) == doctest::Approx(4.05));  // plateau
    CHECK(profile.value(1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(profile.slope(0.5) == 0.0);
    CHECK(profile.slope(0.9) == doctest::Approx(-4.05 / 0.14));
    // C^2: curvature vanishes at the plateau and constant-slope junctions.
    CHECK(profile.curvature(0.80) == doctest::Approx(0.0));
    CHECK(profile.curvature(0.86) == doctest::Approx(0.0));
}

TEST_CASE("admissibility boundary cases") {
    // sup|slope| = 0.9 pi -> admissible.
    const auto below = RadialProfile::make_model(
        0.9 * kPi * 0.5, 1.0, 0.25, 0.25, 0.25);  // effective width 0.5
    const auto rep_below = admissibility_check(below);
    CHECK(rep_below.sup_slope == doctest::Approx(0.9 * kPi));
    CHECK(rep_below.admissible);

    // Slope exactly -pi at a single ramp vertex -> not admissible
    // (boundary case; constant segments at -pi are rejected outright).
    const auto at_pi = RadialProfile::from_segments(
        kPi * 0.25, 0.5, {{0.25, -kPi}, {0.25, 0.0}});
    const auto rep_at = admissibility_check(at_pi);
    CHECK(rep_at.sup_slope == doctest::Approx(kPi));
    CHECK_FALSE(rep_at.admissible);

    // The zero profile is admissible.
    CHECK(admissibility_check(RadialProfile{}).admissible);
}

TEST_CASE("capacity witness construction") {
    const auto witness = capacity_witness(1.0, 0.1);
    CHECK(witness.max_value() == doctest::Approx(kPi - 0.1));
    const auto rep = admissibility_check(witness);
    CHECK(rep.admissible);
    CHECK(rep.sup_slope < kPi);
    CHECK(enumerate_periodic_levels(witness).empty());

    CHECK_THROWS_AS(capacity_witness(1.0, 0.0), InfeasibleWitness);
    CHECK_THROWS_AS(capacity_witness(1.0, kPi), InfeasibleWitness);
}

TEST_CASE("witness flow has no return time at or below one") {
    const auto witness = capacity_witness(1.0, 0.1);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
    for (int trial = 0; trial < 25; ++trial) {
        const double radius = std::sqrt(u(rng));
        const double ang = phase(rng);
        const double t_ret = numeric_return_time(witness, radius * std::cos(ang),
                                                 radius * std::sin(ang), 5.0);
        CHECK(t_ret > 1.0);
    }
}

TEST_CASE("inadmissible profiles do have short orbits") {
    // Slope reaches -1.5 pi: the fastest level closes up in 2/3 < 1.
    const auto profile =
        RadialProfile::make_model(1.5 * kPi * 0.5, 1.0, 0.25, 0.25, 0.25);
    CHECK_FALSE(admissibility_check(profile).admissible);
    const auto levels = enumerate_periodic_levels(profile);
    REQUIRE(!levels.empty());
    bool found_short = false;
    for (const auto& lvl : levels) {
        const double t_ret =
            numeric_return_time(profile, std::sqrt(lvl.level), 0.0, 3.0);
        if (t_ret <= 1.0 + 1e-9) found_short = true;
    }
    CHECK(found_short);
}

TEST_CASE("admissibility agrees with a brute-force flow search") {
    // Random profiles on both sides of the threshold; the flow search looks
    // for a nonconstant orbit of period <= 1 among random seeds plus seeds
    // planted on the fastest level.
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> scale(0.55, 1.45);
    std::uniform_real_distribution<double> geom(0.15, 0.3);
    std::uniform_real_distribution<double> pick(0.02, 0.98);

    for (int trial = 0; trial < 20; ++trial) {
        const double plateau = geom(rng);
        const double ramp = geom(rng);
        const double body = 1.0 - plateau - 2 * ramp;
        const double effective = body + ramp;
        const double sup_target = scale(rng) * kPi;  // intended sup|slope|
        auto profile = RadialProfile::make_model(sup_target * effective, 1.0,
                                                 plateau, ramp, ramp);
        const auto rep = admissibility_check(profile);
        CHECK(rep.sup_slope == doctest::Approx(sup_target).epsilon(1e-12));

        bool found_short = false;
        auto probe = [&](double s) {
            if (s <= 0.0 || s >= 1.0) return;
            const double t_ret = numeric_return_time(profile, std::sqrt(s), 0.0, 3.0);
            if (t_ret <= 1.0) found_short = true;
        };
        for (int seed = 0; seed < 5; ++seed) probe(pick(rng));
        // Plant seeds on the constant-slope body, where |slope| is maximal.
        probe(plateau + ramp + 0.25 * body);
        probe(plateau + ramp + 0.75 * body);

        CHECK(found_short == !rep.admissible);
    }
}

TEST_CASE("period law pi / |slope| against the numerical flow") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> height(0.5, 6.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto profile = RadialProfile::make_model(height(rng), 1.0, 0.3, 0.2, 0.2);
        std::uniform_real_distribution<double> s_pick(0.35, 0.75);
        const double s = s_pick(rng);  // inside the constant-slope body
        const double w = std::abs(profile.slope(s));
        if (w < 1e-9) continue;
        const double t_ret = numeric_return_time(profile, std::sqrt(s), 0.0, 10.0);
        CHECK(t_ret == doctest::Approx(kPi / w).epsilon(1e-8));
    }
}

TEST_CASE("level enumeration for a two-level profile") {
    // Slope descends to -2.5 pi: levels k = 1, 2 on both branches.
    const auto profile =
        RadialProfile::make_model(2.5 * kPi * 0.5, 1.0, 0.25, 0.25, 0.25);
    const auto levels = enumerate_periodic_levels(profile);
    REQUIRE(levels.size() == 4);
    CHECK(levels[0].branch == Branch::C);
    CHECK(levels[0].multiplicity == 1);
    CHECK(levels[1].branch == Branch::C);
    CHECK(levels[1].multiplicity == 2);
    CHECK(levels[2].branch == Branch::D);
    CHECK(levels[2].multiplicity == 1);
    CHECK(levels[3].branch == Branch::D);
    CHECK(levels[3].multiplicity == 2);
    for (const auto& lvl : levels) {
        CHECK(lvl.residual < 1e-12);
        CHECK(lvl.action ==
              doctest::Approx(lvl.value + lvl.multiplicity * kPi * lvl.level)
                  .epsilon(1e-15));
    }
    // The level values on branch C strictly decrease with the multiplicity.
    CHECK(levels[0].value > levels[1].value);
    // Actions grow with the multiplicity on both branches.
    CHECK(levels[0].action < levels[1].action);
    CHECK(levels[2].action < levels[3].action);

    // Admissible profiles carry no 1-periodic levels at all.
    const auto admissible = RadialProfile::make_model(0.9 * kPi * 0.5, 1.0, 0.25, 0.25, 0.25);
    CHECK(enumerate_periodic_levels(admissible).empty());
}

TEST_CASE("narrow minus-style profile has a single level pair") {
    // Slope reaches -1.5 pi on a radius-r ball geometry.
    const double r2 = 0.25;
    const auto profile = RadialProfile::make_model(1.5 * kPi * 0.5 * r2, r2,
                                                   0.25 * r2, 0.25 * r2, 0.25 * r2);
    const auto levels = enumerate_periodic_levels(profile);
    REQUIRE(levels.size() == 2);
    CHECK(levels[0].branch == Branch::C);
    CHECK(levels[0].multiplicity == 1);
    CHECK(levels[1].branch == Branch::D);
    CHECK(levels[1].multiplicity == 1);
}

TEST_CASE("resonant constant slopes are rejected") {
    CHECK_THROWS_AS(RadialProfile::from_segments(
                        kPi * 0.5, 0.25, {{0.25, -kPi}, {0.25, -kPi}, {0.25, 0.0}}),
                    ResonantSlope);
}

TEST_CASE("table of relative indices") {
    const DimensionData d11{1, 1};
    CHECK(relative_index(Branch::C, 1, d11, Family::Plus) == 1);
    CHECK(relative_index(Branch::D, 1, d11, Family::Plus) == 0);
    CHECK(relative_index(Branch::C, 1, d11, Family::Zero) == 3);
    CHECK(relative_index(Branch::D, 2, d11, Family::Zero) == 6);
    CHECK(relative_index(Branch::C, 1, d11, Family::Minus) == 3);
    CHECK(relative_index(Branch::D, 1, d11, Family::Minus) == 2);

    const DimensionData d23{2, 3};
    for (int k = 1; k <= 4; ++k) {
        CHECK(relative_index(Branch::C, k, d23, Family::Plus) ==
              (2 * k - 1) * 3 - 2 + 1);
        CHECK(relative_index(Branch::D, k, d23, Family::Plus) == (2 * k - 1) * 3 - 2);
        CHECK(relative_index(Branch::C, k, d23, Family::Zero) == (2 * k - 1) * 5 + 1);
        CHECK(relative_index(Branch::D, k, d23, Family::Minus) == (2 * k - 1) * 5);
    }
}

TEST_CASE("window constants") {
    const auto window = choose_window(4.0, 3.95, 4.05, 0.5, 1.0);
    CHECK(window.a == doctest::Approx(0.5 * (4.0 + 3.95 + kPi * 0.25)));
    CHECK(window.b == doctest::Approx(0.5 * (2 * 4.05 + 3 * kPi)));
    // All five inequalities hold strictly.
    CHECK(4.0 < window.a);
    CHECK(window.a < 3.95 + kPi * 0.25);
    CHECK(3.95 + kPi * 0.25 < 4.05 + kPi);
    CHECK(4.05 + kPi < window.b);
    CHECK(window.b < 4.05 + 2 * kPi);

    CHECK_THROWS_AS(choose_window(3.0, 2.95, 3.05, 0.5, 1.0), HypothesisViolation);
    CHECK_THROWS_AS(choose_window(4.0, 3.95, 4.05, 1.0, 1.0), WindowInfeasible);
    CHECK_THROWS_AS(choose_window(4.0, 4.1, 4.2, 0.5, 1.0), WindowInfeasible);
}

TEST_CASE("classification of empty level lists is empty") {
    const auto witness = capacity_witness(1.0, 0.5);
    const auto levels = classify_levels(enumerate_periodic_levels(witness),
                                        {1.0, 2.0}, {1, 1}, Family::Plus);
    CHECK(levels.empty());
}

TEST_CASE("window classification on the late-drop presets") {
    const double max_h = 4.0;
    const double max_plus = 4.05, max_minus = 3.95;
    const auto window = choose_window(max_h, max_minus, max_plus, 0.5, 1.0);
    const DimensionData dims{1, 1};

    const auto plus_profile = RadialProfile::make_model(max_plus, 1.0, 0.80, 0.06, 0.06);
    const auto plus = classify_levels(enumerate_periodic_levels(plus_profile),
                                      window, dims, Family::Plus);
    const auto excl = verify_window_exclusions(plus, Family::Plus);
    CHECK(excl.c1_inside);
    CHECK(excl.d1_outside);
    CHECK(excl.high_c_outside);
    CHECK(excl.pass);

    // d^1 specifically lands below the window, c^k (k >= 2) above.
    for (const auto& lvl : plus) {
        if (lvl.branch == Branch::D && lvl.multiplicity == 1)
            CHECK(lvl.window == WindowClass::Below);
        if (lvl.branch == Branch::C && lvl.multiplicity >= 2)
            CHECK(lvl.window == WindowClass::Above);
        if (lvl.branch == Branch::C && lvl.multiplicity == 1)
            CHECK(lvl.window == WindowClass::InWindow);
    }

    const double r2 = 0.25;
    const auto minus_profile =
        RadialProfile::make_model(max_minus, r2, 0.80 * r2, 0.06 * r2, 0.06 * r2);
    const auto minus = classify_levels(enumerate_periodic_levels(minus_profile),
                                       window, dims, Family::Minus);
    const auto excl_minus = verify_window_exclusions(minus, Family::Minus);
    CHECK(excl_minus.d1_outside);
    CHECK(excl_minus.pass);
}
