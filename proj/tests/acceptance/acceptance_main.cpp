// Acceptance suite: end-to-end checks at pinned tolerances, one line per
// criterion. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hz/curve/box.hpp"
#include "hz/ode.hpp"
#include "hz/curve/corpus.hpp"
#include "hz/radial/levels.hpp"
#include "hz/radial/profile.hpp"
#include "hz/report/scenarios.hpp"
#include "hz/spectral/pages.hpp"
#include "hz/spectral/random.hpp"
#include "hz/torus/orbits.hpp"

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Harness {
    int failures = 0;
    int index = 0;

    // time_budget <= 0 means no runtime requirement for the criterion.
    void run(const std::string& label, bool (*fn)(std::string&),
             double time_budget = 0.0) {
        ++index;
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (time_budget > 0.0 && seconds > time_budget) {
            ok = false;
            detail += " [over the " + std::to_string(time_budget) + "s budget]";
        }
        std::printf("[%s] C%d %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", index,
                    label.c_str(), seconds, detail.empty() ? "" : " -- ",
                    detail.c_str());
        if (!ok) ++failures;
    }
};

bool approx_rel(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::max(1e-300, std::abs(target));
}

// C1: constant-curvature circles hit the closed forms exactly.
bool circle_equality(std::string& detail) {
    bool ok = true;
    for (double K : {0.5, 1.0, 2.0}) {
        for (double v : {1.0, 2.0}) {
            for (int k : {1, 2, 3}) {
                const auto circle = hz::curve::PlanarCurve::from_curvature(
                    [K](double) { return K; }, v, k * kTwoPi / K);
                const auto rep = hz::curve::verify_curvature_area_bound(circle);
                const double ratio = v / K;
                ok = ok && approx_rel(rep.box_area, k * 4 * ratio * ratio, 1e-9);
                ok = ok && approx_rel(rep.curve_area, k * kPi * ratio * ratio, 1e-6);
                ok = ok && rep.pass;
            }
        }
    }
    detail = "18 (K, v, k) combinations";
    return ok;
}

// C2: property suite over generated curves and synthetic boxes.
bool curvature_property_suite(std::string& detail) {
    const double tol = 1e-6;
    std::mt19937_64 rng(20240811);
    int curve_pass = 0;
    const int curve_count = 200;
    for (int i = 0; i < curve_count; ++i) {
        const int k = 1 + i % 3;
        const auto curve = hz::curve::random_closed_curve(rng, k);
        const auto rep = hz::curve::verify_curvature_area_bound(curve, tol);
        if (rep.curve_area >= -tol && rep.curve_area <= rep.box_area + tol &&
            rep.box_area <= rep.bound + tol)
            ++curve_pass;
    }

    int box_pass = 0;
    const int box_count = 500;
    for (int i = 0; i < box_count; ++i) {
        const int k = 1 + i % 3;
        const auto box = hz::curve::random_box_curve(rng, k);
        const double area = hz::curve::box_area_signed(box);
        const double cap = k * box.max_entry() * box.max_entry();
        if (area > 0.0 && area <= cap * (1 + 1e-12)) ++box_pass;
    }

    detail = "curves " + std::to_string(curve_pass) + "/" +
             std::to_string(curve_count) + ", boxes " + std::to_string(box_pass) +
             "/" + std::to_string(box_count);
    return curve_pass == curve_count && box_pass == box_count;
}

// C3: constant-field closed forms for T, k, A1, A2, A and the rotation
// inequality with equality.
bool constant_field_closed_form(std::string& detail) {
    bool ok = true;
    for (double F0 : {1.0, 5.0}) {
        for (double E : {0.05, 0.5}) {
            const hz::torus::MagneticField field(F0);
            const auto orbit = hz::torus::orbit_at(field, E, 0.25, 0.25);
            ok = ok && approx_rel(orbit.period, kTwoPi / F0, 1e-8);
            ok = ok && orbit.rotation_number == -1;
            ok = ok && approx_rel(orbit.a1, 4 * kPi * E / F0, 1e-8);
            ok = ok && approx_rel(orbit.a2, -2 * kPi * E / F0, 1e-8);
            ok = ok && approx_rel(orbit.area, 2 * kPi * E / F0, 1e-8);
            // F_min T <= -2 pi k <= F_max T collapses to F0 T = 2 pi.
            ok = ok && approx_rel(F0 * orbit.period, kTwoPi, 1e-10);
        }
    }
    detail = "F0 in {1, 5} x E in {0.05, 0.5}";
    return ok;
}

// C4: desk-scale sweep of F = 10 + cos(2 pi q1) cos(2 pi q2).
bool low_energy_sweep(std::string& detail) {
    const hz::torus::MagneticField field(10.0,
                                         {{1, 1, 0.5, 0.0}, {1, -1, 0.5, 0.0}});
    const double v_ratio = field.extrema().variance_ratio;
    if (!(v_ratio < std::sqrt(kPi / 2))) {
        detail = "variance ratio out of range";
        return false;
    }
    std::vector<double> energies;
    for (int i = 0; i < 10; ++i) energies.push_back(0.01 + i * 0.01);

    hz::torus::OrbitFinderOptions opt;
    opt.grid_density = 12;
    opt.threads = 8;
    const auto sweep = hz::torus::energy_sweep(field, energies, opt, 1e-6);

    int certified_levels = 0;
    bool sound = true;
    for (const auto& level : sweep.levels) {
        bool level_ok = false;
        for (std::size_t i = 0; i < level.search.orbits.size(); ++i) {
            if (level.search.orbits[i].contractible &&
                level.certificates[i].verdict == hz::torus::CertificateVerdict::Pass)
                level_ok = true;
            // Soundness over the whole corpus: no contractible orbit may
            // fail its bound, and the rotation inequality holds throughout.
            if (level.certificates[i].verdict == hz::torus::CertificateVerdict::Fail)
                sound = false;
            if (!level.search.orbits[i].rotation_bound_ok) sound = false;
        }
        if (level_ok) ++certified_levels;
    }
    detail = std::to_string(certified_levels) + "/10 levels carry a certified "
             "contractible orbit, V_F=" + std::to_string(v_ratio);
    return certified_levels == 10 && sweep.all_levels_pass && sound;
}

// C5: capacity witness has the right height, slope margin, and no short
// returns under the numerically integrated flow.
bool capacity_witness_check(std::string& detail) {
    const auto witness = hz::radial::capacity_witness(1.0, 0.1);
    bool ok = std::abs(witness.max_value() - (kPi - 0.1)) < 1e-12;
    const auto adm = hz::radial::admissibility_check(witness);
    ok = ok && adm.admissible && adm.sup_slope < kPi;

    // Numerical flow oracle in the plane (the flow acts blockwise, so the
    // planar case decides every fiber dimension).
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> s_pick(0.02, 0.98);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    int no_short_return = 0;
    const int seeds = 100;
    for (int i = 0; i < seeds; ++i) {
        const double s = s_pick(rng);
        const double ang = phase(rng);
        const double w = std::abs(witness.slope(s));
        if (w < 1e-12) {
            ++no_short_return;  // constant orbit
            continue;
        }
        // Integrate z' = 2 slope(|z|^2) J z until the phase sweeps 2 pi.
        using Stepper = hz::Dopri5<3>;
        Stepper::Options sopt;
        sopt.abs_tol = 1e-12;
        sopt.rel_tol = 1e-12;
        Stepper stepper([&witness](double, const Stepper::State& y,
                                   Stepper::State& dy) {
            const double r2 = y[0] * y[0] + y[1] * y[1];
            const double w2 = 2.0 * witness.slope(r2);
            dy[0] = -w2 * y[1];
            dy[1] = w2 * y[0];
            dy[2] = (y[0] * dy[1] - y[1] * dy[0]) / std::max(r2, 1e-300);
        }, sopt);
        auto event = [](double, const Stepper::State& y) {
            return std::abs(y[2]) - kTwoPi;
        };
        const auto res = stepper.integrate(
            0.0, {std::sqrt(s) * std::cos(ang), std::sqrt(s) * std::sin(ang), 0.0},
            10.0, event);
        const double t_ret = res.event_hit
                                 ? res.t
                                 : std::numeric_limits<double>::infinity();
        if (t_ret > 1.0) ++no_short_return;
    }
    detail = std::to_string(no_short_return) + "/" + std::to_string(seeds) +
             " seeds with return time > 1, sup|slope| = " +
             std::to_string(adm.sup_slope);
    return ok && no_short_return == seeds;
}

// C6: level tables for the three model families.
bool action_index_table(std::string& detail) {
    using namespace hz::radial;
    const double max_h = 4.0, max_plus = 4.05, max_minus = 3.95;
    const double R2 = 1.0, r2 = 0.25;
    const DimensionData dims{1, 1};
    const auto window = choose_window(max_h, max_minus, max_plus, 0.5, 1.0);

    auto model = [](double max_value, double radius2) {
        return RadialProfile::make_model(max_value, radius2, 0.80 * radius2,
                                         0.06 * radius2, 0.06 * radius2);
    };

    struct Case {
        Family family;
        RadialProfile profile;
    };
    const std::vector<Case> cases = {{Family::Plus, model(max_plus, R2)},
                                     {Family::Zero, model(max_plus, R2)},
                                     {Family::Minus, model(max_minus, r2)}};

    bool ok = true;
    std::size_t level_count = 0;
    for (const auto& c : cases) {
        auto levels = classify_levels(enumerate_periodic_levels(c.profile), window,
                                      dims, c.family);
        level_count += levels.size();
        for (const auto& lvl : levels) {
            // Index formulas, integer-exact.
            const int expect =
                relative_index(lvl.branch, lvl.multiplicity, dims, c.family);
            ok = ok && lvl.relative_index == expect;
            // Exact action alpha(c) + k pi c.
            const double action =
                c.profile.value(lvl.level) + lvl.multiplicity * kPi * lvl.level;
            ok = ok && std::abs(lvl.action - action) <= 1e-9;
            ok = ok && lvl.residual < 1e-12;
        }
        const auto excl = verify_window_exclusions(levels, c.family);
        ok = ok && excl.pass;
    }
    detail = std::to_string(level_count) + " levels across the three families";
    return ok;
}

// C7: spectral presets (dimensions, d2 rank, splitting behavior).
bool spectral_presets(std::string& detail) {
    using namespace hz::spectral;
    bool ok = true;

    const FilteredComplex hopf(
        {{"g00", 0, 0}, {"g20", 2, 0}, {"g01", 0, 1}, {"g21", 2, 1}}, {{1, 2}});
    const auto hopf_pages = compute_pages(hopf);
    ok = ok && hopf_pages.limit().total_dim(0) == 1 &&
         hopf_pages.limit().total_dim(1) == 0 &&
         hopf_pages.limit().total_dim(2) == 0 &&
         hopf_pages.limit().total_dim(3) == 1;
    ok = ok && hopf_pages.pages[2].cells.at({2, 0}).d_rank == 1;
    const auto hopf_split = splitting_check(hopf_pages, 1, 1, {1, 0, 1});
    ok = ok && !hopf_split.splits;

    const FilteredComplex torus(
        {{"min", 0, 0}, {"s1", 1, 0}, {"s2", 1, 0}, {"max", 2, 0}}, {});
    const auto torus_pages = compute_pages(torus);
    ok = ok && torus_pages.limit().total_dim(0) == 1 &&
         torus_pages.limit().total_dim(1) == 2 &&
         torus_pages.limit().total_dim(2) == 1;

    // Trivial products M x S^{2n-1} for (m, n) = (1, 2) and (2, 3).
    auto product = [](int dim, int fiber_top) {
        BundleMorseData data;
        int idx = 0;
        for (int mask = 0; mask < (1 << dim); ++mask)
            data.base.push_back({"b" + std::to_string(idx++),
                                 __builtin_popcount(static_cast<unsigned>(mask))});
        data.fiber_homology.assign(fiber_top + 1, 0);
        data.fiber_homology[0] = 1;
        data.fiber_homology[fiber_top] = 1;
        return assemble_bundle_complex(data);
    };
    const auto t2s3 = compute_pages(product(2, 3));
    const auto s_t2s3 = splitting_check(t2s3, 1, 2, {1, 2, 1});
    ok = ok && s_t2s3.splits && s_t2s3.corner_survives;

    const auto t4s5 = compute_pages(product(4, 5));
    const auto s_t4s5 = splitting_check(t4s5, 2, 3, {1, 4, 6, 4, 1});
    ok = ok && s_t4s5.splits && s_t4s5.corner_survives;

    // n > m splits for degree reasons (base S^2, fiber S^3).
    BundleMorseData s2s3;
    s2s3.base = {{"min", 0}, {"max", 2}};
    s2s3.fiber_homology = {1, 0, 0, 1};
    const auto pages_s2s3 = compute_pages(assemble_bundle_complex(s2s3));
    const auto s_s2s3 = splitting_check(pages_s2s3, 1, 2, {1, 0, 1});
    ok = ok && s_s2s3.splits;

    detail = "hopf, torus, products (1,2) and (2,3), degree-reasons case";
    return ok;
}

// C8: limit page vs brute-force GF(2) homology on random complexes.
bool oracle_equivalence(std::string& detail) {
    std::mt19937_64 rng(424242);
    int matches = 0;
    const int total = 20;
    for (int i = 0; i < total; ++i) {
        const auto rc = hz::spectral::random_filtered_complex(rng, 40);
        const auto pages = hz::spectral::compute_pages(rc.complex);
        const auto brute = rc.complex.brute_force_homology();
        bool match = true;
        for (int l = 0; l <= rc.complex.max_degree(); ++l) {
            const std::size_t expected =
                l < static_cast<int>(rc.expected_homology.size())
                    ? rc.expected_homology[l]
                    : 0;
            match = match && pages.limit().total_dim(l) == brute[l] &&
                    brute[l] == expected;
        }
        if (match) ++matches;
    }
    detail = std::to_string(matches) + "/" + std::to_string(total) + " complexes";
    return matches == total;
}

// C9: byte-identical reports for 1 and 8 worker threads.
bool determinism(std::string& detail) {
    using namespace hz::report;
    bool ok = true;

    auto run_both = [&](RunConfig cfg) {
        cfg.threads = 1;
        const ReportDocument a = run_scenario(cfg);
        cfg.threads = 8;
        const ReportDocument b = run_scenario(cfg);
        return render_csv(a) == render_csv(b) && render_json(a) == render_json(b);
    };

    RunConfig curve;
    curve.scenario = Scenario::CurveBound;
    curve.seed = 99;
    curve.curve.presets = {"unit-circle"};
    curve.curve.corpus_count = 24;
    curve.curve.box_corpus_count = 50;
    ok = ok && run_both(curve);

    RunConfig magnetic;
    magnetic.scenario = Scenario::Magnetic;
    magnetic.magnetic.constant = 10.0;
    magnetic.magnetic.modes = {{1, 1, 0.5, 0.0}, {1, -1, 0.5, 0.0}};
    magnetic.magnetic.energies = {0.05, 0.1};
    magnetic.magnetic.grid_density = 6;
    ok = ok && run_both(magnetic);

    RunConfig spectral;
    spectral.scenario = Scenario::Spectral;
    spectral.oracle = true;
    spectral.spectral.presets = {"hopf", "product-t2-s3"};
    spectral.spectral.random_count = 5;
    ok = ok && run_both(spectral);

    RunConfig levels;
    levels.scenario = Scenario::Levels;
    ok = ok && run_both(levels);

    detail = "curve-bound, magnetic, spectral, levels";
    return ok;
}

}  // namespace

int main() {
    Harness h;
    h.run("circle equality for the box-curve area bound", circle_equality, 1.0);
    h.run("curvature area-bound property suite (200 curves, 500 boxes)",
          curvature_property_suite, 60.0);
    h.run("constant-field closed forms", constant_field_closed_form);
    h.run("low-energy sweep with area certificates", low_energy_sweep, 300.0);
    h.run("capacity witness without short orbits", capacity_witness_check, 30.0);
    h.run("action/index tables and window exclusions", action_index_table);
    h.run("spectral-sequence presets", spectral_presets, 10.0);
    h.run("limit page vs brute-force homology", oracle_equivalence, 30.0);
    h.run("thread-count determinism of report bodies", determinism);

    std::printf("%d/9 acceptance criteria passed\n", 9 - h.failures);
    return h.failures;
}
