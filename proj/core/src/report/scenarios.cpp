#include "hz/report/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "hz/curve/box.hpp"
#include "hz/curve/corpus.hpp"
#include "hz/parallel.hpp"
#include "hz/radial/levels.hpp"
#include "hz/spectral/pages.hpp"
#include "hz/spectral/random.hpp"
#include "hz/torus/orbits.hpp"

namespace hz::report {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string pass_str(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- curves --

curve::PlanarCurve build_preset_curve(const std::string& name) {
    curve::CurveOptions opt;
    if (name == "unit-circle") {
        return curve::PlanarCurve::from_curvature([](double) { return 1.0; }, 1.0,
                                                  kTwoPi, opt);
    }
    // double-circle: constant turning rate 2, two laps of a radius-1/2 circle
    return curve::PlanarCurve::from_curvature([](double) { return 2.0; }, 1.0,
                                              kTwoPi, opt);
}

std::string curve_trace(const curve::PlanarCurve& c) {
    std::string body = "t,x,y\n";
    const auto& t = c.grid();
    const std::size_t stride = std::max<std::size_t>(1, t.size() / 512);
    for (std::size_t i = 0; i < t.size(); i += stride) {
        body += fmt17(t[i]) + "," + fmt17(c.x_nodes()[i]) + "," +
                fmt17(c.y_nodes()[i]) + "\n";
    }
    return body;
}

ReportDocument run_curve_bound(const RunConfig& cfg) {
    ReportDocument doc;
    doc.scenario = scenario_name(cfg.scenario);
    doc.columns = {"k", "v", "K_min", "A_curve", "A_box", "bound", "pass"};
    const double tol = cfg.tolerances.geom;

    struct Item {
        std::string label;
        curve::PlanarCurve curve;
        bool trace = false;
    };
    std::vector<Item> items;
    bool all_pass = true;

    for (const auto& preset : cfg.curve.presets)
        items.push_back({preset, build_preset_curve(preset), true});

    for (const auto& entry : cfg.curve.curves) {
        curve::CurveOptions opt;
        opt.geom_tol = tol;
        opt.closure = entry.project_closure ? curve::ClosureMode::Project
                                            : curve::ClosureMode::Strict;
        try {
            items.push_back({entry.label,
                             curve::PlanarCurve::from_curvature(
                                 entry.curvature.as_function(entry.period),
                                 entry.speed, entry.period, opt),
                             true});
        } catch (const hz::Error& e) {
            // A rejected input curve is a failed record, not an abort.
            doc.rows.push_back({"0", fmt17(entry.speed), "nan", "nan", "nan",
                                "nan", "false"});
            doc.notes.push_back(entry.label + ": " + e.what());
            all_pass = false;
        }
    }

    if (!cfg.curve.samples_file.empty()) {
        std::ifstream in(cfg.curve.samples_file);
        if (!in) throw IOFailure("cannot open " + cfg.curve.samples_file);
        std::vector<double> t, x, y;
        double a, b, c;
        while (in >> a >> b >> c) {
            t.push_back(a);
            x.push_back(b);
            y.push_back(c);
        }
        items.push_back({"samples", curve::PlanarCurve::from_samples(t, x, y, 1e-4),
                         false});
    }

    if (cfg.curve.corpus_count > 0) {
        // Per-curve seeds drawn up front so the corpus is identical for any
        // thread count.
        std::mt19937_64 master(cfg.seed);
        std::vector<std::uint64_t> seeds(cfg.curve.corpus_count);
        for (auto& s : seeds) s = master();
        std::vector<curve::PlanarCurve> corpus(
            cfg.curve.corpus_count,
            curve::PlanarCurve::from_curvature([](double) { return 1.0; }, 1.0,
                                               kTwoPi, {}));
        parallel_for_indexed(
            static_cast<std::size_t>(cfg.curve.corpus_count), cfg.threads,
            [&](std::size_t i) {
                std::mt19937_64 rng(seeds[i]);
                const int k = cfg.curve.corpus_k[i % cfg.curve.corpus_k.size()];
                corpus[i] = curve::random_closed_curve(rng, k);
            });
        for (int i = 0; i < cfg.curve.corpus_count; ++i)
            items.push_back({"corpus" + std::to_string(i), corpus[i], false});
    }

    for (const auto& item : items) {
        const auto report = curve::verify_curvature_area_bound(item.curve, tol);
        all_pass = all_pass && report.pass;
        doc.rows.push_back({std::to_string(item.curve.rotation_number()),
                            fmt17(item.curve.speed()), fmt17(item.curve.rate_min()),
                            fmt17(report.curve_area), fmt17(report.box_area),
                            fmt17(report.bound), pass_str(report.pass)});
        if (item.trace)
            doc.companions.emplace_back("_trace_" + item.label + ".csv",
                                        curve_trace(item.curve));
    }

    if (cfg.curve.box_corpus_count > 0) {
        std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ull);
        int ok = 0;
        for (int i = 0; i < cfg.curve.box_corpus_count; ++i) {
            const int k = 1 + static_cast<int>(i % 3);
            const auto box = curve::random_box_curve(rng, k);
            const double area = curve::box_area_signed(box);
            const double cap = box.max_entry() * box.max_entry() * k;
            if (area > 0.0 && area <= cap * (1.0 + 1e-12)) ++ok;
        }
        doc.notes.push_back("box_corpus: " + std::to_string(ok) + "/" +
                            std::to_string(cfg.curve.box_corpus_count) +
                            " inside (0, k*max^2]");
        all_pass = all_pass && ok == cfg.curve.box_corpus_count;
    }

    doc.pass = all_pass;
    return doc;
}

// -------------------------------------------------------------- magnetic --

std::string verdict_str(torus::CertificateVerdict v) {
    switch (v) {
        case torus::CertificateVerdict::Pass: return "pass";
        case torus::CertificateVerdict::Fail: return "fail";
        case torus::CertificateVerdict::Vacuous: return "vacuous";
        case torus::CertificateVerdict::NonContractible: return "noncontractible";
    }
    return "?";
}

ReportDocument run_magnetic(const RunConfig& cfg) {
    ReportDocument doc;
    doc.scenario = scenario_name(cfg.scenario);
    doc.columns = {"E", "q1", "q2", "T", "k", "A1", "A2", "A", "C_E", "pass"};

    torus::MagneticField field(cfg.magnetic.constant, cfg.magnetic.modes);
    const auto& ext = field.extrema();
    doc.notes.push_back("field: F_min=" + fmt17(ext.min) + " F_max=" +
                        fmt17(ext.max) + " V_F=" + fmt17(ext.variance_ratio));

    torus::OrbitFinderOptions opt;
    opt.grid_density = cfg.magnetic.grid_density;
    opt.threads = cfg.threads;
    opt.newton_tol = cfg.tolerances.orbit;

    const auto sweep =
        torus::energy_sweep(field, cfg.magnetic.energies, opt, cfg.tolerances.cert);

    for (std::size_t li = 0; li < sweep.levels.size(); ++li) {
        const auto& level = sweep.levels[li];
        for (std::size_t oi = 0; oi < level.search.orbits.size(); ++oi) {
            const auto& orbit = level.search.orbits[oi];
            const auto& cert = level.certificates[oi];
            doc.rows.push_back({fmt17(level.energy), fmt17(orbit.q1), fmt17(orbit.q2),
                                fmt17(orbit.period),
                                std::to_string(orbit.rotation_number),
                                fmt17(orbit.a1), fmt17(orbit.a2), fmt17(orbit.area),
                                fmt17(cert.rate), verdict_str(cert.verdict)});
        }
        std::string note = "E=" + fmt17(level.energy) + ": orbits=" +
                           std::to_string(level.search.orbits.size());
        if (level.search.degenerate_continuum) note += " (degenerate continuum)";
        note += " seeds_failed=" + std::to_string(level.search.seeds_failed);
        doc.notes.push_back(note);

        if (cfg.magnetic.trace && !level.search.orbits.empty()) {
            const auto& orbit = level.search.orbits.front();
            std::string body = "t,q1,q2\n";
            torus::poincare_return(
                field, level.energy, orbit.q1, orbit.q2, opt.flow, 0.0,
                [&body](const torus::FlowSample& s) {
                    body += fmt17(s.t) + "," + fmt17(s.state.q1) + "," +
                            fmt17(s.state.q2) + "\n";
                },
                orbit.period / 512.0);
            doc.companions.emplace_back("_trace_E" + std::to_string(li) + ".csv",
                                        std::move(body));
        }
    }
    doc.notes.push_back("uniform_area_bound=" + fmt17(sweep.uniform_area_bound));
    doc.pass = sweep.all_levels_pass;
    return doc;
}

// ---------------------------------------------------------------- levels --

std::string branch_str(radial::Branch b) {
    return b == radial::Branch::C ? "C" : "D";
}

std::string window_str(radial::WindowClass w) {
    switch (w) {
        case radial::WindowClass::Below: return "below";
        case radial::WindowClass::InWindow: return "in";
        case radial::WindowClass::Above: return "above";
    }
    return "?";
}

// Model geometry with a late drop: plateau to 0.80 R^2, ramps of 0.06 R^2.
radial::RadialProfile model_profile(double max_value, double radius2) {
    return radial::RadialProfile::make_model(max_value, radius2, 0.80 * radius2,
                                             0.06 * radius2, 0.06 * radius2);
}

ReportDocument run_levels(const RunConfig& cfg) {
    ReportDocument doc;
    doc.scenario = scenario_name(cfg.scenario);
    doc.columns = {"family", "branch", "k", "c", "action", "index", "window_class"};
    const radial::DimensionData dims{cfg.levels.m, cfg.levels.n};

    bool all_pass = true;
    if (cfg.levels.use_presets) {
        const double max_plus = cfg.levels.max_h + cfg.levels.eps;
        const double max_minus = cfg.levels.max_h - cfg.levels.eps;
        const double R2 = cfg.levels.radius * cfg.levels.radius;
        const double r2 = cfg.levels.r * cfg.levels.r;

        const auto window = radial::choose_window(cfg.levels.max_h, max_minus,
                                                  max_plus, cfg.levels.r,
                                                  cfg.levels.radius);
        doc.notes.push_back("window: a=" + fmt17(window.a) + " b=" + fmt17(window.b));

        struct FamilyCase {
            const char* label;
            radial::Family family;
            radial::RadialProfile profile;
        };
        const std::vector<FamilyCase> cases = {
            {"plus", radial::Family::Plus, model_profile(max_plus, R2)},
            {"zero", radial::Family::Zero, model_profile(max_plus, R2)},
            {"minus", radial::Family::Minus, model_profile(max_minus, r2)},
        };
        for (const auto& fc : cases) {
            auto levels = radial::classify_levels(
                radial::enumerate_periodic_levels(fc.profile), window, dims,
                fc.family);
            for (const auto& lvl : levels) {
                doc.rows.push_back({fc.label, branch_str(lvl.branch),
                                    std::to_string(lvl.multiplicity), fmt17(lvl.level),
                                    fmt17(lvl.action), std::to_string(lvl.relative_index),
                                    window_str(lvl.window)});
            }
            const auto excl = radial::verify_window_exclusions(levels, fc.family);
            doc.notes.push_back(std::string(fc.label) + ": levels=" +
                                std::to_string(levels.size()) + " exclusions=" +
                                pass_str(excl.pass));
            all_pass = all_pass && excl.pass;
        }
    } else {
        const auto profile = radial::RadialProfile::from_segments(
            cfg.levels.max_value, cfg.levels.plateau_end, cfg.levels.segments);
        radial::Family family = radial::Family::Plus;
        if (cfg.levels.family == "zero") family = radial::Family::Zero;
        if (cfg.levels.family == "minus") family = radial::Family::Minus;

        auto levels = radial::enumerate_periodic_levels(profile);
        if (cfg.levels.has_window) {
            levels = radial::classify_levels(
                std::move(levels), {cfg.levels.window_a, cfg.levels.window_b}, dims,
                family);
        } else {
            for (auto& lvl : levels)
                lvl.relative_index =
                    radial::relative_index(lvl.branch, lvl.multiplicity, dims, family);
        }
        for (const auto& lvl : levels) {
            doc.rows.push_back({cfg.levels.family, branch_str(lvl.branch),
                                std::to_string(lvl.multiplicity), fmt17(lvl.level),
                                fmt17(lvl.action), std::to_string(lvl.relative_index),
                                cfg.levels.has_window ? window_str(lvl.window)
                                                      : std::string("none")});
        }
        const auto adm = radial::admissibility_check(profile);
        doc.notes.push_back("sup_slope=" + fmt17(adm.sup_slope) + " admissible=" +
                            pass_str(adm.admissible));
    }

    doc.pass = all_pass;
    return doc;
}

// -------------------------------------------------------------- spectral --

struct SpectralCase {
    std::string label;
    spectral::FilteredComplex complex;
    bool check_splitting = false;
    int m = 1, n = 1;
    std::vector<std::size_t> betti;
    bool expected_splits = false;
    bool has_expectation = false;
};

spectral::FilteredComplex hopf_complex() {
    return spectral::FilteredComplex(
        {{"g00", 0, 0}, {"g20", 2, 0}, {"g01", 0, 1}, {"g21", 2, 1}},
        {{1, 2}});
}

spectral::BundleMorseData product_bundle(const std::vector<int>& base_indices,
                                         int fiber_top) {
    spectral::BundleMorseData data;
    for (std::size_t i = 0; i < base_indices.size(); ++i)
        data.base.push_back({"b" + std::to_string(i), base_indices[i]});
    data.fiber_homology.assign(fiber_top + 1, 0);
    data.fiber_homology[0] = 1;
    data.fiber_homology[fiber_top] = 1;
    return data;
}

std::vector<int> torus_morse_indices(int dim) {
    // 2^dim critical points with binomial index counts.
    std::vector<int> out;
    for (int mask = 0; mask < (1 << dim); ++mask)
        out.push_back(__builtin_popcount(static_cast<unsigned>(mask)));
    std::sort(out.begin(), out.end());
    return out;
}

SpectralCase make_spectral_preset(const std::string& name) {
    if (name == "hopf") {
        return {name, hopf_complex(), true, 1, 1, {1, 0, 1}, false, true};
    }
    if (name == "torus-trivial") {
        // T^2 with a point fiber: four generators, zero boundary.
        return {name,
                spectral::FilteredComplex(
                    {{"min", 0, 0}, {"s1", 1, 0}, {"s2", 1, 0}, {"max", 2, 0}}, {}),
                false, 1, 1, {}, false, false};
    }
    if (name == "product-t2-s3") {
        return {name, assemble_bundle_complex(product_bundle(torus_morse_indices(2), 3)),
                true, 1, 2, {1, 2, 1}, true, true};
    }
    if (name == "product-t4-s5") {
        return {name, assemble_bundle_complex(product_bundle(torus_morse_indices(4), 5)),
                true, 2, 3, {1, 4, 6, 4, 1}, true, true};
    }
    // base-s2-s3: codimension exceeds the dimension, splits by degree.
    return {"base-s2-s3", assemble_bundle_complex(product_bundle({0, 2}, 3)),
            true, 1, 2, {1, 0, 1}, true, true};
}

ReportDocument run_spectral(const RunConfig& cfg) {
    ReportDocument doc;
    doc.scenario = scenario_name(cfg.scenario);
    doc.columns = {"case", "page", "i", "j", "dim", "d_rank"};

    std::vector<SpectralCase> cases;
    for (const auto& preset : cfg.spectral.presets)
        cases.push_back(make_spectral_preset(preset));

    if (!cfg.spectral.generators.empty()) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (const auto& [from, to] : cfg.spectral.boundary) {
            std::uint32_t fi = 0, ti = 0;
            for (std::uint32_t g = 0; g < cfg.spectral.generators.size(); ++g) {
                if (cfg.spectral.generators[g].name == from) fi = g;
                if (cfg.spectral.generators[g].name == to) ti = g;
            }
            pairs.emplace_back(fi, ti);
        }
        SpectralCase c{"custom",
                       spectral::FilteredComplex(cfg.spectral.generators, pairs),
                       cfg.spectral.check_splitting,
                       cfg.spectral.m,
                       cfg.spectral.n,
                       cfg.spectral.betti,
                       false,
                       false};
        cases.push_back(std::move(c));
    }

    bool all_pass = true;
    for (const auto& sc : cases) {
        const auto pages = spectral::compute_pages(sc.complex);
        for (const auto& page : pages.pages) {
            for (const auto& [key, cell] : page.cells) {
                doc.rows.push_back({sc.label, std::to_string(page.index),
                                    std::to_string(key.first),
                                    std::to_string(key.second),
                                    std::to_string(cell.dim),
                                    std::to_string(cell.d_rank)});
            }
        }

        std::string einf = sc.label + ": E_inf totals";
        for (int l = 0; l <= sc.complex.max_degree(); ++l)
            einf += " " + std::to_string(pages.limit().total_dim(l));
        einf += " (stable at page " + std::to_string(pages.stable_index) + ")";
        doc.notes.push_back(einf);

        if (cfg.oracle) {
            const auto brute = sc.complex.brute_force_homology();
            bool match = true;
            for (int l = 0; l <= sc.complex.max_degree(); ++l)
                match = match && pages.limit().total_dim(l) == brute[l];
            doc.notes.push_back(sc.label + ": oracle " +
                                (match ? "match" : "MISMATCH"));
            all_pass = all_pass && match;
        }

        if (sc.check_splitting) {
            const auto split = spectral::splitting_check(pages, sc.m, sc.n, sc.betti);
            std::string note = sc.label + ": splits=" + pass_str(split.splits) +
                               " corner_survives=" + pass_str(split.corner_survives) +
                               " H_2m=" + std::to_string(split.h_2m) + " expected=" +
                               std::to_string(split.expected);
            if (sc.has_expectation) {
                const bool ok = split.splits == sc.expected_splits;
                note += ok ? "" : " UNEXPECTED";
                all_pass = all_pass && ok;
            }
            doc.notes.push_back(std::move(note));
        }
    }

    if (cfg.spectral.random_count > 0) {
        std::mt19937_64 rng(cfg.seed);
        int ok = 0;
        for (int i = 0; i < cfg.spectral.random_count; ++i) {
            const auto rc =
                spectral::random_filtered_complex(rng, cfg.spectral.random_max_generators);
            const auto pages = spectral::compute_pages(rc.complex);
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
            if (match) ++ok;
        }
        doc.notes.push_back("random complexes: " + std::to_string(ok) + "/" +
                            std::to_string(cfg.spectral.random_count) +
                            " limit == brute-force == matching count");
        all_pass = all_pass && ok == cfg.spectral.random_count;
    }

    doc.pass = all_pass;
    return doc;
}

}  // namespace

ReportDocument run_scenario(const RunConfig& cfg) {
    ReportDocument doc;
    switch (cfg.scenario) {
        case Scenario::CurveBound: doc = run_curve_bound(cfg); break;
        case Scenario::Magnetic: doc = run_magnetic(cfg); break;
        case Scenario::Levels: doc = run_levels(cfg); break;
        case Scenario::Spectral: doc = run_spectral(cfg); break;
    }
    doc.version = kVersion;
    doc.config_hash = config_hash(cfg);
    return doc;
}

}  // namespace hz::report
