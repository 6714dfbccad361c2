#include "hz/report/config.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "hz/report/document.hpp"

namespace hz::report {

using nlohmann::json;
using nlohmann::ordered_json;

ValidationError::ValidationError(std::vector<std::string> fields)
    : Error("invalid config field(s): " +
            [&fields] {
                std::string s;
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    if (i) s += ", ";
                    s += fields[i];
                }
                return s;
            }()),
      fields_(std::move(fields)) {}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::CurveBound: return "curve-bound";
        case Scenario::Magnetic: return "magnetic";
        case Scenario::Levels: return "levels";
        case Scenario::Spectral: return "spectral";
    }
    return "unknown";
}

namespace {

void locate(const std::string& text, std::size_t byte, int& line, int& column) {
    line = 1;
    column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

class Check {
public:
    explicit Check(std::vector<std::string>& errs) : errs_(errs) {}

    void fail(const std::string& field) { errs_.push_back(field); }

    double number(const json& obj, const char* key, const std::string& path,
                  double fallback, bool require_positive = false,
                  bool required = false) {
        if (!obj.contains(key)) {
            if (required) fail(path);
            return fallback;
        }
        if (!obj[key].is_number()) {
            fail(path);
            return fallback;
        }
        const double v = obj[key].get<double>();
        if (require_positive && !(v > 0.0)) {
            fail(path);
            return fallback;
        }
        return v;
    }

    long long integer(const json& obj, const char* key, const std::string& path,
                      long long fallback, long long min_value) {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_number_integer()) {
            fail(path);
            return fallback;
        }
        const long long v = obj[key].get<long long>();
        if (v < min_value) {
            fail(path);
            return fallback;
        }
        return v;
    }

    std::string text(const json& obj, const char* key, const std::string& path,
                     const std::string& fallback) {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_string()) {
            fail(path);
            return fallback;
        }
        return obj[key].get<std::string>();
    }

private:
    std::vector<std::string>& errs_;
};

curve::CurvatureSpec parse_curvature(const json& j, const std::string& path,
                                     Check& check) {
    curve::CurvatureSpec spec;
    spec.constant = check.number(j, "constant", path + ".constant", 1.0);
    if (j.contains("modes")) {
        if (!j["modes"].is_array()) {
            check.fail(path + ".modes");
        } else {
            for (std::size_t i = 0; i < j["modes"].size(); ++i) {
                const auto& m = j["modes"][i];
                const std::string mp = path + ".modes[" + std::to_string(i) + "]";
                curve::FourierMode mode;
                mode.n = static_cast<int>(check.integer(m, "n", mp + ".n", 1, 1));
                mode.cos_coeff = check.number(m, "cos", mp + ".cos", 0.0);
                mode.sin_coeff = check.number(m, "sin", mp + ".sin", 0.0);
                spec.modes.push_back(mode);
            }
        }
    }
    return spec;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 1, column = 1;
        locate(text, e.byte > 0 ? e.byte - 1 : 0, line, column);
        throw ParseError("config parse error at line " + std::to_string(line) +
                             ", column " + std::to_string(column) + ": " + e.what(),
                         line, column);
    }

    std::vector<std::string> errs;
    Check check(errs);
    RunConfig cfg;

    if (!j.is_object()) {
        throw ValidationError({"<root>"});
    }

    static const std::set<std::string> known{
        "scenario", "seed",   "threads", "oracle",  "tolerances",
        "output",   "curve_bound", "magnetic", "levels", "spectral"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key)) check.fail(key);
    }

    const std::string scen = check.text(j, "scenario", "scenario", "");
    if (scen == "curve-bound") cfg.scenario = Scenario::CurveBound;
    else if (scen == "magnetic") cfg.scenario = Scenario::Magnetic;
    else if (scen == "levels") cfg.scenario = Scenario::Levels;
    else if (scen == "spectral") cfg.scenario = Scenario::Spectral;
    else check.fail("scenario");

    cfg.seed = static_cast<std::uint64_t>(
        check.integer(j, "seed", "seed", 1, 0));
    cfg.threads = static_cast<unsigned>(check.integer(j, "threads", "threads", 1, 1));
    if (j.contains("oracle")) {
        if (!j["oracle"].is_boolean()) check.fail("oracle");
        else cfg.oracle = j["oracle"].get<bool>();
    }

    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) {
            check.fail("tolerances");
        } else {
            cfg.tolerances.geom =
                check.number(t, "geom", "tolerances.geom", 1e-6, true);
            cfg.tolerances.orbit =
                check.number(t, "orbit", "tolerances.orbit", 1e-10, true);
            cfg.tolerances.cert =
                check.number(t, "cert", "tolerances.cert", 1e-6, true);
        }
    }

    if (j.contains("output")) {
        const auto& o = j["output"];
        if (!o.is_object()) {
            check.fail("output");
        } else {
            cfg.output.directory = check.text(o, "directory", "output.directory", ".");
            cfg.output.basename = check.text(o, "basename", "output.basename", "");
        }
    }

    if (cfg.scenario == Scenario::CurveBound && j.contains("curve_bound")) {
        const auto& c = j["curve_bound"];
        if (c.contains("presets")) {
            for (std::size_t i = 0; i < c["presets"].size(); ++i) {
                const std::string p = c["presets"][i].get<std::string>();
                if (p != "unit-circle" && p != "double-circle")
                    check.fail("curve_bound.presets[" + std::to_string(i) + "]");
                else cfg.curve.presets.push_back(p);
            }
        }
        if (c.contains("curves")) {
            for (std::size_t i = 0; i < c["curves"].size(); ++i) {
                const auto& e = c["curves"][i];
                const std::string path = "curve_bound.curves[" + std::to_string(i) + "]";
                CurveEntry entry;
                entry.label = check.text(e, "label", path + ".label",
                                         "curve" + std::to_string(i));
                entry.speed = check.number(e, "speed", path + ".speed", 1.0, true);
                entry.period = check.number(e, "period", path + ".period", 0.0, true, true);
                if (e.contains("curvature"))
                    entry.curvature = parse_curvature(e["curvature"], path + ".curvature", check);
                if (e.contains("project_closure"))
                    entry.project_closure = e["project_closure"].get<bool>();
                cfg.curve.curves.push_back(std::move(entry));
            }
        }
        cfg.curve.samples_file =
            check.text(c, "samples_file", "curve_bound.samples_file", "");
        cfg.curve.corpus_count = static_cast<int>(
            check.integer(c, "corpus_count", "curve_bound.corpus_count", 0, 0));
        if (c.contains("corpus_k")) {
            cfg.curve.corpus_k.clear();
            for (std::size_t i = 0; i < c["corpus_k"].size(); ++i) {
                const int k = c["corpus_k"][i].get<int>();
                if (k < 1) check.fail("curve_bound.corpus_k[" + std::to_string(i) + "]");
                else cfg.curve.corpus_k.push_back(k);
            }
        }
        cfg.curve.box_corpus_count = static_cast<int>(check.integer(
            c, "box_corpus_count", "curve_bound.box_corpus_count", 0, 0));
    }

    if (cfg.scenario == Scenario::Magnetic) {
        if (!j.contains("magnetic")) {
            check.fail("magnetic");
        } else {
            const auto& m = j["magnetic"];
            if (m.contains("field")) {
                const auto& f = m["field"];
                cfg.magnetic.constant =
                    check.number(f, "constant", "magnetic.field.constant", 1.0);
                if (f.contains("modes")) {
                    for (std::size_t i = 0; i < f["modes"].size(); ++i) {
                        const auto& md = f["modes"][i];
                        const std::string path =
                            "magnetic.field.modes[" + std::to_string(i) + "]";
                        torus::FieldMode mode;
                        mode.m1 = static_cast<int>(
                            check.integer(md, "m1", path + ".m1", 0, -1000));
                        mode.m2 = static_cast<int>(
                            check.integer(md, "m2", path + ".m2", 0, -1000));
                        mode.coeff_cos =
                            check.number(md, "coeff_cos", path + ".coeff_cos", 0.0);
                        mode.coeff_sin =
                            check.number(md, "coeff_sin", path + ".coeff_sin", 0.0);
                        cfg.magnetic.modes.push_back(mode);
                    }
                }
            } else {
                check.fail("magnetic.field");
            }
            if (m.contains("energies")) {
                for (std::size_t i = 0; i < m["energies"].size(); ++i) {
                    const double e = m["energies"][i].get<double>();
                    if (!(e > 0.0))
                        check.fail("magnetic.energies[" + std::to_string(i) + "]");
                    else cfg.magnetic.energies.push_back(e);
                }
            }
            cfg.magnetic.grid_density = static_cast<int>(
                check.integer(m, "grid_density", "magnetic.grid_density", 12, 0));
            if (m.contains("trace")) cfg.magnetic.trace = m["trace"].get<bool>();
        }
    }

    if (cfg.scenario == Scenario::Levels && j.contains("levels")) {
        const auto& l = j["levels"];
        if (l.contains("preset")) {
            const auto& p = l["preset"];
            cfg.levels.use_presets = true;
            cfg.levels.max_h = check.number(p, "max_h", "levels.preset.max_h", 4.0, true);
            cfg.levels.radius = check.number(p, "radius", "levels.preset.radius", 1.0, true);
            cfg.levels.r = check.number(p, "r", "levels.preset.r", 0.5, true);
            cfg.levels.eps = check.number(p, "eps", "levels.preset.eps", 0.05, true);
        }
        cfg.levels.m = static_cast<int>(check.integer(l, "m", "levels.m", 1, 1));
        cfg.levels.n = static_cast<int>(check.integer(l, "n", "levels.n", 1, 1));
        if (l.contains("profile")) {
            const auto& p = l["profile"];
            cfg.levels.use_presets = false;
            cfg.levels.max_value =
                check.number(p, "max_value", "levels.profile.max_value", 0.0);
            cfg.levels.plateau_end =
                check.number(p, "plateau_end", "levels.profile.plateau_end", 0.0);
            if (p.contains("segments")) {
                for (std::size_t i = 0; i < p["segments"].size(); ++i) {
                    const auto& s = p["segments"][i];
                    const std::string path =
                        "levels.profile.segments[" + std::to_string(i) + "]";
                    radial::RadialProfile::Segment seg;
                    seg.width = check.number(s, "width", path + ".width", 0.0, true, true);
                    seg.slope = check.number(s, "slope", path + ".slope", 0.0);
                    cfg.levels.segments.push_back(seg);
                }
            }
            cfg.levels.family = check.text(l, "family", "levels.family", "plus");
            if (cfg.levels.family != "plus" && cfg.levels.family != "zero" &&
                cfg.levels.family != "minus")
                check.fail("levels.family");
        }
        if (l.contains("window")) {
            const auto& w = l["window"];
            cfg.levels.has_window = true;
            cfg.levels.window_a = check.number(w, "a", "levels.window.a", 0.0);
            cfg.levels.window_b = check.number(w, "b", "levels.window.b", 0.0);
            if (!(cfg.levels.window_a < cfg.levels.window_b))
                check.fail("levels.window");
        }
    }

    if (cfg.scenario == Scenario::Spectral && j.contains("spectral")) {
        const auto& s = j["spectral"];
        if (s.contains("presets")) {
            static const std::set<std::string> names{
                "hopf", "torus-trivial", "product-t2-s3", "product-t4-s5",
                "base-s2-s3"};
            for (std::size_t i = 0; i < s["presets"].size(); ++i) {
                const std::string p = s["presets"][i].get<std::string>();
                if (!names.count(p))
                    check.fail("spectral.presets[" + std::to_string(i) + "]");
                else cfg.spectral.presets.push_back(p);
            }
        }
        std::set<std::string> gen_names;
        if (s.contains("generators")) {
            for (std::size_t i = 0; i < s["generators"].size(); ++i) {
                const auto& g = s["generators"][i];
                const std::string path =
                    "spectral.generators[" + std::to_string(i) + "]";
                spectral::Generator gen;
                gen.name = check.text(g, "name", path + ".name", "");
                gen.i = static_cast<int>(check.integer(g, "i", path + ".i", 0, 0));
                gen.j = static_cast<int>(check.integer(g, "j", path + ".j", 0, 0));
                if (gen.name.empty() || gen_names.count(gen.name)) check.fail(path + ".name");
                gen_names.insert(gen.name);
                cfg.spectral.generators.push_back(std::move(gen));
            }
        }
        if (s.contains("boundary")) {
            for (std::size_t i = 0; i < s["boundary"].size(); ++i) {
                const auto& b = s["boundary"][i];
                const std::string path = "spectral.boundary[" + std::to_string(i) + "]";
                const std::string from = check.text(b, "from", path + ".from", "");
                const std::string to = check.text(b, "to", path + ".to", "");
                if (!gen_names.count(from)) check.fail(path + ".from");
                if (!gen_names.count(to)) check.fail(path + ".to");
                cfg.spectral.boundary.emplace_back(from, to);
            }
        }
        cfg.spectral.random_count = static_cast<int>(
            check.integer(s, "random_count", "spectral.random_count", 0, 0));
        cfg.spectral.random_max_generators = static_cast<std::size_t>(check.integer(
            s, "random_max_generators", "spectral.random_max_generators", 40, 4));
        if (s.contains("splitting")) {
            const auto& sp = s["splitting"];
            cfg.spectral.check_splitting = true;
            cfg.spectral.m = static_cast<int>(
                check.integer(sp, "m", "spectral.splitting.m", 1, 1));
            cfg.spectral.n = static_cast<int>(
                check.integer(sp, "n", "spectral.splitting.n", 1, 1));
            if (sp.contains("betti")) {
                for (const auto& b : sp["betti"])
                    cfg.spectral.betti.push_back(b.get<std::size_t>());
            }
        }
    }

    if (!errs.empty()) throw ValidationError(std::move(errs));
    return cfg;
}

std::string emit_config(const RunConfig& cfg) {
    ordered_json j;
    j["scenario"] = scenario_name(cfg.scenario);
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["oracle"] = cfg.oracle;
    j["tolerances"] = {{"geom", cfg.tolerances.geom},
                       {"orbit", cfg.tolerances.orbit},
                       {"cert", cfg.tolerances.cert}};
    j["output"] = {{"directory", cfg.output.directory},
                   {"basename", cfg.output.basename}};

    switch (cfg.scenario) {
        case Scenario::CurveBound: {
            ordered_json c;
            c["presets"] = cfg.curve.presets;
            c["curves"] = ordered_json::array();
            for (const auto& e : cfg.curve.curves) {
                ordered_json entry;
                entry["label"] = e.label;
                entry["speed"] = e.speed;
                entry["period"] = e.period;
                ordered_json curvature;
                curvature["constant"] = e.curvature.constant;
                curvature["modes"] = ordered_json::array();
                for (const auto& m : e.curvature.modes)
                    curvature["modes"].push_back(
                        {{"n", m.n}, {"cos", m.cos_coeff}, {"sin", m.sin_coeff}});
                entry["curvature"] = std::move(curvature);
                entry["project_closure"] = e.project_closure;
                c["curves"].push_back(std::move(entry));
            }
            c["samples_file"] = cfg.curve.samples_file;
            c["corpus_count"] = cfg.curve.corpus_count;
            c["corpus_k"] = cfg.curve.corpus_k;
            c["box_corpus_count"] = cfg.curve.box_corpus_count;
            j["curve_bound"] = std::move(c);
            break;
        }
        case Scenario::Magnetic: {
            ordered_json m;
            ordered_json field;
            field["constant"] = cfg.magnetic.constant;
            field["modes"] = ordered_json::array();
            for (const auto& mode : cfg.magnetic.modes)
                field["modes"].push_back({{"m1", mode.m1},
                                          {"m2", mode.m2},
                                          {"coeff_cos", mode.coeff_cos},
                                          {"coeff_sin", mode.coeff_sin}});
            m["field"] = std::move(field);
            m["energies"] = cfg.magnetic.energies;
            m["grid_density"] = cfg.magnetic.grid_density;
            m["trace"] = cfg.magnetic.trace;
            j["magnetic"] = std::move(m);
            break;
        }
        case Scenario::Levels: {
            ordered_json l;
            if (cfg.levels.use_presets) {
                l["preset"] = {{"max_h", cfg.levels.max_h},
                               {"radius", cfg.levels.radius},
                               {"r", cfg.levels.r},
                               {"eps", cfg.levels.eps}};
            } else {
                ordered_json p;
                p["max_value"] = cfg.levels.max_value;
                p["plateau_end"] = cfg.levels.plateau_end;
                p["segments"] = ordered_json::array();
                for (const auto& seg : cfg.levels.segments)
                    p["segments"].push_back(
                        {{"width", seg.width}, {"slope", seg.slope}});
                l["profile"] = std::move(p);
                l["family"] = cfg.levels.family;
            }
            l["m"] = cfg.levels.m;
            l["n"] = cfg.levels.n;
            if (cfg.levels.has_window)
                l["window"] = {{"a", cfg.levels.window_a}, {"b", cfg.levels.window_b}};
            j["levels"] = std::move(l);
            break;
        }
        case Scenario::Spectral: {
            ordered_json s;
            s["presets"] = cfg.spectral.presets;
            s["generators"] = ordered_json::array();
            for (const auto& g : cfg.spectral.generators)
                s["generators"].push_back({{"name", g.name}, {"i", g.i}, {"j", g.j}});
            s["boundary"] = ordered_json::array();
            for (const auto& [from, to] : cfg.spectral.boundary)
                s["boundary"].push_back({{"from", from}, {"to", to}});
            s["random_count"] = cfg.spectral.random_count;
            s["random_max_generators"] = cfg.spectral.random_max_generators;
            if (cfg.spectral.check_splitting) {
                s["splitting"] = {{"m", cfg.spectral.m},
                                  {"n", cfg.spectral.n},
                                  {"betti", cfg.spectral.betti}};
            }
            j["spectral"] = std::move(s);
            break;
        }
    }
    return j.dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig& config) {
    // The worker count must not show up in the report body: runs that
    // differ only in threads produce byte-identical files.
    RunConfig canonical = config;
    canonical.threads = 1;
    return fnv1a(emit_config(canonical));
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return emit_config(a) == emit_config(b);
}

}  // namespace hz::report
