#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hz/curve/curvature.hpp"
#include "hz/radial/profile.hpp"
#include "hz/spectral/complex.hpp"
#include "hz/torus/field.hpp"

namespace hz::report {

// Malformed config text; carries 1-based line/column of the parse failure.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

// Well-formed config that fails validation; every offending field is
// collected, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> fields);
    const std::vector<std::string>& fields() const { return fields_; }

private:
    std::vector<std::string> fields_;
};

enum class Scenario { CurveBound, Magnetic, Levels, Spectral };

std::string scenario_name(Scenario s);

struct ToleranceSet {
    double geom = 1e-6;     // geometric checks (areas, closure)
    double orbit = 1e-10;   // fixed-point residuals
    double cert = 1e-6;     // certificate slack
};

struct OutputSpec {
    std::string directory = ".";
    std::string basename;  // defaults to the scenario name
};

struct CurveEntry {
    std::string label;
    double speed = 1.0;
    double period = 0.0;
    curve::CurvatureSpec curvature;
    bool project_closure = false;
};

struct CurveBoundConfig {
    std::vector<std::string> presets;  // "unit-circle", "double-circle"
    std::vector<CurveEntry> curves;
    std::string samples_file;  // whitespace-separated t x y columns
    int corpus_count = 0;
    std::vector<int> corpus_k = {1, 2, 3};
    int box_corpus_count = 0;
};

struct MagneticConfig {
    double constant = 1.0;
    std::vector<torus::FieldMode> modes;
    std::vector<double> energies;
    int grid_density = 12;
    bool trace = false;
};

struct LevelsConfig {
    bool use_presets = true;
    // Preset parameters (maxH, R, r, eps): maxG+ = maxH + eps,
    // maxG- = maxH - eps.
    double max_h = 4.0;
    double radius = 1.0;
    double r = 0.5;
    double eps = 0.05;
    int m = 1;
    int n = 1;
    // Explicit profile (use_presets = false).
    double max_value = 0.0;
    double plateau_end = 0.0;
    std::vector<radial::RadialProfile::Segment> segments;
    std::string family = "plus";
    bool has_window = false;
    double window_a = 0.0;
    double window_b = 0.0;
};

struct SpectralConfig {
    std::vector<std::string> presets;  // see scenarios for the catalogue
    std::vector<spectral::Generator> generators;
    std::vector<std::pair<std::string, std::string>> boundary;  // by name
    int random_count = 0;
    std::size_t random_max_generators = 40;
    bool check_splitting = false;
    int m = 1;
    int n = 1;
    std::vector<std::size_t> betti;
};

struct RunConfig {
    Scenario scenario = Scenario::CurveBound;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool oracle = false;
    ToleranceSet tolerances;
    OutputSpec output;
    CurveBoundConfig curve;
    MagneticConfig magnetic;
    LevelsConfig levels;
    SpectralConfig spectral;
};

// Parses and fully validates a JSON config; throws ParseError for malformed
// text and ValidationError (all offending fields) for bad content.
RunConfig parse_config(const std::string& text);

// Canonical serialization; parse(emit(c)) == c and the config hash is the
// FNV-1a of this string.
std::string emit_config(const RunConfig& config);

std::uint64_t config_hash(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace hz::report
