#pragma once

#include <string>
#include <vector>

#include "hz/errors.hpp"

namespace hz::radial {

class InfeasibleWitness : public Error {
public:
    explicit InfeasibleWitness(const std::string& what) : Error(what) {}
};

class ResonantSlope : public Error {
public:
    explicit ResonantSlope(const std::string& what) : Error(what) {}
};

class InvalidProfile : public Error {
public:
    explicit InvalidProfile(const std::string& what) : Error(what) {}
};

// Nonincreasing C^2 piecewise-polynomial profile alpha on [0, R^2] with
// alpha == max on [0, plateau_end], alpha(R^2) = 0, and alpha'' != 0
// wherever the slope is nonconstant. The slope is stored per piece as a
// quadratic in the local coordinate, so slope extrema and the roots of
// alpha'(s) = -k pi have closed forms.
class RadialProfile {
public:
    struct SlopePiece {
        double s0 = 0.0, s1 = 0.0;  // interval [s0, s1]
        double a = 0.0, b = 0.0, c = 0.0;  // alpha'(s) = a + b u + c u^2, u = s - s0
        bool constant = false;             // plateau or constant-slope piece

        double slope(double s) const;
        double curvature(double s) const;  // alpha''
    };

    RadialProfile() = default;  // the zero profile on [0, 0]

    // Builder input: a plateau [0, plateau_end] followed by slope segments.
    // A segment whose target differs from the running slope ramps to it
    // through a quadratic pair; a segment with the same target holds it.
    struct Segment {
        double width = 0.0;
        double slope = 0.0;  // target slope at the end of the segment
    };

    static RadialProfile from_segments(double max_value, double plateau_end,
                                       const std::vector<Segment>& segments);

    // Plateau / ramp / constant-slope / ramp geometry with the slope level
    // chosen so alpha(R^2) = 0 exactly. Widths are the two ramp widths.
    static RadialProfile make_model(double max_value, double radius2,
                                    double plateau_end, double ramp_down,
                                    double ramp_up);

    double radius2() const { return radius2_; }
    double plateau_end() const { return plateau_end_; }
    double max_value() const { return max_value_; }

    double value(double s) const;       // alpha(s), extends by 0 beyond R^2
    double slope(double s) const;       // alpha'(s)
    double curvature(double s) const;   // alpha''(s)
    double sup_abs_slope() const;       // closed-form per-piece extrema

    const std::vector<SlopePiece>& pieces() const { return pieces_; }
    const std::vector<double>& piece_values() const { return values_; }

private:
    friend RadialProfile capacity_witness(double, double);
    void validate() const;

    std::vector<SlopePiece> pieces_;
    std::vector<double> values_;  // alpha at each piece start
    double radius2_ = 0.0;
    double plateau_end_ = 0.0;
    double max_value_ = 0.0;
};

struct AdmissibilityReport {
    bool admissible = false;
    double sup_slope = 0.0;  // sup |alpha'|
};

// A profile is admissible iff sup|alpha'| < pi: the flow on the level s
// has minimal period pi/|alpha'(s)|, which exceeds 1 exactly then.
AdmissibilityReport admissibility_check(const RadialProfile& profile);

// Smooth bump with max = pi R^2 - eps, support in [0, R^2], sup|slope| < pi.
// Feasible for every 0 < eps < pi R^2.
RadialProfile capacity_witness(double radius, double eps);

// Block rotation by angle 2t applied to z in R^{2n}: the flow of ||z||^2
// for the standard symplectic structure, periodic with period pi.
std::vector<double> hopf_flow(const std::vector<double>& z0, double t);

}  // namespace hz::radial
