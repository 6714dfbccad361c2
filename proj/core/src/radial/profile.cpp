#include "hz/radial/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hz::radial {

namespace {
constexpr double kPi = std::numbers::pi;
}

double RadialProfile::SlopePiece::slope(double s) const {
    const double u = s - s0;
    return a + u * (b + c * u);
}

double RadialProfile::SlopePiece::curvature(double s) const {
    const double u = s - s0;
    return b + 2.0 * c * u;
}

RadialProfile RadialProfile::from_segments(double max_value, double plateau_end,
                                           const std::vector<Segment>& segments) {
    if (max_value < 0.0) throw InvalidProfile("max value must be nonnegative");
    if (plateau_end < 0.0) throw InvalidProfile("plateau end must be nonnegative");

    RadialProfile p;
    p.max_value_ = max_value;
    p.plateau_end_ = plateau_end;

    double s = 0.0;
    double slope = 0.0;
    if (plateau_end > 0.0) {
        p.pieces_.push_back({0.0, plateau_end, 0.0, 0.0, 0.0, true});
        s = plateau_end;
    }
    for (const auto& seg : segments) {
        if (seg.width <= 0.0) throw InvalidProfile("segment width must be positive");
        const double target = seg.slope;
        if (target == slope) {
            p.pieces_.push_back({s, s + seg.width, slope, 0.0, 0.0, true});
        } else {
            // C^1 quadratic pair taking the slope from `slope` to `target`.
            const double w = seg.width;
            const double d = target - slope;
            p.pieces_.push_back(
                {s, s + 0.5 * w, slope, 0.0, 2.0 * d / (w * w), false});
            p.pieces_.push_back({s + 0.5 * w, s + w, slope + 0.5 * d,
                                 2.0 * d / w, -2.0 * d / (w * w), false});
        }
        s += seg.width;
        slope = target;
    }
    p.radius2_ = s;

    // Integrate the slope for the piece-start values of alpha.
    p.values_.resize(p.pieces_.size() + 1);
    p.values_[0] = max_value;
    for (std::size_t i = 0; i < p.pieces_.size(); ++i) {
        const auto& pc = p.pieces_[i];
        const double w = pc.s1 - pc.s0;
        p.values_[i + 1] =
            p.values_[i] + w * (pc.a + w * (pc.b / 2.0 + w * pc.c / 3.0));
    }
    p.validate();
    return p;
}

RadialProfile RadialProfile::make_model(double max_value, double radius2,
                                        double plateau_end, double ramp_down,
                                        double ramp_up) {
    if (max_value <= 0.0) throw InvalidProfile("max value must be positive");
    const double body = radius2 - plateau_end - ramp_down - ramp_up;
    if (plateau_end <= 0.0 || ramp_down <= 0.0 || ramp_up <= 0.0 || body <= 0.0) {
        throw InvalidProfile("model geometry does not fit in [0, R^2]");
    }
    // alpha(R^2) = 0 fixes the constant-slope level through the effective
    // width (ramps count half).
    const double effective = body + 0.5 * (ramp_down + ramp_up);
    const double sigma = max_value / effective;
    return from_segments(max_value, plateau_end,
                         {{ramp_down, -sigma}, {body, -sigma}, {ramp_up, 0.0}});
}

void RadialProfile::validate() const {
    constexpr double kResonanceMargin = 1e-6 * kPi;
    double prev_end = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& pc = pieces_[i];
        if (i > 0 && std::abs(pc.s0 - prev_end) > 1e-12 * std::max(1.0, radius2_))
            throw InvalidProfile("slope pieces are not contiguous");
        prev_end = pc.s1;
        // Nonincreasing profile: the slope never becomes positive.
        const double tol = 1e-10 * std::max(1.0, std::abs(max_value_));
        if (pc.slope(pc.s0) > tol || pc.slope(pc.s1) > tol)
            throw InvalidProfile("profile slope must stay nonpositive");
        if (pc.constant && pc.a != 0.0) {
            const double ratio = -pc.a / kPi;
            if (std::abs(ratio - std::round(ratio)) * kPi < kResonanceMargin)
                throw ResonantSlope("constant slope " + std::to_string(pc.a) +
                                    " is within margin of an integer multiple of pi");
        }
    }
    if (!pieces_.empty()) {
        const double end_value = values_.back();
        if (std::abs(end_value) > 1e-9 * std::max(1.0, max_value_))
            throw InvalidProfile("profile does not reach zero at R^2");
    }
}

namespace {
std::size_t piece_index(const std::vector<RadialProfile::SlopePiece>& pieces,
                        double s) {
    // Binary search by piece start; pieces are contiguous.
    std::size_t lo = 0, hi = pieces.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi + 1) / 2;
        if (pieces[mid].s0 <= s) lo = mid; else hi = mid - 1;
    }
    return lo;
}
}  // namespace

double RadialProfile::value(double s) const {
    if (pieces_.empty()) return 0.0;
    if (s <= 0.0) return max_value_;
    if (s >= radius2_) return 0.0;
    const std::size_t i = piece_index(pieces_, s);
    const auto& pc = pieces_[i];
    const double u = s - pc.s0;
    return values_[i] + u * (pc.a + u * (pc.b / 2.0 + u * pc.c / 3.0));
}

double RadialProfile::slope(double s) const {
    if (pieces_.empty() || s < 0.0 || s > radius2_) return 0.0;
    return pieces_[piece_index(pieces_, s)].slope(s);
}

double RadialProfile::curvature(double s) const {
    if (pieces_.empty() || s < 0.0 || s > radius2_) return 0.0;
    return pieces_[piece_index(pieces_, s)].curvature(s);
}

double RadialProfile::sup_abs_slope() const {
    double sup = 0.0;
    for (const auto& pc : pieces_) {
        sup = std::max({sup, std::abs(pc.slope(pc.s0)), std::abs(pc.slope(pc.s1))});
        if (pc.c != 0.0) {
            const double u_star = -pc.b / (2.0 * pc.c);
            const double s_star = pc.s0 + u_star;
            if (s_star > pc.s0 && s_star < pc.s1)
                sup = std::max(sup, std::abs(pc.slope(s_star)));
        }
    }
    return sup;
}

AdmissibilityReport admissibility_check(const RadialProfile& profile) {
    AdmissibilityReport report;
    report.sup_slope = profile.sup_abs_slope();
    report.admissible = report.sup_slope < kPi;
    return report;
}

RadialProfile capacity_witness(double radius, double eps) {
    const double r2 = radius * radius;
    const double height = kPi * r2 - eps;
    if (eps <= 0.0 || height <= 0.0) {
        throw InfeasibleWitness("need 0 < eps < pi R^2, got eps = " +
                                std::to_string(eps));
    }
    // delta < eps/(2 pi) makes the mean slope, and with it the sup slope,
    // strictly smaller than pi.
    const double delta = std::min(eps / (4.0 * kPi), r2 / 8.0);
    RadialProfile profile = RadialProfile::make_model(height, r2, delta, delta, delta);
    const auto report = admissibility_check(profile);
    if (!report.admissible) {
        throw InfeasibleWitness("constructed witness has sup|slope| = " +
                                std::to_string(report.sup_slope));
    }
    return profile;
}

std::vector<double> hopf_flow(const std::vector<double>& z0, double t) {
    if (z0.size() % 2 != 0) throw Error("hopf_flow needs an even-dimensional point");
    const double c = std::cos(2.0 * t);
    const double s = std::sin(2.0 * t);
    std::vector<double> z(z0.size());
    for (std::size_t i = 0; i < z0.size(); i += 2) {
        z[i] = c * z0[i] - s * z0[i + 1];
        z[i + 1] = s * z0[i] + c * z0[i + 1];
    }
    return z;
}

}  // namespace hz::radial
