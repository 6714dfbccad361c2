#include "hz/torus/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hz::torus {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

MagneticField::MagneticField(double constant, std::vector<FieldMode> modes)
    : constant_(constant), modes_(std::move(modes)) {
    locate_extrema();
}

bool MagneticField::is_constant() const {
    for (const auto& m : modes_) {
        if (m.coeff_cos != 0.0 || m.coeff_sin != 0.0) return false;
    }
    return true;
}

double MagneticField::value(double q1, double q2) const {
    double f = constant_;
    for (const auto& m : modes_) {
        const double phase = kTwoPi * (m.m1 * q1 + m.m2 * q2);
        f += m.coeff_cos * std::cos(phase) + m.coeff_sin * std::sin(phase);
    }
    return f;
}

void MagneticField::gradient(double q1, double q2, double& g1, double& g2) const {
    g1 = 0.0;
    g2 = 0.0;
    for (const auto& m : modes_) {
        const double phase = kTwoPi * (m.m1 * q1 + m.m2 * q2);
        const double d = kTwoPi * (-m.coeff_cos * std::sin(phase) +
                                   m.coeff_sin * std::cos(phase));
        g1 += m.m1 * d;
        g2 += m.m2 * d;
    }
}

double MagneticField::primitive_q1(double q1, double q2) const {
    double g = constant_ * q1;
    for (const auto& m : modes_) {
        if (m.m1 == 0) {
            const double phase = kTwoPi * m.m2 * q2;
            g += q1 * (m.coeff_cos * std::cos(phase) + m.coeff_sin * std::sin(phase));
        } else {
            const double w = kTwoPi * m.m1;
            const double full = kTwoPi * (m.m1 * q1 + m.m2 * q2);
            const double base = kTwoPi * m.m2 * q2;
            g += m.coeff_cos * (std::sin(full) - std::sin(base)) / w;
            g += m.coeff_sin * (std::cos(base) - std::cos(full)) / w;
        }
    }
    return g;
}

double MagneticField::primitive_q2(double q1, double q2) const {
    double g = constant_ * q2;
    for (const auto& m : modes_) {
        if (m.m2 == 0) {
            const double phase = kTwoPi * m.m1 * q1;
            g += q2 * (m.coeff_cos * std::cos(phase) + m.coeff_sin * std::sin(phase));
        } else {
            const double w = kTwoPi * m.m2;
            const double full = kTwoPi * (m.m1 * q1 + m.m2 * q2);
            const double base = kTwoPi * m.m1 * q1;
            g += m.coeff_cos * (std::sin(full) - std::sin(base)) / w;
            g += m.coeff_sin * (std::cos(base) - std::cos(full)) / w;
        }
    }
    return g;
}

void MagneticField::locate_extrema() {
    constexpr int kGrid = 192;
    double best_min = value(0.0, 0.0), best_max = best_min;
    double at_min[2] = {0.0, 0.0}, at_max[2] = {0.0, 0.0};
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const double q1 = static_cast<double>(i) / kGrid;
            const double q2 = static_cast<double>(j) / kGrid;
            const double f = value(q1, q2);
            if (f < best_min) { best_min = f; at_min[0] = q1; at_min[1] = q2; }
            if (f > best_max) { best_max = f; at_max[0] = q1; at_max[1] = q2; }
        }
    }

    // Compass pattern search with shrinking radius; 60 halvings from the
    // grid spacing put the bracketing error far below 1e-8 relative.
    auto refine = [this](double q[2], double sign) {
        double radius = 1.0 / kGrid;
        double best = sign * value(q[0], q[1]);
        for (int iter = 0; iter < 60; ++iter) {
            bool improved = false;
            static constexpr int dir[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                              {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
            for (const auto& d : dir) {
                const double c1 = q[0] + radius * d[0];
                const double c2 = q[1] + radius * d[1];
                const double f = sign * value(c1, c2);
                if (f > best) {
                    best = f;
                    q[0] = c1;
                    q[1] = c2;
                    improved = true;
                }
            }
            if (!improved) radius *= 0.5;
        }
        return sign * best;
    };

    extrema_.min = refine(at_min, -1.0);
    extrema_.max = refine(at_max, +1.0);
    extrema_.argmin[0] = at_min[0] - std::floor(at_min[0]);
    extrema_.argmin[1] = at_min[1] - std::floor(at_min[1]);
    extrema_.argmax[0] = at_max[0] - std::floor(at_max[0]);
    extrema_.argmax[1] = at_max[1] - std::floor(at_max[1]);

    if (extrema_.min <= 0.0) {
        throw NondegeneracyViolation("field minimum " + std::to_string(extrema_.min) +
                                     " is not strictly positive");
    }
    extrema_.variance_ratio = extrema_.max / extrema_.min;
}

}  // namespace hz::torus
