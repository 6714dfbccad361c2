#include "hz/radial/levels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hz::radial {

namespace {
constexpr double kPi = std::numbers::pi;

// Real roots of a + b u + c u^2 = target inside [0, width].
void quadratic_roots(double a, double b, double c, double target, double width,
                     std::vector<double>& out) {
    const double a0 = a - target;
    if (c == 0.0) {
        if (b == 0.0) return;  // constant piece, handled by the caller
        const double u = -a0 / b;
        if (u >= 0.0 && u <= width) out.push_back(u);
        return;
    }
    const double disc = b * b - 4.0 * c * a0;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    // Numerically stable pair.
    const double q = -0.5 * (b + std::copysign(sq, b));
    double u1 = q / c;
    double u2 = (q != 0.0) ? a0 / q : -b / c - u1;
    if (u1 > u2) std::swap(u1, u2);
    for (double u : {u1, u2}) {
        if (u >= 0.0 && u <= width) out.push_back(u);
    }
}
}  // namespace

std::vector<PeriodicLevel> enumerate_periodic_levels(const RadialProfile& profile) {
    std::vector<PeriodicLevel> levels;
    const double sup = profile.sup_abs_slope();
    const int k_max = static_cast<int>(std::floor(sup / kPi + 1e-12));
    if (k_max < 1) return levels;

    for (int k = 1; k <= k_max; ++k) {
        const double target = -k * kPi;
        std::vector<double> roots;
        for (const auto& pc : profile.pieces()) {
            if (pc.constant) {
                if (pc.a == target)
                    throw ResonantSlope("constant slope equals -" +
                                        std::to_string(k) + " pi");
                continue;
            }
            std::vector<double> us;
            quadratic_roots(pc.a, pc.b, pc.c, target, pc.s1 - pc.s0, us);
            for (double u : us) roots.push_back(pc.s0 + u);
        }
        std::sort(roots.begin(), roots.end());
        const double join_tol = 1e-11 * std::max(1.0, profile.radius2());
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (i > 0 && roots[i] - roots[i - 1] < join_tol) continue;
            PeriodicLevel lvl;
            lvl.level = roots[i];
            lvl.multiplicity = k;
            const double curv = profile.curvature(roots[i]);
            lvl.branch = curv < 0.0 ? Branch::C : Branch::D;
            lvl.value = profile.value(roots[i]);
            lvl.action = lvl.value + k * kPi * roots[i];
            lvl.residual = std::abs(profile.slope(roots[i]) - target);
            levels.push_back(lvl);
        }
    }

    std::sort(levels.begin(), levels.end(), [](const PeriodicLevel& x,
                                               const PeriodicLevel& y) {
        if (x.branch != y.branch) return x.branch == Branch::C;
        if (x.multiplicity != y.multiplicity) return x.multiplicity < y.multiplicity;
        return x.level < y.level;
    });
    return levels;
}

int relative_index(Branch branch, int k, const DimensionData& dims, Family family) {
    const int m = dims.m;
    const int n = dims.n;
    switch (family) {
        case Family::Plus:
            return branch == Branch::C ? (2 * k - 1) * n - m + 1
                                       : (2 * k - 1) * n - m;
        case Family::Zero:
        case Family::Minus:
            return branch == Branch::C ? (2 * k - 1) * (m + n) + 1
                                       : (2 * k - 1) * (m + n);
    }
    return 0;
}

ActionWindow choose_window(double max_h, double max_g_minus, double max_g_plus,
                           double r, double radius) {
    if (!(r < radius))
        throw WindowInfeasible("violated: r < R");
    if (!(max_g_minus < max_h))
        throw WindowInfeasible("violated: max(G-) < max(H)");
    if (!(max_h < max_g_plus))
        throw WindowInfeasible("violated: max(H) < max(G+)");
    if (!(max_h > kPi * radius * radius))
        throw HypothesisViolation("violated: max(H) > pi R^2");

    const double lo_a = max_h;
    const double hi_a = max_g_minus + kPi * r * r;
    if (!(lo_a < hi_a))
        throw WindowInfeasible("violated: max(H) < max(G-) + pi r^2");

    const double lo_b = max_g_plus + kPi * radius * radius;
    const double hi_b = max_g_plus + 2.0 * kPi * radius * radius;
    if (!(hi_a < lo_b))
        throw WindowInfeasible("violated: max(G-) + pi r^2 < max(G+) + pi R^2");

    return {0.5 * (lo_a + hi_a), 0.5 * (lo_b + hi_b)};
}

std::vector<PeriodicLevel> classify_levels(std::vector<PeriodicLevel> levels,
                                           const ActionWindow& window,
                                           const DimensionData& dims,
                                           Family family) {
    for (auto& lvl : levels) {
        lvl.relative_index = relative_index(lvl.branch, lvl.multiplicity, dims, family);
        if (lvl.action <= window.a) lvl.window = WindowClass::Below;
        else if (lvl.action >= window.b) lvl.window = WindowClass::Above;
        else lvl.window = WindowClass::InWindow;
    }
    return levels;
}

ExclusionReport verify_window_exclusions(const std::vector<PeriodicLevel>& levels,
                                         Family family) {
    ExclusionReport report;
    report.d1_outside = true;
    report.high_c_outside = true;
    report.c1_inside = false;
    bool saw_d1 = false;
    for (const auto& lvl : levels) {
        if (lvl.branch == Branch::D && lvl.multiplicity == 1) {
            saw_d1 = true;
            if (lvl.window == WindowClass::InWindow) report.d1_outside = false;
        }
        if (lvl.branch == Branch::C && lvl.multiplicity >= 2 &&
            lvl.window == WindowClass::InWindow)
            report.high_c_outside = false;
        if (lvl.branch == Branch::C && lvl.multiplicity == 1 &&
            lvl.window == WindowClass::InWindow)
            report.c1_inside = true;
    }
    report.d1_outside = report.d1_outside && saw_d1;
    report.pass = family == Family::Minus
                      ? report.d1_outside
                      : (report.d1_outside && report.high_c_outside &&
                         report.c1_inside);
    return report;
}

}  // namespace hz::radial
