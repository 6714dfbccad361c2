#include "hz/curve/corpus.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace hz::curve {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Radius of curvature as a function of the tangent angle, with period
// 2 pi k. Frequency-k components are omitted, which is exactly the closure
// condition int rho(theta) e^{i theta} dtheta = 0.
struct RadiusProfile {
    struct Mode {
        int m;
        double amp;
        double phase;
    };
    double base = 1.0;
    int k = 1;
    std::vector<Mode> modes;

    double eval(double theta) const {
        double r = 1.0;
        for (const auto& mode : modes)
            r += mode.amp * std::cos(mode.m * theta / k + mode.phase);
        return base * r;
    }

    double max_value(std::size_t scan = 8192) const {
        double m = 0.0;
        for (std::size_t i = 0; i <= scan; ++i)
            m = std::max(m, eval(kTwoPi * k * static_cast<double>(i) /
                                 static_cast<double>(scan)));
        return m;
    }

    double total_time(double speed, std::size_t n = 16384) const {
        // T = (1/v) int_0^{2 pi k} rho(theta) dtheta, composite Simpson.
        const double span = kTwoPi * k;
        const double h = span / static_cast<double>(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = static_cast<double>(i) * h;
            sum += h / 6.0 * (eval(a) + 4.0 * eval(a + 0.5 * h) + eval(a + h));
        }
        return sum / speed;
    }
};
}  // namespace

PlanarCurve random_closed_curve(std::mt19937_64& rng, int rotation_number,
                                double speed, std::size_t steps) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    RadiusProfile rho;
    rho.k = rotation_number;
    rho.base = 0.5 + unit(rng);

    const int max_m = 3 * rotation_number + 2;
    double budget = 0.55;  // total relative amplitude, keeps rho > 0.45 base
    for (int m = 1; m <= max_m; ++m) {
        if (m == rotation_number) continue;  // closure
        if (unit(rng) < 0.4) continue;
        const double amp = budget * unit(rng) * 0.5;
        budget -= amp;
        rho.modes.push_back({m, amp, kTwoPi * unit(rng)});
        if (budget < 0.02) break;
    }

    const double period = rho.total_time(speed);
    CurveOptions opt;
    opt.steps = steps;
    opt.closure = ClosureMode::Keep;  // closed by construction, keep the tiny gap
    return PlanarCurve::from_angular_rate(
        [&rho, speed](double, double theta) { return speed / rho.eval(theta); },
        speed, period, opt);
}

BoxCurve random_box_curve(std::mt19937_64& rng, int rotation_number) {
    // Nested spiral laps: lap L sweeps the rectangle
    // [Left_L, Right_L] x [Bot_L, Top_L] and successive laps nest strictly.
    // Every winding number of such a path is nonnegative, which is what the
    // positivity of the alternating area formula actually needs: positive
    // sequences with vanishing alternating sums alone admit left-turning
    // paths of negative signed area.
    const int k = rotation_number;
    std::uniform_real_distribution<double> start(-1.0, 1.0);
    std::uniform_real_distribution<double> size(2.0, 6.0);
    std::uniform_real_distribution<double> unit(0.05, 0.45);

    std::vector<double> bot(k), top(k), left(k), right(k);
    bot[0] = start(rng);
    left[0] = start(rng);
    top[0] = bot[0] + size(rng);
    right[0] = left[0] + size(rng);
    for (int l = 1; l < k; ++l) {
        const double h = top[l - 1] - bot[l - 1];
        const double w = right[l - 1] - left[l - 1];
        bot[l] = bot[l - 1] + unit(rng) * h;
        top[l] = top[l - 1] - unit(rng) * h;
        left[l] = left[l - 1] + unit(rng) * w;
        right[l] = right[l - 1] - unit(rng) * w;
    }

    BoxCurve box;
    box.rotation_number = k;
    box.vertical.resize(2 * k);
    box.horizontal.resize(2 * k);
    for (int l = 0; l < k; ++l) {
        box.vertical[2 * l] = top[l] - bot[l];
        box.vertical[2 * l + 1] = top[l] - bot[(l + 1) % k];
        box.horizontal[2 * l] = right[l] - left[l];
        box.horizontal[2 * l + 1] = right[(l + 1) % k] - left[l];
    }
    return box;
}

}  // namespace hz::curve
