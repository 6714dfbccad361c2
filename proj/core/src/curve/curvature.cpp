#include "hz/curve/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hz/roots.hpp"

namespace hz::curve {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double hermite(double y0, double d0, double y1, double d1, double h, double u) {
    const double u2 = u * u;
    const double u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * d1;
}
}  // namespace

double CurvatureSpec::eval(double t, double period) const {
    double value = constant;
    const double base = kTwoPi / period;
    for (const auto& m : modes) {
        const double phase = base * m.n * t;
        value += m.cos_coeff * std::cos(phase) + m.sin_coeff * std::sin(phase);
    }
    return value;
}

std::function<double(double)> CurvatureSpec::as_function(double period) const {
    return [spec = *this, period](double t) { return spec.eval(t, period); };
}

RotationTrace::RotationTrace(std::vector<double> t, std::vector<double> theta,
                             std::vector<double> rate, double period,
                             int rotation_number, double rate_min, double rate_max)
    : t_(std::move(t)),
      theta_(std::move(theta)),
      rate_(std::move(rate)),
      period_(period),
      rotation_number_(rotation_number),
      rate_min_(rate_min),
      rate_max_(rate_max) {}

double RotationTrace::theta_at(double t) const {
    if (t <= t_.front()) return theta_.front();
    if (t >= t_.back()) return theta_.back();
    const double h = t_[1] - t_[0];
    auto i = static_cast<std::size_t>((t - t_.front()) / h);
    i = std::min(i, t_.size() - 2);
    const double u = (t - t_[i]) / h;
    return hermite(theta_[i], rate_[i], theta_[i + 1], rate_[i + 1], h, u);
}

double RotationTrace::crossing_time(double level) const {
    const auto it = std::lower_bound(theta_.begin(), theta_.end(), level);
    if (it == theta_.begin()) return t_.front();
    if (it == theta_.end()) return t_.back();
    const std::size_t hi = static_cast<std::size_t>(it - theta_.begin());
    const double a = t_[hi - 1];
    const double b = t_[hi];
    auto g = [&](double t) { return theta_at(t) - level; };
    return brent(g, a, b, theta_[hi - 1] - level, theta_[hi] - level,
                 1e-15 * std::max(1.0, period_), 1e-10);
}

RotationTrace integrate_rotation(const std::function<double(double)>& K,
                                 double period, const RotationOptions& opt) {
    const std::size_t n = std::max<std::size_t>(opt.steps, 16);
    const double h = period / static_cast<double>(n);

    std::vector<double> t(n + 1), theta(n + 1), rate(n + 1);
    double rate_min = K(0.0);
    double rate_max = rate_min;
    t[0] = 0.0;
    theta[0] = 0.0;
    rate[0] = rate_min;
    for (std::size_t i = 0; i < n; ++i) {
        const double ti = static_cast<double>(i) * h;
        const double km = K(ti + 0.5 * h);
        const double k1 = rate[i];
        const double k2 = K(ti + h);
        // Simpson increment; exact enough that the grid dominates nothing.
        theta[i + 1] = theta[i] + h / 6.0 * (k1 + 4.0 * km + k2);
        t[i + 1] = ti + h;
        rate[i + 1] = k2;
        rate_min = std::min({rate_min, km, k2});
        rate_max = std::max({rate_max, km, k2});
    }

    if (rate_min <= 0.0) {
        throw NonPositiveCurvature("turning rate reaches " +
                                   std::to_string(rate_min) +
                                   "; strictly positive curvature required");
    }

    const double turns = theta[n] / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > opt.integer_tol || rounded < 1.0) {
        throw NonIntegerRotation("theta(T)/2pi = " + std::to_string(turns) +
                                 " is not a positive integer within tolerance");
    }

    return RotationTrace(std::move(t), std::move(theta), std::move(rate), period,
                         static_cast<int>(rounded), rate_min, rate_max);
}

}  // namespace hz::curve
