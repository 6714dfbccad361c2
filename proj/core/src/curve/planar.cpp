#include "hz/curve/planar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hz/roots.hpp"

namespace hz::curve {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double hermite(double y0, double d0, double y1, double d1, double h, double u) {
    const double u2 = u * u;
    const double u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * d1;
}

// Derivative of the Hermite cubic, used for Simpson midpoints.
double hermite_deriv(double y0, double d0, double y1, double d1, double h, double u) {
    const double u2 = u * u;
    return ((6 * u2 - 6 * u) * y0 + (-6 * u2 + 6 * u) * y1) / h +
           (3 * u2 - 4 * u + 1) * d0 + (3 * u2 - 2 * u) * d1;
}

double interp(const std::vector<double>& t, const std::vector<double>& y,
              const std::vector<double>& dy, double at) {
    if (at <= t.front()) return y.front();
    if (at >= t.back()) return y.back();
    const double h = t[1] - t[0];
    auto i = static_cast<std::size_t>((at - t.front()) / h);
    i = std::min(i, t.size() - 2);
    return hermite(y[i], dy[i], y[i + 1], dy[i + 1], h, (at - t[i]) / h);
}
}  // namespace

PlanarCurve PlanarCurve::from_curvature(const std::function<double(double)>& K,
                                        double speed, double period,
                                        const CurveOptions& opt) {
    return from_angular_rate([&K](double t, double) { return K(t); }, speed,
                             period, opt);
}

PlanarCurve PlanarCurve::from_angular_rate(
    const std::function<double(double, double)>& theta_dot, double speed,
    double period, const CurveOptions& opt) {
    const std::size_t n = std::max<std::size_t>(opt.steps, 16);
    const double h = period / static_cast<double>(n);

    PlanarCurve c;
    c.period_ = period;
    c.speed_ = speed;
    c.t_.resize(n + 1);
    c.theta_.resize(n + 1);
    c.rate_.resize(n + 1);
    c.x_.resize(n + 1);
    c.y_.resize(n + 1);
    c.dx_.resize(n + 1);
    c.dy_.resize(n + 1);

    // Classic RK4 on (theta, x, y) plus three running integrals:
    //   S   = oint x dy          (signed area with multiplicity)
    //   Ix  = int x dt, Ity = int t y' dt   (closure-projection corrections)
    double theta = 0.0, x = 0.0, y = 0.0, S = 0.0, Ix = 0.0, Ity = 0.0;
    double rmin = theta_dot(0.0, 0.0), rmax = rmin;
    auto store = [&](std::size_t i, double ti) {
        const double rate = theta_dot(ti, theta);
        c.t_[i] = ti;
        c.theta_[i] = theta;
        c.rate_[i] = rate;
        c.x_[i] = x;
        c.y_[i] = y;
        c.dx_[i] = speed * std::cos(theta);
        c.dy_[i] = speed * std::sin(theta);
        rmin = std::min(rmin, rate);
        rmax = std::max(rmax, rate);
    };
    store(0, 0.0);
    struct D {
        double th, x, y, s, ix, ity;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double ti = static_cast<double>(i) * h;
        auto f = [&](double t, double th, double xx) {
            D d;
            d.th = theta_dot(t, th);
            d.x = speed * std::cos(th);
            d.y = speed * std::sin(th);
            d.s = xx * d.y;
            d.ix = xx;
            d.ity = t * d.y;
            return d;
        };
        const D k1 = f(ti, theta, x);
        const D k2 = f(ti + 0.5 * h, theta + 0.5 * h * k1.th, x + 0.5 * h * k1.x);
        const D k3 = f(ti + 0.5 * h, theta + 0.5 * h * k2.th, x + 0.5 * h * k2.x);
        const D k4 = f(ti + h, theta + h * k3.th, x + h * k3.x);
        theta += h / 6.0 * (k1.th + 2 * k2.th + 2 * k3.th + k4.th);
        x += h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
        y += h / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
        S += h / 6.0 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s);
        Ix += h / 6.0 * (k1.ix + 2 * k2.ix + 2 * k3.ix + k4.ix);
        Ity += h / 6.0 * (k1.ity + 2 * k2.ity + 2 * k3.ity + k4.ity);
        rmin = std::min(rmin, theta_dot(ti + 0.5 * h, c.theta_[i] + 0.5 * h * k1.th));
        store(i + 1, ti + h);
    }
    c.signed_area_ = S;
    c.int_x_dt_ = Ix;
    c.int_t_dy_ = Ity;
    c.rate_min_ = rmin;
    c.rate_max_ = rmax;
    c.finalize(opt, /*enforce_rotation=*/true);
    return c;
}

PlanarCurve PlanarCurve::from_samples(const std::vector<double>& t,
                                      const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      double geom_tol) {
    if (t.size() < 8 || t.size() != x.size() || t.size() != y.size()) {
        throw Error("sampled curve needs >= 8 rows of equal-length columns");
    }
    const std::size_t n = t.size() - 1;
    const double h = t[1] - t[0];
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (std::abs((t[i + 1] - t[i]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw Error("sampled curve must use a constant time step");
        }
    }

    PlanarCurve c;
    c.t_ = t;
    c.x_ = x;
    c.y_ = y;
    c.period_ = t.back() - t.front();
    c.dx_.resize(n + 1);
    c.dy_.resize(n + 1);

    // Central differences, wrapping across the seam; the endpoint gap is
    // small for admissible inputs, so periodic wrapping is appropriate.
    auto wrap = [&](std::size_t i) { return i % n; };
    for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t ip = wrap(i + 1);
        const std::size_t im = wrap(i + n - 1);
        c.dx_[i] = (x[ip] - x[im]) / (2 * h);
        c.dy_[i] = (y[ip] - y[im]) / (2 * h);
    }

    double speed_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        speed_sum += std::hypot(c.dx_[i], c.dy_[i]);
    c.speed_ = speed_sum / static_cast<double>(n);

    double deviation = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        deviation = std::max(deviation,
                             std::abs(std::hypot(c.dx_[i], c.dy_[i]) - c.speed_));
    c.speed_deviation_ = deviation;
    if (deviation > 10.0 * geom_tol * std::max(1.0, c.speed_)) {
        throw Error("sampled curve is not constant-speed: deviation " +
                    std::to_string(deviation));
    }

    c.theta_.resize(n + 1);
    c.theta_[0] = std::atan2(c.dy_[0], c.dx_[0]);
    for (std::size_t i = 1; i <= n; ++i) {
        double th = std::atan2(c.dy_[i], c.dx_[i]);
        const double prev = c.theta_[i - 1];
        while (th < prev - kPi) th += kTwoPi;
        while (th > prev + kPi) th -= kTwoPi;
        c.theta_[i] = th;
    }
    const double theta0 = c.theta_[0];
    for (auto& th : c.theta_) th -= theta0;

    c.rate_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t ip = std::min(i + 1, n);
        const std::size_t im = (i == 0) ? 0 : i - 1;
        c.rate_[i] =
            (c.theta_[ip] - c.theta_[im]) / (static_cast<double>(ip - im) * h);
    }
    c.rate_min_ = *std::min_element(c.rate_.begin(), c.rate_.end());
    c.rate_max_ = *std::max_element(c.rate_.begin(), c.rate_.end());

    // Composite Simpson for oint x dy with Hermite midpoint values.
    double S = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xm = hermite(x[i], c.dx_[i], x[i + 1], c.dx_[i + 1], h, 0.5);
        const double dym = hermite_deriv(y[i], c.dy_[i], y[i + 1], c.dy_[i + 1], h, 0.5);
        S += h / 6.0 * (x[i] * c.dy_[i] + 4.0 * xm * dym + x[i + 1] * c.dy_[i + 1]);
    }
    c.signed_area_ = S;

    CurveOptions opt;
    opt.geom_tol = geom_tol;
    opt.closure = ClosureMode::Strict;
    c.finalize(opt, /*enforce_rotation=*/true);
    return c;
}

void PlanarCurve::finalize(const CurveOptions& opt, bool enforce_rotation) {
    if (rate_min_ <= 0.0) {
        throw NonPositiveCurvature("turning rate reaches " +
                                   std::to_string(rate_min_) +
                                   "; strictly positive curvature required");
    }
    const double turns = theta_.back() / kTwoPi;
    const double rounded = std::round(turns);
    if (enforce_rotation &&
        (std::abs(turns - rounded) > opt.integer_tol || rounded < 1.0)) {
        throw NonIntegerRotation("theta(T)/2pi = " + std::to_string(turns) +
                                 " is not a positive integer within tolerance");
    }
    rotation_number_ = static_cast<int>(rounded);

    closure_gap_ = std::hypot(x_.back() - x_.front(), y_.back() - y_.front());

    if (closure_gap_ > opt.geom_tol) {
        switch (opt.closure) {
            case ClosureMode::Strict:
                throw NotClosed("endpoint gap " + std::to_string(closure_gap_) +
                                " exceeds tolerance " + std::to_string(opt.geom_tol));
            case ClosureMode::Project:
                project_closure();
                break;
            case ClosureMode::Keep:
                break;
        }
    }
}

void PlanarCurve::project_closure() {
    // Subtract the mean velocity defect; this is the least-squares closure
    // correction among constant velocity shifts. The signed area transforms
    // as S -> S - b Ix - a Ity + a b T^2/2 for x -> x - a t, y -> y - b t.
    const double gx = x_.back() - x_.front();
    const double gy = y_.back() - y_.front();
    const double T = period_;
    const double a = gx / T;
    const double b = gy / T;
    for (std::size_t i = 0; i < t_.size(); ++i) {
        x_[i] -= a * t_[i];
        y_[i] -= b * t_[i];
        dx_[i] -= a;
        dy_[i] -= b;
    }
    signed_area_ += -b * int_x_dt_ - a * int_t_dy_ + a * b * T * T / 2.0;
    speed_deviation_ = std::hypot(gx, gy) / T;
    closure_gap_ = std::hypot(x_.back() - x_.front(), y_.back() - y_.front());
}

double PlanarCurve::theta_at(double t) const { return interp(t_, theta_, rate_, t); }
double PlanarCurve::x_at(double t) const { return interp(t_, x_, dx_, t); }
double PlanarCurve::y_at(double t) const { return interp(t_, y_, dy_, t); }

double PlanarCurve::crossing_time(double level) const {
    const auto it = std::lower_bound(theta_.begin(), theta_.end(), level);
    if (it == theta_.begin()) return t_.front();
    if (it == theta_.end()) return t_.back();
    const std::size_t hi = static_cast<std::size_t>(it - theta_.begin());
    auto g = [&](double t) { return theta_at(t) - level; };
    return brent(g, t_[hi - 1], t_[hi], theta_[hi - 1] - level, theta_[hi] - level,
                 1e-15 * std::max(1.0, period_), 1e-10);
}

std::vector<double> PlanarCurve::horizontal_tangent_times() const {
    std::vector<double> times;
    times.reserve(2 * rotation_number_);
    for (int j = 1; j <= 2 * rotation_number_; ++j)
        times.push_back(crossing_time(j * kPi));
    return times;
}

std::vector<double> PlanarCurve::vertical_tangent_times() const {
    std::vector<double> times;
    times.reserve(2 * rotation_number_);
    for (int j = 0; j < 2 * rotation_number_; ++j)
        times.push_back(crossing_time(kPi / 2 + j * kPi));
    return times;
}

}  // namespace hz::curve
