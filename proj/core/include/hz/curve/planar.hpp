#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hz/curve/curvature.hpp"

namespace hz::curve {

class NotClosed : public Error {
public:
    explicit NotClosed(const std::string& what) : Error(what) {}
};

enum class ClosureMode {
    Strict,   // reject curves whose endpoint gap exceeds the tolerance
    Project,  // subtract the mean velocity defect to force closure
    Keep,     // keep the gap; callers inspect closed()
};

struct CurveOptions {
    std::size_t steps = 16384;
    double integer_tol = 1e-6;
    double geom_tol = 1e-6;
    ClosureMode closure = ClosureMode::Strict;
};

// Constant-speed planar curve with strictly positive turning rate,
// stored on a uniform time grid with node derivatives for Hermite
// evaluation in between.
class PlanarCurve {
public:
    static PlanarCurve from_curvature(const std::function<double(double)>& K,
                                      double speed, double period,
                                      const CurveOptions& opt = {});

    // theta' given as a function of (t, theta); used by generators whose
    // turning rate is naturally a function of the tangent angle.
    static PlanarCurve from_angular_rate(
        const std::function<double(double, double)>& theta_dot, double speed,
        double period, const CurveOptions& opt = {});

    // Equally spaced (t, x, y) samples of a closed curve; tangent angle and
    // turning rate are recovered by finite differences.
    static PlanarCurve from_samples(const std::vector<double>& t,
                                    const std::vector<double>& x,
                                    const std::vector<double>& y,
                                    double geom_tol = 1e-4);

    double period() const { return period_; }
    double speed() const { return speed_; }
    int rotation_number() const { return rotation_number_; }
    double rate_min() const { return rate_min_; }
    double rate_max() const { return rate_max_; }
    double closure_gap() const { return closure_gap_; }
    bool closed(double tol) const { return closure_gap_ <= tol; }
    double max_speed_deviation() const { return speed_deviation_; }

    // Signed area with multiplicity, oint x dy.
    double signed_area() const { return signed_area_; }
    double area() const { return signed_area_ < 0 ? -signed_area_ : signed_area_; }

    double theta_at(double t) const;
    double x_at(double t) const;
    double y_at(double t) const;

    // Times t_j with theta = j pi, j = 1..2k (strictly increasing).
    std::vector<double> horizontal_tangent_times() const;
    // Times tau_j with theta = pi/2 + j pi, j = 0..2k-1.
    std::vector<double> vertical_tangent_times() const;

    const std::vector<double>& grid() const { return t_; }
    const std::vector<double>& x_nodes() const { return x_; }
    const std::vector<double>& y_nodes() const { return y_; }
    const std::vector<double>& theta_nodes() const { return theta_; }

private:
    PlanarCurve() = default;
    void finalize(const CurveOptions& opt, bool enforce_rotation);
    void project_closure();
    double crossing_time(double level) const;

    std::vector<double> t_, theta_, rate_, x_, y_, dx_, dy_;
    double period_ = 0.0;
    double speed_ = 0.0;
    int rotation_number_ = 0;
    double rate_min_ = 0.0, rate_max_ = 0.0;
    double closure_gap_ = 0.0;
    double speed_deviation_ = 0.0;
    double signed_area_ = 0.0;
    double int_x_dt_ = 0.0;   // int x dt over the pass
    double int_t_dy_ = 0.0;   // int t y' dt over the pass
};

}  // namespace hz::curve
