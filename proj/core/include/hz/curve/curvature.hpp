#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hz/errors.hpp"

namespace hz::curve {

class NonPositiveCurvature : public Error {
public:
    explicit NonPositiveCurvature(const std::string& what) : Error(what) {}
};

class NonIntegerRotation : public Error {
public:
    explicit NonIntegerRotation(const std::string& what) : Error(what) {}
};

// Turning-rate profile given as a finite Fourier series on [0, period]:
// K(t) = constant + sum_n (cos_coeff_n cos(2 pi n t / period)
//                        + sin_coeff_n sin(2 pi n t / period)).
struct FourierMode {
    int n = 1;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

struct CurvatureSpec {
    double constant = 1.0;
    std::vector<FourierMode> modes;

    double eval(double t, double period) const;
    std::function<double(double)> as_function(double period) const;
};

struct RotationOptions {
    std::size_t steps = 16384;     // uniform integration grid
    double integer_tol = 1e-6;     // |theta(T)/2pi - round| tolerance
};

// Solution of theta' = K(t), theta(0) = 0 on a uniform grid, with Hermite
// dense output. K must stay strictly positive, so theta is strictly
// increasing and every level is crossed exactly once.
class RotationTrace {
public:
    RotationTrace(std::vector<double> t, std::vector<double> theta,
                  std::vector<double> rate, double period, int rotation_number,
                  double rate_min, double rate_max);

    double period() const { return period_; }
    int rotation_number() const { return rotation_number_; }
    double theta_end() const { return theta_.back(); }
    double rate_min() const { return rate_min_; }
    double rate_max() const { return rate_max_; }

    const std::vector<double>& grid() const { return t_; }
    const std::vector<double>& theta_nodes() const { return theta_; }
    const std::vector<double>& rate_nodes() const { return rate_; }

    double theta_at(double t) const;

    // Unique solution of theta(t) = level for level in (0, theta_end);
    // bracketed on the grid and refined by Brent to 1e-10 in theta.
    double crossing_time(double level) const;

private:
    std::vector<double> t_, theta_, rate_;
    double period_;
    int rotation_number_;
    double rate_min_, rate_max_;
};

RotationTrace integrate_rotation(const std::function<double(double)>& K,
                                 double period, const RotationOptions& opt = {});

}  // namespace hz::curve
