#pragma once

#include <array>
#include <cstddef>
#include <functional>

#include "hz/torus/field.hpp"

namespace hz::torus {

struct FlowOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double initial_step = 1e-3;
    std::size_t max_steps = 2'000'000;
};

// State on the universal cover: planar lift of the base point plus the
// velocity-angle lift.
struct LiftedState {
    double q1 = 0.0;
    double q2 = 0.0;
    double theta = 0.0;
};

struct FlowSample {
    double t = 0.0;
    LiftedState state;
};

// Integrates q1' = v cos(theta), q2' = v sin(theta), theta' = -F(q1, q2)
// with v = sqrt(2E) for the given duration. `observer`, when set, receives
// equally spaced samples along the trajectory.
LiftedState flow_for_time(const MagneticField& field, double energy,
                          const LiftedState& start, double duration,
                          const FlowOptions& opt = {},
                          const std::function<void(const FlowSample&)>& observer = nullptr,
                          double sample_dt = 0.0);

struct ReturnResult {
    double image[2] = {0.0, 0.0};   // endpoint wrapped to [0, 1)^2
    int lattice[2] = {0, 0};        // integer cell of the lifted endpoint
    double lift[2] = {0.0, 0.0};    // unwrapped endpoint
    double time = 0.0;              // return time
    double a2 = 0.0;                // oint G dq2 along the lift
    double a2_alt = 0.0;            // -oint H dq1 along the lift (cross-check)
    std::size_t steps = 0;
};

// Follows the flow from (start, theta = 0) until theta has decreased by
// theta_span (2 pi for the return map). theta is strictly decreasing because
// F is positive, so the stopping event is always reached.
ReturnResult poincare_return(const MagneticField& field, double energy,
                             double q1, double q2, const FlowOptions& opt = {},
                             double theta_span = 0.0,
                             const std::function<void(const FlowSample&)>& observer = nullptr,
                             double sample_dt = 0.0);

// Wraps a coordinate to [0, 1).
double wrap_unit(double q);
// Nearest-integer residue in [-0.5, 0.5).
double wrap_centered(double q);

}  // namespace hz::torus
