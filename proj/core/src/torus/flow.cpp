#include "hz/torus/flow.hpp"

#include <cmath>
#include <numbers>

#include "hz/ode.hpp"

namespace hz::torus {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// y = (q1, q2, theta, a2, a2_alt) on the universal cover, with the two
// magnetic-area integrands carried along so the step controller bounds
// their error too.
using Stepper = Dopri5<5>;

Stepper make_stepper(const MagneticField& field, double energy,
                     const FlowOptions& opt) {
    const double v = std::sqrt(2.0 * energy);
    typename Stepper::Options sopt;
    sopt.abs_tol = opt.abs_tol;
    sopt.rel_tol = opt.rel_tol;
    sopt.initial_step = opt.initial_step;
    sopt.max_steps = opt.max_steps;
    return Stepper(
        [&field, v](double, const Stepper::State& y, Stepper::State& dy) {
            const double c = std::cos(y[2]);
            const double s = std::sin(y[2]);
            dy[0] = v * c;
            dy[1] = v * s;
            dy[2] = -field.value(y[0], y[1]);
            dy[3] = field.primitive_q1(y[0], y[1]) * v * s;
            dy[4] = -field.primitive_q2(y[0], y[1]) * v * c;
        },
        sopt);
}

std::function<void(const Stepper::DenseStep&)> make_sampler(
    const std::function<void(const FlowSample&)>& observer, double sample_dt,
    double* next_sample) {
    if (!observer) return nullptr;
    return [observer, sample_dt, next_sample](const Stepper::DenseStep& ds) {
        while (*next_sample <= ds.t1() + 1e-15) {
            Stepper::State y;
            ds.eval(*next_sample, y);
            observer({*next_sample, {y[0], y[1], y[2]}});
            *next_sample += sample_dt;
        }
    };
}
}  // namespace

double wrap_unit(double q) {
    double w = q - std::floor(q);
    if (w >= 1.0) w -= 1.0;  // guards against floor rounding at the seam
    return w;
}

double wrap_centered(double q) {
    return q - std::round(q);
}

LiftedState flow_for_time(const MagneticField& field, double energy,
                          const LiftedState& start, double duration,
                          const FlowOptions& opt,
                          const std::function<void(const FlowSample&)>& observer,
                          double sample_dt) {
    Stepper stepper = make_stepper(field, energy, opt);
    Stepper::State y0{start.q1, start.q2, start.theta, 0.0, 0.0};
    double next_sample = 0.0;
    if (sample_dt <= 0.0) sample_dt = duration / 256.0;
    const auto sampler = make_sampler(observer, sample_dt, &next_sample);
    const auto res = stepper.integrate(0.0, y0, duration, nullptr, sampler);
    return {res.y[0], res.y[1], res.y[2]};
}

ReturnResult poincare_return(const MagneticField& field, double energy,
                             double q1, double q2, const FlowOptions& opt,
                             double theta_span,
                             const std::function<void(const FlowSample&)>& observer,
                             double sample_dt) {
    if (theta_span <= 0.0) theta_span = kTwoPi;
    Stepper stepper = make_stepper(field, energy, opt);
    Stepper::State y0{q1, q2, 0.0, 0.0, 0.0};

    const double target = -theta_span;
    auto event = [target](double, const Stepper::State& y) {
        return y[2] - target;
    };

    // Upper bound for the return time from theta' <= -F_min.
    const double t_cap = 1.25 * theta_span / field.extrema().min + 1.0;

    double next_sample = 0.0;
    if (sample_dt <= 0.0) sample_dt = t_cap;  // effectively no samples
    const auto sampler = make_sampler(observer, sample_dt, &next_sample);

    const auto res = stepper.integrate(0.0, y0, t_cap, event, sampler);
    if (!res.event_hit) {
        throw StepFailure("return event not reached within the time cap");
    }

    ReturnResult out;
    out.lift[0] = res.y[0];
    out.lift[1] = res.y[1];
    out.image[0] = wrap_unit(res.y[0]);
    out.image[1] = wrap_unit(res.y[1]);
    out.lattice[0] = static_cast<int>(std::lround(res.y[0] - out.image[0]));
    out.lattice[1] = static_cast<int>(std::lround(res.y[1] - out.image[1]));
    out.time = res.t;
    out.a2 = res.y[3];
    out.a2_alt = res.y[4];
    out.steps = res.accepted_steps;
    return out;
}

}  // namespace hz::torus
