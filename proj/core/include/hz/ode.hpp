#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "hz/errors.hpp"
#include "hz/roots.hpp"

namespace hz {

// Embedded Dormand-Prince 5(4) pair with the classic quartic dense-output
// interpolant. Fixed compile-time dimension; integration direction follows
// the sign of (t1 - t0).
template <std::size_t N>
class Dopri5 {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    struct Options {
        double abs_tol = 1e-10;
        double rel_tol = 1e-10;
        double initial_step = 1e-3;
        double max_step = std::numeric_limits<double>::infinity();
        std::size_t max_steps = 2'000'000;
    };

    // One accepted step with everything needed to interpolate inside it.
    struct DenseStep {
        double t0 = 0.0;
        double h = 0.0;
        State y0{};
        std::array<State, 5> rc{};  // contiguous-output coefficients

        double t1() const { return t0 + h; }

        void eval(double t, State& out) const {
            const double s = (t - t0) / h;
            const double s1 = 1.0 - s;
            for (std::size_t i = 0; i < N; ++i) {
                out[i] = rc[0][i] +
                         s * (rc[1][i] +
                              s1 * (rc[2][i] + s * (rc[3][i] + s1 * rc[4][i])));
            }
        }

        double eval_component(double t, std::size_t i) const {
            const double s = (t - t0) / h;
            const double s1 = 1.0 - s;
            return rc[0][i] +
                   s * (rc[1][i] + s1 * (rc[2][i] + s * (rc[3][i] + s1 * rc[4][i])));
        }
    };

    struct Result {
        double t = 0.0;
        State y{};
        std::size_t accepted_steps = 0;
        std::size_t rejected_steps = 0;
        bool event_hit = false;
    };

    explicit Dopri5(Rhs rhs, Options opt = {}) : rhs_(std::move(rhs)), opt_(opt) {}

    // Integrates from (t0, y0) to t1. If `event` is given, stops at the first
    // root of event(t, y) located by sign change across an accepted step and
    // refined on the dense output. `observer`, when set, receives every
    // accepted dense step (including a final partial one).
    Result integrate(double t0, State y0, double t1,
                     const std::function<double(double, const State&)>& event = nullptr,
                     const std::function<void(const DenseStep&)>& observer = nullptr) const {
        Result res;
        res.t = t0;
        res.y = y0;
        if (t1 == t0) return res;

        const double dir = (t1 > t0) ? 1.0 : -1.0;
        double h = std::clamp(std::abs(opt_.initial_step), 1e-12, std::abs(t1 - t0)) * dir;
        State k1;
        rhs_(t0, y0, k1);
        double g_prev = event ? event(t0, y0) : 0.0;
        if (event && g_prev == 0.0) {
            res.event_hit = true;
            return res;
        }

        double t = t0;
        State y = y0;
        for (std::size_t step = 0; step < opt_.max_steps; ++step) {
            if ((t - t1) * dir >= 0.0) return res;
            bool clipped = false;
            if ((t + h - t1) * dir > 0.0) {
                h = t1 - t;
                clipped = true;
            }
            if (std::abs(h) < hmin(t)) {
                throw StepFailure("adaptive step size underflow at t = " + std::to_string(t));
            }

            State y_new, k_last, err;
            std::array<State, 7> k;
            take_step(t, y, k1, h, y_new, k_last, err, k);

            const double err_norm = error_norm(y, y_new, err);
            if (err_norm <= 1.0) {
                DenseStep ds = make_dense(t, h, y, y_new, k);
                double t_new = t + h;

                if (event) {
                    const double g_new = event(t_new, y_new);
                    if (g_new == 0.0 || g_prev * g_new < 0.0) {
                        const double t_event = locate_event(ds, event, t, t_new, g_prev, g_new);
                        State y_event;
                        ds.eval(t_event, y_event);
                        if (observer) {
                            DenseStep partial = ds;
                            partial.h = t_event - ds.t0;
                            observer(partial);
                        }
                        res.t = t_event;
                        res.y = y_event;
                        res.event_hit = true;
                        ++res.accepted_steps;
                        return res;
                    }
                    g_prev = g_new;
                }

                if (observer) observer(ds);
                t = t_new;
                y = y_new;
                k1 = k_last;  // FSAL
                ++res.accepted_steps;
                res.t = t;
                res.y = y;
                if (clipped || (t - t1) * dir >= 0.0) return res;
                h *= std::clamp(0.9 * std::pow(err_norm + 1e-300, -0.2), 0.2, 5.0);
                h = std::copysign(std::min(std::abs(h), opt_.max_step), dir);
            } else {
                ++res.rejected_steps;
                h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
            }
        }
        throw StepFailure("step budget exhausted before reaching t1");
    }

private:
    Rhs rhs_;
    Options opt_;

    static double hmin(double t) {
        return 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    }

    void take_step(double t, const State& y, const State& k1, double h,
                   State& y_new, State& k_last, State& err,
                   std::array<State, 7>& k) const {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        State tmp;
        k[0] = k1;
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k[0][i];
        rhs_(t + c2 * h, tmp, k[1]);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a31 * k[0][i] + a32 * k[1][i]);
        rhs_(t + c3 * h, tmp, k[2]);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
        rhs_(t + c4 * h, tmp, k[3]);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] +
                                 a54 * k[3][i]);
        rhs_(t + c5 * h, tmp, k[4]);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + h * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] +
                                 a64 * k[3][i] + a65 * k[4][i]);
        rhs_(t + h, tmp, k[5]);
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] = y[i] + h * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] +
                                   b5 * k[4][i] + b6 * k[5][i]);
        rhs_(t + h, y_new, k[6]);
        k_last = k[6];
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] +
                          e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);
    }

    double error_norm(const State& y0, const State& y1, const State& err) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double scale =
                opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
            const double e = err[i] / scale;
            sum += e * e;
        }
        return std::sqrt(sum / static_cast<double>(N));
    }

    static DenseStep make_dense(double t, double h, const State& y0, const State& y1,
                                const std::array<State, 7>& k) {
        // Shampine's dense-output coefficients for the DP5(4) pair.
        static constexpr double d1 = -12715105075.0 / 11282082432.0;
        static constexpr double d3 = 87487479700.0 / 32700410799.0;
        static constexpr double d4 = -10690763975.0 / 1880347072.0;
        static constexpr double d5 = 701980252875.0 / 199316789632.0;
        static constexpr double d6 = -1453857185.0 / 822651844.0;
        static constexpr double d7 = 69997945.0 / 29380423.0;

        DenseStep ds;
        ds.t0 = t;
        ds.h = h;
        ds.y0 = y0;
        for (std::size_t i = 0; i < N; ++i) {
            const double dy = y1[i] - y0[i];
            const double bspl = h * k[0][i] - dy;
            ds.rc[0][i] = y0[i];
            ds.rc[1][i] = dy;
            ds.rc[2][i] = bspl;
            ds.rc[3][i] = dy - h * k[6][i] - bspl;
            ds.rc[4][i] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] +
                               d5 * k[4][i] + d6 * k[5][i] + d7 * k[6][i]);
        }
        return ds;
    }

    static double locate_event(const DenseStep& ds,
                               const std::function<double(double, const State&)>& event,
                               double ta, double tb, double ga, double gb) {
        State y;
        auto g = [&](double t) {
            ds.eval(t, y);
            return event(t, y);
        };
        return brent(g, ta, tb, ga, gb, 1e-14 * std::max(1.0, std::abs(tb)));
    }
};

}  // namespace hz
