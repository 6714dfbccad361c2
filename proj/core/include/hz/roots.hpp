#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace hz {

// Brent's method on a bracketing interval [a, b] with f(a)*f(b) <= 0.
// Stops when |f| <= ftol or the bracket shrinks below xtol.
template <typename Fn>
double brent(Fn&& f, double a, double b, double fa, double fb,
             double xtol = 1e-14, double ftol = 0.0, int max_iter = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("brent: root not bracketed");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0 || std::abs(fb) <= ftol) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m;  // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; e = d = b - a; }
    }
    return b;
}

template <typename Fn>
double brent(Fn&& f, double a, double b, double xtol = 1e-14,
             double ftol = 0.0, int max_iter = 200) {
    return brent(f, a, b, f(a), f(b), xtol, ftol, max_iter);
}

}  // namespace hz
