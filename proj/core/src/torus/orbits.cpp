#include "hz/torus/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "hz/parallel.hpp"

namespace hz::torus {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Displacement {
    double d1 = 0.0, d2 = 0.0;
    double time = 0.0;
};

Displacement wrapped_displacement(const MagneticField& field, double energy,
                                  double q1, double q2, const FlowOptions& opt) {
    const ReturnResult ret = poincare_return(field, energy, q1, q2, opt);
    Displacement d;
    d.d1 = wrap_centered(ret.lift[0] - q1);
    d.d2 = wrap_centered(ret.lift[1] - q2);
    d.time = ret.time;
    return d;
}

bool rotation_bound_holds(const MagneticField& field, const PeriodicOrbit& orbit);

double torus_distance(double a1, double a2, double b1, double b2) {
    const double d1 = wrap_centered(a1 - b1);
    const double d2 = wrap_centered(a2 - b2);
    return std::hypot(d1, d2);
}

struct NewtonOutcome {
    bool converged = false;
    double q1 = 0.0, q2 = 0.0;
    int iterations = 0;
};

NewtonOutcome damped_newton(const MagneticField& field, double energy,
                            double q1, double q2, const OrbitFinderOptions& opt) {
    NewtonOutcome out;
    Displacement d = wrapped_displacement(field, energy, q1, q2, opt.flow);
    double norm = std::max(std::abs(d.d1), std::abs(d.d2));

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        if (norm < opt.newton_tol) {
            out.converged = true;
            out.q1 = wrap_unit(q1);
            out.q2 = wrap_unit(q2);
            out.iterations = iter;
            return out;
        }
        // Central-difference Jacobian of the wrapped displacement.
        const double h = opt.fd_step;
        const Displacement dxp = wrapped_displacement(field, energy, q1 + h, q2, opt.flow);
        const Displacement dxm = wrapped_displacement(field, energy, q1 - h, q2, opt.flow);
        const Displacement dyp = wrapped_displacement(field, energy, q1, q2 + h, opt.flow);
        const Displacement dym = wrapped_displacement(field, energy, q1, q2 - h, opt.flow);
        double j11 = (dxp.d1 - dxm.d1) / (2 * h);
        double j21 = (dxp.d2 - dxm.d2) / (2 * h);
        double j12 = (dyp.d1 - dym.d1) / (2 * h);
        double j22 = (dyp.d2 - dym.d2) / (2 * h);

        // Solve J s = -d, with Levenberg damping when the 2x2 system is
        // close to singular (fixed-point families make J rank deficient).
        double s1 = 0.0, s2 = 0.0;
        double lambda = 0.0;
        const double scale = std::max({std::abs(j11), std::abs(j12),
                                       std::abs(j21), std::abs(j22), 1e-300});
        for (int attempt = 0; attempt < 8; ++attempt) {
            const double a11 = j11 + lambda, a22 = j22 + lambda;
            const double det = a11 * a22 - j12 * j21;
            if (std::abs(det) > 1e-10 * scale * scale) {
                s1 = (-d.d1 * a22 + d.d2 * j12) / det;
                s2 = (-d.d2 * a11 + d.d1 * j21) / det;
                break;
            }
            lambda = (lambda == 0.0) ? 1e-6 * scale : lambda * 100.0;
        }
        if (s1 == 0.0 && s2 == 0.0) break;

        // Backtracking line search on the displacement norm.
        double step = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 7; ++bt) {
            const double c1 = q1 + step * s1;
            const double c2 = q2 + step * s2;
            const Displacement cand = wrapped_displacement(field, energy, c1, c2, opt.flow);
            const double cnorm = std::max(std::abs(cand.d1), std::abs(cand.d2));
            if (cnorm < norm * (1.0 - 1e-4 * step)) {
                q1 = c1;
                q2 = c2;
                d = cand;
                norm = cnorm;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    if (norm < opt.newton_tol) {
        out.converged = true;
        out.q1 = wrap_unit(q1);
        out.q2 = wrap_unit(q2);
        out.iterations = opt.max_iterations;
    }
    return out;
}

// Rotation-period inequality F_min T <= -2 pi k <= F_max T, with a slack
// covering the extrema refinement error.
bool rotation_bound_holds(const MagneticField& field, const PeriodicOrbit& orbit) {
    const auto& ext = field.extrema();
    const double lhs = ext.min * orbit.period;
    const double mid = -kTwoPi * orbit.rotation_number;
    const double rhs = ext.max * orbit.period;
    const double slack = 1e-9 * std::max(1.0, rhs);
    return lhs <= mid + slack && mid <= rhs + slack;
}
}  // namespace

PeriodicOrbit orbit_at(const MagneticField& field, double energy, double q1,
                       double q2, const FlowOptions& opt) {
    const ReturnResult ret = poincare_return(field, energy, q1, q2, opt);

    PeriodicOrbit orbit;
    orbit.q1 = wrap_unit(q1);
    orbit.q2 = wrap_unit(q2);
    orbit.period = ret.time;
    orbit.lattice[0] = ret.lattice[0];
    orbit.lattice[1] = ret.lattice[1];
    orbit.residual = torus_distance(ret.lift[0], ret.lift[1], q1, q2);

    // Total rotation over one return is exactly -2 pi by the stopping event;
    // the integral form is kept as the definition.
    const double k_real = -1.0;
    orbit.rotation_number = static_cast<int>(std::lround(k_real));
    orbit.contractible = ret.lattice[0] == 0 && ret.lattice[1] == 0;

    orbit.a1 = 2.0 * energy * ret.time;
    if (orbit.contractible) {
        orbit.a2 = ret.a2;
        orbit.a2_alt = ret.a2_alt;
        orbit.area = orbit.a1 + orbit.a2;
    }
    orbit.rotation_bound_ok = rotation_bound_holds(field, orbit);
    return orbit;
}

PeriodicOrbit orbit_invariants(const MagneticField& field, double energy,
                               double q1, double q2, double period,
                               const FlowOptions& opt, double integer_tol) {
    // General-duration pass: the rotation number is read off the total drop
    // of theta over the period, not imposed by a section event.
    const LiftedState end = flow_for_time(field, energy, {q1, q2, 0.0}, period, opt);
    const double turns = end.theta / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > integer_tol || rounded >= 0.0) {
        throw RotationNotInteger("theta drops by " + std::to_string(turns) +
                                 " turns over the period; not a negative integer");
    }
    const int k = static_cast<int>(rounded);

    // Re-run as a |k|-turn section pass, which carries the primitive
    // integrals for the magnetic area along the same loop.
    const ReturnResult ret =
        poincare_return(field, energy, q1, q2, opt, -k * kTwoPi);

    PeriodicOrbit orbit;
    orbit.q1 = wrap_unit(q1);
    orbit.q2 = wrap_unit(q2);
    orbit.period = ret.time;
    orbit.rotation_number = k;
    orbit.lattice[0] = ret.lattice[0];
    orbit.lattice[1] = ret.lattice[1];
    orbit.residual = torus_distance(ret.lift[0], ret.lift[1], q1, q2);
    orbit.contractible = ret.lattice[0] == 0 && ret.lattice[1] == 0;
    orbit.a1 = 2.0 * energy * ret.time;
    if (orbit.contractible) {
        orbit.a2 = ret.a2;
        orbit.a2_alt = ret.a2_alt;
        orbit.area = orbit.a1 + orbit.a2;
    }
    orbit.rotation_bound_ok = rotation_bound_holds(field, orbit);
    return orbit;
}

double contractible_area(const PeriodicOrbit& orbit) {
    if (!orbit.contractible) {
        throw NonContractible("orbit lift displaces by (" +
                              std::to_string(orbit.lattice[0]) + ", " +
                              std::to_string(orbit.lattice[1]) +
                              "); the disc area is undefined");
    }
    return orbit.area;
}

OrbitSearchReport find_periodic_orbits(const MagneticField& field, double energy,
                                       const OrbitFinderOptions& opt) {
    OrbitSearchReport report;
    const int n = opt.grid_density;
    if (n <= 0) return report;  // empty seed grid

    const std::size_t seed_count = static_cast<std::size_t>(n) * n;
    std::vector<Displacement> grid(seed_count);
    std::vector<double> seeds1(seed_count), seeds2(seed_count);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * n + j;
            seeds1[idx] = (i + 0.5) / n;
            seeds2[idx] = (j + 0.5) / n;
        }
    }

    parallel_for_indexed(seed_count, opt.threads, [&](std::size_t idx) {
        grid[idx] = wrapped_displacement(field, energy, seeds1[idx], seeds2[idx],
                                         opt.flow);
    });

    double max_disp = 0.0;
    for (const auto& d : grid)
        max_disp = std::max({max_disp, std::abs(d.d1), std::abs(d.d2)});
    report.max_grid_displacement = max_disp;
    report.seeds_tried = static_cast<int>(seed_count);

    if (max_disp < opt.continuum_tol) {
        // Every point is a fixed point to working accuracy; enumeration
        // would only return grid artifacts.
        report.degenerate_continuum = true;
        return report;
    }

    std::vector<NewtonOutcome> outcomes(seed_count);
    parallel_for_indexed(seed_count, opt.threads, [&](std::size_t idx) {
        outcomes[idx] = damped_newton(field, energy, seeds1[idx], seeds2[idx], opt);
    });

    std::vector<PeriodicOrbit> found;
    for (std::size_t idx = 0; idx < seed_count; ++idx) {
        const auto& o = outcomes[idx];
        if (!o.converged) {
            ++report.seeds_failed;
            continue;
        }
        ++report.seeds_converged;
        bool duplicate = false;
        for (const auto& prev : found) {
            if (torus_distance(o.q1, o.q2, prev.q1, prev.q2) < opt.dedup_radius) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        PeriodicOrbit orbit = orbit_at(field, energy, o.q1, o.q2, opt.flow);
        orbit.newton_iterations = o.iterations;
        found.push_back(orbit);
    }

    std::sort(found.begin(), found.end(), [](const PeriodicOrbit& a,
                                             const PeriodicOrbit& b) {
        if (a.q1 != b.q1) return a.q1 < b.q1;
        return a.q2 < b.q2;
    });
    report.orbits = std::move(found);
    return report;
}

double certificate_rate(double energy, double variance_ratio) {
    return (4.0 * energy / (kPi * variance_ratio)) *
           (kPi / 2.0 - variance_ratio * variance_ratio);
}

AreaCertificate area_certificate(const MagneticField& field, double energy,
                                 const PeriodicOrbit& orbit, double tol) {
    AreaCertificate cert;
    const double v_ratio = field.extrema().variance_ratio;
    cert.rate = certificate_rate(energy, v_ratio);
    if (!orbit.contractible) {
        cert.verdict = CertificateVerdict::NonContractible;
        return cert;
    }
    cert.lhs = std::abs(orbit.area);
    cert.rhs = cert.rate * orbit.period;
    if (cert.rate <= 0.0) {
        cert.verdict = CertificateVerdict::Vacuous;
    } else {
        cert.verdict = cert.lhs >= cert.rhs - tol ? CertificateVerdict::Pass
                                                  : CertificateVerdict::Fail;
    }
    return cert;
}

SweepReport energy_sweep(const MagneticField& field,
                         const std::vector<double>& energies,
                         const OrbitFinderOptions& opt, double tol) {
    SweepReport sweep;
    sweep.all_levels_pass = true;
    for (double energy : energies) {
        EnergyLevelReport level;
        level.energy = energy;
        level.search = find_periodic_orbits(field, energy, opt);
        if (level.search.degenerate_continuum) {
            // Representative orbit; on a continuum every section point lies
            // on a closed trajectory.
            level.search.orbits.push_back(
                orbit_at(field, energy, 0.25, 0.25, opt.flow));
        }
        for (const auto& orbit : level.search.orbits) {
            const AreaCertificate cert = area_certificate(field, energy, orbit, tol);
            if (cert.verdict == CertificateVerdict::Pass ||
                (cert.verdict == CertificateVerdict::Vacuous && orbit.contractible)) {
                level.has_passing_contractible |= orbit.contractible;
            }
            if (orbit.contractible)
                level.max_abs_area = std::max(level.max_abs_area, std::abs(orbit.area));
            level.certificates.push_back(cert);
        }
        sweep.uniform_area_bound = std::max(sweep.uniform_area_bound, level.max_abs_area);
        sweep.all_levels_pass = sweep.all_levels_pass && level.has_passing_contractible;
        sweep.levels.push_back(std::move(level));
    }
    if (energies.empty()) sweep.all_levels_pass = false;
    return sweep;
}

}  // namespace hz::torus
