#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hz/torus/flow.hpp"

namespace hz::torus {

class NonContractible : public Error {
public:
    explicit NonContractible(const std::string& what) : Error(what) {}
};

class RotationNotInteger : public Error {
public:
    explicit RotationNotInteger(const std::string& what) : Error(what) {}
};

// Closed trajectory found as a fixed point of the return map, recorded
// through its section point at theta = 0.
struct PeriodicOrbit {
    double q1 = 0.0, q2 = 0.0;  // section point in [0,1)^2
    double period = 0.0;
    int rotation_number = -1;   // negative: theta decreases along the flow
    int lattice[2] = {0, 0};    // displacement of the base lift over one period
    bool contractible = false;
    double a1 = 0.0;            // 2 E T
    double a2 = std::nan("");   // oint G dq2 on the lift; NaN unless contractible
    double a2_alt = std::nan("");
    double area = std::nan("");    // a1 + a2
    double residual = 0.0;      // torus distance after one period
    // F_min T <= -2 pi k <= F_max T, checked at assembly time.
    bool rotation_bound_ok = false;
    int newton_iterations = 0;
};

struct OrbitFinderOptions {
    int grid_density = 12;        // seeds per torus direction
    double newton_tol = 1e-10;    // sup-norm of the wrapped displacement
    int max_iterations = 50;
    double fd_step = 1e-6;        // central-difference Jacobian step
    double dedup_radius = 1e-4;   // torus metric
    double continuum_tol = 1e-9;  // whole-grid displacement threshold
    unsigned threads = 1;
    FlowOptions flow{1e-12, 1e-11, 1e-3, 2'000'000};
};

struct OrbitSearchReport {
    std::vector<PeriodicOrbit> orbits;
    bool degenerate_continuum = false;
    double max_grid_displacement = 0.0;
    int seeds_tried = 0;
    int seeds_converged = 0;
    int seeds_failed = 0;  // dropped with NoConvergence
};

// Seeds a grid, evaluates the wrapped lifted displacement of the return
// map, runs damped Newton with a finite-difference Jacobian from every
// seed, deduplicates the fixed points and assembles the orbit records.
// A constant-like field (displacement below continuum_tol on the whole
// grid) is flagged instead of enumerated.
OrbitSearchReport find_periodic_orbits(const MagneticField& field, double energy,
                                       const OrbitFinderOptions& opt = {});

// Orbit record for a known fixed point of the return map (also usable on a
// degenerate continuum where every point qualifies).
PeriodicOrbit orbit_at(const MagneticField& field, double energy, double q1,
                       double q2, const FlowOptions& opt = {});

// Invariants {T, k, A1, A2, A} for a closed trajectory given through its
// section point and period. The rotation number comes from the integral of
// theta' over the period and must be a negative integer within tol.
PeriodicOrbit orbit_invariants(const MagneticField& field, double energy,
                               double q1, double q2, double period,
                               const FlowOptions& opt = {},
                               double integer_tol = 1e-6);

// Signed symplectic area of a contractible orbit.
double contractible_area(const PeriodicOrbit& orbit);

// Rate bound C(E) = (4 E / (pi V)) (pi/2 - V^2); positive iff V < sqrt(pi/2).
double certificate_rate(double energy, double variance_ratio);

enum class CertificateVerdict { Pass, Fail, Vacuous, NonContractible };

struct AreaCertificate {
    double rate = 0.0;      // C(E)
    double lhs = 0.0;       // |A|
    double rhs = 0.0;       // C(E) * T
    CertificateVerdict verdict = CertificateVerdict::Vacuous;
};

AreaCertificate area_certificate(const MagneticField& field, double energy,
                                 const PeriodicOrbit& orbit, double tol = 1e-6);

struct EnergyLevelReport {
    double energy = 0.0;
    OrbitSearchReport search;
    std::vector<AreaCertificate> certificates;  // aligned with search.orbits
    bool has_passing_contractible = false;
    double max_abs_area = 0.0;
};

struct SweepReport {
    std::vector<EnergyLevelReport> levels;
    bool all_levels_pass = false;
    double uniform_area_bound = 0.0;  // sup over levels of max |A|
};

SweepReport energy_sweep(const MagneticField& field,
                         const std::vector<double>& energies,
                         const OrbitFinderOptions& opt = {}, double tol = 1e-6);

}  // namespace hz::torus
