#pragma once

#include <cstddef>
#include <vector>

#include "hz/curve/planar.hpp"

namespace hz::curve {

// Closed axis-aligned piecewise-linear curve with 2k vertical and 2k
// horizontal segments, alternating vertical-first, all left turns when
// traversed counter-clockwise. Determined up to translation by the two
// length sequences.
struct BoxCurve {
    std::vector<double> vertical;    // a_1..a_{2k}
    std::vector<double> horizontal;  // b_1..b_{2k}
    int rotation_number = 0;
    int degenerate_segments = 0;  // segments shorter than the tolerance

    double vertical_alternating_sum() const;
    double horizontal_alternating_sum() const;
    double max_entry() const;
};

// Circumscribing box of a closed positive-turning curve: vertical lengths
// from the y-sweeps between consecutive theta = j pi crossings, horizontal
// lengths from the x-sweeps between consecutive theta = pi/2 + j pi
// crossings (the last horizontal interval wraps around the period).
BoxCurve build_box_curve(const PlanarCurve& curve, double tol = 1e-6);

// Alternating area formula b_1 a~_1 - b_2 a~_2 + ... for the vertical-first
// counter-clockwise traversal; equals the signed area with multiplicity.
double box_area_signed(const BoxCurve& box);

// Orientation-normalized area: the sequences determine the box only up to
// reflection, so the nonnegative orientation is chosen.
double box_area(const BoxCurve& box);

struct AreaBoundReport {
    double curve_area = 0.0;  // |oint x dy|
    double box_area = 0.0;
    double bound = 0.0;  // k * 4 (v / K_min)^2
    bool pass = false;
};

// Checks 0 <= A(curve) <= A(box) <= k 4(v/K_min)^2 within tol.
AreaBoundReport verify_curvature_area_bound(const PlanarCurve& curve,
                                            double tol = 1e-6);

}  // namespace hz::curve
