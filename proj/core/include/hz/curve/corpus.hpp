#pragma once

#include <cstdint>
#include <random>

#include "hz/curve/box.hpp"
#include "hz/curve/planar.hpp"

namespace hz::curve {

// Random closed constant-speed curves with strictly positive turning rate.
// The curve is generated through its radius of curvature as a function of
// the tangent angle; dropping the frequency-k Fourier components makes the
// curve close up exactly, so no projection is needed.
PlanarCurve random_closed_curve(std::mt19937_64& rng, int rotation_number,
                                double speed = 1.0, std::size_t steps = 8192);

// Random positive box curve: independent positive lengths with the even
// entries rescaled so both alternating sums vanish exactly.
BoxCurve random_box_curve(std::mt19937_64& rng, int rotation_number);

}  // namespace hz::curve
