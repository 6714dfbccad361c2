#pragma once

#include <string>
#include <vector>

#include "hz/errors.hpp"

namespace hz::torus {

class NondegeneracyViolation : public Error {
public:
    explicit NondegeneracyViolation(const std::string& what) : Error(what) {}
};

// One Fourier mode of the field strength, 1-periodic in the torus
// coordinates: coeff_cos cos(2 pi (m1 q1 + m2 q2)) + coeff_sin sin(...).
struct FieldMode {
    int m1 = 0;
    int m2 = 0;
    double coeff_cos = 0.0;
    double coeff_sin = 0.0;
};

struct FieldExtrema {
    double min = 0.0;  // F_min
    double max = 0.0;  // F_max
    double variance_ratio = 1.0;  // F_max / F_min
    double argmin[2] = {0.0, 0.0};
    double argmax[2] = {0.0, 0.0};
};

// Strictly positive periodic field strength F on the unit torus, given by a
// finite Fourier series. The extrema are located at construction (dense
// grid scan plus local pattern refinement), so a field with a nonpositive
// minimum never exists and the value is safe to share across threads.
class MagneticField {
public:
    // Throws NondegeneracyViolation when the minimum is not strictly
    // positive.
    MagneticField(double constant, std::vector<FieldMode> modes = {});

    double constant_term() const { return constant_; }
    const std::vector<FieldMode>& modes() const { return modes_; }
    bool is_constant() const;

    double value(double q1, double q2) const;
    void gradient(double q1, double q2, double& g1, double& g2) const;

    // Primitive along q1: int_0^{q1} F(s, q2) ds, closed form per mode.
    double primitive_q1(double q1, double q2) const;
    // Primitive along q2: int_0^{q2} F(q1, s) ds.
    double primitive_q2(double q1, double q2) const;

    const FieldExtrema& extrema() const { return extrema_; }

private:
    void locate_extrema();

    double constant_ = 1.0;
    std::vector<FieldMode> modes_;
    FieldExtrema extrema_;
};

}  // namespace hz::torus
