#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hz/spectral/complex.hpp"

namespace hz::spectral {

struct RandomComplex {
    FilteredComplex complex;
    std::vector<std::size_t> expected_homology;  // per total degree
};

// Random filtered complex with a known answer: a partial matching gives a
// boundary with d^2 = 0 and homology = unmatched generators per degree;
// conjugating by random filtration-preserving basis changes hides it.
RandomComplex random_filtered_complex(std::mt19937_64& rng,
                                      std::size_t max_generators = 40);

}  // namespace hz::spectral
