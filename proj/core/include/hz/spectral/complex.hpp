#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hz/gf2/matrix.hpp"

namespace hz::spectral {

class NotAComplex : public Error {
public:
    explicit NotAComplex(const std::string& what) : Error(what) {}
};

class FiltrationViolation : public Error {
public:
    explicit FiltrationViolation(const std::string& what) : Error(what) {}
};

struct Generator {
    std::string name;
    int i = 0;  // base filtration degree
    int j = 0;  // fiber degree
    int degree() const { return i + j; }
};

// Bigraded chain complex over GF(2) with the filtration by base degree.
// The boundary lowers total degree by one and never raises the filtration;
// validation rejects anything else and anything with d^2 != 0.
class FilteredComplex {
public:
    FilteredComplex(std::vector<Generator> generators,
                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& boundary);

    std::size_t size() const { return gens_.size(); }
    const std::vector<Generator>& generators() const { return gens_; }
    const gf2::Vec& boundary_column(std::size_t g) const { return columns_[g]; }

    int max_filtration() const { return max_i_; }
    int max_degree() const { return max_deg_; }

    gf2::Vec apply_boundary(const gf2::Vec& chain) const;

    // Dimensions of the total homology per degree 0..max_degree:
    // dim ker d_l - rank d_{l+1}, straight rank computation.
    std::vector<std::size_t> brute_force_homology() const;

private:
    std::vector<Generator> gens_;
    std::vector<gf2::Vec> columns_;  // boundary of each generator
    int max_i_ = 0;
    int max_deg_ = 0;
};

}  // namespace hz::spectral
