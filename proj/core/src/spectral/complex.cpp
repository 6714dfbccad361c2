#include "hz/spectral/complex.hpp"

#include <algorithm>

namespace hz::spectral {

FilteredComplex::FilteredComplex(
    std::vector<Generator> generators,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& boundary)
    : gens_(std::move(generators)) {
    const std::size_t n = gens_.size();
    columns_.assign(n, gf2::Vec(n));
    for (const auto& g : gens_) {
        if (g.i < 0 || g.j < 0)
            throw NotAComplex("generator " + g.name + " has a negative bidegree");
        max_i_ = std::max(max_i_, g.i);
        max_deg_ = std::max(max_deg_, g.degree());
    }

    for (const auto& [from, to] : boundary) {
        if (from >= n || to >= n)
            throw NotAComplex("boundary pair references a missing generator");
        const auto& src = gens_[from];
        const auto& dst = gens_[to];
        if (dst.degree() != src.degree() - 1)
            throw NotAComplex("boundary of " + src.name + " hits " + dst.name +
                              ", which does not lower total degree by one");
        if (dst.i > src.i)
            throw FiltrationViolation("boundary of " + src.name + " raises the base degree at " +
                                      dst.name);
        columns_[from].flip(to);  // pairs listed twice cancel over GF(2)
    }

    // d^2 = 0 on every generator.
    for (std::size_t g = 0; g < n; ++g) {
        if (!apply_boundary(columns_[g]).is_zero())
            throw NotAComplex("boundary squared is nonzero on " + gens_[g].name);
    }
}

gf2::Vec FilteredComplex::apply_boundary(const gf2::Vec& chain) const {
    gf2::Vec out(gens_.size());
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        if (chain.get(g)) out ^= columns_[g];
    }
    return out;
}

std::vector<std::size_t> FilteredComplex::brute_force_homology() const {
    const int top = max_deg_;
    std::vector<std::vector<gf2::Vec>> d_rows(top + 2);  // columns of d per degree
    std::vector<std::size_t> dim_c(top + 1, 0);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        const int l = gens_[g].degree();
        ++dim_c[l];
        if (!columns_[g].is_zero()) d_rows[l].push_back(columns_[g]);
    }
    std::vector<std::size_t> rank_d(top + 2, 0);
    for (int l = 0; l <= top; ++l) rank_d[l] = gf2::rank(d_rows[l]);

    std::vector<std::size_t> h(top + 1, 0);
    for (int l = 0; l <= top; ++l) {
        // dim ker d_l = dim C_l - rank d_l; subtract the image from above.
        h[l] = dim_c[l] - rank_d[l] - (l + 1 <= top ? rank_d[l + 1] : 0);
    }
    return h;
}

}  // namespace hz::spectral
