#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hz/spectral/complex.hpp"

namespace hz::spectral {

class DegreeMismatch : public Error {
public:
    explicit DegreeMismatch(const std::string& what) : Error(what) {}
};

class TwistedCoefficients : public Error {
public:
    explicit TwistedCoefficients(const std::string& what) : Error(what) {}
};

using BiDegree = std::pair<int, int>;

struct PageCell {
    std::size_t dim = 0;
    std::vector<gf2::Vec> reps;  // chain-level representatives
    // Differential d^k : (i, j) -> (i - k, j + k - 1) in representative
    // coordinates; d_rows[r] holds the image coordinates of rep r.
    std::vector<std::vector<std::uint8_t>> d_rows;
    std::size_t d_rank = 0;
};

struct SpectralPage {
    int index = 0;  // k
    std::map<BiDegree, PageCell> cells;

    std::size_t dim(int i, int j) const;
    std::size_t total_dim(int degree) const;  // sum over i + j = degree
    long long euler_characteristic() const;
};

struct PageSequence {
    std::vector<SpectralPage> pages;  // indices 0 .. stable
    int stable_index = 0;             // first k with E^k = E^infinity

    const SpectralPage& limit() const { return pages.back(); }
};

// Full page computation through stabilization (k up to max filtration + 1,
// or k_max if that is smaller). Pages are computed from the approximation
// subspaces Z^k by Gaussian elimination; differentials come with explicit
// representative coordinates.
PageSequence compute_pages(const FilteredComplex& complex, int k_max = -1);

// Morse data of a fiber bundle: base critical points with a self-indexing
// Morse function (index == critical value, kept as metadata only), the
// GF(2) fiber homology dimensions, and optional explicit boundary blocks
// beyond the base one, given between assembled generators.
struct BundleMorseData {
    struct BaseGen {
        std::string name;
        int index = 0;
    };
    std::vector<BaseGen> base;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> base_boundary;
    std::vector<std::size_t> fiber_homology;  // dim H_j(F), j = 0..
    bool twisted = false;  // local-coefficient systems are not supported

    // Optional transport blocks dropping the base degree by >= 2, as pairs
    // of assembled generator names (see assemble()).
    std::vector<std::pair<std::string, std::string>> extra_blocks;
};

// E^1_{i,j} = C_i(base) (x) H_j(F): dimensions only.
SpectralPage e1_from_bundle(const BundleMorseData& data);

// E^2_{i,j} = H_i(base, H_j(F)) in the constant-coefficient reading:
// the base boundary acts on each fiber-homology slot.
SpectralPage e2_from_bundle(const BundleMorseData& data);

// Assembled filtered complex with generators "<base>*h<j>_<c>" and boundary
// base_boundary (x) id plus the explicit extra blocks.
FilteredComplex assemble_bundle_complex(const BundleMorseData& data);

struct SplittingReport {
    bool splits = false;
    bool corner_survives = false;   // E^2_{2m,0} persists to the limit
    std::size_t h_2m = 0;           // limit total dimension in degree 2m
    std::size_t expected = 0;       // betti[2m] + betti[2(m-n)+1]
    std::size_t e2_corner = 0;
    std::size_t limit_corner = 0;
};

// Degree-2m splitting test for a sphere-bundle-type page sequence (fiber
// homology concentrated in j in {0, 2n-1}): the limit total dimension in
// degree 2m must equal betti[2m] + betti[2(m-n)+1].
SplittingReport splitting_check(const PageSequence& pages, int m, int n,
                                const std::vector<std::size_t>& betti);

}  // namespace hz::spectral
