#include "hz/spectral/random.hpp"

#include <algorithm>
#include <string>

namespace hz::spectral {

namespace {
// B' = P B Q as dense column lists, with Q applied on the right.
std::vector<gf2::Vec> multiply(const std::vector<gf2::Vec>& p,
                               const std::vector<gf2::Vec>& b) {
    const std::size_t n = b.size();
    std::vector<gf2::Vec> out(n, gf2::Vec(n));
    for (std::size_t col = 0; col < n; ++col) {
        // out[col] = P * b[col]
        for (std::size_t r = 0; r < n; ++r) {
            if (b[col].get(r)) out[col] ^= p[r];
        }
    }
    return out;
}
}  // namespace

RandomComplex random_filtered_complex(std::mt19937_64& rng,
                                      std::size_t max_generators) {
    std::uniform_int_distribution<int> deg_i(0, 3);
    std::uniform_int_distribution<int> deg_j(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> count(
        8, std::max<std::size_t>(9, max_generators));

    const std::size_t n = count(rng);
    std::vector<Generator> gens(n);
    for (std::size_t g = 0; g < n; ++g) {
        gens[g].name = "g" + std::to_string(g);
        gens[g].i = deg_i(rng);
        gens[g].j = deg_j(rng);
    }

    // Partial matching source -> target with degree drop one and
    // non-increasing filtration; matched pairs cancel in homology.
    std::vector<int> role(n, 0);  // 0 free, 1 source, 2 target
    std::vector<std::size_t> order(n);
    for (std::size_t g = 0; g < n; ++g) order[g] = g;
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<gf2::Vec> columns(n, gf2::Vec(n));
    for (std::size_t from : order) {
        if (role[from] != 0 || unit(rng) < 0.3) continue;
        std::vector<std::size_t> candidates;
        for (std::size_t to = 0; to < n; ++to) {
            if (role[to] == 0 && to != from &&
                gens[to].degree() == gens[from].degree() - 1 &&
                gens[to].i <= gens[from].i)
                candidates.push_back(to);
        }
        if (candidates.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        const std::size_t to = candidates[pick(rng)];
        role[from] = 1;
        role[to] = 2;
        columns[from].set(to, true);
    }

    // Expected homology before the change of basis.
    int max_deg = 0;
    for (const auto& g : gens) max_deg = std::max(max_deg, g.degree());
    std::vector<std::size_t> expected(max_deg + 1, 0);
    for (std::size_t g = 0; g < n; ++g) {
        if (role[g] == 0) ++expected[gens[g].degree()];
    }

    // Conjugate by filtration- and degree-preserving elementary matrices.
    std::vector<gf2::Vec> p(n, gf2::Vec(n)), p_inv(n, gf2::Vec(n));
    for (std::size_t g = 0; g < n; ++g) {
        p[g].set(g, true);
        p_inv[g].set(g, true);
    }
    std::uniform_int_distribution<std::size_t> pick_gen(0, n - 1);
    for (std::size_t op = 0; op < 3 * n; ++op) {
        const std::size_t u = pick_gen(rng);
        const std::size_t v = pick_gen(rng);
        if (u == v || gens[u].degree() != gens[v].degree() || gens[u].i > gens[v].i)
            continue;
        // e_v -> e_v + e_u (allowed: i_u <= i_v); elementary matrices are
        // involutions over GF(2), so accumulate on both sides.
        std::vector<gf2::Vec> e(n, gf2::Vec(n));
        for (std::size_t g = 0; g < n; ++g) e[g].set(g, true);
        e[v].set(u, true);
        p = multiply(e, p);
        p_inv = multiply(p_inv, e);
    }

    std::vector<gf2::Vec> conjugated = multiply(p, multiply(columns, p_inv));

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t col = 0; col < n; ++col) {
        for (std::uint32_t row = 0; row < n; ++row) {
            if (conjugated[col].get(row)) pairs.emplace_back(col, row);
        }
    }
    return {FilteredComplex(std::move(gens), pairs), std::move(expected)};
}

}  // namespace hz::spectral
