#include "hz/spectral/pages.hpp"

#include <algorithm>

namespace hz::spectral {

std::size_t SpectralPage::dim(int i, int j) const {
    const auto it = cells.find({i, j});
    return it == cells.end() ? 0 : it->second.dim;
}

std::size_t SpectralPage::total_dim(int degree) const {
    std::size_t total = 0;
    for (const auto& [key, cell] : cells) {
        if (key.first + key.second == degree) total += cell.dim;
    }
    return total;
}

long long SpectralPage::euler_characteristic() const {
    long long chi = 0;
    for (const auto& [key, cell] : cells) {
        const long long d = static_cast<long long>(cell.dim);
        chi += ((key.first + key.second) % 2 == 0) ? d : -d;
    }
    return chi;
}

namespace {

// Basis of Z^k_p(l) = {x in F_p C_l : dx in F_{p-k} C_{l-1}} as vectors in
// the full chain space.
std::vector<gf2::Vec> approximation_subspace(const FilteredComplex& cx, int p,
                                             int l, int k) {
    const auto& gens = cx.generators();
    std::vector<std::size_t> domain;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].degree() == l && gens[g].i <= p) domain.push_back(g);
    }
    if (domain.empty()) return {};

    // Condition rows: components of the boundary on generators of degree
    // l-1 with base degree > p-k must vanish.
    std::vector<std::size_t> forbidden;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].degree() == l - 1 && gens[g].i > p - k) forbidden.push_back(g);
    }

    std::vector<gf2::Vec> rows(forbidden.size(), gf2::Vec(domain.size()));
    for (std::size_t c = 0; c < domain.size(); ++c) {
        const auto& col = cx.boundary_column(domain[c]);
        for (std::size_t r = 0; r < forbidden.size(); ++r) {
            if (col.get(forbidden[r])) rows[r].set(c, true);
        }
    }

    std::vector<gf2::Vec> kernel = gf2::nullspace(rows, domain.size());
    std::vector<gf2::Vec> out;
    out.reserve(kernel.size());
    for (const auto& kv : kernel) {
        gf2::Vec v(cx.size());
        for (std::size_t c = 0; c < domain.size(); ++c) {
            if (kv.get(c)) v.set(domain[c], true);
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

PageSequence compute_pages(const FilteredComplex& cx, int k_max) {
    const int stop = (k_max >= 0) ? std::min(k_max, cx.max_filtration() + 1)
                                  : cx.max_filtration() + 1;
    const auto& gens = cx.generators();

    // Occupied bidegrees.
    std::vector<BiDegree> spots;
    for (const auto& g : gens) spots.emplace_back(g.i, g.j);
    std::sort(spots.begin(), spots.end());
    spots.erase(std::unique(spots.begin(), spots.end()), spots.end());

    PageSequence seq;
    for (int k = 0; k <= stop; ++k) {
        SpectralPage page;
        page.index = k;

        struct Entry {
            BiDegree key;
            gf2::QuotientSpace quotient;
        };
        std::vector<Entry> entries;

        for (const auto& [i, j] : spots) {
            const int l = i + j;
            auto numerator = approximation_subspace(cx, i, l, k);
            if (numerator.empty()) continue;

            gf2::QuotientSpace q;
            // Denominator: Z^{k-1}_{p-1}(l) + d Z^{k-1}_{p+k-1}(l+1).
            for (auto& v : approximation_subspace(cx, i - 1, l, k - 1))
                q.add_denominator(std::move(v));
            for (auto& v : approximation_subspace(cx, i + k - 1, l + 1, k - 1))
                q.add_denominator(cx.apply_boundary(v));

            PageCell cell;
            for (auto& v : numerator) {
                if (q.add_numerator(v) >= 0) cell.reps.push_back(v);
            }
            cell.dim = q.dim();
            if (cell.dim == 0) continue;
            page.cells[{i, j}] = std::move(cell);
            entries.push_back({{i, j}, std::move(q)});
        }

        // Differentials d^k : (i, j) -> (i - k, j + k - 1).
        std::map<BiDegree, gf2::QuotientSpace*> by_key;
        for (auto& e : entries) by_key[e.key] = &e.quotient;
        for (auto& [key, cell] : page.cells) {
            const BiDegree target{key.first - k, key.second + k - 1};
            auto it = page.cells.find(target);
            cell.d_rows.assign(cell.dim, {});
            if (it == page.cells.end()) continue;
            auto* target_q = by_key.at(target);
            std::vector<gf2::Vec> images;
            for (std::size_t r = 0; r < cell.dim; ++r) {
                const gf2::Vec image = cx.apply_boundary(cell.reps[r]);
                cell.d_rows[r] = target_q->coords(image);
                gf2::Vec as_vec(it->second.dim);
                for (std::size_t c = 0; c < cell.d_rows[r].size(); ++c) {
                    if (cell.d_rows[r][c]) as_vec.set(c, true);
                }
                images.push_back(std::move(as_vec));
            }
            cell.d_rank = gf2::rank(images);
        }

        seq.pages.push_back(std::move(page));
    }

    // First page whose dimensions agree with the final one.
    seq.stable_index = stop;
    for (int k = 0; k <= stop; ++k) {
        bool same = true;
        for (const auto& [key, cell] : seq.pages[stop].cells) {
            if (seq.pages[k].dim(key.first, key.second) != cell.dim) same = false;
        }
        for (const auto& [key, cell] : seq.pages[k].cells) {
            if (cell.dim != seq.pages[stop].dim(key.first, key.second)) same = false;
        }
        if (same) {
            bool zero_later = true;
            for (int r = k; r <= stop && zero_later; ++r) {
                for (const auto& [key, cell] : seq.pages[r].cells) {
                    if (cell.d_rank != 0) zero_later = false;
                }
            }
            if (zero_later) {
                seq.stable_index = k;
                break;
            }
        }
    }
    return seq;
}

SpectralPage e1_from_bundle(const BundleMorseData& data) {
    if (data.twisted)
        throw TwistedCoefficients("local-coefficient fiber systems are not supported");
    SpectralPage page;
    page.index = 1;
    for (const auto& b : data.base) {
        for (std::size_t j = 0; j < data.fiber_homology.size(); ++j) {
            if (data.fiber_homology[j] == 0) continue;
            page.cells[{b.index, static_cast<int>(j)}].dim += data.fiber_homology[j];
        }
    }
    return page;
}

SpectralPage e2_from_bundle(const BundleMorseData& data) {
    if (data.twisted)
        throw TwistedCoefficients("local-coefficient fiber systems are not supported");
    // Homology of the base complex over GF(2).
    const std::size_t n = data.base.size();
    std::vector<gf2::Vec> columns(n, gf2::Vec(n));
    for (const auto& [from, to] : data.base_boundary) {
        if (from >= n || to >= n)
            throw NotAComplex("base boundary references a missing critical point");
        if (data.base[to].index != data.base[from].index - 1)
            throw NotAComplex("base boundary does not lower the Morse index by one");
        columns[from].flip(to);
    }
    int top = 0;
    for (const auto& b : data.base) top = std::max(top, b.index);
    std::vector<std::vector<gf2::Vec>> d_by_index(top + 2);
    std::vector<std::size_t> dim_by_index(top + 1, 0);
    for (std::size_t g = 0; g < n; ++g) {
        ++dim_by_index[data.base[g].index];
        if (!columns[g].is_zero()) d_by_index[data.base[g].index].push_back(columns[g]);
    }
    std::vector<std::size_t> h(top + 1, 0);
    for (int i = 0; i <= top; ++i) {
        h[i] = dim_by_index[i] - gf2::rank(d_by_index[i]) -
               (i + 1 <= top ? gf2::rank(d_by_index[i + 1]) : 0);
    }

    SpectralPage page;
    page.index = 2;
    for (int i = 0; i <= top; ++i) {
        if (h[i] == 0) continue;
        for (std::size_t j = 0; j < data.fiber_homology.size(); ++j) {
            if (data.fiber_homology[j] == 0) continue;
            page.cells[{i, static_cast<int>(j)}].dim = h[i] * data.fiber_homology[j];
        }
    }
    return page;
}

FilteredComplex assemble_bundle_complex(const BundleMorseData& data) {
    if (data.twisted)
        throw TwistedCoefficients("local-coefficient fiber systems are not supported");
    std::vector<Generator> gens;
    std::map<std::string, std::uint32_t> by_name;
    std::map<std::pair<std::uint32_t, std::size_t>, std::vector<std::uint32_t>> slots;

    for (std::uint32_t b = 0; b < data.base.size(); ++b) {
        for (std::size_t j = 0; j < data.fiber_homology.size(); ++j) {
            for (std::size_t c = 0; c < data.fiber_homology[j]; ++c) {
                Generator g;
                g.name = data.base[b].name + "*h" + std::to_string(j) + "_" +
                         std::to_string(c);
                g.i = data.base[b].index;
                g.j = static_cast<int>(j);
                by_name[g.name] = static_cast<std::uint32_t>(gens.size());
                slots[{b, j}].push_back(static_cast<std::uint32_t>(gens.size()));
                gens.push_back(std::move(g));
            }
        }
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    // Base boundary acting slotwise on each fiber class.
    for (const auto& [from, to] : data.base_boundary) {
        for (std::size_t j = 0; j < data.fiber_homology.size(); ++j) {
            const auto& src = slots[{from, j}];
            const auto& dst = slots[{to, j}];
            for (std::size_t c = 0; c < src.size(); ++c)
                pairs.emplace_back(src[c], dst[c]);
        }
    }
    for (const auto& [from_name, to_name] : data.extra_blocks) {
        const auto fi = by_name.find(from_name);
        const auto ti = by_name.find(to_name);
        if (fi == by_name.end() || ti == by_name.end())
            throw NotAComplex("extra block references a missing assembled generator");
        pairs.emplace_back(fi->second, ti->second);
    }
    return FilteredComplex(std::move(gens), pairs);
}

SplittingReport splitting_check(const PageSequence& pages, int m, int n,
                                const std::vector<std::size_t>& betti) {
    if (pages.pages.size() < 2)
        throw Error("splitting_check needs at least pages 0 and 1");
    const SpectralPage& e1 = pages.pages[1];
    for (const auto& [key, cell] : e1.cells) {
        if (cell.dim != 0 && key.second != 0 && key.second != 2 * n - 1)
            throw DegreeMismatch("fiber homology is not concentrated in degrees 0 and " +
                                 std::to_string(2 * n - 1));
    }

    const SpectralPage& limit = pages.limit();
    SplittingReport report;
    report.h_2m = limit.total_dim(2 * m);

    auto beta = [&](int idx) -> std::size_t {
        if (idx < 0 || idx >= static_cast<int>(betti.size())) return 0;
        return betti[idx];
    };
    report.expected = beta(2 * m) + beta(2 * (m - n) + 1);
    report.splits = report.h_2m == report.expected;

    const SpectralPage& e2 =
        pages.pages.size() > 2 ? pages.pages[2] : pages.pages.back();
    report.e2_corner = e2.dim(2 * m, 0);
    report.limit_corner = limit.dim(2 * m, 0);
    report.corner_survives = report.limit_corner == report.e2_corner &&
                             report.e2_corner > 0;
    return report;
}

}  // namespace hz::spectral
