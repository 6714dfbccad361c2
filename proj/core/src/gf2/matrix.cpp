#include "hz/gf2/matrix.hpp"

#include <algorithm>

namespace hz::gf2 {

std::vector<Vec> nullspace(const std::vector<Vec>& rows, std::size_t ncols) {
    // Row echelon with pivot bookkeeping; free columns generate the kernel.
    std::vector<Vec> work = rows;
    std::vector<std::size_t> pivot_of_row;
    std::vector<bool> is_pivot(ncols, false);
    std::size_t rank = 0;

    for (std::size_t col = 0; col < ncols && rank < work.size(); ++col) {
        std::size_t sel = work.size();
        for (std::size_t r = rank; r < work.size(); ++r) {
            if (work[r].get(col)) { sel = r; break; }
        }
        if (sel == work.size()) continue;
        std::swap(work[rank], work[sel]);
        for (std::size_t r = 0; r < work.size(); ++r) {
            if (r != rank && work[r].get(col)) work[r] ^= work[rank];
        }
        pivot_of_row.push_back(col);
        is_pivot[col] = true;
        ++rank;
    }

    std::vector<Vec> kernel;
    for (std::size_t col = 0; col < ncols; ++col) {
        if (is_pivot[col]) continue;
        Vec v(ncols);
        v.set(col, true);
        for (std::size_t r = 0; r < rank; ++r) {
            if (work[r].get(col)) v.set(pivot_of_row[r], true);
        }
        kernel.push_back(std::move(v));
    }
    return kernel;
}

}  // namespace hz::gf2
