#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hz/errors.hpp"

namespace hz::gf2 {

// Dense GF(2) vector packed into 64-bit words.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t size) : size_(size), w_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) w_[i >> 6] |= mask; else w_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    Vec& operator^=(const Vec& other) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= other.w_[k];
        return *this;
    }

    bool is_zero() const {
        for (auto word : w_) if (word != 0) return false;
        return true;
    }

    // Index of the lowest set bit; size() if zero.
    std::size_t lowest() const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            if (w_[k] != 0)
                return (k << 6) + static_cast<std::size_t>(__builtin_ctzll(w_[k]));
        }
        return size_;
    }

    bool operator==(const Vec& other) const {
        return size_ == other.size_ && w_ == other.w_;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> w_;
};

// Echelonized row space: every stored row owns a distinct pivot column and
// is reduced against the others as it goes in.
class RowBasis {
public:
    // Reduces v against the basis in place; returns the residue.
    Vec reduce(Vec v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (v.get(pivots_[r])) v ^= rows_[r];
        }
        return v;
    }

    // Adds v if independent; returns true when the dimension grew.
    bool add(Vec v) {
        v = reduce(std::move(v));
        if (v.is_zero()) return false;
        pivots_.push_back(v.lowest());
        rows_.push_back(std::move(v));
        return true;
    }

    bool contains(const Vec& v) const { return reduce(v).is_zero(); }
    std::size_t dim() const { return rows_.size(); }

private:
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

// Quotient (denominator + representatives) with coordinate tracking: each
// internal row remembers its expression over the accepted representatives,
// so classes can be written in the representative basis.
class QuotientSpace {
public:
    void add_denominator(Vec v) { insert(std::move(v), /*rep=*/false); }

    // Returns the representative index, or -1 if v is already in the span.
    int add_numerator(Vec v) { return insert(std::move(v), /*rep=*/true); }

    std::size_t dim() const { return reps_.size(); }
    const std::vector<Vec>& reps() const { return reps_; }

    // Coordinates of [v] over the representatives. v must lie in the span
    // of denominator + representatives.
    std::vector<std::uint8_t> coords(Vec v) const {
        std::vector<std::uint8_t> out(reps_.size(), 0);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (v.get(pivots_[r])) {
                v ^= rows_[r];
                for (std::size_t c = 0; c < coeffs_[r].size(); ++c)
                    out[c] ^= coeffs_[r][c];
            }
        }
        if (!v.is_zero())
            throw Error("QuotientSpace::coords: vector outside the span");
        return out;
    }

private:
    int insert(Vec v, bool rep) {
        std::vector<std::uint8_t> acc(reps_.size(), 0);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (v.get(pivots_[r])) {
                v ^= rows_[r];
                for (std::size_t c = 0; c < coeffs_[r].size(); ++c)
                    acc[c] ^= coeffs_[r][c];
            }
        }
        if (v.is_zero()) return -1;
        if (rep) {
            reps_.push_back(v);  // store the reduced representative
            acc.resize(reps_.size(), 0);
            acc[reps_.size() - 1] ^= 1;
        }
        pivots_.push_back(v.lowest());
        rows_.push_back(std::move(v));
        coeffs_.push_back(std::move(acc));
        return rep ? static_cast<int>(reps_.size()) - 1 : -1;
    }

    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<std::uint8_t>> coeffs_;
    std::vector<Vec> reps_;
};

// Rank of a list of rows.
inline std::size_t rank(const std::vector<Vec>& rows) {
    RowBasis basis;
    for (const auto& r : rows) basis.add(r);
    return basis.dim();
}

// Kernel basis of the linear map with the given rows acting on coordinate
// vectors of length ncols (rows[r].get(c) is the (r, c) entry).
std::vector<Vec> nullspace(const std::vector<Vec>& rows, std::size_t ncols);

}  // namespace hz::gf2
