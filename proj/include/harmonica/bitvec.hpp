#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace harmonica {

// Fixed-length vector over GF(2), packed 64 bits per word, bit i of word k
// holding coordinate 64k + i.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_string(const std::string& s); // '0'/'1' characters
    static BitVec unit(std::size_t n, std::size_t i);
    static BitVec ones(std::size_t n);

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        if (v) w_[i >> 6] |= uint64_t{1} << (i & 63);
        else   w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }

    bool dot(const BitVec& o) const; // parity of the coordinate-wise AND
    bool any() const;
    std::size_t count() const;
    int lowest() const;  // least set index, -1 if none
    int highest() const; // greatest set index, -1 if none

    bool operator==(const BitVec&) const = default;
    bool operator<(const BitVec& o) const; // length, then value (low bit = least significant)

    std::string str() const; // '0'/'1' characters, index 0 first

    const std::vector<uint64_t>& words() const { return w_; }
    std::vector<uint64_t>& words() { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

// Row reduction over GF(2). Rows all share one length (the column count).

// Reduce rows in place to reduced row-echelon form (pivot = lowest set index,
// scanning columns left to right); zero rows are dropped. Returns pivot columns.
std::vector<int> gf2_rref(std::vector<BitVec>& rows);

std::size_t gf2_rank(std::vector<BitVec> rows);

// Basis of { x : Mx = 0 }, returned in reduced row-echelon form.
std::vector<BitVec> gf2_kernel_basis(const std::vector<BitVec>& rows, std::size_t ncols);

struct Gf2Solution {
    bool consistent = false;
    BitVec x; // one solution (free variables zero) when consistent
};

// Solve Mx = b, M given by rows.
Gf2Solution gf2_solve(const std::vector<BitVec>& rows, std::size_t ncols, const BitVec& b);

// Do the given rows span the same row space?
bool gf2_same_span(std::vector<BitVec> a, std::vector<BitVec> b);

// Is v in the row space of rows?
bool gf2_in_span(std::vector<BitVec> rows, const BitVec& v);

// Product M·x for row-major M.
BitVec gf2_apply(const std::vector<BitVec>& rows, const BitVec& x);

} // namespace harmonica
