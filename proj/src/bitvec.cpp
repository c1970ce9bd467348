#include "harmonica/bitvec.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace harmonica {

BitVec BitVec::from_string(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') v.set(i);
    return v;
}

BitVec BitVec::unit(std::size_t n, std::size_t i) {
    BitVec v(n);
    v.set(i);
    return v;
}

BitVec BitVec::ones(std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i);
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
}

bool BitVec::dot(const BitVec& o) const {
    assert(n_ == o.n_);
    uint64_t acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return std::popcount(acc) & 1;
}

bool BitVec::any() const {
    for (uint64_t w : w_)
        if (w) return true;
    return false;
}

std::size_t BitVec::count() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

int BitVec::lowest() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k]) return int(64 * k + std::countr_zero(w_[k]));
    return -1;
}

int BitVec::highest() const {
    for (std::size_t k = w_.size(); k-- > 0;)
        if (w_[k]) return int(64 * k + 63 - std::countl_zero(w_[k]));
    return -1;
}

bool BitVec::operator<(const BitVec& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (std::size_t k = w_.size(); k-- > 0;)
        if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
    return false;
}

std::string BitVec::str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::vector<int> gf2_rref(std::vector<BitVec>& rows) {
    std::vector<int> pivots;
    std::size_t done = 0; // rows above are settled
    std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < ncols && done < rows.size(); ++col) {
        std::size_t pr = done;
        while (pr < rows.size() && !rows[pr].get(col)) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[done], rows[pr]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != done && rows[r].get(col)) rows[r] ^= rows[done];
        pivots.push_back(int(col));
        ++done;
    }
    rows.resize(done);
    return pivots;
}

std::size_t gf2_rank(std::vector<BitVec> rows) {
    return gf2_rref(rows).size();
}

std::vector<BitVec> gf2_kernel_basis(const std::vector<BitVec>& rows_in, std::size_t ncols) {
    std::vector<BitVec> rows = rows_in;
    std::vector<int> pivots = gf2_rref(rows);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : pivots) is_pivot[std::size_t(p)] = true;
    std::vector<BitVec> basis;
    for (std::size_t j = 0; j < ncols; ++j) {
        if (is_pivot[j]) continue;
        BitVec v(ncols);
        v.set(j);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            if (rows[k].get(j)) v.set(std::size_t(pivots[k]));
        basis.push_back(std::move(v));
    }
    gf2_rref(basis);
    return basis;
}

Gf2Solution gf2_solve(const std::vector<BitVec>& rows, std::size_t ncols, const BitVec& b) {
    assert(rows.size() == b.size());
    std::vector<BitVec> aug;
    aug.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        BitVec row(ncols + 1);
        for (std::size_t j = 0; j < ncols; ++j)
            if (rows[r].get(j)) row.set(j);
        if (b.get(r)) row.set(ncols);
        aug.push_back(std::move(row));
    }
    std::vector<int> pivots = gf2_rref(aug);
    Gf2Solution out;
    if (!pivots.empty() && std::size_t(pivots.back()) == ncols) return out; // 0 = 1 row
    out.consistent = true;
    out.x = BitVec(ncols);
    for (std::size_t k = 0; k < pivots.size(); ++k)
        if (aug[k].get(ncols)) out.x.set(std::size_t(pivots[k]));
    return out;
}

bool gf2_same_span(std::vector<BitVec> a, std::vector<BitVec> b) {
    gf2_rref(a);
    gf2_rref(b);
    return a == b;
}

bool gf2_in_span(std::vector<BitVec> rows, const BitVec& v) {
    std::size_t r = gf2_rank(rows);
    rows.push_back(v);
    return gf2_rank(std::move(rows)) == r;
}

BitVec gf2_apply(const std::vector<BitVec>& rows, const BitVec& x) {
    BitVec y(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].dot(x)) y.set(r);
    return y;
}

} // namespace harmonica
