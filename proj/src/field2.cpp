#include "harmonica/field2.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <map>
#include <memory>
#include <mutex>

#include "harmonica/error.hpp"
#include "harmonica/nt.hpp"
#include "detail.hpp"

namespace harmonica {

using detail::clmul64;
using detail::splitmix64;

OrderProfile order_profile(uint64_t n) {
    if (n == 0 || n % 2 == 0) fail("EvenInput", "order profile needs odd n");
    if (n == 1) return {1, 1};
    uint64_t pw = 2 % n;
    for (uint64_t j = 1;; ++j) {
        if (pw == 1) return {j, j};
        if (pw == n - 1) return {2 * j, j};
        pw = (2 * pw) % n;
    }
}

FieldCtx::FieldCtx(int r) : r_(r) {
    for (uint64_t v = 0;; v += (v == 0 ? 1 : 2)) {
        Poly2 p = Poly2::from_mask((uint64_t{1} << r) | v);
        if (poly_irreducible(p)) {
            mod_ = p;
            break;
        }
    }
    lmask_ = mod_.mask64() ^ (uint64_t{1} << r);

    tmask_ = 0;
    for (int j = 0; j < r; ++j) {
        uint64_t t = 0, s = uint64_t{1} << j;
        for (int i = 0; i < r; ++i) {
            t ^= s;
            s = mul(s, s);
        }
        assert(t <= 1);
        if (t) tmask_ |= uint64_t{1} << j;
    }

    // Row-reduce the matrix of w -> w^2 + w alongside an identity block; the
    // recorded transform rows give a right-inverse on the trace-zero image.
    std::vector<uint64_t> mrow(std::size_t(r), 0), trow(std::size_t(r), 0);
    for (int j = 0; j < r; ++j) {
        uint64_t ej = uint64_t{1} << j;
        uint64_t col = mul(ej, ej) ^ ej;
        for (int i = 0; i < r; ++i)
            if ((col >> i) & 1) mrow[std::size_t(i)] |= uint64_t{1} << j;
    }
    for (int i = 0; i < r; ++i) trow[std::size_t(i)] = uint64_t{1} << i;
    artin_.assign(std::size_t(r), 0);
    std::vector<int> pivot_col(std::size_t(r), -1);
    int done = 0;
    for (int col = 0; col < r && done < r; ++col) {
        int pr = done;
        while (pr < r && !((mrow[std::size_t(pr)] >> col) & 1)) ++pr;
        if (pr == r) continue;
        std::swap(mrow[std::size_t(done)], mrow[std::size_t(pr)]);
        std::swap(trow[std::size_t(done)], trow[std::size_t(pr)]);
        for (int i = 0; i < r; ++i) {
            if (i != done && ((mrow[std::size_t(i)] >> col) & 1)) {
                mrow[std::size_t(i)] ^= mrow[std::size_t(done)];
                trow[std::size_t(i)] ^= trow[std::size_t(done)];
            }
        }
        pivot_col[std::size_t(done)] = col;
        ++done;
    }
    // Rows keep changing while later columns are cleared, so the solution
    // operator must be read off only after the elimination has finished.
    for (int i = 0; i < done; ++i)
        artin_[std::size_t(pivot_col[std::size_t(i)])] = trow[std::size_t(i)];

    fqm1_ = nt::factor(size_q() - 1);
    fqp1_ = nt::factor(size_q() + 1);
}

const FieldCtx& FieldCtx::get(int r) {
    if (r < 1 || r > 63) fail("DegreeOutOfRange", "field degree must be in 1..63");
    static std::array<std::unique_ptr<FieldCtx>, 64> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (!cache[std::size_t(r)]) cache[std::size_t(r)].reset(new FieldCtx(r));
    return *cache[std::size_t(r)];
}

uint64_t FieldCtx::mul(uint64_t a, uint64_t b) const {
    auto [hi, lo] = clmul64(a, b);
    const uint64_t rmask = (uint64_t{1} << r_) - 1;
    while (hi | (lo >> r_)) {
        uint64_t t = (hi << (64 - r_)) | (lo >> r_);
        lo &= rmask;
        auto [h2, l2] = clmul64(t, lmask_);
        hi = h2;
        lo ^= l2;
    }
    return lo;
}

uint64_t FieldCtx::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t FieldCtx::inv(uint64_t a) const {
    if (a == 0) fail("ZeroElement", "zero has no inverse");
    return pow(a, size_q() - 2);
}

int FieldCtx::trace(uint64_t a) const { return std::popcount(a & tmask_) & 1; }

uint64_t FieldCtx::artin_solve(uint64_t c) const {
    assert(trace(c) == 0);
    uint64_t w = 0;
    for (int i = 0; i < r_; ++i)
        if (std::popcount(artin_[std::size_t(i)] & c) & 1) w |= uint64_t{1} << i;
    if (w & 1) w ^= 1; // kernel is {0,1}: keep the lesser solution
    return w;
}

uint64_t FieldCtx::order_given(uint64_t a, uint64_t n,
                               const std::vector<std::pair<uint64_t, int>>& nf) const {
    uint64_t ord = n;
    for (auto [p, e] : nf) {
        for (int i = 0; i < e && ord % p == 0 && pow(a, ord / p) == 1; ++i) ord /= p;
    }
    return ord;
}

uint64_t FieldCtx::elem_order(uint64_t a) const {
    if (a == 0) fail("ZeroElement", "zero has no multiplicative order");
    return order_given(a, size_q() - 1, fqm1_);
}

std::string field_elem_str(const FieldElem& e) {
    return poly_hex(Poly2::from_mask(e.bits)) + "@r=" + std::to_string(e.r);
}

uint64_t elem_order(const FieldElem& e) { return FieldCtx::get(e.r).elem_order(e.bits); }

namespace {

// Minimal dense polynomial layer over a FieldCtx, little-endian coefficients.
using FPoly = std::vector<uint64_t>;

void ftrim(FPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FPoly fmul(const FPoly& a, const FPoly& b, const FieldCtx& k) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] ^= k.mul(a[i], b[j]);
    }
    ftrim(r);
    return r;
}

// Remainder mod monic m.
FPoly fmod(FPoly a, const FPoly& m, const FieldCtx& k) {
    assert(!m.empty() && m.back() == 1);
    if (m.size() == 1) return {};
    while (a.size() >= m.size()) {
        uint64_t c = a.back();
        if (c) {
            std::size_t off = a.size() - m.size();
            for (std::size_t i = 0; i + 1 < m.size(); ++i)
                if (m[i]) a[off + i] ^= k.mul(c, m[i]);
        }
        a.pop_back();
    }
    ftrim(a);
    return a;
}

// Quotient of a by monic m.
FPoly fdiv(FPoly a, const FPoly& m, const FieldCtx& k) {
    assert(!m.empty() && m.back() == 1);
    if (a.size() < m.size()) return {};
    FPoly q(a.size() - m.size() + 1, 0);
    while (a.size() >= m.size()) {
        uint64_t c = a.back();
        if (c) {
            std::size_t off = a.size() - m.size();
            q[off] = c;
            for (std::size_t i = 0; i + 1 < m.size(); ++i)
                if (m[i]) a[off + i] ^= k.mul(c, m[i]);
        }
        a.pop_back();
    }
    ftrim(q);
    return q;
}

void fmonic(FPoly& a, const FieldCtx& k) {
    if (a.empty() || a.back() == 1) return;
    uint64_t il = k.inv(a.back());
    for (uint64_t& c : a) c = k.mul(c, il);
}

FPoly fgcd(FPoly a, FPoly b, const FieldCtx& k) {
    ftrim(a);
    ftrim(b);
    while (!b.empty()) {
        fmonic(b, k);
        a = fmod(std::move(a), b, k);
        std::swap(a, b);
    }
    fmonic(a, k);
    return a;
}

// Roots of a monic squarefree g that splits into linear factors over k.
void split_linear(FPoly g, const FieldCtx& k, std::vector<uint64_t>& out, uint64_t& ctr) {
    while (true) {
        if (g.size() <= 1) return;
        if (g.size() == 2) {
            out.push_back(g[0]); // g = X + z
            return;
        }
        ++ctr;
        uint64_t c = splitmix64(ctr * 0x9e3779b97f4a7c15ull) & (k.size_q() - 1);
        if (c == 0) continue;
        // gcd with the trace map of c*X splits the root set.
        FPoly h = fmod(FPoly{0, c}, g, k);
        FPoly t = h;
        for (int i = 1; i < k.degree(); ++i) {
            h = fmod(fmul(h, h, k), g, k);
            if (h.size() > t.size()) t.resize(h.size(), 0);
            for (std::size_t j = 0; j < h.size(); ++j) t[j] ^= h[j];
        }
        ftrim(t);
        FPoly d = fgcd(g, t, k);
        if (d.size() > 1 && d.size() < g.size()) {
            FPoly rest = fdiv(std::move(g), d, k);
            split_linear(std::move(d), k, out, ctr);
            g = std::move(rest);
        }
    }
}

} // namespace

std::vector<uint64_t> poly_roots_in_field(const Poly2& p, const FieldCtx& ctx) {
    if (p.is_zero()) fail("ZeroPolynomial", "root finding needs a nonzero polynomial");
    FPoly fp(std::size_t(p.degree()) + 1, 0);
    for (int i = 0; i <= p.degree(); ++i)
        if (p.coeff(i)) fp[std::size_t(i)] = 1;
    if (fp.size() <= 1) return {};
    // gcd with X^q + X isolates the simple roots lying in the field.
    FPoly h{0, 1};
    for (int i = 0; i < ctx.degree(); ++i) h = fmod(fmul(h, h, ctx), fp, ctx);
    if (h.size() < 2) h.resize(2, 0);
    h[1] ^= 1;
    ftrim(h);
    FPoly g = fgcd(fp, h, ctx);
    std::vector<uint64_t> roots;
    uint64_t ctr = 0;
    split_linear(std::move(g), ctx, roots, ctr);
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

const std::vector<uint64_t>& embed_basis(int r, int t) {
    static std::map<std::pair<int, int>, std::vector<uint64_t>> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(r, t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const FieldCtx& big = FieldCtx::get(t);
    const FieldCtx& small = FieldCtx::get(r);
    std::vector<uint64_t> roots = poly_roots_in_field(small.modulus(), big);
    assert(!roots.empty());
    uint64_t rho = roots.front();
    std::vector<uint64_t> basis(std::size_t(r), 0);
    basis[0] = 1;
    for (int j = 1; j < r; ++j) basis[std::size_t(j)] = big.mul(basis[std::size_t(j) - 1], rho);
    return memo.emplace(key, std::move(basis)).first->second;
}

} // namespace

FieldElem embed(const FieldElem& a, int target_r) {
    if (a.r == target_r) return a;
    if (a.r < 1 || target_r < 1 || target_r % a.r != 0)
        fail("IncompatibleDegrees",
             "no embedding of F_2^" + std::to_string(a.r) + " into F_2^" + std::to_string(target_r));
    const std::vector<uint64_t>& basis = embed_basis(a.r, target_r);
    uint64_t out = 0;
    uint64_t bits = a.bits;
    while (bits) {
        int j = std::countr_zero(bits);
        bits &= bits - 1;
        out ^= basis[std::size_t(j)];
    }
    return {target_r, out};
}

QuadRoots unit_quadratic_roots(const FieldElem& ue) {
    const FieldCtx& k = FieldCtx::get(ue.r);
    uint64_t u = ue.bits & (k.size_q() - 1);
    QuadRoots out;
    if (u == 0) {
        out.kind = QuadRoots::DoubleOne;
        out.field_degree = ue.r;
        out.roots[0] = out.roots[1] = 1;
        return out;
    }
    uint64_t iu = k.inv(u);
    uint64_t c = k.mul(iu, iu);
    if (k.trace(c) == 0) {
        uint64_t w = k.artin_solve(c);
        uint64_t x1 = k.mul(u, w), x2 = x1 ^ u;
        out.kind = QuadRoots::SplitInField;
        out.field_degree = ue.r;
        out.roots[0] = std::min(x1, x2);
        out.roots[1] = std::max(x1, x2);
        return out;
    }
    if (2 * ue.r > 63)
        fail("FieldTooLarge", "conjugate roots need F_2^" + std::to_string(2 * ue.r));
    const FieldCtx& big = FieldCtx::get(2 * ue.r);
    uint64_t ub = embed({ue.r, u}, 2 * ue.r).bits;
    uint64_t iub = big.inv(ub);
    uint64_t cb = big.mul(iub, iub);
    uint64_t w = big.artin_solve(cb);
    uint64_t x1 = big.mul(ub, w), x2 = x1 ^ ub;
    out.kind = QuadRoots::ConjugatePair;
    out.field_degree = 2 * ue.r;
    out.roots[0] = std::min(x1, x2);
    out.roots[1] = std::max(x1, x2);
    return out;
}

} // namespace harmonica
