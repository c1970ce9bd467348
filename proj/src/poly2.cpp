#include "harmonica/poly2.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cctype>
#include <map>
#include <mutex>

#include "harmonica/chebfib.hpp"
#include "harmonica/error.hpp"
#include "harmonica/nt.hpp"
#include "detail.hpp"

namespace harmonica {

using detail::clmul64;

void Poly2::trim() {
    while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

Poly2 Poly2::monomial(int k) {
    Poly2 p;
    p.set_coeff(k);
    return p;
}

Poly2 Poly2::from_mask(uint64_t mask) {
    Poly2 p;
    if (mask) p.w_ = {mask};
    return p;
}

int Poly2::degree() const {
    if (w_.empty()) return -1;
    return int(64 * (w_.size() - 1) + 63 - std::countl_zero(w_.back()));
}

bool Poly2::coeff(int i) const {
    std::size_t k = std::size_t(i) >> 6;
    return k < w_.size() && ((w_[k] >> (i & 63)) & 1u);
}

Poly2& Poly2::set_coeff(int i, bool v) {
    std::size_t k = std::size_t(i) >> 6;
    if (v) {
        if (k >= w_.size()) w_.resize(k + 1, 0);
        w_[k] |= uint64_t{1} << (i & 63);
    } else if (k < w_.size()) {
        w_[k] &= ~(uint64_t{1} << (i & 63));
        trim();
    }
    return *this;
}

bool Poly2::operator<(const Poly2& o) const {
    if (w_.size() != o.w_.size()) return w_.size() < o.w_.size();
    for (std::size_t k = w_.size(); k-- > 0;)
        if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
    return false;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    if (o.w_.size() > w_.size()) w_.resize(o.w_.size(), 0);
    for (std::size_t k = 0; k < o.w_.size(); ++k) w_[k] ^= o.w_[k];
    trim();
    return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly2 r;
    r.w_.assign(a.w_.size() + b.w_.size(), 0);
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
        if (!a.w_[i]) continue;
        for (std::size_t j = 0; j < b.w_.size(); ++j) {
            if (!b.w_[j]) continue;
            auto [hi, lo] = clmul64(a.w_[i], b.w_[j]);
            r.w_[i + j] ^= lo;
            r.w_[i + j + 1] ^= hi;
        }
    }
    r.trim();
    return r;
}

Poly2 operator<<(const Poly2& p, int k) {
    if (p.is_zero() || k == 0) return p;
    std::size_t ws = std::size_t(k) >> 6;
    int bs = k & 63;
    Poly2 r;
    r.w_.assign(p.w_.size() + ws + 1, 0);
    for (std::size_t i = 0; i < p.w_.size(); ++i) {
        r.w_[i + ws] ^= p.w_[i] << bs;
        if (bs) r.w_[i + ws + 1] ^= p.w_[i] >> (64 - bs);
    }
    r.trim();
    return r;
}

Poly2 Poly2::square() const {
    Poly2 r;
    r.w_.assign(2 * w_.size(), 0);
    for (std::size_t i = 0; i < w_.size(); ++i) {
        auto [hi, lo] = clmul64(w_[i], w_[i]);
        r.w_[2 * i] = lo;
        r.w_[2 * i + 1] = hi;
    }
    r.trim();
    return r;
}

std::pair<Poly2, Poly2> poly_divmod(const Poly2& a, const Poly2& b) {
    if (b.is_zero()) fail("ZeroPolynomial", "division by the zero polynomial");
    int db = b.degree();
    Poly2 q, r = a;
    for (int dr = r.degree(); dr >= db; dr = r.degree()) {
        int k = dr - db;
        q.set_coeff(k);
        r += b << k;
    }
    return {q, r};
}

Poly2 operator/(const Poly2& a, const Poly2& b) { return poly_divmod(a, b).first; }
Poly2 operator%(const Poly2& a, const Poly2& b) { return poly_divmod(a, b).second; }

Poly2 poly_gcd(Poly2 a, Poly2 b) {
    while (!b.is_zero()) {
        a = a % b;
        std::swap(a, b);
    }
    return a;
}

Poly2 poly_derivative(const Poly2& p) {
    Poly2 r;
    r.words() = p.words();
    for (uint64_t& w : r.words()) w = (w >> 1) & 0x5555555555555555ull;
    while (!r.words().empty() && r.words().back() == 0) r.words().pop_back();
    return r;
}

Poly2 poly_mulmod(const Poly2& a, const Poly2& b, const Poly2& m) { return (a * b) % m; }

Poly2 poly_powmod(Poly2 a, uint64_t e, const Poly2& m) {
    Poly2 r = Poly2::one() % m;
    a = a % m;
    while (e) {
        if (e & 1) r = (r * a) % m;
        a = a.square() % m;
        e >>= 1;
    }
    return r;
}

Poly2 poly_compose(const Poly2& p, const Poly2& q) {
    if (p.is_zero()) return {};
    int d = p.degree();
    // powers q^(2^k) by repeated squaring; each term x^e maps to a product
    // over the set bits of e.
    std::vector<Poly2> pw{q};
    for (int k = 1; (1 << k) <= d && k < 31; ++k) pw.push_back(pw.back().square());
    Poly2 res;
    for (int e = 0; e <= d; ++e) {
        if (!p.coeff(e)) continue;
        Poly2 term = Poly2::one();
        for (int k = 0; (1 << k) <= e; ++k)
            if ((e >> k) & 1) term = term * pw[std::size_t(k)];
        res += term;
    }
    return res;
}

Poly2 poly_even_sqrt(const Poly2& p) {
    Poly2 r;
    int d = p.degree();
    for (int i = 0; i <= d; ++i) {
        if (!p.coeff(i)) continue;
        assert((i & 1) == 0);
        r.set_coeff(i / 2);
    }
    return r;
}

bool poly_irreducible(const Poly2& p) {
    int d = p.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    if (!p.coeff(0)) return false; // proper multiple of x
    const Poly2 x = Poly2::x();
    Poly2 h = x;
    for (int k = 1; 2 * k <= d; ++k) {
        h = h.square() % p;
        if (!poly_gcd(p, h + x).is_one()) return false;
    }
    for (int k = d / 2 + 1; k <= d; ++k) h = h.square() % p;
    return h == x;
}

namespace {

using detail::splitmix64;

// Deterministic element of GF(2)[x] with degree < dmax, varying with ctr.
Poly2 edf_probe(uint64_t ctr, int dmax) {
    Poly2 u;
    u.words().resize(std::size_t(dmax + 63) / 64);
    for (std::size_t k = 0; k < u.words().size(); ++k)
        u.words()[k] = splitmix64(ctr * 0x100000001b3ull + k);
    int top = dmax & 63;
    if (top) u.words().back() &= (uint64_t{1} << top) - 1;
    while (!u.words().empty() && u.words().back() == 0) u.words().pop_back();
    return u;
}

// Split a product of distinct irreducibles of equal degree k.
void equal_degree_split(const Poly2& g, int k, std::vector<Poly2>& out) {
    if (g.degree() == k) {
        out.push_back(g);
        return;
    }
    for (uint64_t ctr = 1;; ++ctr) {
        Poly2 u = edf_probe(ctr, g.degree());
        // Trace map of u over the degree-k subfield: sum of u^(2^i), i < k.
        Poly2 t = u % g, h = t;
        for (int i = 1; i < k; ++i) {
            h = h.square() % g;
            t += h;
        }
        Poly2 d = poly_gcd(g, t);
        if (!d.is_one() && d != g) {
            equal_degree_split(d, k, out);
            equal_degree_split(g / d, k, out);
            return;
        }
    }
}

// Distinct irreducible factors of a squarefree polynomial.
std::vector<Poly2> squarefree_factor(const Poly2& w) {
    std::vector<Poly2> out;
    Poly2 v = w;
    if (v.degree() <= 0) return out;
    const Poly2 x = Poly2::x();
    Poly2 h = x % v;
    for (int k = 1; 2 * k <= v.degree(); ++k) {
        h = h.square() % v;
        Poly2 g = poly_gcd(v, h + (x % v));
        if (!g.is_one()) {
            equal_degree_split(g, k, out);
            v = v / g;
            if (v.degree() <= 0) break;
            h = h % v;
        }
    }
    if (v.degree() > 0) out.push_back(v);
    return out;
}

void factor_rec(Poly2 p, int mult, std::map<Poly2, int>& acc) {
    if (p.is_one()) return;
    Poly2 dp = poly_derivative(p);
    if (dp.is_zero()) {
        factor_rec(poly_even_sqrt(p), 2 * mult, acc);
        return;
    }
    Poly2 w = p / poly_gcd(p, dp); // product of the odd-multiplicity primes
    for (const Poly2& tau : squarefree_factor(w)) {
        int e = 0;
        while (true) {
            auto [q, r] = poly_divmod(p, tau);
            if (!r.is_zero()) break;
            p = std::move(q);
            ++e;
        }
        acc[tau] += e * mult;
    }
    if (!p.is_one()) factor_rec(p, mult, acc); // leftover is a perfect square
}

} // namespace

FactorList poly_factor(const Poly2& p) {
    if (p.is_zero()) fail("ZeroPolynomial", "cannot factor the zero polynomial");
    std::map<Poly2, int> acc;
    factor_rec(p, 1, acc);
    return FactorList(acc.begin(), acc.end());
}

Poly2 poly_conjugate(const Poly2& p) {
    Poly2 r;
    for (int i = p.degree(); i >= 0; --i) {
        r += r << 1; // r *= (x+1)
        if (p.coeff(i)) r += Poly2::one();
    }
    return r;
}

Poly2 poly_reciprocal(const Poly2& p) {
    int d = p.degree();
    Poly2 r;
    for (int i = 0; i <= d; ++i)
        if (p.coeff(i)) r.set_coeff(d - i);
    return r;
}

Poly2 delta_map(const Poly2& p) { return p + poly_conjugate(p); }

Poly2 cyclotomic(uint64_t d) {
    if (d == 0 || d % 2 == 0) fail("EvenIndex", "cyclotomic index must be odd");
    static std::map<uint64_t, Poly2> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto rec = [](auto&& self, uint64_t n) -> Poly2 {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        Poly2 num = Poly2::monomial(int(n)) + Poly2::one();
        for (uint64_t e : nt::divisors(n))
            if (e < n) num = num / self(self, e);
        memo[n] = num;
        return num;
    };
    return rec(rec, d);
}

HPair h_family(int r) {
    if (r < 1 || r > 30) fail("DegreeOutOfRange", "h-family index must be in 1..30");
    HPair out;
    out.h = Poly2::monomial(1 << r) + Poly2::x() + Poly2::one();
    out.h_tilde = Poly2::one();
    for (int i = 0; i < r; ++i) out.h_tilde += Poly2::monomial(1 << i);
    return out;
}

Poly2 alpha_substitute(const Poly2& q) {
    return poly_compose(q, Poly2::from_mask(0b110));
}

Poly2 resultant_shift(const Poly2& p, const Poly2& q) {
    if (p.is_zero() || q.is_zero()) fail("ZeroPolynomial", "resultant of a zero polynomial");
    int m = p.degree(), n = q.degree();
    if (m == 0 || n == 0) return Poly2::one();
    // Coefficients of p(x+y) in y: c_k(x) = sum_i p_i binom(i,k) x^(i-k),
    // with binom odd iff (i & k) == k.
    std::vector<Poly2> c(std::size_t(m) + 1);
    for (int i = 0; i <= m; ++i) {
        if (!p.coeff(i)) continue;
        for (int k = 0; k <= i; ++k)
            if ((i & k) == k) c[std::size_t(k)].set_coeff(i - k, !c[std::size_t(k)].coeff(i - k));
    }
    std::size_t sz = std::size_t(m + n);
    std::vector<std::vector<Poly2>> s(sz, std::vector<Poly2>(sz));
    for (int j = 0; j < n; ++j)
        for (int t = 0; t <= m; ++t) s[std::size_t(j)][std::size_t(j + t)] = c[std::size_t(m - t)];
    for (int j = 0; j < m; ++j)
        for (int t = 0; t <= n; ++t)
            if (q.coeff(n - t)) s[std::size_t(n + j)][std::size_t(j + t)] = Poly2::one();
    return poly_matrix_det(s);
}

IrrProfile classify_irr(const Poly2& p) {
    if (p == Poly2::x()) fail("IsX", "x has no unit root data");
    if (!poly_irreducible(p)) fail("NotIrreducible", "classification needs an irreducible input");
    int d = p.degree();
    if (d > 63) fail("DegreeOutOfRange", "order computation needs degree <= 63");
    IrrProfile out;
    out.palindrome = (poly_reciprocal(p) == p);
    out.trace_bit = p.coeff(d - 1) ? 1 : 0;
    uint64_t group = (uint64_t{1} << d) - 1;
    out.ord = nt::order_in_group(
        Poly2::x(), group, Poly2::one() % p,
        [&](const Poly2& a, uint64_t e) { return poly_powmod(a, e, p); });
    out.ford = fib_order(p);
    return out;
}

std::string poly_text(const Poly2& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        if (!p.coeff(i)) continue;
        if (!s.empty()) s += '+';
        if (i == 0) s += '1';
        else if (i == 1) s += 'x';
        else s += "x^" + std::to_string(i);
    }
    return s;
}

std::string poly_hex(const Poly2& p) {
    if (p.is_zero()) return "0x0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    const auto& w = p.words();
    for (std::size_t k = w.size(); k-- > 0;) {
        for (int nib = 15; nib >= 0; --nib) {
            int v = int((w[k] >> (4 * nib)) & 15);
            if (s.empty() && v == 0 && !(k == 0 && nib == 0)) continue;
            s += digits[v];
        }
    }
    return "0x" + s;
}

Poly2 poly_parse(const std::string& input) {
    std::string s;
    for (char ch : input)
        if (!std::isspace((unsigned char)ch)) s += ch;
    if (s.empty()) fail("UsageError", "empty polynomial");
    if (s.size() > 2 && (s[1] == 'x' || s[1] == 'X') && s[0] == '0') {
        Poly2 p;
        std::string hex = s.substr(2);
        if (hex.empty()) fail("UsageError", "empty hex polynomial");
        for (std::size_t j = 0; j < hex.size(); ++j) {
            char ch = hex[hex.size() - 1 - j];
            int v;
            if (ch >= '0' && ch <= '9') v = ch - '0';
            else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
            else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
            else fail("UsageError", "bad hex digit in polynomial");
            for (int b = 0; b < 4; ++b)
                if ((v >> b) & 1) p.set_coeff(int(4 * j) + b);
        }
        return p;
    }
    if (s == "0") return {};
    Poly2 p;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find('+', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        int e;
        if (tok == "1") e = 0;
        else if (tok == "x") e = 1;
        else if (tok.size() > 2 && tok[0] == 'x' && tok[1] == '^') {
            e = 0;
            for (std::size_t i = 2; i < tok.size(); ++i) {
                if (!std::isdigit((unsigned char)tok[i]) || e > 100000000)
                    fail("UsageError", "bad exponent in polynomial term");
                e = e * 10 + (tok[i] - '0');
            }
        } else {
            fail("UsageError", "bad polynomial term '" + tok + "'");
        }
        p.set_coeff(e, !p.coeff(e));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return p;
}

Poly2 poly_matrix_det(const std::vector<std::vector<Poly2>>& m) {
    std::size_t n = m.size();
    if (n == 0) return Poly2::one();
    // Division-free characteristic-vector recursion; entry [r] of the final
    // vector is the determinant (signs vanish over GF(2)).
    std::vector<Poly2> v{Poly2::one(), m[0][0]};
    for (std::size_t r = 2; r <= n; ++r) {
        std::vector<Poly2> t(r + 1);
        t[0] = Poly2::one();
        t[1] = m[r - 1][r - 1];
        std::vector<Poly2> w(r - 1);
        for (std::size_t i = 0; i < r - 1; ++i) w[i] = m[i][r - 1];
        for (std::size_t k = 2; k <= r; ++k) {
            Poly2 s;
            for (std::size_t i = 0; i < r - 1; ++i) s += m[r - 1][i] * w[i];
            t[k] = s;
            if (k < r) {
                std::vector<Poly2> w2(r - 1);
                for (std::size_t i = 0; i < r - 1; ++i) {
                    Poly2 acc;
                    for (std::size_t j = 0; j < r - 1; ++j)
                        if (!m[i][j].is_zero() && !w[j].is_zero()) acc += m[i][j] * w[j];
                    w2[i] = std::move(acc);
                }
                w = std::move(w2);
            }
        }
        std::vector<Poly2> vn(r + 1);
        for (std::size_t i = 0; i <= r; ++i) {
            Poly2 acc;
            for (std::size_t j = 0; j < v.size() && j <= i; ++j) {
                std::size_t k = i - j;
                if (k <= r && !t[k].is_zero() && !v[j].is_zero()) acc += t[k] * v[j];
            }
            vn[i] = std::move(acc);
        }
        v = std::move(vn);
    }
    return v[n];
}

} // namespace harmonica
