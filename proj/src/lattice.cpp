#include "harmonica/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "harmonica/chebfib.hpp"
#include "harmonica/error.hpp"
#include "harmonica/field2.hpp"

namespace harmonica {

namespace {

constexpr uint64_t kGcdFastCap = uint64_t{1} << 16; // side cap for the gcd decision
constexpr uint64_t kMuTableCap = uint64_t{1} << 22; // per-coordinate torsion table
constexpr uint64_t kJOrderCap = uint64_t{1} << 27;  // pair recurrence steps
constexpr uint64_t kGraphCap = uint64_t{1} << 20;   // product graph vertices

void check_sides(const MultiIndex& nbar) {
    if (nbar.empty()) fail("UsageError", "empty side-length tuple");
    for (uint64_t v : nbar)
        if (v == 0) fail("UsageError", "side lengths must be positive");
}

uint64_t odd_part(uint64_t v) {
    while (v % 2 == 0) v /= 2;
    return v;
}

Graph cayley_cycle(uint64_t n) {
    if (n == 1) return Graph(1);
    if (n == 2) return Graph::path(2);
    return Graph::cycle(static_cast<std::size_t>(n));
}

Graph fold_product(const MultiIndex& nbar, Graph (*factor)(uint64_t)) {
    check_sides(nbar);
    uint64_t total = 1;
    for (uint64_t v : nbar) {
        total *= v;
        if (total > kGraphCap) fail("TooLarge", "product graph exceeds the vertex cap");
    }
    Graph g = factor(nbar[0]);
    for (std::size_t i = 1; i < nbar.size(); ++i) g = graph_product(g, factor(nbar[i]));
    return g;
}

// x + 1/x for a field element.
uint64_t self_sum(const FieldCtx& ctx, uint64_t x) { return x ^ ctx.inv(x); }

} // namespace

TorusDecision torus_harmonic(const MultiIndex& nbar) {
    check_sides(nbar);
    const std::size_t s = nbar.size();
    std::vector<uint64_t> m(s);
    for (std::size_t i = 0; i < s; ++i) m[i] = odd_part(nbar[i]);

    uint64_t lcm = 1;
    for (uint64_t v : m) {
        uint64_t g = std::gcd(lcm, v);
        __uint128_t wide = (__uint128_t)(lcm / g) * v;
        // 2^f = 1 mod lcm forces f > log2(lcm), so an overflowing lcm is
        // already past the 63-bit field cap.
        if (wide >> 63) fail("FieldTooLarge", "lcm of odd side parts exceeds the field cap");
        lcm = static_cast<uint64_t>(wide);
    }
    if (lcm == 1) return {};

    // A side with 3 | n_i admits the one-coordinate solution x_i of order 3
    // (x_i + 1/x_i = 1 in F_4), all other x_j = 1.  Handling it up front
    // keeps the certificate in F_4 no matter how large the other sides are.
    for (std::size_t i = 0; i < s; ++i)
        if (m[i] % 3 == 0) {
            TorusWitness w;
            w.field_degree = 2;
            w.orders.assign(s, 1);
            w.orders[i] = 3;
            return {true, std::move(w)};
        }

    bool known_solvable = false;
    if (s == 2 && m[0] <= kGcdFastCap && m[1] <= kGcdFastCap) {
        Poly2 shared = poly_gcd(cdf(CdfKind::T, m[0]),
                                poly_conjugate(cdf(CdfKind::T, m[1])));
        if (shared.is_one()) return {};
        known_solvable = true;
    }

    OrderProfile prof = order_profile(lcm);
    if (prof.f > 63) fail("FieldTooLarge", "solution field degree exceeds 63 bits");
    const FieldCtx& ctx = FieldCtx::get(static_cast<int>(prof.f));
    const uint64_t q = ctx.size_q();

    uint64_t gamma = 1;
    for (uint64_t a = 2; a < q; ++a)
        if (ctx.elem_order(a) == q - 1) { gamma = a; break; }

    // Torsion tables for all but the last coordinate, ascending for the
    // lexicographically least witness.
    std::vector<std::vector<uint64_t>> mu(s ? s - 1 : 0);
    for (std::size_t i = 0; i + 1 < s; ++i) {
        if (m[i] > kMuTableCap) fail("TooLarge", "torsion group too large to enumerate");
        uint64_t gen = ctx.pow(gamma, (q - 1) / m[i]);
        mu[i].reserve(m[i]);
        uint64_t e = 1;
        for (uint64_t j = 0; j < m[i]; ++j) {
            mu[i].push_back(e);
            e = ctx.mul(e, gen);
        }
        std::sort(mu[i].begin(), mu[i].end());
    }

    std::vector<uint64_t> pick(s, 0);
    const uint64_t m_last = m[s - 1];

    // Recursively fix the first s-1 coordinates; the last one must solve
    // x + 1/x = c, i.e. be a root of X^2 + cX + 1 of order dividing m_last.
    auto solve_last = [&](uint64_t c) -> bool {
        if (c == 0) { pick[s - 1] = 1; return true; }
        QuadRoots qr = unit_quadratic_roots({static_cast<int>(prof.f), c});
        if (qr.kind != QuadRoots::SplitInField) return false;
        for (uint64_t root : qr.roots)
            if (root != 0 && ctx.pow(root, m_last) == 1) {
                pick[s - 1] = root;
                return true;
            }
        return false;
    };
    auto descend = [&](auto&& self, std::size_t i, uint64_t partial) -> bool {
        if (i + 1 == s) return solve_last(partial ^ 1);
        for (uint64_t x : mu[i]) {
            pick[i] = x;
            if (self(self, i + 1, partial ^ self_sum(ctx, x))) return true;
        }
        return false;
    };
    if (!descend(descend, 0, 0)) {
        if (known_solvable)
            throw std::logic_error("polynomial test and direct search disagree");
        return {};
    }

    TorusWitness w;
    w.field_degree = static_cast<int>(prof.f);
    for (uint64_t x : pick) w.orders.push_back(ctx.elem_order(x));
    return {true, std::move(w)};
}

GridDims grid_kernel_dims(const MultiIndex& nbar) {
    check_sides(nbar);
    if (nbar.size() != 2) {
        Graph g = grid_graph(nbar);
        return {harmonic_kernel(g, Sign::Plus).d, harmonic_kernel(g, Sign::Minus).d};
    }
    GridDims out;
    out.dminus = static_cast<std::size_t>(std::gcd(nbar[0] + 1, nbar[1] + 1) - 1);
    Poly2 shared = poly_gcd(cdf(CdfKind::E, nbar[0]),
                            poly_conjugate(cdf(CdfKind::E, nbar[1])));
    out.dplus = static_cast<std::size_t>(shared.degree());
    if (nbar[0] * nbar[1] <= 400) {
        Graph g = grid_graph(nbar);
        if (harmonic_kernel(g, Sign::Plus).d != out.dplus ||
            harmonic_kernel(g, Sign::Minus).d != out.dminus)
            throw std::logic_error("grid dimension formulas disagree with elimination");
    }
    return out;
}

TorusFromPoly torus_from_poly(const Poly2& p, std::size_t which_root) {
    if (p.is_zero() || !p.coeff(0))
        fail("NonUnitConstantTerm", "polynomial must have constant term 1");
    if (p.degree() == 0) fail("NoRoots", "constant polynomial has no roots");

    FactorList factors = poly_factor(p);
    if (which_root >= factors.size())
        fail("UsageError", "root index exceeds the number of irreducible factors");
    const Poly2& tau = factors[which_root].first;

    uint64_t n = fib_order(tau);
    TorusFromPoly out;
    out.witness.field_degree = static_cast<int>(order_profile(n).f);
    for (uint64_t a : cheb_decompose(p)) {
        uint64_t ni = n / std::gcd(n, a);
        out.nbar.push_back(ni);
        out.witness.orders.push_back(ni);
    }
    return out;
}

uint64_t j_order(const Graph& g, Sign s) {
    if (g.size() == 0) return 1;
    Poly2 mu = gf2_min_poly(laplacian(g, s));
    Poly2 a = Poly2::zero(), b = Poly2::one(); // consecutive recurrence terms
    for (uint64_t n = 1; n <= kJOrderCap; ++n) {
        Poly2 next = ((b << 1) + a) % mu; // (a, b) = (F_{n-1}, F_n)
        if (a.is_one() && b.is_zero()) return n;
        a = std::move(b);
        b = std::move(next);
    }
    fail("TooLarge", "pair automorphism order exceeds the step cap");
}

Pattern extend_periodic(const Graph& g, const Pattern& f0, const Pattern& f1,
                        std::size_t n, Sign s) {
    if (n < 3) fail("UsageError", "need at least three layers");
    if (f0.size() != g.size() || f1.size() != g.size())
        fail("UsageError", "seed patterns must match the graph size");

    auto rows = laplacian(g, s);
    std::vector<Pattern> slice(n + 2);
    slice[0] = f0;
    slice[1] = f1;
    for (std::size_t i = 1; i <= n; ++i)
        slice[i + 1] = slice[i - 1] ^ gf2_apply(rows, slice[i]);
    if (slice[n] != slice[0] || slice[n + 1] != slice[1])
        fail("NotPeriodic", "seed orbit does not close after the requested layers");

    Pattern out(g.size() * n);
    for (std::size_t v = 0; v < g.size(); ++v)
        for (std::size_t i = 0; i < n; ++i)
            if (slice[i].get(v)) out.set(v * n + i);
    Graph prod = graph_product(g, Graph::cycle(n));
    if (gf2_apply(laplacian(prod, s), out).any())
        throw std::logic_error("periodic extension is not in the kernel");
    return out;
}

TorusPattern TorusPattern::zeros(std::size_t m, std::size_t n) {
    TorusPattern f;
    f.m = m;
    f.n = n;
    f.rows.assign(m, BitVec(n));
    return f;
}

TorusPattern TorusPattern::parse(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        fail("UsageError", "pattern is not a JSON object");
    if (!j.contains("dims") || !j.contains("rows"))
        fail("UsageError", "pattern needs dims and rows");
    const auto& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_unsigned() ||
        !dims[1].is_number_unsigned())
        fail("UsageError", "dims must be two nonnegative integers");
    std::size_t m = dims[0].get<std::size_t>(), n = dims[1].get<std::size_t>();
    if (m == 0 || n == 0) fail("UsageError", "dims must be positive");
    const auto& rows = j["rows"];
    if (!rows.is_array() || rows.size() != m)
        fail("UsageError", "rows must list one string per row");
    TorusPattern f = zeros(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (!rows[i].is_string()) fail("UsageError", "rows must be strings");
        std::string row = rows[i].get<std::string>();
        if (row.size() != n) fail("UsageError", "row width disagrees with dims");
        for (std::size_t jj = 0; jj < n; ++jj) {
            if (row[jj] != '0' && row[jj] != '1')
                fail("UsageError", "rows may contain only 0 and 1");
            f.set(i, jj, row[jj] == '1');
        }
    }
    return f;
}

std::string TorusPattern::json() const {
    nlohmann::json j;
    j["dims"] = {m, n};
    std::vector<std::string> out;
    out.reserve(m);
    for (const BitVec& row : rows) out.push_back(row.str());
    j["rows"] = out;
    return j.dump();
}

TorusPattern torus_apply(const TorusPattern& f, Sign s) {
    TorusPattern out = TorusPattern::zeros(f.m, f.n);
    for (std::size_t i = 0; i < f.m; ++i)
        for (std::size_t j = 0; j < f.n; ++j) {
            // The two cyclic neighbors along an axis coincide for side
            // lengths 1 and 2 and then cancel mod 2.
            bool acc = (s == Sign::Plus) && f.get(i, j);
            acc ^= f.get((i + 1) % f.m, j) ^ f.get((i + f.m - 1) % f.m, j);
            acc ^= f.get(i, (j + 1) % f.n) ^ f.get(i, (j + f.n - 1) % f.n);
            out.set(i, j, acc);
        }
    return out;
}

TorusPattern double_pattern(const TorusPattern& f) {
    TorusPattern out = TorusPattern::zeros(2 * f.m, 2 * f.n);
    for (std::size_t i = 0; i < f.m; ++i)
        for (std::size_t j = 0; j < f.n; ++j) {
            out.set(2 * i, 2 * j, f.get(i, j));
            out.set(2 * i, 2 * j + 1, f.get(i, j) ^ f.get(i, (j + 1) % f.n));
            out.set(2 * i + 1, 2 * j, f.get(i, j) ^ f.get((i + 1) % f.m, j));
        }
    return out;
}

std::pair<uint64_t, uint64_t> minimal_biperiod(const TorusPattern& f) {
    auto axis_period = [&](bool first) {
        std::size_t len = first ? f.m : f.n;
        for (std::size_t d = 1; d <= len; ++d) {
            if (len % d != 0) continue;
            bool ok = true;
            for (std::size_t i = 0; ok && i < f.m; ++i)
                for (std::size_t j = 0; ok && j < f.n; ++j) {
                    bool shifted = first ? f.get((i + d) % f.m, j)
                                         : f.get(i, (j + d) % f.n);
                    ok = shifted == f.get(i, j);
                }
            if (ok) return static_cast<uint64_t>(d);
        }
        return static_cast<uint64_t>(len);
    };
    return {axis_period(true), axis_period(false)};
}

Graph torus_graph(const MultiIndex& nbar) { return fold_product(nbar, cayley_cycle); }

Graph grid_graph(const MultiIndex& nbar) {
    return fold_product(nbar, +[](uint64_t n) {
        return Graph::path(static_cast<std::size_t>(n));
    });
}

Pattern flatten(const TorusPattern& f) {
    Pattern out(f.m * f.n);
    for (std::size_t i = 0; i < f.m; ++i)
        for (std::size_t j = 0; j < f.n; ++j)
            if (f.get(i, j)) out.set(i * f.n + j);
    return out;
}

} // namespace harmonica
