#include "harmonica/graphcore.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "harmonica/error.hpp"

namespace harmonica {

// --- construction ---

Graph Graph::path(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph Graph::cycle(std::size_t n) {
    if (n < 3) fail("CycleTooSmall", "cycle needs at least 3 vertices");
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Graph Graph::from_edges(std::size_t n,
                        const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u >= size() || v >= size()) fail("BadEdge", "vertex index out of range");
    if (u == v) fail("BadEdge", "loops are not allowed");
    adj_[u].set(v);
    adj_[v].set(u);
}

Graph Graph::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long long n = -1;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    while (std::getline(in, line)) {
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(a, b - a + 1);
        if (n < 0) {
            if (tok.rfind("n=", 0) != 0) fail("UsageError", "graph text must start with n=<count>");
            try {
                n = std::stoll(tok.substr(2));
            } catch (const std::exception&) {
                fail("UsageError", "bad vertex count: " + tok);
            }
            if (n < 0) fail("UsageError", "bad vertex count: " + tok);
            continue;
        }
        std::istringstream es(tok);
        long long u, v;
        if (!(es >> u >> v) || u < 0 || v < 0) fail("UsageError", "bad edge line: " + tok);
        std::string rest;
        if (es >> rest) fail("UsageError", "bad edge line: " + tok);
        edges.emplace_back(std::size_t(u), std::size_t(v));
    }
    if (n < 0) fail("UsageError", "graph text must start with n=<count>");
    return from_edges(std::size_t(n), edges);
}

std::string Graph::str() const {
    std::ostringstream out;
    out << "n=" << size() << "\n";
    for (const auto& [u, v] : edges()) out << u << " " << v << "\n";
    return out.str();
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& r : adj_) twice += r.count();
    return twice / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u)
        for (std::size_t v = u + 1; v < size(); ++v)
            if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
}

Graph Graph::induced(const std::vector<std::size_t>& keep) const {
    for (std::size_t v : keep)
        if (v >= size()) fail("BadVertex", "vertex index out of range");
    Graph g(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i + 1; j < keep.size(); ++j)
            if (adjacent(keep[i], keep[j])) g.add_edge(i, j);
    return g;
}

Graph Graph::disjoint_union(const Graph& o) const {
    Graph g(size() + o.size());
    for (const auto& [u, v] : edges()) g.add_edge(u, v);
    for (const auto& [u, v] : o.edges()) g.add_edge(size() + u, size() + v);
    return g;
}

bool Graph::is_forest() const {
    std::vector<std::size_t> parent(size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [u, v] : edges()) {
        std::size_t ru = find(u), rv = find(v);
        if (ru == rv) return false;
        parent[ru] = rv;
    }
    return true;
}

Graph graph_product(const Graph& a, const Graph& b) {
    std::size_t nb = b.size();
    Graph g(a.size() * nb);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            for (std::size_t j2 = j + 1; j2 < nb; ++j2)
                if (b.adjacent(j, j2)) g.add_edge(i * nb + j, i * nb + j2);
            for (std::size_t i2 = i + 1; i2 < a.size(); ++i2)
                if (a.adjacent(i, i2)) g.add_edge(i * nb + j, i2 * nb + j);
        }
    return g;
}

std::vector<BitVec> laplacian(const Graph& g, Sign s) {
    std::vector<BitVec> rows;
    rows.reserve(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        rows.push_back(g.row(v));
        if (s == Sign::Plus) rows.back().flip(v);
    }
    return rows;
}

// --- characteristic polynomials ---

Poly2 adjacency_charpoly(const Graph& g) {
    std::size_t n = g.size();
    std::vector<std::vector<Poly2>> m(n, std::vector<Poly2>(n));
    Poly2 x = Poly2::x();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) m[i][j] = x;
            else if (g.adjacent(i, j)) m[i][j] = Poly2::one();
        }
    return poly_matrix_det(m);
}

namespace {

// Parities of the i-matching counts, as bit i of a word, over the vertices
// not yet marked in `used`.
uint32_t matching_bits(const Graph& g, uint32_t used, uint32_t full,
                       std::vector<uint32_t>& memo) {
    if (used == full) return 1;
    uint32_t& slot = memo[used];
    if (slot != 0xFFFFFFFFu) return slot;
    int u = 0;
    while (used & (uint32_t{1} << u)) ++u;
    uint32_t res = matching_bits(g, used | (uint32_t{1} << u), full, memo);
    for (std::size_t v = std::size_t(u) + 1; v < g.size(); ++v)
        if (!(used & (uint32_t{1} << v)) && g.adjacent(std::size_t(u), v))
            res ^= matching_bits(g, used | (uint32_t{1} << u) | (uint32_t{1} << v),
                                 full, memo) << 1;
    return slot = res;
}

} // namespace

Poly2 matching_charpoly(const Graph& g) {
    std::size_t n = g.size();
    if (n > 16) fail("TooLarge", "matching enumeration capped at 16 vertices");
    uint32_t full = (uint32_t{1} << n) - 1;
    std::vector<uint32_t> memo(std::size_t{1} << n, 0xFFFFFFFFu);
    uint32_t bits = matching_bits(g, 0, full, memo);
    Poly2 chi;
    for (std::size_t i = 0; 2 * i <= n; ++i)
        if ((bits >> i) & 1u) chi.set_coeff(int(n - 2 * i), true);
    return chi;
}

// --- kernels ---

KernelBasis harmonic_kernel(const Graph& g, Sign s) {
    KernelBasis kb;
    kb.basis = gf2_kernel_basis(laplacian(g, s), g.size());
    kb.d = kb.basis.size();
    return kb;
}

// --- forest reduction ---

namespace {

struct Surgery {
    std::vector<BitVec> adj;     // shrinking adjacency rows
    std::vector<char> alive;

    explicit Surgery(const Graph& g) : alive(g.size(), 1) {
        adj.reserve(g.size());
        for (std::size_t v = 0; v < g.size(); ++v) adj.push_back(g.row(v));
    }

    std::size_t n() const { return adj.size(); }
    std::size_t deg(std::size_t v) const { return adj[v].count(); }

    std::vector<std::size_t> neighbors(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::size_t u = 0; u < n(); ++u)
            if (adj[v].get(u)) out.push_back(u);
        return out;
    }

    void remove(std::size_t v) {
        for (std::size_t u = 0; u < n(); ++u)
            if (adj[v].get(u)) adj[u].set(v, false);
        adj[v] = BitVec(n());
        alive[v] = 0;
    }
};

} // namespace

ForestReduction forest_reduce(const Graph& g, Sign sign) {
    if (!g.is_forest()) fail("NotAForest", "reduction applies to acyclic graphs only");
    std::size_t n = g.size();
    Surgery s(g);
    ForestReduction out;

    if (sign == Sign::Minus) {
        // Delete the lowest-indexed leaf together with its neighbor.
        for (;;) {
            std::size_t u = n;
            for (std::size_t c = 0; c < n; ++c)
                if (s.alive[c] && s.deg(c) == 1) { u = c; break; }
            if (u == n) break;
            std::size_t v = std::size_t(s.adj[u].lowest());
            ReductionStep step{ReductionStep::LeafPair, u, v, 0, {}};
            for (std::size_t t : s.neighbors(v))
                if (t != u) step.spill.push_back(t);
            s.remove(u);
            s.remove(v);
            out.journal.push_back(std::move(step));
        }
    } else {
        for (;;) {
            // Twin leaves: lowest-indexed vertex carrying two of them.
            std::size_t tu = n, tv = n, tw = n;
            for (std::size_t w = 0; w < n && tw == n; ++w) {
                if (!s.alive[w]) continue;
                std::size_t first = n;
                for (std::size_t c : s.neighbors(w)) {
                    if (s.deg(c) != 1) continue;
                    if (first == n) first = c;
                    else { tu = first; tv = c; tw = w; break; }
                }
            }
            if (tw != n) {
                out.journal.push_back({ReductionStep::TwinLeaves, tu, tv, tw, {}});
                s.remove(tu);
                s.remove(tv);
                continue;
            }
            // End edge: leaf u, its degree-2 neighbor v, attachment w; all go.
            std::size_t eu = n;
            for (std::size_t c = 0; c < n && eu == n; ++c) {
                if (!s.alive[c] || s.deg(c) != 1) continue;
                std::size_t v = std::size_t(s.adj[c].lowest());
                if (s.deg(v) == 2) eu = c;
            }
            if (eu == n) break;
            std::size_t ev = std::size_t(s.adj[eu].lowest());
            std::size_t ew = n;
            for (std::size_t t : s.neighbors(ev))
                if (t != eu) ew = t;
            ReductionStep step{ReductionStep::EndEdge, eu, ev, ew, {}};
            for (std::size_t t : s.neighbors(ew))
                if (t != ev) step.spill.push_back(t);
            s.remove(eu);
            s.remove(ev);
            s.remove(ew);
            out.journal.push_back(std::move(step));
        }
    }

    for (std::size_t v = 0; v < n; ++v) {
        if (!s.alive[v]) continue;
        if (s.deg(v) > 1 || (sign == Sign::Minus && s.deg(v) != 0))
            throw std::logic_error("forest reduction left an unreduced component");
        out.survivors.push_back(v);
    }
    out.reduced = g.induced(out.survivors);

    // Seed kernel elements on what survived, then undo the journal, which only
    // ever reads values at vertices deleted later or never.
    std::vector<Pattern> seeds;
    if (sign == Sign::Minus) {
        for (std::size_t v : out.survivors) seeds.push_back(BitVec::unit(n, v));
    } else {
        for (std::size_t v : out.survivors) {
            if (s.deg(v) != 1) continue;
            std::size_t u = std::size_t(s.adj[v].lowest());
            if (u < v) continue; // one seed per surviving edge
            Pattern p(n);
            p.set(v);
            p.set(u);
            seeds.push_back(p);
        }
    }
    for (Pattern& f : seeds) {
        for (auto it = out.journal.rbegin(); it != out.journal.rend(); ++it) {
            bool acc = false;
            for (std::size_t t : it->spill) acc ^= f.get(t);
            switch (it->kind) {
            case ReductionStep::LeafPair: f.set(it->u, acc); break;
            case ReductionStep::TwinLeaves:
                f.set(it->u, f.get(it->w));
                f.set(it->v, f.get(it->w));
                break;
            case ReductionStep::EndEdge:
                f.set(it->u, acc);
                f.set(it->v, acc);
                break;
            }
        }
    }
    gf2_rref(seeds);
    out.d = seeds.size();
    out.basis = std::move(seeds);

    KernelBasis direct = harmonic_kernel(g, sign);
    if (direct.d != out.d || direct.basis != out.basis)
        throw std::logic_error("forest reduction disagrees with direct elimination");
    return out;
}

// --- uniqueness sets ---

bool is_uniqueness_set(const Graph& g, const std::vector<std::size_t>& u, Sign s) {
    for (std::size_t v : u)
        if (v >= g.size()) fail("BadVertex", "vertex index out of range");
    KernelBasis kb = harmonic_kernel(g, s);
    std::vector<BitVec> restricted;
    restricted.reserve(kb.basis.size());
    for (const BitVec& h : kb.basis) {
        BitVec r(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            if (h.get(u[i])) r.set(i);
        restricted.push_back(std::move(r));
    }
    return gf2_rank(std::move(restricted)) == kb.d;
}

// --- generalized inverse ---

std::vector<BitVec> pseudo_inverse(const Graph& g, Sign s) {
    std::size_t n = g.size();
    std::vector<BitVec> rows = laplacian(g, s);
    std::vector<BitVec> track = gf2_identity(n);
    std::size_t done = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < n && done < n; ++col) {
        std::size_t pick = n;
        for (std::size_t i = done; i < n; ++i)
            if (rows[i].get(col)) { pick = i; break; }
        if (pick == n) continue;
        std::swap(rows[pick], rows[done]);
        std::swap(track[pick], track[done]);
        for (std::size_t i = 0; i < n; ++i)
            if (i != done && rows[i].get(col)) {
                rows[i] ^= rows[done];
                track[i] ^= track[done];
            }
        pivots.push_back(col);
        ++done;
    }
    // With R the accumulated row transform and p_j the pivot columns, the map
    // built from rows R_0..R_{r-1} placed at the pivot positions satisfies
    // D k D = D: the RREF's pivot columns are unit vectors.
    std::vector<BitVec> kappa(n, BitVec(n));
    for (std::size_t j = 0; j < pivots.size(); ++j) kappa[pivots[j]] = track[j];
    return kappa;
}

// --- dense helpers ---

std::vector<BitVec> gf2_identity(std::size_t n) {
    std::vector<BitVec> m(n, BitVec(n));
    for (std::size_t i = 0; i < n; ++i) m[i].set(i);
    return m;
}

std::vector<BitVec> gf2_mat_mul(const std::vector<BitVec>& a, const std::vector<BitVec>& b) {
    std::size_t n = a.size();
    std::vector<BitVec> c(n, BitVec(b.empty() ? 0 : b[0].size()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            if (a[i].get(k)) c[i] ^= b[k];
    return c;
}

std::vector<BitVec> gf2_mat_pow(std::vector<BitVec> m, uint64_t e) {
    std::vector<BitVec> acc = gf2_identity(m.size());
    while (e) {
        if (e & 1) acc = gf2_mat_mul(acc, m);
        e >>= 1;
        if (e) m = gf2_mat_mul(m, m);
    }
    return acc;
}

namespace {

BitVec flatten(const std::vector<BitVec>& m) {
    std::size_t n = m.size();
    BitVec v(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m[i].get(j)) v.set(i * n + j);
    return v;
}

} // namespace

Poly2 gf2_min_poly(const std::vector<BitVec>& m) {
    std::size_t n = m.size();
    std::vector<std::pair<BitVec, Poly2>> reduced; // (echelon vector, combination)
    std::vector<BitVec> power = gf2_identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
        BitVec cur = flatten(power);
        Poly2 combo;
        combo.set_coeff(int(k), true);
        for (const auto& [vec, cmb] : reduced)
            if (cur.get(std::size_t(vec.lowest()))) {
                cur ^= vec;
                combo += cmb;
            }
        if (!cur.any()) return combo;
        reduced.emplace_back(std::move(cur), std::move(combo));
        power = gf2_mat_mul(power, m);
    }
    throw std::logic_error("no minimal polynomial within the dimension bound");
}

uint64_t gf2_mat_order(const std::vector<BitVec>& m, uint64_t bound) {
    if (gf2_rank(m) != m.size()) fail("NotInvertible", "singular matrices have no order");
    std::vector<BitVec> id = gf2_identity(m.size());
    std::vector<BitVec> p = m;
    for (uint64_t j = 1; j <= bound; ++j) {
        if (p == id) return j;
        p = gf2_mat_mul(p, m);
    }
    fail("OrderNotFound", "order exceeds the supplied bound");
}

} // namespace harmonica
