#pragma once

#include <cstdint>

#include "harmonica/field2.hpp"
#include "harmonica/graphcore.hpp"
#include "harmonica/poly2.hpp"

// Deterministic generator so every test run sees the same inputs.
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
};

inline harmonica::Poly2 random_poly(Rng& rng, int maxdeg) {
    harmonica::Poly2 p;
    int d = int(rng.below(uint64_t(maxdeg) + 1));
    for (int i = 0; i <= d; ++i)
        if (rng.next() & 1) p.set_coeff(i);
    return p;
}

inline harmonica::Poly2 random_nonzero_poly(Rng& rng, int maxdeg) {
    while (true) {
        harmonica::Poly2 p = random_poly(rng, maxdeg);
        if (!p.is_zero()) return p;
    }
}

inline uint64_t eval_in_field(const harmonica::Poly2& p, const harmonica::FieldCtx& k,
                              uint64_t z) {
    uint64_t acc = 0;
    for (int i = p.degree(); i >= 0; --i) {
        acc = k.mul(acc, z);
        if (p.coeff(i)) acc ^= 1;
    }
    return acc;
}

inline harmonica::Graph random_graph(Rng& rng, std::size_t n) {
    harmonica::Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.next() & 1) g.add_edge(u, v);
    return g;
}

// Random acyclic graph: each vertex beyond the first attaches to an earlier
// one three times out of four, so most samples have several components.
inline harmonica::Graph random_forest(Rng& rng, std::size_t n) {
    harmonica::Graph g(n);
    for (std::size_t v = 1; v < n; ++v)
        if (rng.below(4) != 0) g.add_edge(rng.below(v), v);
    return g;
}
