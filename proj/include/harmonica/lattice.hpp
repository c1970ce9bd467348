#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "harmonica/graphcore.hpp"
#include "harmonica/poly2.hpp"

namespace harmonica {

// Side lengths (n_1, ..., n_s) of a torus or grid, each >= 1.
using MultiIndex = std::vector<uint64_t>;

// A solution certificate for the torus equation
//   sum_i (x_i + 1/x_i) = 1,  x_i^{n_i} = 1,
// reported as the multiplicative orders of the x_i together with the
// degree of the field the tuple was found in.
struct TorusWitness {
    std::vector<uint64_t> orders; // ord x_i; divides n_i
    int field_degree = 0;
};

struct TorusDecision {
    bool harmonic = false;
    std::optional<TorusWitness> witness;
};

// Does a nonzero nbar-periodic harmonic function on Z^s exist?  Powers of
// two in the side lengths are immaterial and are stripped first; the
// remaining odd tuple is decided for s = 2 by a polynomial gcd and in
// general by enumeration over the torsion groups mu_{n_i} with the last
// coordinate recovered from a unit quadratic.  When some side is divisible
// by 3 the witness is the obvious one-coordinate solution (found in F_4);
// otherwise it is the lexicographically least solution tuple (by element
// encoding) in the enumeration field.
TorusDecision torus_harmonic(const MultiIndex& nbar); // UsageError, FieldTooLarge, TooLarge

// Kernel dimensions (d+, d-) of the grid with nbar vertices per side.
// For s = 2 closed forms are used and cross-checked against direct
// elimination when the grid has at most 400 vertices.
struct GridDims {
    std::size_t dplus = 0, dminus = 0;
};
GridDims grid_kernel_dims(const MultiIndex& nbar); // UsageError

// Build a harmonic torus from a polynomial with p(0) = 1: pick the
// which_root-th irreducible factor (sorted), let z be one of its roots,
// write z = zeta + 1/zeta with n = ord(zeta), and read the side lengths
// off the unique expansion p = 1 + sum T_{a_i} as n_i = n / gcd(n, a_i).
struct TorusFromPoly {
    MultiIndex nbar;
    TorusWitness witness;
};
TorusFromPoly torus_from_poly(const Poly2& p, std::size_t which_root);
// NonUnitConstantTerm, NoRoots, UsageError

// Order of the pair-propagation automorphism J = [[0,1],[1,D]] built from
// the chosen laplacian D: the least n with F_{n-1}(D) = id, F_n(D) = 0.
uint64_t j_order(const Graph& g, Sign s); // TooLarge past the step cap

// Extend the seed pair (f0, f1) through f_{i+1} = f_{i-1} + D f_i to a
// pattern on g x C_n (vertex (v, i) at index v*n + i); the extension
// exists iff the orbit closes up after n steps.
Pattern extend_periodic(const Graph& g, const Pattern& f0, const Pattern& f1,
                        std::size_t n, Sign s); // UsageError, NotPeriodic

// A binary pattern on the torus with side lengths (m, n), stored as m
// rows of n bits.  Serialized as {"dims":[m,n],"rows":["110",...]}.
struct TorusPattern {
    std::size_t m = 0, n = 0;
    std::vector<BitVec> rows;

    static TorusPattern zeros(std::size_t m, std::size_t n);
    static TorusPattern parse(const std::string& json_text); // UsageError
    std::string json() const;

    bool get(std::size_t i, std::size_t j) const { return rows[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v = true) { rows[i].set(j, v); }
    bool operator==(const TorusPattern&) const = default;
};

// The quotient-of-Z^2 laplacian on a torus pattern: each axis contributes
// the two cyclic neighbors, which cancel mod 2 when the side length is 1
// or 2.  Agrees with the product-graph laplacian for sides >= 3.
TorusPattern torus_apply(const TorusPattern& f, Sign s);

// Interleaving doubling stencil: even-even positions copy f, odd-even and
// even-odd positions take the two adjacent sums, odd-odd positions are 0.
// Maps (m, n) patterns to (2m, 2n) patterns and preserves harmonicity.
TorusPattern double_pattern(const TorusPattern& f);

// Least per-axis shift periods (divisors of m and n).
std::pair<uint64_t, uint64_t> minimal_biperiod(const TorusPattern& f);

// The torus as a simple graph: the product of cycle Cayley graphs of
// Z/n_i (one vertex for n_i = 1, one edge for n_i = 2), vertices in
// row-major order.
Graph torus_graph(const MultiIndex& nbar); // UsageError

// The grid with nbar vertices per side: the product of paths.
Graph grid_graph(const MultiIndex& nbar); // UsageError

// Row-major flattening of a torus pattern onto torus_graph({m, n}).
Pattern flatten(const TorusPattern& f);

} // namespace harmonica
