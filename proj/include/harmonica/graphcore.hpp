#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bitvec.hpp"
#include "poly2.hpp"

namespace harmonica {

// Which of the two GF(2) laplacians is meant: Plus is the ball average
// I + adj (harmonic functions), Minus the sphere average adj (antiharmonic).
enum class Sign { Plus, Minus };

inline const char* sign_str(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }

// A pattern is a GF(2)-valued function on the vertices of a graph.
using Pattern = BitVec;

// Finite simple undirected graph, adjacency kept as bit rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n, BitVec(n)) {}

    static Graph path(std::size_t n);  // P_n: n vertices 0-1-...-(n-1)
    static Graph cycle(std::size_t n); // C_n: n >= 3; CycleTooSmall
    static Graph from_edges(std::size_t n,
                            const std::vector<std::pair<std::size_t, std::size_t>>& edges); // BadEdge

    // Text format: first line "n=<count>", then one "u v" line per edge.
    static Graph parse(const std::string& text); // UsageError
    std::string str() const;

    std::size_t size() const { return adj_.size(); }
    std::size_t edge_count() const;
    bool adjacent(std::size_t u, std::size_t v) const { return adj_[u].get(v); }
    void add_edge(std::size_t u, std::size_t v); // BadEdge (loops, range)
    const BitVec& row(std::size_t v) const { return adj_[v]; }
    std::size_t degree(std::size_t v) const { return adj_[v].count(); }
    std::vector<std::pair<std::size_t, std::size_t>> edges() const; // u < v, sorted

    // Induced subgraph on the kept vertices, re-indexed in the given order.
    Graph induced(const std::vector<std::size_t>& keep) const; // BadVertex
    Graph disjoint_union(const Graph& o) const;

    bool is_forest() const;

    bool operator==(const Graph&) const = default;

private:
    std::vector<BitVec> adj_;
};

// Cartesian product; vertex (i, j) of a x b gets index i*b.size() + j.
Graph graph_product(const Graph& a, const Graph& b);

// Rows of the chosen laplacian: adj for Minus, I + adj for Plus.
std::vector<BitVec> laplacian(const Graph& g, Sign s);

// Characteristic polynomial det(xI + adj) over GF(2), division-free.
Poly2 adjacency_charpoly(const Graph& g);

// The same polynomial obtained by counting i-matchings mod 2; an independent
// cross-check for adjacency_charpoly. Vertex count capped at 16.
Poly2 matching_charpoly(const Graph& g); // TooLarge

struct KernelBasis {
    std::size_t d = 0;          // dimension of the kernel
    std::vector<BitVec> basis;  // reduced row-echelon basis, one pattern per row
};

// Basis of ker(laplacian(g, s)) by GF(2) elimination.
KernelBasis harmonic_kernel(const Graph& g, Sign s);

// One reduction step recorded during forest_reduce, enough to replay the
// deletion backwards when rebuilding kernel elements.
struct ReductionStep {
    enum Kind { LeafPair, TwinLeaves, EndEdge } kind;
    std::size_t u, v, w;             // vertices involved (w unused for LeafPair)
    std::vector<std::size_t> spill;  // alive third-party neighbors read by the undo
};

struct ForestReduction {
    Graph reduced;                        // what survives, re-indexed
    std::vector<std::size_t> survivors;   // original index of reduced vertex i
    std::vector<ReductionStep> journal;   // steps in application order
    std::size_t d = 0;
    std::vector<BitVec> basis;            // kernel basis on the original graph, RREF
};

// Reduce an acyclic graph by the degree-one surgeries that preserve the chosen
// kernel: Minus deletes a leaf together with its neighbor until only isolated
// vertices remain (d = their count); Plus deletes twin leaves, or an end edge
// together with its attachment vertex, until only isolated vertices and edges
// remain (d = count of isolated edges). The kernel basis is rebuilt by undoing
// the journal and is checked against harmonic_kernel before returning.
ForestReduction forest_reduce(const Graph& g, Sign s); // NotAForest

// Does vanishing on U force a kernel element to vanish everywhere?
bool is_uniqueness_set(const Graph& g, const std::vector<std::size_t>& u, Sign s); // BadVertex

// A generalized inverse k of the laplacian: D k D = D (the true inverse
// when D is nonsingular), read off from a tracked row reduction.
std::vector<BitVec> pseudo_inverse(const Graph& g, Sign s);

// --- small dense GF(2) matrix helpers (square, rows as BitVec) ---

std::vector<BitVec> gf2_identity(std::size_t n);
std::vector<BitVec> gf2_mat_mul(const std::vector<BitVec>& a, const std::vector<BitVec>& b);
std::vector<BitVec> gf2_mat_pow(std::vector<BitVec> m, uint64_t e);

// Minimal polynomial of a square GF(2) matrix.
Poly2 gf2_min_poly(const std::vector<BitVec>& m);

// Least j >= 1 with m^j = I; NotInvertible when the matrix is singular.
uint64_t gf2_mat_order(const std::vector<BitVec>& m, uint64_t bound); // OrderNotFound past bound

} // namespace harmonica
