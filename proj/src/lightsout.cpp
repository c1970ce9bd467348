#include "harmonica/lightsout.hpp"

#include <stdexcept>
#include <vector>

#include "harmonica/error.hpp"

namespace harmonica {

bool is_winning(const Graph& g) { return harmonic_kernel(g, Sign::Plus).d == 0; }

Pattern lights_apply(const Graph& g, const MoveSet& m, Pattern state) {
    if (m.presses.size() != g.size() || state.size() != g.size())
        fail("UsageError", "move set and state must match the vertex count");
    std::vector<BitVec> lap = laplacian(g, Sign::Plus);
    for (std::size_t v = 0; v < g.size(); ++v)
        if (m.presses.get(v)) state ^= lap[v];
    return state;
}

SolveResult solve(const Graph& g, const Pattern& pattern) {
    std::size_t n = g.size();
    if (pattern.size() != n)
        fail("UsageError", "pattern length must equal the vertex count");
    std::vector<BitVec> lap = laplacian(g, Sign::Plus);
    Gf2Solution sol = gf2_solve(lap, n, pattern);
    if (sol.consistent) return MoveSet{sol.x};
    // The laplacian is symmetric, so its image is exactly the patterns pairing
    // to 0 with every kernel element; an unreachable pattern must pair to 1
    // with some basis element.
    for (const BitVec& h : harmonic_kernel(g, Sign::Plus).basis)
        if (h.dot(pattern)) return InvariantWitness{h};
    throw std::logic_error("unsolvable pattern without an invariant witness");
}

MoveSet odd_domination(const Graph& g) {
    SolveResult r = solve(g, BitVec::ones(g.size()));
    if (const MoveSet* m = std::get_if<MoveSet>(&r)) return *m;
    // A symmetric GF(2) matrix always covers its own diagonal, and every
    // diagonal entry of I + adj is 1, so the all-on pattern lies in the image.
    throw std::logic_error("all-on pattern reported unsolvable");
}

} // namespace harmonica
