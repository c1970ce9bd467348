#pragma once

#include <variant>

#include "bitvec.hpp"
#include "graphcore.hpp"

namespace harmonica {

// Pressing vertex v toggles v and all of its neighbors at once, so a play is
// just a vertex subset: presses commute and pressing twice cancels.
struct MoveSet {
    BitVec presses; // bit v set = press vertex v once
    bool operator==(const MoveSet&) const = default;
};

// Certificate that a pattern cannot be switched off: a function h in the
// kernel of the ball-average laplacian whose pairing with the pattern is 1.
// Every press preserves <h, state>, so the state can never reach all-off.
struct InvariantWitness {
    BitVec h;
    bool operator==(const InvariantWitness&) const = default;
};

using SolveResult = std::variant<MoveSet, InvariantWitness>;

// Can every starting pattern be switched off? Holds exactly when the
// ball-average laplacian I + adj is nonsingular.
bool is_winning(const Graph& g);

// Toggle the lights of `state` by playing every press in `m`. UsageError on
// length mismatches.
Pattern lights_apply(const Graph& g, const MoveSet& m, Pattern state);

// Decide one pattern: either the canonical move set reaching it from all-off
// (elimination solution, free variables zero; every other solution differs by
// a kernel element) or an invariant witness proving there is none.
// UsageError when the pattern length differs from the vertex count.
SolveResult solve(const Graph& g, const Pattern& pattern);

// Vertex set whose presses flip every light, i.e. the all-on pattern's move
// set. One exists for every graph.
MoveSet odd_domination(const Graph& g);

} // namespace harmonica
