#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmonica/field2.hpp"

namespace harmonica {

// A solution of x + 1/x + y + 1/y = 1 (equivalently (1+x+y)(1+xy) = 1 with
// x, y nonzero), tagged with the multiplicative orders of its coordinates.
struct CurvePoint {
    FieldElem x, y;
    uint64_t ord_x = 0, ord_y = 0;
    bool operator==(const CurvePoint&) const = default;
};

// All solutions with both coordinates in F_{2^r}, sorted by (x.bits, y.bits).
// Requires r <= 24 (the sweep is linear in the field size).
std::vector<CurvePoint> curve_points(int r); // UsageError, FieldTooLarge

struct ComponentVertex {
    uint64_t n = 0;  // an odd torsion order
    uint64_t f = 0;  // multiplicative order of 2 mod n
    uint64_t f0 = 0; // least j with 2^j = +-1 mod n (the level of n)
    bool operator==(const ComponentVertex&) const = default;
};
struct ComponentEdge {
    uint64_t m = 0, n = 0; // m < n
    uint64_t s = 0;        // half the number of solutions with orders {m, n}
    bool operator==(const ComponentEdge&) const = default;
};
struct ComponentLoop {
    uint64_t n = 0;
    uint64_t s = 0; // half the number of solutions with both orders n
    bool operator==(const ComponentLoop&) const = default;
};
// The vertex pair {1, 3} carries two directed labels instead of one shared
// undirected label; see the note in src/partnership.cpp for why the plain
// halved count cannot satisfy the per-vertex totient identity at both ends.
struct ExceptionalLabels {
    uint64_t from_1 = 0; // label on the arrow out of vertex 1
    uint64_t from_3 = 0; // label on the arrow out of vertex 3
    bool operator==(const ExceptionalLabels&) const = default;
};

// One level of the partnership graph: the vertices are the odd n whose level
// f0(n) equals r, and two orders are joined when some solution of
// x + 1/x + y + 1/y = 1 realizes both simultaneously.
struct PartnershipComponent {
    int r = 0;
    std::vector<ComponentVertex> vertices;        // ascending n
    std::vector<ComponentEdge> edges;             // sorted by (m, n)
    std::vector<ComponentLoop> loops;             // ascending n
    std::optional<ExceptionalLabels> exceptional; // level 1 only

    std::string json() const;
    static PartnershipComponent parse(const std::string& text); // UsageError
    std::string dot() const;
    bool operator==(const PartnershipComponent&) const = default;
};

// Compute one level of the partnership graph by sweeping the trace classes
// u = x + 1/x over F_{2^r}. Requires r <= 23 so that the order-(2^r + 1)
// solutions, which live in the quadratic extension, still fit in one word.
PartnershipComponent component(int r, int workers = 1); // UsageError, FieldTooLarge

// All partners of the vertex n inside the given level (empty if n is absent).
std::vector<uint64_t> partners_in(const PartnershipComponent& c, uint64_t n);

// All odd m that appear together with n as the order pair of some solution,
// sorted ascending. Requires n odd and f0(n) <= 23.
std::vector<uint64_t> partners_of(uint64_t n, int workers = 1); // UsageError, FieldTooLarge

// Solution counts over F_{2^r} from the zeta-function recurrence:
// s = number of solutions with both coordinates in F_{2^r}, sbar = s + 4.
struct HasseWeil {
    int64_t s = 0, sbar = 0;
};
HasseWeil hasse_weil(int r); // UsageError, Overflow

// Residuals of the totient identities satisfied by the level labels.
struct VertexPhiCheck {
    uint64_t n = 0;
    uint64_t phi = 0;       // Euler totient of n
    uint64_t label_sum = 0; // sum of labels incident to n (loops once,
                            // the {1,3} pair contributing its outgoing label)
    bool ok = false;
};
struct EulerReport {
    int r = 0;
    std::vector<VertexPhiCheck> vertex_checks;

    // Level totals: sum of totients vs twice the edge labels plus loops
    // (plus both directed labels at level 1).
    uint64_t level_phi_total = 0, level_label_total = 0;
    bool level_ok = false;

    // Summing the per-vertex label sums over every level dividing r covers
    // each divisor of 2^r - 1 and of 2^r + 1 exactly once, except that the
    // divisor 1 is shared by both sides; the extra +1 restores its second
    // copy. The grand total must be 2^{r+1}.
    uint64_t divisor_total = 0, two_q = 0;
    bool divisor_ok = false;

    // Corner inequality: s(q-1,q-1) + s(q+1,q+1) + 2 s(q-1,q+1)
    // >= 2 (phi(q-1) + phi(q+1) - q).
    int64_t corner_lhs = 0, corner_rhs = 0;
    bool corner_ok = false;

    bool all_ok = false;
};
EulerReport euler_check(int r, int workers = 1); // UsageError, FieldTooLarge

// Reported observations, intentionally never asserted by the library.
struct SelfPartnerReport {
    int r = 0;
    bool qm1_loop = false;   // q-1 partners itself
    bool qp1_loop = false;   // q+1 partners itself
    bool cross_edge = false; // q-1 and q+1 are partners
    bool all = false;
};
SelfPartnerReport self_partner_report(int r, int workers = 1); // UsageError, FieldTooLarge

struct ConnectivityReport {
    int r = 0;
    std::size_t pieces = 0;   // connected components of the level graph
    std::size_t expected = 0; // 2 at level five, 1 elsewhere
    bool matches = false;
};
ConnectivityReport connectivity_report(int r, int workers = 1); // UsageError, FieldTooLarge

// Disk cache for computed levels: one file component_r<r>.json per level,
// guarded by a schema version. A missing file is a miss; an unreadable file
// is IoError; a file that exists but does not parse as the expected schema
// is SchemaVersionMismatch.
std::optional<PartnershipComponent> load_component(int r, const std::string& dir);
// IoError, SchemaVersionMismatch
void store_component(const PartnershipComponent& c, const std::string& dir); // IoError
PartnershipComponent cached_component(int r, const std::string& dir, int workers = 1);
// UsageError, FieldTooLarge, IoError, SchemaVersionMismatch

} // namespace harmonica
