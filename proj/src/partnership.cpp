#include "harmonica/partnership.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "harmonica/error.hpp"
#include "harmonica/nt.hpp"

namespace harmonica {

namespace {

using Json = nlohmann::json;

constexpr int kComponentCap = 23;   // 2 * r must stay within the one-word field cap
constexpr int kCurveSweepCap = 24;  // table of 2^r per-class entries
constexpr int kSchemaVersion = 1;

// Least field element (by encoding) generating the multiplicative group.
uint64_t find_generator(const FieldCtx& k) {
    uint64_t qm1 = k.size_q() - 1;
    if (qm1 == 1) return 1;
    for (uint64_t a = 2;; ++a)
        if (k.elem_order(a) == qm1) return a;
}

// Element of order exactly `target` in k, assuming target divides q - 1.
uint64_t find_element_of_order(const FieldCtx& k, uint64_t target) {
    for (uint64_t a = 2;; ++a) {
        uint64_t o = k.elem_order(a);
        if (o % target == 0) return k.pow(a, o / target);
    }
}

// Inverse of the subfield embedding F_{2^r} -> F_{2^{2r}}: expresses an
// element of the big field in terms of the images of the small field's
// monomial basis. Throws if the element is not in the embedded subfield.
class Unembedder {
public:
    Unembedder(int r, int big) : big_(big), row_(std::size_t(big), 0), combo_(std::size_t(big), 0) {
        for (int i = 0; i < r; ++i) {
            uint64_t m = embed(FieldElem{r, uint64_t{1} << i}, big).bits;
            uint64_t c = uint64_t{1} << i;
            for (int b = big - 1; b >= 0; --b) {
                if (!((m >> b) & 1)) continue;
                if (row_[std::size_t(b)]) {
                    m ^= row_[std::size_t(b)];
                    c ^= combo_[std::size_t(b)];
                    continue;
                }
                row_[std::size_t(b)] = m;
                combo_[std::size_t(b)] = c;
                m = 0;
                break;
            }
            if (m) throw std::logic_error("subfield basis images are dependent");
        }
    }

    uint64_t operator()(uint64_t m) const {
        uint64_t c = 0;
        for (int b = big_ - 1; b >= 0; --b) {
            if (!((m >> b) & 1)) continue;
            if (!row_[std::size_t(b)])
                throw std::logic_error("element lies outside the embedded subfield");
            m ^= row_[std::size_t(b)];
            c ^= combo_[std::size_t(b)];
        }
        return c;
    }

private:
    int big_;
    std::vector<uint64_t> row_, combo_;
};

// Per-class table over u in F_{2^r}: ord[u] is the common multiplicative
// order of the two roots of X^2 + uX + 1 (the roots are mutually inverse, so
// they share it). A root pair lies in F_{2^r} itself or in the norm-one
// subgroup of the quadratic extension; both families are cyclic, so walking
// powers of one generator prices every class with two multiplications, no
// discrete logarithms. When `roots_out` is given, only the in-field classes
// are priced (nonsplit entries stay 0) and roots_out[u] holds one root.
std::vector<uint32_t> order_class_table(int r, std::vector<uint32_t>* roots_out) {
    const FieldCtx& k = FieldCtx::get(r);
    const uint64_t q = k.size_q();
    std::vector<uint32_t> ord(q, 0);
    if (roots_out) roots_out->assign(q, 0);

    ord[0] = 1; // u = 0 <=> x = 1, the only self-inverse element
    if (roots_out) (*roots_out)[0] = 1;

    if (q > 2) {
        const uint64_t g = find_generator(k);
        const uint64_t gi = k.inv(g);
        uint64_t x = 1, xi = 1;
        // exponents j and (q-1)-j give the same class, so walk half the group
        for (uint64_t j = 1; 2 * j < q - 1; ++j) {
            x = k.mul(x, g);
            xi = k.mul(xi, gi);
            uint64_t u = x ^ xi;
            if (ord[u]) throw std::logic_error("duplicate class in the field sweep");
            ord[u] = uint32_t((q - 1) / std::gcd(j, q - 1));
            if (roots_out) (*roots_out)[u] = uint32_t(x);
        }
    }

    if (!roots_out) {
        const FieldCtx& k2 = FieldCtx::get(2 * r);
        const uint64_t qp1 = q + 1;
        const uint64_t d0 = find_element_of_order(k2, qp1);
        const uint64_t d0i = k2.inv(d0);
        const Unembedder down(r, 2 * r);
        uint64_t d = 1, di = 1;
        for (uint64_t j = 1; 2 * j < qp1; ++j) {
            d = k2.mul(d, d0);
            di = k2.mul(di, d0i);
            uint64_t u = down(d ^ di);
            if (ord[u]) throw std::logic_error("duplicate class in the extension sweep");
            ord[u] = uint32_t(qp1 / std::gcd(j, qp1));
        }
        for (uint64_t u = 0; u < q; ++u)
            if (!ord[u]) throw std::logic_error("class sweep missed a value");
    }

    return ord;
}

using TypeKey = std::pair<uint64_t, uint64_t>;
using TypeCounts = std::map<TypeKey, uint64_t>;

// Number of roots of X^2 + uX + 1 sharing the class of u: one at u = 0
// (the double root 1), otherwise two.
inline uint64_t class_size(uint64_t u) { return u == 0 ? 1 : 2; }

void count_range(const std::vector<uint32_t>& ord, uint64_t lo, uint64_t hi, TypeCounts& out) {
    for (uint64_t u = lo; u < hi; ++u) {
        uint64_t m = ord[u], n = ord[u ^ 1];
        out[{m, n}] += class_size(u) * class_size(u ^ 1);
    }
}

// Tally solution types (ord x, ord y) over all u: x ranges over the class of
// u and y over the class of u + 1. Partitioned by u across workers; the
// per-chunk maps merge by addition, so the result is worker-count independent.
TypeCounts count_types(const std::vector<uint32_t>& ord, int workers) {
    const uint64_t q = ord.size();
    int w = std::clamp(workers, 1, 128);
    if (uint64_t(w) > q) w = int(q);
    if (w == 1) {
        TypeCounts total;
        count_range(ord, 0, q, total);
        return total;
    }
    std::vector<TypeCounts> parts(static_cast<std::size_t>(w));
    std::vector<std::thread> threads;
    threads.reserve(std::size_t(w));
    const uint64_t chunk = (q + uint64_t(w) - 1) / uint64_t(w);
    for (int i = 0; i < w; ++i) {
        uint64_t lo = uint64_t(i) * chunk, hi = std::min(q, lo + chunk);
        threads.emplace_back(
            [&ord, lo, hi, &slot = parts[std::size_t(i)]] { count_range(ord, lo, hi, slot); });
    }
    for (auto& t : threads) t.join();
    TypeCounts total;
    for (const auto& part : parts)
        for (const auto& [key, c] : part) total[key] += c;
    return total;
}

const OrderProfile& profile_of(uint64_t n, std::map<uint64_t, OrderProfile>& memo) {
    auto it = memo.find(n);
    if (it == memo.end()) it = memo.emplace(n, order_profile(n)).first;
    return it->second;
}

// Sum of labels incident to vertex n, counting a loop once and, for the
// {1, 3} pair, the label directed out of n.
uint64_t vertex_label_sum(const PartnershipComponent& c, uint64_t n) {
    uint64_t sum = 0;
    for (const auto& e : c.edges)
        if (e.m == n || e.n == n) sum += e.s;
    for (const auto& l : c.loops)
        if (l.n == n) sum += l.s;
    if (c.exceptional) {
        if (n == 1) sum += c.exceptional->from_1;
        if (n == 3) sum += c.exceptional->from_3;
    }
    return sum;
}

bool vertex_is_incident(const PartnershipComponent& c, uint64_t n) {
    for (const auto& e : c.edges)
        if (e.m == n || e.n == n) return true;
    for (const auto& l : c.loops)
        if (l.n == n) return true;
    if (c.exceptional && (n == 1 || n == 3)) return true;
    return false;
}

Json component_to_json(const PartnershipComponent& c) {
    Json j;
    j["r"] = c.r;
    j["vertices"] = Json::array();
    for (const auto& v : c.vertices)
        j["vertices"].push_back({{"n", v.n}, {"f", v.f}, {"f0", v.f0}});
    j["edges"] = Json::array();
    for (const auto& e : c.edges) j["edges"].push_back({{"m", e.m}, {"n", e.n}, {"s", e.s}});
    j["loops"] = Json::array();
    for (const auto& l : c.loops) j["loops"].push_back({{"n", l.n}, {"s", l.s}});
    if (c.exceptional)
        j["exceptional"] = {{"from_1", c.exceptional->from_1}, {"from_3", c.exceptional->from_3}};
    else
        j["exceptional"] = nullptr;
    return j;
}

uint64_t require_uint(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        fail("UsageError", std::string("expected an unsigned integer field '") + key + "'");
    return j[key].get<uint64_t>();
}

void require_keys(const Json& j, std::initializer_list<const char*> keys) {
    if (!j.is_object()) fail("UsageError", "expected a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : keys) known = known || item.key() == k;
        if (!known) fail("UsageError", "unexpected field '" + item.key() + "'");
    }
    for (const char* k : keys)
        if (!j.contains(k)) fail("UsageError", std::string("missing field '") + k + "'");
}

PartnershipComponent component_from_json(const Json& j) {
    require_keys(j, {"r", "vertices", "edges", "loops", "exceptional"});
    PartnershipComponent c;
    if (!j["r"].is_number_unsigned() || j["r"].get<uint64_t>() < 1 ||
        j["r"].get<uint64_t>() > uint64_t(kComponentCap))
        fail("UsageError", "level out of range");
    c.r = int(j["r"].get<uint64_t>());
    if (!j["vertices"].is_array() || !j["edges"].is_array() || !j["loops"].is_array())
        fail("UsageError", "vertices, edges and loops must be arrays");
    for (const auto& v : j["vertices"]) {
        require_keys(v, {"n", "f", "f0"});
        c.vertices.push_back({require_uint(v, "n"), require_uint(v, "f"), require_uint(v, "f0")});
    }
    for (const auto& e : j["edges"]) {
        require_keys(e, {"m", "n", "s"});
        c.edges.push_back({require_uint(e, "m"), require_uint(e, "n"), require_uint(e, "s")});
    }
    for (const auto& l : j["loops"]) {
        require_keys(l, {"n", "s"});
        c.loops.push_back({require_uint(l, "n"), require_uint(l, "s")});
    }
    if (j["exceptional"].is_null()) {
        c.exceptional = std::nullopt;
    } else {
        require_keys(j["exceptional"], {"from_1", "from_3"});
        c.exceptional = ExceptionalLabels{require_uint(j["exceptional"], "from_1"),
                                          require_uint(j["exceptional"], "from_3")};
    }
    return c;
}

std::filesystem::path cache_path(int r, const std::string& dir) {
    return std::filesystem::path(dir) / ("component_r" + std::to_string(r) + ".json");
}

// Undirected label of the pair {m, n}: half the number of solutions with
// that pair of coordinate orders. For {1, 3} this is the halved count (1),
// not either directed label. Levels are resolved through `levels`, a cache
// of computed components keyed by level.
uint64_t label_of(uint64_t m, uint64_t n, std::map<int, PartnershipComponent>& levels,
                  int workers) {
    OrderProfile pm = order_profile(m), pn = order_profile(n);
    if (pm.f0 != pn.f0) return 0; // different levels never partner
    int lvl = int(pm.f0);
    auto it = levels.find(lvl);
    if (it == levels.end()) it = levels.emplace(lvl, component(lvl, workers)).first;
    const PartnershipComponent& c = it->second;
    uint64_t a = std::min(m, n), b = std::max(m, n);
    if (a == 1 && b == 3) return c.exceptional ? c.exceptional->from_1 : 0;
    if (a == b) {
        for (const auto& l : c.loops)
            if (l.n == a) return l.s;
        return 0;
    }
    for (const auto& e : c.edges)
        if (e.m == a && e.n == b) return e.s;
    return 0;
}

} // namespace

std::vector<CurvePoint> curve_points(int r) {
    if (r < 1) fail("UsageError", "the field degree must be positive");
    if (r > kCurveSweepCap)
        fail("FieldTooLarge", "per-class sweep tables are capped at degree 24");
    std::vector<uint32_t> root;
    std::vector<uint32_t> ord = order_class_table(r, &root);
    const uint64_t q = uint64_t{1} << r;

    std::vector<CurvePoint> pts;
    for (uint64_t u = 0; u < q; ++u) {
        uint64_t m = ord[u], n = ord[u ^ 1];
        if (!m || !n) continue; // some coordinate would leave the field
        uint64_t xs[2] = {root[u], uint64_t(root[u]) ^ u}; // the roots are x and x + u
        uint64_t ys[2] = {root[u ^ 1], uint64_t(root[u ^ 1]) ^ (u ^ 1)};
        std::size_t nx = class_size(u), ny = class_size(u ^ 1);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j)
                pts.push_back({FieldElem{r, xs[i]}, FieldElem{r, ys[j]}, m, n});
    }
    std::sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) {
        return a.x.bits != b.x.bits ? a.x.bits < b.x.bits : a.y.bits < b.y.bits;
    });
    return pts;
}

PartnershipComponent component(int r, int workers) {
    if (r < 1) fail("UsageError", "the level must be positive");
    if (r > kComponentCap)
        fail("FieldTooLarge", "order pairs at this level exceed the one-word field cap");

    const uint64_t q = uint64_t{1} << r;
    std::vector<uint32_t> ord = order_class_table(r, nullptr);
    TypeCounts counts = count_types(ord, workers);
    ord.clear();
    ord.shrink_to_fit();

    PartnershipComponent c;
    c.r = r;

    std::vector<uint64_t> names = nt::divisors(q - 1);
    for (uint64_t d : nt::divisors(q + 1)) names.push_back(d);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    std::map<uint64_t, OrderProfile> profiles;
    for (uint64_t n : names) {
        const OrderProfile& p = profile_of(n, profiles);
        if (p.f0 == uint64_t(r)) c.vertices.push_back({n, p.f, p.f0});
    }

    for (const auto& [key, cnt] : counts) {
        auto [m, n] = key;
        if (cnt % 2 != 0) throw std::logic_error("odd solution count for an order pair");
        auto mirror = counts.find({n, m});
        if (mirror == counts.end() || mirror->second != cnt)
            throw std::logic_error("asymmetric solution counts");
        uint64_t f0m = profile_of(m, profiles).f0;
        if (f0m != profile_of(n, profiles).f0)
            throw std::logic_error("paired orders live at different levels");
        if (f0m != uint64_t(r)) continue; // belongs to a proper-divisor level
        // At the {1, 3} pair one shared label cannot satisfy the totient
        // identity at both endpoints: vertex 1 needs total 1 = phi(1) while
        // vertex 3 needs 2 = phi(3). The split happens because x = 1 is
        // self-inverse, so the two solutions (1, y), (1, 1/y) are one orbit
        // of the inversion pairing while (y, 1), (1/y, 1) are two distinct
        // x-values. Storing the halved count on the arrow out of 1 and the
        // full count on the arrow out of 3 is the unique assignment meeting
        // the identity at both ends.
        if (m == 1 && n == 3) {
            c.exceptional = ExceptionalLabels{cnt / 2, mirror->second};
            continue;
        }
        if (m == 3 && n == 1) continue; // the mirrored entry, consumed above
        if (m == n)
            c.loops.push_back({n, cnt / 2});
        else if (m < n)
            c.edges.push_back({m, n, cnt / 2});
    }

    for (const auto& v : c.vertices) {
        if (!vertex_is_incident(c, v.n))
            throw std::logic_error("vertex with no incident solutions");
        if (vertex_label_sum(c, v.n) != nt::phi(v.n))
            throw std::logic_error("vertex label sum disagrees with the totient");
    }
    return c;
}

std::vector<uint64_t> partners_in(const PartnershipComponent& c, uint64_t n) {
    std::vector<uint64_t> out;
    for (const auto& e : c.edges) {
        if (e.m == n) out.push_back(e.n);
        if (e.n == n) out.push_back(e.m);
    }
    for (const auto& l : c.loops)
        if (l.n == n) out.push_back(n);
    if (c.exceptional) {
        if (n == 1) out.push_back(3);
        if (n == 3) out.push_back(1);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<uint64_t> partners_of(uint64_t n, int workers) {
    if (n == 0 || n % 2 == 0) fail("UsageError", "partners are defined for odd positive orders");
    OrderProfile p = order_profile(n);
    if (p.f0 > uint64_t(kComponentCap))
        fail("FieldTooLarge", "the level of this order exceeds the one-word field cap");
    return partners_in(component(int(p.f0), workers), n);
}

HasseWeil hasse_weil(int r) {
    if (r < 1) fail("UsageError", "the field degree must be positive");
    if (r > 62) fail("Overflow", "solution counts no longer fit a signed word");
    // c_k tracks the power sums of the two Frobenius eigenvalues, which are
    // the roots of t^2 + t + 2.
    int64_t cprev = 2, ccur = -1;
    for (int k = 1; k < r; ++k) {
        int64_t next = -ccur - 2 * cprev;
        cprev = ccur;
        ccur = next;
    }
    HasseWeil hw;
    const int64_t q = int64_t{1} << r;
    hw.s = q - ccur - 3;
    hw.sbar = hw.s + 4;
    __int128 dev = __int128(hw.sbar) - (__int128(q) + 1);
    if (dev * dev > __int128(4) * q)
        throw std::logic_error("solution count violates the square-root bound");
    return hw;
}

EulerReport euler_check(int r, int workers) {
    if (r < 1) fail("UsageError", "the level must be positive");
    std::map<int, PartnershipComponent> levels;
    levels.emplace(r, component(r, workers));
    const PartnershipComponent& c = levels.at(r);
    EulerReport rep;
    rep.r = r;

    for (const auto& v : c.vertices) {
        VertexPhiCheck chk;
        chk.n = v.n;
        chk.phi = nt::phi(v.n);
        chk.label_sum = vertex_label_sum(c, v.n);
        chk.ok = chk.phi == chk.label_sum;
        rep.vertex_checks.push_back(chk);
    }

    for (const auto& v : c.vertices) rep.level_phi_total += nt::phi(v.n);
    for (const auto& e : c.edges) rep.level_label_total += 2 * e.s;
    for (const auto& l : c.loops) rep.level_label_total += l.s;
    if (c.exceptional) rep.level_label_total += c.exceptional->from_1 + c.exceptional->from_3;
    rep.level_ok = rep.level_phi_total == rep.level_label_total;

    uint64_t total = 1; // the divisor 1 is shared by both sides; restore one copy
    for (uint64_t d : nt::divisors(uint64_t(r))) {
        int lvl = int(d);
        auto it = levels.find(lvl);
        if (it == levels.end()) it = levels.emplace(lvl, component(lvl, workers)).first;
        for (const auto& v : it->second.vertices) total += vertex_label_sum(it->second, v.n);
    }
    rep.divisor_total = total;
    rep.two_q = uint64_t{1} << (r + 1);
    rep.divisor_ok = rep.divisor_total == rep.two_q;

    const uint64_t q = uint64_t{1} << r;
    rep.corner_lhs = int64_t(label_of(q - 1, q - 1, levels, workers)) +
                     int64_t(label_of(q + 1, q + 1, levels, workers)) +
                     2 * int64_t(label_of(q - 1, q + 1, levels, workers));
    rep.corner_rhs = 2 * (int64_t(nt::phi(q - 1)) + int64_t(nt::phi(q + 1)) - int64_t(q));
    rep.corner_ok = rep.corner_lhs >= rep.corner_rhs;

    rep.all_ok = rep.level_ok && rep.divisor_ok && rep.corner_ok;
    for (const auto& chk : rep.vertex_checks) rep.all_ok = rep.all_ok && chk.ok;
    return rep;
}

SelfPartnerReport self_partner_report(int r, int workers) {
    if (r < 1) fail("UsageError", "the level must be positive");
    std::map<int, PartnershipComponent> levels;
    const uint64_t q = uint64_t{1} << r;
    SelfPartnerReport rep;
    rep.r = r;
    rep.qm1_loop = label_of(q - 1, q - 1, levels, workers) > 0;
    rep.qp1_loop = label_of(q + 1, q + 1, levels, workers) > 0;
    rep.cross_edge = label_of(q - 1, q + 1, levels, workers) > 0;
    rep.all = rep.qm1_loop && rep.qp1_loop && rep.cross_edge;
    return rep;
}

ConnectivityReport connectivity_report(int r, int workers) {
    PartnershipComponent c = component(r, workers);
    std::map<uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) index[c.vertices[i].n] = i;
    std::vector<std::size_t> parent(c.vertices.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](uint64_t a, uint64_t b) { parent[find(index.at(a))] = find(index.at(b)); };
    for (const auto& e : c.edges) unite(e.m, e.n);
    if (c.exceptional) unite(1, 3);
    ConnectivityReport rep;
    rep.r = r;
    for (std::size_t i = 0; i < parent.size(); ++i)
        if (find(i) == i) ++rep.pieces;
    rep.expected = r == 5 ? 2 : 1;
    rep.matches = rep.pieces == rep.expected;
    return rep;
}

std::string PartnershipComponent::json() const { return component_to_json(*this).dump(); }

PartnershipComponent PartnershipComponent::parse(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("UsageError", "invalid JSON");
    return component_from_json(j);
}

std::string PartnershipComponent::dot() const {
    std::ostringstream out;
    out << "digraph component_r" << r << " {\n";
    out << "  edge [dir=none];\n";
    for (const auto& v : vertices)
        out << "  \"" << v.n << "\" [underline=" << (v.f == 2 * uint64_t(r) ? "true" : "false")
            << "];\n";
    for (const auto& e : edges)
        out << "  \"" << e.m << "\" -> \"" << e.n << "\" [label=\"" << e.s << "\"];\n";
    for (const auto& l : loops)
        out << "  \"" << l.n << "\" -> \"" << l.n << "\" [label=\"" << l.s << "\"];\n";
    if (exceptional) {
        out << "  \"1\" -> \"3\" [dir=forward, label=\"" << exceptional->from_1 << "\"];\n";
        out << "  \"3\" -> \"1\" [dir=forward, label=\"" << exceptional->from_3 << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::optional<PartnershipComponent> load_component(int r, const std::string& dir) {
    std::filesystem::path path = cache_path(r, dir);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    if (!std::filesystem::is_regular_file(path, ec))
        fail("IoError", "cache path is not a readable file: " + path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IoError", "cannot open cache file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) fail("IoError", "cannot read cache file " + path.string());

    Json j = Json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) fail("SchemaVersionMismatch", "cache file is not valid JSON");
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_number_unsigned() ||
        j["schema"].get<uint64_t>() != uint64_t(kSchemaVersion) || !j.contains("component"))
        fail("SchemaVersionMismatch", "cache file has a different schema");
    PartnershipComponent c;
    try {
        c = component_from_json(j["component"]);
    } catch (const DomainError&) {
        fail("SchemaVersionMismatch", "cache payload does not match the schema");
    }
    if (c.r != r) fail("SchemaVersionMismatch", "cache file holds a different level");
    return c;
}

void store_component(const PartnershipComponent& c, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec); // best effort; the open below decides
    std::filesystem::path path = cache_path(c.r, dir);
    Json j;
    j["schema"] = kSchemaVersion;
    j["component"] = component_to_json(c);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail("IoError", "cannot open cache file " + path.string());
    out << j.dump() << '\n';
    out.flush();
    if (!out) fail("IoError", "cannot write cache file " + path.string());
}

PartnershipComponent cached_component(int r, const std::string& dir, int workers) {
    if (auto hit = load_component(r, dir)) return *hit;
    PartnershipComponent c = component(r, workers);
    store_component(c, dir);
    return c;
}

} // namespace harmonica
