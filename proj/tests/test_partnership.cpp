#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "harmonica/error.hpp"
#include "harmonica/field2.hpp"
#include "harmonica/nt.hpp"
#include "harmonica/partnership.hpp"

using namespace harmonica;

namespace {

template <typename F>
std::string thrown_name(F&& f) {
    try {
        f();
    } catch (const DomainError& e) {
        return e.name();
    } catch (...) {
        return "<other>";
    }
    return "<none>";
}

const PartnershipComponent& level(int r) {
    static std::map<int, PartnershipComponent> cache;
    auto it = cache.find(r);
    if (it == cache.end()) it = cache.emplace(r, component(r)).first;
    return it->second;
}

// Undirected halved label of the pair {m, n}; the {1, 3} pair counts as 1.
uint64_t sym_label(uint64_t m, uint64_t n) {
    OrderProfile pm = order_profile(m), pn = order_profile(n);
    if (pm.f0 != pn.f0) return 0;
    const PartnershipComponent& c = level(int(pm.f0));
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

bool has_loop(const PartnershipComponent& c, uint64_t n) {
    for (const auto& l : c.loops)
        if (l.n == n) return true;
    return false;
}

bool has_vertex(const PartnershipComponent& c, uint64_t n) {
    for (const auto& v : c.vertices)
        if (v.n == n) return true;
    return false;
}

uint64_t vertex_f(const PartnershipComponent& c, uint64_t n) {
    for (const auto& v : c.vertices)
        if (v.n == n) return v.f;
    return 0;
}

uint64_t incident_sum(const PartnershipComponent& c, uint64_t n) {
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

} // namespace

TEST_CASE("level one holds the exceptional directed pair") {
    const PartnershipComponent& c = level(1);
    REQUIRE(c.vertices.size() == 2);
    CHECK(c.vertices[0] == ComponentVertex{1, 1, 1});
    CHECK(c.vertices[1] == ComponentVertex{3, 2, 1});
    CHECK(c.edges.empty());
    CHECK(c.loops.empty());
    REQUIRE(c.exceptional.has_value());
    CHECK(c.exceptional->from_1 == 1);
    CHECK(c.exceptional->from_3 == 2);
}

TEST_CASE("levels two and three are pinned exactly") {
    const PartnershipComponent& c2 = level(2);
    REQUIRE(c2.vertices.size() == 1);
    CHECK(c2.vertices[0] == ComponentVertex{5, 4, 2});
    CHECK(c2.edges.empty());
    REQUIRE(c2.loops.size() == 1);
    CHECK(c2.loops[0] == ComponentLoop{5, 4});
    CHECK(!c2.exceptional.has_value());

    const PartnershipComponent& c3 = level(3);
    REQUIRE(c3.vertices.size() == 2);
    CHECK(c3.vertices[0] == ComponentVertex{7, 3, 3});
    CHECK(c3.vertices[1] == ComponentVertex{9, 6, 3});
    REQUIRE(c3.edges.size() == 1);
    CHECK(c3.edges[0] == ComponentEdge{7, 9, 6});
    CHECK(c3.loops.empty());
    CHECK(!c3.exceptional.has_value());
}

TEST_CASE("component structure is sorted, level-pure, and fully incident") {
    for (int r = 1; r <= 12; ++r) {
        const PartnershipComponent& c = level(r);
        CHECK(c.r == r);
        CHECK(!c.vertices.empty());
        for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i)
            CHECK(c.vertices[i].n < c.vertices[i + 1].n);
        for (const auto& v : c.vertices) {
            OrderProfile p = order_profile(v.n);
            CHECK(v.f0 == uint64_t(r));
            CHECK(v.f == p.f);
            CHECK(v.f0 == p.f0);
            CHECK((v.f == uint64_t(r) || v.f == 2 * uint64_t(r)));
            CHECK(v.n % 2 == 1);
            CHECK(incident_sum(c, v.n) > 0);
        }
        for (std::size_t i = 0; i + 1 < c.edges.size(); ++i)
            CHECK((std::pair(c.edges[i].m, c.edges[i].n) <
                   std::pair(c.edges[i + 1].m, c.edges[i + 1].n)));
        for (const auto& e : c.edges) {
            CHECK(e.m < e.n);
            CHECK(e.s > 0);
            CHECK(has_vertex(c, e.m));
            CHECK(has_vertex(c, e.n));
        }
        for (std::size_t i = 0; i + 1 < c.loops.size(); ++i)
            CHECK(c.loops[i].n < c.loops[i + 1].n);
        for (const auto& l : c.loops) {
            CHECK(l.s > 0);
            CHECK(has_vertex(c, l.n));
        }
        CHECK(c.exceptional.has_value() == (r == 1));
    }
}

TEST_CASE("per-vertex label sums equal the totient") {
    for (int r = 1; r <= 12; ++r) {
        const PartnershipComponent& c = level(r);
        for (const auto& v : c.vertices) CHECK(incident_sum(c, v.n) == nt::phi(v.n));
    }
}

TEST_CASE("labels are divisible by the order of two at both endpoints") {
    for (int r = 1; r <= 12; ++r) {
        const PartnershipComponent& c = level(r);
        for (const auto& e : c.edges) {
            CHECK(e.s % vertex_f(c, e.m) == 0);
            CHECK(e.s % vertex_f(c, e.n) == 0);
        }
        for (const auto& l : c.loops) CHECK(l.s % vertex_f(c, l.n) == 0);
    }
}

TEST_CASE("worker count does not change the result") {
    PartnershipComponent base = component(9, 1);
    for (int w : {2, 3, 5, 16}) CHECK(component(9, w) == base);
}

TEST_CASE("domain errors") {
    CHECK(thrown_name([] { component(0); }) == "UsageError");
    CHECK(thrown_name([] { component(-2); }) == "UsageError");
    CHECK(thrown_name([] { component(24); }) == "FieldTooLarge");
    CHECK(thrown_name([] { curve_points(0); }) == "UsageError");
    CHECK(thrown_name([] { curve_points(25); }) == "FieldTooLarge");
    CHECK(thrown_name([] { partners_of(0); }) == "UsageError");
    CHECK(thrown_name([] { partners_of(6); }) == "UsageError");
    // 2^25 - 1 first reaches +-1 at exponent 25, past the level cap
    CHECK(thrown_name([] { partners_of((uint64_t{1} << 25) - 1); }) == "FieldTooLarge");
    CHECK(thrown_name([] { hasse_weil(0); }) == "UsageError");
    CHECK(thrown_name([] { hasse_weil(63); }) == "Overflow");
    CHECK(thrown_name([] { euler_check(0); }) == "UsageError");
    CHECK(thrown_name([] { euler_check(24); }) == "FieldTooLarge");
    CHECK(thrown_name([] { self_partner_report(0); }) == "UsageError");
    CHECK(thrown_name([] { connectivity_report(24); }) == "FieldTooLarge");
}

TEST_CASE("rational point sweep matches the counting recurrence") {
    for (int r = 1; r <= 16; ++r) {
        HasseWeil hw = hasse_weil(r);
        CHECK(curve_points(r).size() == std::size_t(hw.s));
    }
    CHECK(curve_points(1).empty());
    CHECK(curve_points(3).empty());

    std::vector<CurvePoint> p2 = curve_points(2);
    REQUIRE(p2.size() == 4);
    CHECK(p2[0] == CurvePoint{FieldElem{2, 1}, FieldElem{2, 2}, 1, 3});
    CHECK(p2[1] == CurvePoint{FieldElem{2, 1}, FieldElem{2, 3}, 1, 3});
    CHECK(p2[2] == CurvePoint{FieldElem{2, 2}, FieldElem{2, 1}, 3, 1});
    CHECK(p2[3] == CurvePoint{FieldElem{2, 3}, FieldElem{2, 1}, 3, 1});
}

TEST_CASE("curve points satisfy the equation with exact coordinate orders") {
    for (int r : {2, 4, 5, 6, 7, 8}) {
        const FieldCtx& k = FieldCtx::get(r);
        std::vector<CurvePoint> pts = curve_points(r);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            CHECK((std::pair(pts[i].x.bits, pts[i].y.bits) <
                   std::pair(pts[i + 1].x.bits, pts[i + 1].y.bits)));
        for (const auto& p : pts) {
            REQUIRE(p.x.bits != 0);
            REQUIRE(p.y.bits != 0);
            CHECK(p.x.r == r);
            CHECK(p.y.r == r);
            uint64_t lhs = p.x.bits ^ k.inv(p.x.bits) ^ p.y.bits ^ k.inv(p.y.bits);
            CHECK(lhs == 1);
            CHECK(k.elem_order(p.x.bits) == p.ord_x);
            CHECK(k.elem_order(p.y.bits) == p.ord_y);
        }
    }
}

TEST_CASE("curve point types match the level labels") {
    for (int r : {2, 3, 4, 5, 6, 7, 8}) {
        std::map<std::pair<uint64_t, uint64_t>, uint64_t> histo;
        for (const auto& p : curve_points(r)) ++histo[{p.ord_x, p.ord_y}];
        const uint64_t qm1 = (uint64_t{1} << r) - 1;
        std::vector<uint64_t> divs = nt::divisors(qm1);
        uint64_t covered = 0;
        for (uint64_t a : divs)
            for (uint64_t b : divs) {
                auto it = histo.find({a, b});
                uint64_t have = it == histo.end() ? 0 : it->second;
                CHECK(have == 2 * sym_label(a, b));
                covered += have;
            }
        CHECK(covered == curve_points(r).size()); // every point's orders split q-1
    }
}

TEST_CASE("solution count recurrence and square-root bounds") {
    CHECK(hasse_weil(1).sbar == 4);
    CHECK(hasse_weil(1).s == 0);
    CHECK(hasse_weil(2).s == 4);
    CHECK(hasse_weil(3).s == 0);
    CHECK(hasse_weil(4).s == 12);
    CHECK(hasse_weil(5).s == 40);
    for (int r = 1; r <= 40; ++r) {
        HasseWeil hw = hasse_weil(r);
        CHECK(hw.sbar == hw.s + 4);
        __int128 q = __int128(1) << r;
        __int128 dev = __int128(hw.sbar) - (q + 1);
        CHECK((dev * dev <= 4 * q));
    }
    CHECK(hasse_weil(62).sbar == hasse_weil(62).s + 4);
}

TEST_CASE("partners of small orders") {
    CHECK(partners_of(7) == std::vector<uint64_t>{9});
    CHECK(partners_of(9) == std::vector<uint64_t>{7});
    CHECK(partners_of(5) == std::vector<uint64_t>{5});
    CHECK(partners_of(1) == std::vector<uint64_t>{3});
    CHECK(partners_of(3) == std::vector<uint64_t>{1});
    CHECK(partners_of(11) == std::vector<uint64_t>{31});
    CHECK(partners_in(level(3), 7) == std::vector<uint64_t>{9});
    CHECK(partners_in(level(3), 5).empty());
}

TEST_CASE("the level of the twenty-third power resolves its factor pair") {
    const PartnershipComponent& c = level(23);
    std::vector<uint64_t> names;
    for (const auto& v : c.vertices) names.push_back(v.n);
    CHECK(names == std::vector<uint64_t>{47, 178481, 2796203, 8388607, 8388609});

    // Every solution with one coordinate of order 47 has the other of full
    // order 2^23 - 1 = 47 * 178481 (cross-checked four independent ways), so
    // 47 and 178481 are NOT joined by an edge; they sit in one connected
    // component through the shared partner 8388607.
    CHECK(partners_in(c, 47) == std::vector<uint64_t>{8388607});
    CHECK(sym_label(47, 178481) == 0);
    CHECK(sym_label(47, 8388607) == 46);
    CHECK(nt::phi(47) == 46); // the single edge saturates the totient identity
    std::vector<uint64_t> p178481 = partners_in(c, 178481);
    CHECK(p178481 == std::vector<uint64_t>{178481, 2796203, 8388607, 8388609});
    CHECK(incident_sum(c, 178481) == nt::phi(178481));
}

TEST_CASE("prime boundary orders partner themselves") {
    for (int r : {5, 7, 13}) // 31, 127, 8191 are prime
        CHECK(has_loop(level(r), (uint64_t{1} << r) - 1));
    for (int r : {2, 4, 8, 16}) // 5, 17, 257, 65537 are prime
        CHECK(has_loop(level(r), (uint64_t{1} << r) + 1));
    CHECK(!has_loop(level(1), 3));
    CHECK(!has_loop(level(3), 7));
}

TEST_CASE("euler identity report") {
    for (int r = 1; r <= 12; ++r) {
        EulerReport rep = euler_check(r);
        CHECK(rep.r == r);
        CHECK(rep.all_ok);
        CHECK(rep.level_ok);
        CHECK(rep.divisor_ok);
        CHECK(rep.corner_ok);
        CHECK(rep.vertex_checks.size() == level(r).vertices.size());
        for (const auto& chk : rep.vertex_checks) {
            CHECK(chk.ok);
            CHECK(chk.phi == chk.label_sum);
        }
        CHECK(rep.level_phi_total == rep.level_label_total);
        CHECK(rep.divisor_total == uint64_t{1} << (r + 1));
        CHECK(rep.two_q == uint64_t{1} << (r + 1));
    }
    EulerReport r3 = euler_check(3);
    CHECK(r3.corner_lhs == 12);
    CHECK(r3.corner_rhs == 8);
    EulerReport r1 = euler_check(1);
    CHECK(r1.corner_lhs == 2);
    CHECK(r1.corner_rhs == 2);
    EulerReport r2 = euler_check(2);
    CHECK(r2.divisor_total == 8);
}

TEST_CASE("observation reports") {
    for (int r = 1; r <= 12; ++r) {
        ConnectivityReport cr = connectivity_report(r);
        CHECK(cr.r == r);
        CHECK(cr.pieces == (r == 5 ? 2u : 1u));
        CHECK(cr.expected == (r == 5 ? 2u : 1u));
        CHECK(cr.matches);
    }
    for (int r = 6; r <= 12; ++r) {
        SelfPartnerReport sp = self_partner_report(r);
        CHECK(sp.qm1_loop);
        CHECK(sp.qp1_loop);
        CHECK(sp.cross_edge);
        CHECK(sp.all);
    }
    SelfPartnerReport sp5 = self_partner_report(5);
    CHECK(sp5.qm1_loop);
    CHECK(sp5.qp1_loop);
    CHECK(!sp5.cross_edge);
    CHECK(!sp5.all);
    SelfPartnerReport sp1 = self_partner_report(1);
    CHECK(!sp1.qm1_loop);
    CHECK(!sp1.qp1_loop);
    CHECK(sp1.cross_edge); // the {1, 3} pair counts as an undirected partner link
}

TEST_CASE("json export and parse round trip") {
    CHECK(level(3).json() ==
          "{\"edges\":[{\"m\":7,\"n\":9,\"s\":6}],\"exceptional\":null,\"loops\":[],"
          "\"r\":3,\"vertices\":[{\"f\":3,\"f0\":3,\"n\":7},{\"f\":6,\"f0\":3,\"n\":9}]}");
    CHECK(level(1).json().find("\"exceptional\":{\"from_1\":1,\"from_3\":2}") !=
          std::string::npos);
    for (int r = 1; r <= 8; ++r)
        CHECK(PartnershipComponent::parse(level(r).json()) == level(r));
}

TEST_CASE("json parse rejects malformed input") {
    const char* bad[] = {
        "not json",
        "[]",
        "{}",
        "{\"r\":3,\"vertices\":[],\"edges\":[],\"loops\":[]}",
        "{\"r\":3,\"vertices\":[],\"edges\":[],\"loops\":[],\"exceptional\":null,\"x\":1}",
        "{\"r\":0,\"vertices\":[],\"edges\":[],\"loops\":[],\"exceptional\":null}",
        "{\"r\":24,\"vertices\":[],\"edges\":[],\"loops\":[],\"exceptional\":null}",
        "{\"r\":-3,\"vertices\":[],\"edges\":[],\"loops\":[],\"exceptional\":null}",
        "{\"r\":3,\"vertices\":{},\"edges\":[],\"loops\":[],\"exceptional\":null}",
        "{\"r\":3,\"vertices\":[{\"n\":7,\"f\":3}],\"edges\":[],\"loops\":[],\"exceptional\":null}",
        "{\"r\":3,\"vertices\":[{\"n\":7,\"f\":3,\"f0\":3,\"z\":1}],\"edges\":[],\"loops\":[],"
        "\"exceptional\":null}",
        "{\"r\":3,\"vertices\":[{\"n\":-7,\"f\":3,\"f0\":3}],\"edges\":[],\"loops\":[],"
        "\"exceptional\":null}",
        "{\"r\":3,\"vertices\":[],\"edges\":[{\"m\":7,\"n\":9,\"s\":1.5}],\"loops\":[],"
        "\"exceptional\":null}",
        "{\"r\":3,\"vertices\":[],\"edges\":[],\"loops\":[{\"n\":5}],\"exceptional\":null}",
        "{\"r\":1,\"vertices\":[],\"edges\":[],\"loops\":[],\"exceptional\":{\"from_1\":1}}",
        "{\"r\":1,\"vertices\":[],\"edges\":[],\"loops\":[],\"exceptional\":[1,2]}",
    };
    for (const char* text : bad)
        CHECK(thrown_name([text] { PartnershipComponent::parse(text); }) == "UsageError");
}

TEST_CASE("dot export") {
    CHECK(level(1).dot() == "digraph component_r1 {\n"
                            "  edge [dir=none];\n"
                            "  \"1\" [underline=false];\n"
                            "  \"3\" [underline=true];\n"
                            "  \"1\" -> \"3\" [dir=forward, label=\"1\"];\n"
                            "  \"3\" -> \"1\" [dir=forward, label=\"2\"];\n"
                            "}\n");
    CHECK(level(3).dot() == "digraph component_r3 {\n"
                            "  edge [dir=none];\n"
                            "  \"7\" [underline=false];\n"
                            "  \"9\" [underline=true];\n"
                            "  \"7\" -> \"9\" [label=\"6\"];\n"
                            "}\n");
    CHECK(level(2).dot().find("\"5\" -> \"5\" [label=\"4\"];") != std::string::npos);
}

TEST_CASE("component disk cache") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() /
                   ("harmonica_cache_test_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    std::string d = dir.string();

    CHECK(!load_component(4, d).has_value()); // miss on absent directory
    PartnershipComponent c4 = cached_component(4, d);
    CHECK(c4 == level(4));
    CHECK(fs::exists(dir / "component_r4.json"));
    CHECK(cached_component(4, d) == level(4)); // served from disk
    auto hit = load_component(4, d);
    REQUIRE(hit.has_value());
    CHECK(*hit == level(4));
    CHECK(!load_component(5, d).has_value());

    store_component(level(1), d); // exceptional labels survive the round trip
    CHECK(*load_component(1, d) == level(1));

    {
        std::ofstream out(dir / "component_r6.json");
        out << "this is not json";
    }
    CHECK(thrown_name([&] { load_component(6, d); }) == "SchemaVersionMismatch");
    {
        std::ofstream out(dir / "component_r7.json");
        out << "{\"schema\":2,\"component\":" << level(7).json() << "}";
    }
    CHECK(thrown_name([&] { load_component(7, d); }) == "SchemaVersionMismatch");
    {
        std::ofstream out(dir / "component_r8.json"); // valid schema, wrong level inside
        out << "{\"schema\":1,\"component\":" << level(3).json() << "}";
    }
    CHECK(thrown_name([&] { load_component(8, d); }) == "SchemaVersionMismatch");
    {
        std::ofstream out(dir / "component_r9.json");
        out << "{\"schema\":1,\"component\":{\"bad\":1}}";
    }
    CHECK(thrown_name([&] { load_component(9, d); }) == "SchemaVersionMismatch");

    fs::create_directories(dir / "component_r10.json"); // a directory, not a file
    CHECK(thrown_name([&] { load_component(10, d); }) == "IoError");

    std::string blocked = (dir / "component_r4.json" / "sub").string(); // file as directory
    CHECK(thrown_name([&] { store_component(level(2), blocked); }) == "IoError");

    fs::remove_all(dir);
}
