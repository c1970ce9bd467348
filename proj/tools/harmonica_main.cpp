// harmonica: GF(2) harmonic functions on graphs, grids, and tori; the
// Chebyshev-Dickson/Fibonacci polynomial calculus over GF(2); the partnership
// graph of torsion bi-orders on an elliptic cubic; and the Lights Out game.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "harmonica/chebfib.hpp"
#include "harmonica/error.hpp"
#include "harmonica/graphcore.hpp"
#include "harmonica/lattice.hpp"
#include "harmonica/lightsout.hpp"
#include "harmonica/nt.hpp"
#include "harmonica/partnership.hpp"
#include "harmonica/poly2.hpp"

using namespace harmonica;
using Json = nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IoError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) fail("IoError", "cannot read " + path);
    return ss.str();
}

Graph load_graph(const std::string& path) { return Graph::parse(slurp(path)); }

Sign parse_sign(const std::string& s) {
    if (s == "plus") return Sign::Plus;
    if (s == "minus") return Sign::Minus;
    fail("UsageError", "sign must be plus or minus, got '" + s + "'");
}

CdfKind parse_kind(const std::string& s) {
    if (s == "T") return CdfKind::T;
    if (s == "E") return CdfKind::E;
    if (s == "F") return CdfKind::F;
    fail("UsageError", "family must be T, E, or F, got '" + s + "'");
}

Pattern parse_pattern(const std::string& s) {
    for (char c : s)
        if (c != '0' && c != '1') fail("UsageError", "pattern must be a 0/1 string");
    return BitVec::from_string(s);
}

MultiIndex parse_sides(const std::vector<uint64_t>& sides) {
    if (sides.empty()) fail("UsageError", "at least one side length required");
    return sides;
}

// Vertex subsets on the command line: comma-separated indices, e.g. "0,3,5".
std::vector<std::size_t> parse_vertex_list(const std::string& s) {
    std::vector<std::size_t> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            fail("UsageError", "vertex list must be comma-separated numbers");
        out.push_back(std::size_t(std::stoull(item)));
    }
    return out;
}

std::string bit_row(const BitVec& v) { return v.str(); }

Json basis_json(const std::vector<BitVec>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(bit_row(r));
    return arr;
}

std::string press_line(const MoveSet& m) {
    std::string line = "PRESS:";
    for (std::size_t v = 0; v < m.presses.size(); ++v)
        if (m.presses.get(v)) line += " v" + std::to_string(v);
    return line;
}

Json press_json(const MoveSet& m) {
    Json arr = Json::array();
    for (std::size_t v = 0; v < m.presses.size(); ++v)
        if (m.presses.get(v)) arr.push_back(v);
    return arr;
}

void emit(const std::string& text) { std::cout << text << "\n"; }
void emit_json(const Json& j) { std::cout << j.dump() << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GF(2) harmonic functions, Chebyshev-Dickson calculus, the "
                 "partnership graph, and Lights Out"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string format = "text";
    app.add_option("--format", format, "output format: text, json, or dot")
        ->capture_default_str();
    std::string cache_dir;
    if (const char* env = std::getenv("HARMONICA_CACHE")) cache_dir = env;
    app.add_option("--cache-dir", cache_dir,
                   "directory for partnership component caching (or HARMONICA_CACHE)");
    int workers = 1;
    app.add_option("--workers", workers, "parallel worker hint")
        ->check(CLI::PositiveNumber);

    // poly -------------------------------------------------------------
    auto* c_poly = app.add_subcommand("poly", "polynomial arithmetic over GF(2)");
    c_poly->require_subcommand(1);
    std::string arg_a, arg_b;
    auto* c_mul = c_poly->add_subcommand("mul", "product of two polynomials");
    c_mul->add_option("a", arg_a)->required();
    c_mul->add_option("b", arg_b)->required();
    auto* c_gcd = c_poly->add_subcommand("gcd", "greatest common divisor");
    c_gcd->add_option("a", arg_a)->required();
    c_gcd->add_option("b", arg_b)->required();
    auto* c_factor = c_poly->add_subcommand("factor", "factor into irreducibles");
    c_factor->add_option("a", arg_a)->required();
    auto* c_conj = c_poly->add_subcommand("conj", "substitute x+1 for x");
    c_conj->add_option("a", arg_a)->required();
    auto* c_recip = c_poly->add_subcommand("recip", "reverse the coefficients");
    c_recip->add_option("a", arg_a)->required();
    auto* c_delta = c_poly->add_subcommand("delta", "p + p(x+1)");
    c_delta->add_option("a", arg_a)->required();
    uint64_t arg_n = 0;
    auto* c_cyclo = c_poly->add_subcommand("cyclotomic", "cyclotomic polynomial mod 2");
    c_cyclo->add_option("d", arg_n)->required();
    int arg_r = 0;
    auto* c_h = c_poly->add_subcommand("h", "the pair x^(2^r)+x+1 and its companion");
    c_h->add_option("r", arg_r)->required();

    // cdf / ford --------------------------------------------------------
    std::string arg_kind;
    auto* c_cdf = app.add_subcommand("cdf", "Chebyshev-Dickson/Fibonacci polynomial");
    c_cdf->add_option("family", arg_kind, "T, E, or F")->required();
    c_cdf->add_option("n", arg_n)->required();
    auto* c_ford = app.add_subcommand("ford", "least n with tau dividing F_n");
    c_ford->add_option("tau", arg_a)->required();

    // harmonic ----------------------------------------------------------
    auto* c_harm = app.add_subcommand("harmonic", "does a harmonic function exist?");
    c_harm->require_subcommand(1);
    std::vector<uint64_t> arg_sides;
    auto* c_torus = c_harm->add_subcommand("torus", "toric lattice with given sides");
    c_torus->add_option("sides", arg_sides)->required()->expected(-1);
    auto* c_grid = c_harm->add_subcommand("grid", "grid with given sides");
    c_grid->add_option("sides", arg_sides)->required()->expected(-1);

    // graph verbs ---------------------------------------------------------
    std::string arg_graph, arg_sign = "plus", arg_set, arg_pattern, arg_in;
    auto* c_kernel = app.add_subcommand("kernel", "kernel basis of a graph laplacian");
    c_kernel->add_option("--graph", arg_graph)->required();
    c_kernel->add_option("--sign", arg_sign, "plus or minus");
    auto* c_charpoly = app.add_subcommand("charpoly", "adjacency characteristic polynomial");
    c_charpoly->add_option("--graph", arg_graph)->required();
    auto* c_forest = app.add_subcommand("forest-reduce", "leaf surgery on a forest");
    c_forest->add_option("--graph", arg_graph)->required();
    c_forest->add_option("--sign", arg_sign, "plus or minus");
    auto* c_uniq = app.add_subcommand("uniq", "is the vertex set a uniqueness set?");
    c_uniq->add_option("--graph", arg_graph)->required();
    c_uniq->add_option("--set", arg_set, "comma-separated vertex indices");
    c_uniq->add_option("--sign", arg_sign, "plus or minus");
    auto* c_jorder = app.add_subcommand("jorder", "order of the pair-propagation map");
    c_jorder->add_option("--graph", arg_graph)->required();
    c_jorder->add_option("--sign", arg_sign, "plus or minus");
    auto* c_double = app.add_subcommand("double", "interleaving doubling of a torus pattern");
    c_double->add_option("--in", arg_in, "torus pattern JSON file")->required();

    // lightsout -----------------------------------------------------------
    auto* c_lo = app.add_subcommand("lightsout", "the Lights Out game");
    c_lo->require_subcommand(1);
    auto* c_lo_win = c_lo->add_subcommand("winning", "is every pattern solvable?");
    c_lo_win->add_option("--graph", arg_graph)->required();
    auto* c_lo_solve = c_lo->add_subcommand("solve", "moves for one pattern");
    c_lo_solve->add_option("--graph", arg_graph)->required();
    c_lo_solve->add_option("--pattern", arg_pattern, "0/1 string")->required();
    auto* c_lo_odd = c_lo->add_subcommand("odd-dom", "presses flipping every light");
    c_lo_odd->add_option("--graph", arg_graph)->required();

    // partnership -----------------------------------------------------------
    auto* c_pn = app.add_subcommand("partnership", "torsion bi-order partnership graph");
    c_pn->require_subcommand(1);
    auto* c_pn_comp = c_pn->add_subcommand("component", "all partners at one level");
    c_pn_comp->add_option("r", arg_r)->required();
    uint64_t arg_order = 0;
    auto* c_pn_partners = c_pn->add_subcommand("partners", "partners of one odd order");
    c_pn_partners->add_option("n", arg_order)->required();

    auto* c_hasse = app.add_subcommand("hasse", "solution counts of the cubic");
    c_hasse->add_option("r", arg_r)->required();
    auto* c_euler = app.add_subcommand("euler-check", "totient identities at one level");
    c_euler->add_option("r", arg_r)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    bool json = false;
    try {
        if (format == "json") json = true;
        else if (format == "dot" && !c_pn_comp->parsed())
            fail("UsageError", "--format dot is only available for partnership component");
        else if (format != "text" && format != "dot")
            fail("UsageError", "unknown format '" + format + "'");

        if (c_mul->parsed()) {
            Poly2 p = poly_parse(arg_a) * poly_parse(arg_b);
            json ? emit_json({{"poly", poly_text(p)}}) : emit(poly_text(p));
        } else if (c_gcd->parsed()) {
            Poly2 p = poly_gcd(poly_parse(arg_a), poly_parse(arg_b));
            json ? emit_json({{"poly", poly_text(p)}}) : emit(poly_text(p));
        } else if (c_factor->parsed()) {
            FactorList fs = poly_factor(poly_parse(arg_a));
            if (json) {
                Json arr = Json::array();
                for (const auto& [f, m] : fs)
                    arr.push_back({{"factor", poly_text(f)}, {"mult", m}});
                emit_json({{"factors", arr}});
            } else {
                for (const auto& [f, m] : fs)
                    emit("(" + poly_text(f) + ")^" + std::to_string(m));
            }
        } else if (c_conj->parsed()) {
            Poly2 p = poly_conjugate(poly_parse(arg_a));
            json ? emit_json({{"poly", poly_text(p)}}) : emit(poly_text(p));
        } else if (c_recip->parsed()) {
            Poly2 p = poly_reciprocal(poly_parse(arg_a));
            json ? emit_json({{"poly", poly_text(p)}}) : emit(poly_text(p));
        } else if (c_delta->parsed()) {
            Poly2 p = delta_map(poly_parse(arg_a));
            json ? emit_json({{"poly", poly_text(p)}}) : emit(poly_text(p));
        } else if (c_cyclo->parsed()) {
            Poly2 p = cyclotomic(arg_n);
            json ? emit_json({{"poly", poly_text(p)}}) : emit(poly_text(p));
        } else if (c_h->parsed()) {
            HPair hp = h_family(arg_r);
            if (json)
                emit_json({{"h", poly_text(hp.h)}, {"htilde", poly_text(hp.h_tilde)}});
            else {
                emit("h = " + poly_text(hp.h));
                emit("htilde = " + poly_text(hp.h_tilde));
            }
        } else if (c_cdf->parsed()) {
            Poly2 p = cdf(parse_kind(arg_kind), arg_n);
            json ? emit_json({{"poly", poly_text(p)}}) : emit(poly_text(p));
        } else if (c_ford->parsed()) {
            uint64_t n = fib_order(poly_parse(arg_a));
            json ? emit_json({{"ford", n}}) : emit(std::to_string(n));
        } else if (c_torus->parsed()) {
            TorusDecision d = torus_harmonic(parse_sides(arg_sides));
            if (json) {
                Json jw = nullptr;
                if (d.witness)
                    jw = {{"orders", d.witness->orders},
                          {"field_degree", d.witness->field_degree}};
                emit_json({{"harmonic", d.harmonic}, {"witness", jw}});
            } else if (!d.harmonic) {
                emit("NOT HARMONIC");
            } else {
                emit("HARMONIC");
                if (d.witness) {
                    std::string line = "witness: orders";
                    for (uint64_t o : d.witness->orders) line += " " + std::to_string(o);
                    line += " (field degree " + std::to_string(d.witness->field_degree) + ")";
                    emit(line);
                }
            }
        } else if (c_grid->parsed()) {
            GridDims d = grid_kernel_dims(parse_sides(arg_sides));
            if (json)
                emit_json({{"harmonic", d.dplus > 0},
                           {"dplus", d.dplus},
                           {"dminus", d.dminus}});
            else {
                emit(d.dplus > 0 ? "HARMONIC" : "NOT HARMONIC");
                emit("d+ = " + std::to_string(d.dplus) + ", d- = " + std::to_string(d.dminus));
            }
        } else if (c_kernel->parsed()) {
            KernelBasis k = harmonic_kernel(load_graph(arg_graph), parse_sign(arg_sign));
            if (json)
                emit_json({{"d", k.d}, {"basis", basis_json(k.basis)}});
            else {
                emit("d = " + std::to_string(k.d));
                for (const auto& row : k.basis) emit(bit_row(row));
            }
        } else if (c_charpoly->parsed()) {
            Poly2 p = adjacency_charpoly(load_graph(arg_graph));
            json ? emit_json({{"poly", poly_text(p)}}) : emit(poly_text(p));
        } else if (c_forest->parsed()) {
            ForestReduction fr = forest_reduce(load_graph(arg_graph), parse_sign(arg_sign));
            if (json) {
                emit_json({{"d", fr.d},
                           {"survivors", fr.survivors},
                           {"reduced", fr.reduced.str()},
                           {"basis", basis_json(fr.basis)}});
            } else {
                emit("d = " + std::to_string(fr.d));
                std::string line = "survivors:";
                for (std::size_t v : fr.survivors) line += " " + std::to_string(v);
                emit(line);
                std::cout << "reduced:\n" << fr.reduced.str();
                for (const auto& row : fr.basis) emit(bit_row(row));
            }
        } else if (c_uniq->parsed()) {
            bool yes = is_uniqueness_set(load_graph(arg_graph), parse_vertex_list(arg_set),
                                         parse_sign(arg_sign));
            json ? emit_json({{"uniqueness_set", yes}})
                 : emit(yes ? "UNIQUENESS SET" : "NOT A UNIQUENESS SET");
        } else if (c_jorder->parsed()) {
            uint64_t n = j_order(load_graph(arg_graph), parse_sign(arg_sign));
            json ? emit_json({{"order", n}}) : emit(std::to_string(n));
        } else if (c_double->parsed()) {
            TorusPattern doubled = double_pattern(TorusPattern::parse(slurp(arg_in)));
            emit(doubled.json()); // the serialization is already JSON
        } else if (c_lo_win->parsed()) {
            bool w = is_winning(load_graph(arg_graph));
            json ? emit_json({{"winning", w}}) : emit(w ? "WINNING" : "NOT WINNING");
        } else if (c_lo_solve->parsed()) {
            Graph g = load_graph(arg_graph);
            SolveResult r = solve(g, parse_pattern(arg_pattern));
            if (const MoveSet* m = std::get_if<MoveSet>(&r)) {
                json ? emit_json({{"solvable", true}, {"presses", press_json(*m)}})
                     : emit(press_line(*m));
            } else {
                const InvariantWitness& w = std::get<InvariantWitness>(r);
                json ? emit_json({{"solvable", false}, {"invariant", bit_row(w.h)}})
                     : emit("UNSOLVABLE, invariant: " + bit_row(w.h));
            }
        } else if (c_lo_odd->parsed()) {
            MoveSet m = odd_domination(load_graph(arg_graph));
            json ? emit_json({{"presses", press_json(m)}}) : emit(press_line(m));
        } else if (c_pn_comp->parsed()) {
            PartnershipComponent c = cache_dir.empty()
                                         ? component(arg_r, workers)
                                         : cached_component(arg_r, cache_dir, workers);
            if (json) {
                std::cout << c.json() << "\n";
            } else if (format == "dot") {
                std::cout << c.dot();
            } else {
                emit("r = " + std::to_string(c.r));
                for (const auto& v : c.vertices)
                    emit("vertex " + std::to_string(v.n) + ": f=" + std::to_string(v.f) +
                         " f0=" + std::to_string(v.f0));
                for (const auto& e : c.edges)
                    emit("edge " + std::to_string(e.m) + " " + std::to_string(e.n) +
                         ": s=" + std::to_string(e.s));
                for (const auto& l : c.loops)
                    emit("loop " + std::to_string(l.n) + ": s=" + std::to_string(l.s));
                if (c.exceptional)
                    emit("exceptional: 1->3 s=" + std::to_string(c.exceptional->from_1) +
                         ", 3->1 s=" + std::to_string(c.exceptional->from_3));
            }
        } else if (c_pn_partners->parsed()) {
            std::vector<uint64_t> ps = partners_of(arg_order, workers);
            if (json) {
                emit_json({{"n", arg_order}, {"partners", ps}});
            } else {
                std::string line;
                for (uint64_t p : ps) line += (line.empty() ? "" : " ") + std::to_string(p);
                emit(line);
            }
        } else if (c_hasse->parsed()) {
            HasseWeil hw = hasse_weil(arg_r);
            json ? emit_json({{"r", arg_r}, {"s", hw.s}, {"sbar", hw.sbar}})
                 : emit("s_" + std::to_string(arg_r) + " = " + std::to_string(hw.s) +
                        ", sbar_" + std::to_string(arg_r) + " = " + std::to_string(hw.sbar));
        } else if (c_euler->parsed()) {
            EulerReport rep = euler_check(arg_r, workers);
            if (json) {
                Json vs = Json::array();
                for (const auto& v : rep.vertex_checks)
                    vs.push_back({{"n", v.n},
                                  {"phi", v.phi},
                                  {"labels", v.label_sum},
                                  {"ok", v.ok}});
                emit_json({{"r", rep.r},
                           {"vertices", vs},
                           {"level",
                            {{"phi", rep.level_phi_total},
                             {"labels", rep.level_label_total},
                             {"ok", rep.level_ok}}},
                           {"divisor",
                            {{"total", rep.divisor_total},
                             {"expected", rep.two_q},
                             {"ok", rep.divisor_ok}}},
                           {"corner",
                            {{"lhs", rep.corner_lhs},
                             {"rhs", rep.corner_rhs},
                             {"ok", rep.corner_ok}}},
                           {"all_ok", rep.all_ok}});
            } else {
                for (const auto& v : rep.vertex_checks)
                    emit("vertex " + std::to_string(v.n) + ": phi " + std::to_string(v.phi) +
                         ", labels " + std::to_string(v.label_sum) + ", " +
                         (v.ok ? "ok" : "MISMATCH"));
                emit("level: phi " + std::to_string(rep.level_phi_total) + ", labels " +
                     std::to_string(rep.level_label_total) + ", " +
                     (rep.level_ok ? "ok" : "MISMATCH"));
                emit("divisor: total " + std::to_string(rep.divisor_total) + ", expected " +
                     std::to_string(rep.two_q) + ", " + (rep.divisor_ok ? "ok" : "MISMATCH"));
                emit("corner: " + std::to_string(rep.corner_lhs) +
                     " >= " + std::to_string(rep.corner_rhs) + ", " +
                     (rep.corner_ok ? "ok" : "MISMATCH"));
                emit(rep.all_ok ? "all ok" : "MISMATCH");
            }
        }
    } catch (const DomainError& e) {
        std::cerr << e.what() << "\n";
        return e.name() == "UsageError" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "InternalError: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
