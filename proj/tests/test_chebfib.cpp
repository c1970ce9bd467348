#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "harmonica/chebfib.hpp"
#include "harmonica/error.hpp"
#include "harmonica/field2.hpp"
#include "harmonica/nt.hpp"
#include "harmonica/poly2.hpp"
#include "helpers.hpp"

using namespace harmonica;

namespace {

Poly2 P(const std::string& s) { return poly_parse(s); }
Poly2 T(uint64_t n) { return cdf(CdfKind::T, n); }
Poly2 E(uint64_t n) { return cdf(CdfKind::E, n); }
Poly2 F(uint64_t n) { return cdf(CdfKind::F, n); }

template <typename Fn>
std::string thrown_name(Fn&& f) {
    try {
        f();
    } catch (const DomainError& e) {
        return e.name();
    } catch (...) {
        return "<other>";
    }
    return "<none>";
}

Poly2 poly_pow(const Poly2& p, uint64_t e) {
    Poly2 r = Poly2::one();
    for (uint64_t i = 0; i < e; ++i) r = r * p;
    return r;
}

std::vector<Poly2> all_irreducibles(int d) {
    std::vector<Poly2> out;
    for (uint64_t v = 0; v < (uint64_t{1} << d); ++v) {
        Poly2 p = Poly2::from_mask((uint64_t{1} << d) | v);
        if (poly_irreducible(p)) out.push_back(p);
    }
    return out;
}

} // namespace

TEST_CASE("recurrence families") {
    CHECK_EQ(T(0), Poly2::zero());
    CHECK_EQ(T(1), P("x"));
    CHECK_EQ(T(2), P("x^2"));
    CHECK_EQ(T(3), P("x^3+x"));
    CHECK_EQ(T(4), P("x^4"));
    CHECK_EQ(E(0), Poly2::one());
    CHECK_EQ(E(1), P("x"));
    CHECK_EQ(E(2), P("x^2+1"));
    CHECK_EQ(E(3), P("x^3"));
    CHECK_EQ(F(0), Poly2::zero());
    CHECK_EQ(F(1), Poly2::one());
    CHECK_EQ(F(2), P("x"));
    CHECK_EQ(F(3), P("x^2+1"));
    CHECK_EQ(F(5), P("x^4+x^2+1"));
    CHECK_EQ(F(7), P("x^6+x^4+1"));
    CHECK_EQ(F(8), P("x^7"));

    for (uint64_t n = 1; n <= 200; ++n) {
        CHECK_EQ(T(n), P("x") * F(n));
        CHECK_EQ(T(n), P("x") * E(n - 1));
        CHECK_EQ(T(n).degree(), int(n));
        CHECK_EQ(E(n).degree(), int(n));
        CHECK_EQ(F(n).degree(), int(n) - 1);
    }
    CHECK_EQ(thrown_name([] { cdf(CdfKind::F, 2000001); }), "DegreeOutOfRange");
}

TEST_CASE("generating function of the fibonacci family") {
    // (z^2 + xz + 1) * sum F_n z^n = z, coefficientwise up to z^64
    const int N = 64;
    std::vector<Poly2> f(N + 1);
    for (int n = 0; n <= N; ++n) f[std::size_t(n)] = F(uint64_t(n));
    for (int n = 0; n <= N; ++n) {
        Poly2 c = f[std::size_t(n)];
        if (n >= 1) c += P("x") * f[std::size_t(n) - 1];
        if (n >= 2) c += f[std::size_t(n) - 2];
        CHECK_EQ(c, n == 1 ? Poly2::one() : Poly2::zero());
    }
}

TEST_CASE("binomial coefficient formula") {
    for (uint64_t n = 0; n <= 32; ++n) {
        Poly2 rhs;
        for (uint64_t i = 0; 2 * i <= n; ++i)
            if ((i & (n - 2 * i)) == 0) rhs.set_coeff(int(n - 2 * i)); // odd C(n-i, i)
        CHECK_EQ(E(n), rhs);
    }
}

TEST_CASE("index arithmetic identities") {
    for (uint64_t q = 2; q <= 1024; q *= 2) CHECK_EQ(F(q - 1) + F(q + 1), Poly2::monomial(int(q)));

    for (uint64_t m = 1; m <= 40; ++m)
        for (uint64_t n = 1; n <= 40; ++n)
            CHECK_EQ(E(m + n), E(m) * E(n) + E(m - 1) * E(n - 1));
    for (uint64_t n = 1; n <= 40; ++n) {
        CHECK_EQ(E(2 * n), E(n).square() + E(n - 1).square());
        CHECK_EQ(E(2 * n + 1), P("x") * E(n).square());
    }

    for (uint64_t n = 0; n <= 24; ++n)
        for (uint64_t t = 0; t <= n; ++t) CHECK_EQ(T(n + t) + T(n - t), T(n) * T(t));
    for (uint64_t m = 0; m <= 24; ++m)
        for (uint64_t n = 0; n <= 24; ++n)
            CHECK_EQ(poly_compose(T(m), T(n)), T(m * n));
    for (uint64_t q = 2; q <= 16; q *= 2)
        for (uint64_t n = 0; n <= 24; ++n) {
            CHECK_EQ(T(q * n), poly_compose(T(n), Poly2::monomial(int(q))));
            CHECK_EQ(T(q * n), poly_pow(T(n), q));
        }
}

TEST_CASE("evaluation at symmetric sums") {
    for (int r = 1; r <= 6; ++r) {
        const FieldCtx& k = FieldCtx::get(r);
        for (uint64_t xi = 1; xi < k.size_q(); ++xi) {
            uint64_t z = xi ^ k.inv(xi);
            uint64_t pw = 1, ipw = 1, ixi = k.inv(xi);
            for (uint64_t n = 0; n <= 40; ++n) {
                CHECK_EQ(eval_in_field(T(n), k, z), pw ^ ipw);
                pw = k.mul(pw, xi);
                ipw = k.mul(ipw, ixi);
            }
        }
    }
}

TEST_CASE("odd-index reconstruction from roots of unity") {
    Rng rng(31);
    for (uint64_t n = 3; n <= 31; n += 2) {
        const FieldCtx& k = FieldCtx::get(int(order_profile(n).f));
        uint64_t zeta = poly_roots_in_field(cyclotomic(n), k).front();
        REQUIRE_EQ(k.elem_order(zeta), n);
        Poly2 tn = T(n);
        for (int t = 0; t < 64; ++t) {
            uint64_t z = rng.next() & (k.size_q() - 1);
            uint64_t rhs = z;
            for (uint64_t i = 1; 2 * i < n; ++i) {
                uint64_t w = z ^ k.pow(zeta, i) ^ k.pow(zeta, n - i);
                rhs = k.mul(rhs, k.mul(w, w));
            }
            CHECK_EQ(eval_in_field(tn, k, z), rhs);
        }
    }
}

TEST_CASE("small-point evaluations detect index divisibility") {
    for (uint64_t n = 1; n <= 60; ++n) {
        Poly2 e = E(n - 1);
        CHECK_EQ(!e.coeff(0), n % 2 == 0);                     // value at 0
        bool at_one = false;                                    // value at 1
        for (int i = 0; i <= e.degree(); ++i) at_one ^= e.coeff(i);
        CHECK_EQ(!at_one, n % 3 == 0);
        CHECK_EQ((e % P("x^2+x+1")).is_zero(), n % 5 == 0);
    }
}

TEST_CASE("fibonacci order") {
    CHECK_EQ(fib_order(P("x+1")), 3u);
    CHECK_EQ(fib_order(P("x^2+x+1")), 5u);
    CHECK_EQ(fib_order(P("x^3+x+1")), 9u);
    CHECK_EQ(fib_order(P("x^3+x^2+1")), 7u);
    CHECK_EQ(thrown_name([] { fib_order(P("x")); }), "IsX");
    CHECK_EQ(thrown_name([] { fib_order(P("x^2+1")); }), "NotIrreducible");

    // divisibility: tau | F_n exactly at multiples of the order
    for (int d = 1; d <= 6; ++d)
        for (const Poly2& tau : all_irreducibles(d)) {
            if (tau == Poly2::x()) continue;
            uint64_t ford = fib_order(tau);
            CHECK_EQ(ford % 2, 1u);
            for (uint64_t n = 1; n <= 130; ++n)
                CHECK_EQ(fib_mod(n, tau).is_zero(), n % ford == 0);
        }
}

TEST_CASE("fibonacci modulo") {
    Rng rng(32);
    for (int t = 0; t < 10; ++t) {
        Poly2 m = random_nonzero_poly(rng, 12);
        if (m.degree() < 1) m = P("x^3+x+1");
        CHECK(fib_mod(0, m).is_zero());
        for (uint64_t n = 0; n <= 300; ++n) CHECK_EQ(fib_mod(n, m), F(n) % m);
        // far beyond the table: F at powers of two collapses to a monomial
        CHECK_EQ(fib_mod(uint64_t{1} << 45, m),
                 poly_powmod(Poly2::x(), (uint64_t{1} << 45) - 1, m));
    }
    CHECK_EQ(thrown_name([] { fib_mod(7, Poly2::zero()); }), "ZeroPolynomial");
}

TEST_CASE("order-indexed factors") {
    CHECK_EQ(rho(1), Poly2::one());
    CHECK_EQ(rho(3), P("x^2+1"));
    CHECK_EQ(rho(5), P("x^4+x^2+1"));
    CHECK_EQ(thrown_name([] { rho(0); }), "EvenInput");
    CHECK_EQ(thrown_name([] { rho(6); }), "EvenInput");

    for (uint64_t n = 3; n <= 101; n += 2) CHECK_EQ(uint64_t(rho(n).degree()), nt::phi(n));

    for (uint64_t n = 1; n <= 63; n += 2) {
        Poly2 prod = Poly2::one();
        for (uint64_t d : nt::divisors(n)) prod = prod * rho(d);
        CHECK_EQ(prod, F(n));
        // every factor appears squared, with order exactly n
        for (auto& [tau, e] : poly_factor(rho(n))) {
            CHECK_EQ(e, 2);
            CHECK_EQ(fib_order(tau), n);
        }
    }
}

TEST_CASE("square roots of odd-index fibonacci") {
    CHECK_EQ(fib_sqrt(5), P("x^2+x+1"));
    CHECK_EQ(fib_sqrt(3), P("x+1"));
    CHECK_EQ(fib_sqrt(1), Poly2::one());
    CHECK_EQ(thrown_name([] { fib_sqrt(4); }), "EvenInput");

    for (uint64_t n = 1; n <= 201; n += 2) {
        uint64_t k = (n - 1) / 2;
        Poly2 r = fib_sqrt(n);
        CHECK_EQ(r.square(), F(n));
        CHECK_EQ(r.degree(), int(k));
        if (k >= 1) CHECK(r.coeff(int(k) - 1)); // next-to-leading monomial present
        CHECK((poly_gcd(r, poly_derivative(r)).is_one() || k == 0)); // squarefree
    }

    // splitting field exponent, and factor multiplicities of the full F_n
    for (uint64_t n = 3; n <= 63; n += 2) {
        uint64_t lcm = 1;
        for (auto& [tau, e] : poly_factor(F(n))) {
            CHECK_EQ(e, 2);
            lcm = std::lcm(lcm, uint64_t(tau.degree()));
        }
        CHECK_EQ(lcm, order_profile(n).f0);
    }
}

TEST_CASE("adjacent fibonacci product") {
    for (uint64_t q = 2; q <= 256; q *= 2)
        CHECK_EQ(F(q - 1) * F(q + 1), (Poly2::monomial(int(q - 1)) + Poly2::one()).square());
}

TEST_CASE("factor degrees at odd prime indices") {
    for (uint64_t p = 3; p <= 61; p += 2) {
        if (!nt::is_prime(p)) continue;
        uint64_t f = order_profile(p).f;
        uint64_t want = f % 2 == 1 ? f : f / 2;
        FactorList fs = poly_factor(F(p));
        for (auto& [tau, e] : fs) {
            (void)e;
            CHECK_EQ(uint64_t(tau.degree()), want);
        }
        bool is_square_of_irreducible = fs.size() == 1;
        CHECK_EQ(is_square_of_irreducible, f == p - 1 || (f == (p - 1) / 2 && f % 2 == 1));
        // 2 is a quadratic residue at p = +-1 mod 8, so its order stays below p-1
        if (p % 8 == 1 || p % 8 == 7) CHECK(f != p - 1);
    }
}

TEST_CASE("trace-one factor count is odd") {
    for (uint64_t n = 3; n <= 63; n += 2) {
        int ones = 0;
        for (auto& [tau, e] : poly_factor(fib_sqrt(n))) {
            (void)e;
            if (tau.coeff(tau.degree() - 1)) ++ones;
        }
        CHECK_EQ(ones % 2, 1);
    }
}

TEST_CASE("chebyshev-basis decomposition") {
    CHECK_EQ(cheb_decompose(Poly2::one()), std::vector<uint64_t>{});
    CHECK_EQ(cheb_decompose(P("x^2+x+1")), std::vector<uint64_t>({1, 2}));
    CHECK_EQ(cheb_decompose(P("x^4+x+1")), std::vector<uint64_t>({1, 4}));
    CHECK_EQ(thrown_name([] { cheb_decompose(P("x^2+x")); }), "NonUnitConstantTerm");
    CHECK_EQ(thrown_name([] { cheb_decompose(Poly2::zero()); }), "NonUnitConstantTerm");

    Rng rng(33);
    for (int t = 0; t < 60; ++t) {
        Poly2 p = random_poly(rng, 120);
        p.set_coeff(0, true);
        std::vector<uint64_t> alphas = cheb_decompose(p);
        CHECK(std::is_sorted(alphas.begin(), alphas.end()));
        CHECK(std::adjacent_find(alphas.begin(), alphas.end()) == alphas.end());
        Poly2 rebuilt = Poly2::one();
        for (uint64_t a : alphas) rebuilt += T(a);
        CHECK_EQ(rebuilt, p);
    }
}

TEST_CASE("minimal polynomial of a root plus its inverse") {
    CHECK_EQ(trace_min_poly(P("x^2+x+1")), P("x+1"));
    CHECK_EQ(trace_min_poly(P("x^4+x^3+x^2+x+1")), P("x^2+x+1"));
    CHECK_EQ(trace_min_poly(P("x^3+x+1")), P("x^3+x^2+1"));
    CHECK_EQ(thrown_name([] { trace_min_poly(P("x^2+1")); }), "NotIrreducible");
    CHECK_EQ(thrown_name([] { trace_min_poly(P("x")); }), "DegenerateInput");
    CHECK_EQ(thrown_name([] { trace_min_poly(P("x+1")); }), "DegenerateInput");

    for (int d = 2; d <= 8; ++d)
        for (const Poly2& tau : all_irreducibles(d)) {
            Poly2 eta = trace_min_poly(tau);
            bool pal = poly_reciprocal(tau) == tau;
            CHECK_EQ(eta.degree(), pal ? d / 2 : d);
            CHECK(poly_irreducible(eta));
            const FieldCtx& k = FieldCtx::get(d);
            for (uint64_t zeta : poly_roots_in_field(tau, k))
                CHECK_EQ(eval_in_field(eta, k, zeta ^ k.inv(zeta)), 0u);
        }
}
