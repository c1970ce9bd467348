#include "harmonica/chebfib.hpp"

#include <algorithm>
#include <cassert>

#include "harmonica/error.hpp"
#include "harmonica/field2.hpp"
#include "harmonica/nt.hpp"

namespace harmonica {

Poly2 cdf(CdfKind kind, uint64_t n) {
    if (n > 2000000) fail("DegreeOutOfRange", "recurrence index too large for dense output");
    Poly2 prev, cur;
    switch (kind) {
        case CdfKind::T: cur = Poly2::x(); break;
        case CdfKind::E: prev = Poly2::one(); cur = Poly2::x(); break;
        case CdfKind::F: cur = Poly2::one(); break;
    }
    if (n == 0) return prev;
    for (uint64_t k = 1; k < n; ++k) {
        Poly2 next = (cur << 1) + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

struct Mat2 {
    Poly2 a, b, c, d;
};

Mat2 mat_mul(const Mat2& p, const Mat2& q, const Poly2& m) {
    return {(p.a * q.a + p.b * q.c) % m, (p.a * q.b + p.b * q.d) % m,
            (p.c * q.a + p.d * q.c) % m, (p.c * q.b + p.d * q.d) % m};
}

} // namespace

Poly2 fib_mod(uint64_t n, const Poly2& m) {
    if (m.is_zero()) fail("ZeroPolynomial", "reduction modulus is zero");
    if (n == 0) return {};
    // [[x,1],[1,0]]^n = [[F_{n+1},F_n],[F_n,F_{n-1}]]
    Mat2 base{Poly2::x() % m, Poly2::one() % m, Poly2::one() % m, Poly2::zero()};
    Mat2 acc{Poly2::one() % m, Poly2::zero(), Poly2::zero(), Poly2::one() % m};
    while (n) {
        if (n & 1) acc = mat_mul(acc, base, m);
        n >>= 1;
        if (n) base = mat_mul(base, base, m);
    }
    return acc.b;
}

uint64_t fib_order(const Poly2& tau) {
    if (tau == Poly2::x()) fail("IsX", "x divides no F_n");
    if (!poly_irreducible(tau)) fail("NotIrreducible", "Fibonacci order needs an irreducible input");
    int d = tau.degree();
    if (d > 63) fail("DegreeOutOfRange", "Fibonacci order needs degree <= 63");
    const FieldCtx& k = FieldCtx::get(d);
    std::vector<uint64_t> roots = poly_roots_in_field(tau, k);
    assert(!roots.empty());
    QuadRoots qr = unit_quadratic_roots({d, roots.front()});
    switch (qr.kind) {
        case QuadRoots::DoubleOne:
            return 1; // unreachable for irreducible tau != x
        case QuadRoots::SplitInField:
            return k.order_given(qr.roots[0], k.size_q() - 1, k.qm1_factors());
        case QuadRoots::ConjugatePair: {
            const FieldCtx& big = FieldCtx::get(qr.field_degree);
            return big.order_given(qr.roots[0], k.size_q() + 1, k.qp1_factors());
        }
    }
    return 0; // unreachable
}

Poly2 rho(uint64_t n) {
    if (n == 0 || n % 2 == 0) fail("EvenInput", "rho is defined for odd n");
    Poly2 num = Poly2::one(), den = Poly2::one();
    for (uint64_t d : nt::divisors(n)) {
        int mu = nt::mobius(d);
        if (mu == 1) num = num * cdf(CdfKind::F, n / d);
        else if (mu == -1) den = den * cdf(CdfKind::F, n / d);
    }
    auto [q, r] = poly_divmod(num, den);
    if (!r.is_zero()) fail("NonExactDivision", "Moebius product failed to divide exactly");
    return q;
}

Poly2 fib_sqrt(uint64_t n) {
    if (n == 0 || n % 2 == 0) fail("EvenInput", "fib_sqrt is defined for odd n");
    uint64_t k = (n - 1) / 2;
    return cdf(CdfKind::F, k + 1) + cdf(CdfKind::F, k);
}

std::vector<uint64_t> cheb_decompose(const Poly2& p) {
    if (!p.coeff(0)) fail("NonUnitConstantTerm", "decomposition needs p(0) = 1");
    Poly2 rem = p + Poly2::one();
    std::vector<uint64_t> exps;
    if (rem.is_zero()) return exps;
    // T_k is the unique degree-k member of the T family, so greedy stripping
    // of the leading term is the unique expansion.
    int d = rem.degree();
    std::vector<Poly2> t(std::size_t(d) + 1);
    if (d >= 1) t[1] = Poly2::x();
    for (int k = 2; k <= d; ++k) t[std::size_t(k)] = (t[std::size_t(k) - 1] << 1) + t[std::size_t(k) - 2];
    while (!rem.is_zero()) {
        int k = rem.degree();
        exps.push_back(uint64_t(k));
        rem += t[std::size_t(k)];
    }
    std::reverse(exps.begin(), exps.end());
    return exps;
}

Poly2 trace_min_poly(const Poly2& tau) {
    if (tau == Poly2::x() || tau == Poly2::x() + Poly2::one())
        fail("DegenerateInput", "no quadratic unit parameterization for this input");
    if (!poly_irreducible(tau)) fail("NotIrreducible", "minimal polynomial needs an irreducible input");
    int r = tau.degree();
    bool pal = (poly_reciprocal(tau) == tau);
    Poly2 sym;
    int s;
    if (pal) {
        sym = tau; // even degree: odd-degree palindromes other than x+1 are reducible
        s = r / 2;
    } else {
        sym = tau * poly_reciprocal(tau);
        s = r;
    }
    // sym / x^s = sym_s + sum_{j>=1} sym_{s+j} (x^j + x^-j); substituting a root
    // zeta and using T_j(zeta + 1/zeta) = zeta^j + zeta^-j gives the minimal
    // polynomial directly from the upper coefficients.
    Poly2 eta = sym.coeff(s) ? Poly2::one() : Poly2::zero();
    Poly2 tprev, tcur = Poly2::x();
    for (int j = 1; j <= s; ++j) {
        if (sym.coeff(s + j)) eta += tcur;
        Poly2 tnext = (tcur << 1) + tprev;
        tprev = std::move(tcur);
        tcur = std::move(tnext);
    }
    return eta;
}

} // namespace harmonica
