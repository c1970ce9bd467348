#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "harmonica/poly2.hpp"

namespace harmonica {

struct OrderProfile {
    uint64_t f;  // multiplicative order of 2 mod n
    uint64_t f0; // least j with 2^j = +-1 mod n
};
OrderProfile order_profile(uint64_t n); // n odd >= 1; EvenInput

// Binary field F_{2^r}, r <= 63, elements packed in one word: bit i is the
// coefficient of x^i in the representative polynomial. The modulus is the
// irreducible of degree r with the numerically least coefficient mask.
class FieldCtx {
public:
    static const FieldCtx& get(int r); // DegreeOutOfRange outside 1..63

    int degree() const { return r_; }
    uint64_t size_q() const { return uint64_t{1} << r_; }
    const Poly2& modulus() const { return mod_; }

    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const; // ZeroElement
    int trace(uint64_t a) const;

    // Least w with w^2 + w = c; requires trace(c) == 0.
    uint64_t artin_solve(uint64_t c) const;

    uint64_t elem_order(uint64_t a) const; // ZeroElement
    // Order of a given a^n = 1 and the factorization of n.
    uint64_t order_given(uint64_t a, uint64_t n,
                         const std::vector<std::pair<uint64_t, int>>& nf) const;

    const std::vector<std::pair<uint64_t, int>>& qm1_factors() const { return fqm1_; }
    const std::vector<std::pair<uint64_t, int>>& qp1_factors() const { return fqp1_; }

private:
    explicit FieldCtx(int r);
    int r_;
    Poly2 mod_;
    uint64_t lmask_; // modulus minus its leading term: x^r = lmask_ in the field
    uint64_t tmask_; // bit j = trace of x^j
    std::vector<uint64_t> artin_; // solution operator rows for artin_solve
    std::vector<std::pair<uint64_t, int>> fqm1_, fqp1_;
};

struct FieldElem {
    int r;
    uint64_t bits;
    bool operator==(const FieldElem&) const = default;
};
std::string field_elem_str(const FieldElem& e); // "0x6@r=3"

uint64_t elem_order(const FieldElem& e); // ZeroElement

// All roots of p lying in the given field, ascending.
std::vector<uint64_t> poly_roots_in_field(const Poly2& p, const FieldCtx& ctx);

// Image of a in the field of degree `target_r`; requires degree(a) | target_r.
FieldElem embed(const FieldElem& a, int target_r); // IncompatibleDegrees

struct QuadRoots {
    enum Kind { DoubleOne, SplitInField, ConjugatePair } kind;
    int field_degree;  // the field both roots live in (r, or 2r for a conjugate pair)
    uint64_t roots[2]; // ascending; roots of X^2 + uX + 1
};
// Roots of X^2 + uX + 1 over the field of u.
QuadRoots unit_quadratic_roots(const FieldElem& u); // FieldTooLarge when 2r > 63 is needed

} // namespace harmonica
