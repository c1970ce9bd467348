#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace harmonica {

// Polynomial over GF(2), little-endian bit packing: bit i of word k is the
// coefficient of x^(64k+i). No trailing zero words; the zero polynomial is empty.
class Poly2 {
public:
    Poly2() = default;
    static Poly2 zero() { return {}; }
    static Poly2 one() { return monomial(0); }
    static Poly2 x() { return monomial(1); }
    static Poly2 monomial(int k);
    static Poly2 from_mask(uint64_t mask);

    int degree() const; // -1 for the zero polynomial
    bool is_zero() const { return w_.empty(); }
    bool is_one() const { return w_.size() == 1 && w_[0] == 1; }
    bool coeff(int i) const;
    Poly2& set_coeff(int i, bool v = true);

    bool operator==(const Poly2&) const = default;
    bool operator<(const Poly2&) const; // degree, then coefficient-mask value

    Poly2& operator+=(const Poly2& o);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { a += b; return a; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend Poly2 operator<<(const Poly2& p, int k); // multiply by x^k
    friend Poly2 operator/(const Poly2& a, const Poly2& b);
    friend Poly2 operator%(const Poly2& a, const Poly2& b);

    Poly2 square() const;
    uint64_t mask64() const { return w_.empty() ? 0 : w_[0]; } // low 64 coefficients

    const std::vector<uint64_t>& words() const { return w_; }
    std::vector<uint64_t>& words() { return w_; }

private:
    void trim();
    std::vector<uint64_t> w_;
};

std::pair<Poly2, Poly2> poly_divmod(const Poly2& a, const Poly2& b); // ZeroPolynomial
Poly2 poly_gcd(Poly2 a, Poly2 b); // gcd(0,0) = 0
Poly2 poly_derivative(const Poly2& p);
Poly2 poly_mulmod(const Poly2& a, const Poly2& b, const Poly2& m);
Poly2 poly_powmod(Poly2 a, uint64_t e, const Poly2& m);
Poly2 poly_compose(const Poly2& p, const Poly2& q); // p(q(x))

// q with q^2 = p; p must have even-exponent terms only.
Poly2 poly_even_sqrt(const Poly2& p);

bool poly_irreducible(const Poly2& p);

using FactorList = std::vector<std::pair<Poly2, int>>; // sorted by factor
FactorList poly_factor(const Poly2& p); // ZeroPolynomial

Poly2 poly_conjugate(const Poly2& p);  // p(x+1)
Poly2 poly_reciprocal(const Poly2& p); // x^deg(p) * p(1/x); 0 -> 0
Poly2 delta_map(const Poly2& p);       // p + p(x+1)

Poly2 cyclotomic(uint64_t d); // d odd >= 1; EvenIndex

struct HPair {
    Poly2 h;       // x^(2^r) + x + 1
    Poly2 h_tilde; // 1 + sum_{i<r} x^(2^i)
};
HPair h_family(int r); // r >= 1; DegreeOutOfRange beyond the 2^30-bit cap

Poly2 alpha_substitute(const Poly2& q); // q(x^2 + x)

// Res_y(p(x+y), q(y)).
Poly2 resultant_shift(const Poly2& p, const Poly2& q); // ZeroPolynomial

struct IrrProfile {
    bool palindrome; // self-reciprocal
    int trace_bit;   // coefficient of x^(deg-1)
    uint64_t ord;    // multiplicative order of x modulo p
    uint64_t ford;   // least n >= 1 such that p divides F_n
};
IrrProfile classify_irr(const Poly2& p); // NotIrreducible, IsX

std::string poly_text(const Poly2& p);  // "x^4+x^2+1"
std::string poly_hex(const Poly2& p);   // "0x15" (little-endian coefficient mask)
Poly2 poly_parse(const std::string& s); // accepts both forms; UsageError

// Determinant of a square matrix with Poly2 entries (division-free).
Poly2 poly_matrix_det(const std::vector<std::vector<Poly2>>& m);

} // namespace harmonica
