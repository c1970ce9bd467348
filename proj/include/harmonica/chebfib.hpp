#pragma once

#include <cstdint>
#include <vector>

#include "harmonica/poly2.hpp"

namespace harmonica {

// The three GF(2) recurrence families p_{n+1} = x p_n + p_{n-1}:
// T: (0, x); E: (1, x); F: (0, 1).
enum class CdfKind { T, E, F };

Poly2 cdf(CdfKind kind, uint64_t n); // DegreeOutOfRange beyond the degree cap

// F_n modulo m, by 2x2 matrix powers (works for n far beyond the cdf cap).
Poly2 fib_mod(uint64_t n, const Poly2& m); // ZeroPolynomial

// Least n >= 1 with tau | F_n; equals ord(zeta) for a root z = zeta + 1/zeta of tau.
uint64_t fib_order(const Poly2& tau); // NotIrreducible, IsX

Poly2 rho(uint64_t n);      // prod_{d|n} F_{n/d}^mobius(d); EvenInput, NonExactDivision
Poly2 fib_sqrt(uint64_t n); // R_k = F_{k+1} + F_k for n = 2k+1; EvenInput

// Exponents of the unique expansion p = 1 + sum T_{a_i}, strictly increasing.
std::vector<uint64_t> cheb_decompose(const Poly2& p); // NonUnitConstantTerm

// Minimal polynomial of zeta + 1/zeta for zeta a root of tau.
Poly2 trace_min_poly(const Poly2& tau); // NotIrreducible, DegenerateInput

} // namespace harmonica
