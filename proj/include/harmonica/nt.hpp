#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace harmonica::nt {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t m);

bool is_prime(uint64_t n);

// Prime factorization, sorted by prime.
std::vector<std::pair<uint64_t, int>> factor(uint64_t n);

// All divisors, sorted ascending.
std::vector<uint64_t> divisors(uint64_t n);

uint64_t phi(uint64_t n);
int mobius(uint64_t n); // 0 when n is not squarefree, else (-1)^(#prime factors)

// Multiplicative order of `a` in a group whose exponent divides `group_order`,
// with `pw(a, e)` the group's power map. Requires a^group_order = identity.
template <typename T, typename Pow>
uint64_t order_in_group(const T& a, uint64_t group_order, const T& identity, Pow&& pw) {
    uint64_t ord = group_order;
    for (auto [p, e] : factor(group_order)) {
        for (int i = 0; i < e && ord % p == 0 && pw(a, ord / p) == identity; ++i)
            ord /= p;
    }
    return ord;
}

} // namespace harmonica::nt
