#include "harmonica/nt.hpp"

#include <algorithm>
#include <numeric>

namespace harmonica::nt {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t((__uint128_t)a * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Deterministic Miller-Rabin base set for 64-bit inputs.
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

uint64_t pollard_brent(uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        auto f = [&](uint64_t x) { return (mulmod(x, x, n) + c) % n; };
        uint64_t x = 2, y = 2, d = 1, q = 1, ys = y;
        const uint64_t m = 128;
        for (uint64_t r = 1; d == 1; r <<= 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = f(y);
            for (uint64_t k = 0; k < r && d == 1; k += m) {
                ys = y;
                for (uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
        }
        if (d == n) {
            d = 1;
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& primes) {
    if (n == 1) return;
    if (is_prime(n)) { primes.push_back(n); return; }
    uint64_t d = pollard_brent(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

} // namespace

std::vector<std::pair<uint64_t, int>> factor(uint64_t n) {
    std::vector<uint64_t> primes;
    for (uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) { primes.push_back(p); n /= p; }
    }
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<uint64_t, int>> out;
    for (uint64_t p : primes) {
        if (!out.empty() && out.back().first == p) ++out.back().second;
        else out.push_back({p, 1});
    }
    return out;
}

std::vector<uint64_t> divisors(uint64_t n) {
    std::vector<uint64_t> out{1};
    for (auto [p, e] : factor(n)) {
        std::size_t sz = out.size();
        uint64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t phi(uint64_t n) {
    uint64_t r = n;
    for (auto [p, e] : factor(n)) r -= r / p;
    return r;
}

int mobius(uint64_t n) {
    int sign = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

} // namespace harmonica::nt
