#include "wcud/number_theory.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace wcud {

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % modulus);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
    if (modulus == 1) return 0;
    std::uint64_t result = 1;
    base %= modulus;
    while (exponent > 0) {
        if (exponent & 1U) result = mul_mod(result, base, modulus);
        base = mul_mod(base, base, modulus);
        exponent >>= 1U;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        if (n % p == 0) return n == p;
    }
    for (std::uint64_t d = 17; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> factors;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            factors.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

std::uint64_t totient(std::uint64_t n) {
    if (n == 0) throw std::domain_error("totient: n must be positive");
    std::uint64_t result = n;
    for (std::uint64_t p : prime_factors(n)) result -= result / p;
    return result;
}

bool is_primitive_root(std::uint64_t a, std::uint64_t prime_modulus) {
    if (!is_prime(prime_modulus)) {
        throw std::domain_error("is_primitive_root: modulus " + std::to_string(prime_modulus) +
                                " is not prime");
    }
    if (a < 1 || a >= prime_modulus) {
        throw std::domain_error("is_primitive_root: a must lie in [1, N)");
    }
    if (prime_modulus == 2) return a == 1;
    const std::uint64_t order = prime_modulus - 1;
    for (std::uint64_t q : prime_factors(order)) {
        if (pow_mod(a, order / q, prime_modulus) == 1) return false;
    }
    return true;
}

std::vector<std::uint64_t> primitive_roots(std::uint64_t prime_modulus) {
    std::vector<std::uint64_t> roots;
    for (std::uint64_t a = 2; a < prime_modulus; ++a) {
        if (is_primitive_root(a, prime_modulus)) roots.push_back(a);
    }
    return roots;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace wcud
