#pragma once

#include <cstdint>
#include <vector>

namespace wcud {

// Overflow-safe for moduli below 2^32.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

bool is_prime(std::uint64_t n);

// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Euler's totient. Throws std::domain_error for n == 0.
std::uint64_t totient(std::uint64_t n);

// True iff a has multiplicative order N-1 modulo the prime N.
// Throws std::domain_error when N is not prime or a is outside [1, N).
bool is_primitive_root(std::uint64_t a, std::uint64_t prime_modulus);

std::vector<std::uint64_t> primitive_roots(std::uint64_t prime_modulus);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

}  // namespace wcud
