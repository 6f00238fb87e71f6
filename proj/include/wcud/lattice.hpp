#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wcud/point_set.hpp"
#include "wcud/sequence.hpp"

namespace wcud {

// Full-period multiplicative LCG x -> a x mod N laid out in rows of width m.
struct LatticeSpec {
    std::uint64_t modulus;     // N, prime
    std::uint64_t multiplier;  // a, primitive root mod N
    std::size_t width;         // m

    // Validates N prime, 1 < a < N, a primitive, m >= 1, N < 2^32.
    static LatticeSpec make(std::uint64_t modulus, std::uint64_t multiplier, std::size_t width);

    std::uint64_t blocks() const;          // g = gcd(m, N-1)
    std::uint64_t rows_per_block() const;  // b = (N-1)/g
};

// Multipliers tabulated by L'Ecuyer (1999) for primes near powers of two.
std::optional<std::uint64_t> tabulated_multiplier(std::uint64_t modulus);

// x_0 = 1, x_t = a x_{t-1} mod N for t = 0..N-2 (one full period).
std::vector<std::uint64_t> lcg_orbit(std::uint64_t modulus, std::uint64_t multiplier);

// Integer tableau, N rows by m columns, row-major. Row 0 is zero; rows
// 1..N-1 scan the orbit in m-wide windows, and when g > 1 the k-th block of
// b rows is multiplied by a^(k-1) so that every overlapping m-tuple of the
// orbit appears exactly once.
std::vector<std::uint64_t> lattice_tableau_residues(const LatticeSpec& spec);

// The residue tableau divided by N.
PointSet lattice_tableau(const LatticeSpec& spec);

// The tableau flattened row-major (method tag lcg).
DrivingSequence lattice_sequence(const LatticeSpec& spec);

// The N-1 cyclic overlapping s-tuples (x_t, ..., x_{t+s-1}) / N of the orbit.
PointSet lcg_orbit_tuples(std::uint64_t modulus, std::uint64_t multiplier, std::size_t s);

}  // namespace wcud
