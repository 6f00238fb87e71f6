#include "wcud/lattice.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "wcud/number_theory.hpp"

namespace wcud {

LatticeSpec LatticeSpec::make(std::uint64_t modulus, std::uint64_t multiplier, std::size_t width) {
    if (modulus >= (1ULL << 32)) throw std::domain_error("LatticeSpec: N must be below 2^32");
    if (!is_prime(modulus) || modulus < 3) {
        throw std::domain_error("LatticeSpec: N = " + std::to_string(modulus) +
                                " is not an odd prime");
    }
    if (multiplier <= 1 || multiplier >= modulus) {
        throw std::domain_error("LatticeSpec: multiplier must satisfy 1 < a < N");
    }
    if (!is_primitive_root(multiplier, modulus)) {
        throw std::domain_error("LatticeSpec: a = " + std::to_string(multiplier) +
                                " is not a primitive root mod " + std::to_string(modulus));
    }
    if (width == 0) throw std::domain_error("LatticeSpec: width m must be positive");
    return LatticeSpec{modulus, multiplier, width};
}

std::uint64_t LatticeSpec::blocks() const { return gcd(width, modulus - 1); }

std::uint64_t LatticeSpec::rows_per_block() const { return (modulus - 1) / blocks(); }

std::optional<std::uint64_t> tabulated_multiplier(std::uint64_t modulus) {
    static constexpr std::array<std::pair<std::uint64_t, std::uint64_t>, 5> kTable{{
        {1021, 65}, {2039, 393}, {4093, 235}, {8191, 884}, {16381, 665},
    }};
    for (const auto& [n, a] : kTable) {
        if (n == modulus) return a;
    }
    return std::nullopt;
}

std::vector<std::uint64_t> lcg_orbit(std::uint64_t modulus, std::uint64_t multiplier) {
    std::vector<std::uint64_t> orbit(modulus - 1);
    std::uint64_t x = 1;
    for (auto& v : orbit) {
        v = x;
        x = mul_mod(x, multiplier, modulus);
    }
    if (x != 1) throw std::domain_error("lcg_orbit: multiplier does not have full period");
    return orbit;
}

std::vector<std::uint64_t> lattice_tableau_residues(const LatticeSpec& spec) {
    const auto orbit = lcg_orbit(spec.modulus, spec.multiplier);
    const std::uint64_t period = spec.modulus - 1;
    const std::uint64_t m = spec.width;
    const std::uint64_t b = spec.rows_per_block();

    std::vector<std::uint64_t> out(spec.modulus * m, 0);
    for (std::uint64_t q = 0; q < period; ++q) {
        // a^(q m + j) scaled by a^k for block k is a^(q m + j + k).
        const std::uint64_t k = q / b;
        const std::uint64_t start = (mul_mod(q, m, period) + k) % period;
        auto* row = out.data() + (q + 1) * m;
        for (std::uint64_t j = 0; j < m; ++j) row[j] = orbit[(start + j) % period];
    }
    return out;
}

PointSet lattice_tableau(const LatticeSpec& spec) {
    const auto residues = lattice_tableau_residues(spec);
    std::vector<double> coords(residues.size());
    const auto n = static_cast<double>(spec.modulus);
    for (std::size_t i = 0; i < residues.size(); ++i) {
        coords[i] = static_cast<double>(residues[i]) / n;
    }
    return PointSet(spec.width, std::move(coords));
}

DrivingSequence lattice_sequence(const LatticeSpec& spec) {
    const auto table = lattice_tableau(spec);
    const auto coords = table.coordinates();
    SequenceMeta meta;
    meta.modulus = spec.modulus;
    meta.multiplier = spec.multiplier;
    meta.width = spec.width;
    return DrivingSequence({coords.begin(), coords.end()}, Method::lcg, meta);
}

PointSet lcg_orbit_tuples(std::uint64_t modulus, std::uint64_t multiplier, std::size_t s) {
    if (s == 0) throw std::domain_error("lcg_orbit_tuples: s must be positive");
    const auto orbit = lcg_orbit(modulus, multiplier);
    const std::size_t period = orbit.size();
    std::vector<double> coords;
    coords.reserve(period * s);
    const auto n = static_cast<double>(modulus);
    for (std::size_t t = 0; t < period; ++t) {
        for (std::size_t j = 0; j < s; ++j) {
            coords.push_back(static_cast<double>(orbit[(t + j) % period]) / n);
        }
    }
    return PointSet(s, std::move(coords));
}

}  // namespace wcud
