#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wcud {

enum class Method { iid, lcg, lcg_cp, liao, block_perm, iid_insert };

std::string_view method_name(Method method);
// Accepts the names produced by method_name ("iid", "lcg", "lcg-cp", ...).
std::optional<Method> parse_method(std::string_view name);

struct SequenceMeta {
    std::uint64_t modulus = 0;     // N, lattice constructions only
    std::uint64_t multiplier = 0;  // a
    std::size_t width = 0;         // m, uniforms per step
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
};

// Finite ordered list of units in [0,1) plus how it was built. Fixed
// (method, parameters, seed) reproduce identical values bit-for-bit.
class DrivingSequence {
public:
    DrivingSequence(std::vector<double> values, Method method, SequenceMeta meta = {});

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    Method method() const { return method_; }
    const SequenceMeta& meta() const { return meta_; }

    // Same values under a different provenance tag.
    DrivingSequence retagged(Method method, SequenceMeta meta) const;

private:
    std::vector<double> values_;
    Method method_;
    SequenceMeta meta_;
};

// Bijection on {0, ..., n-1}: position i maps to map()[i].
class Permutation {
public:
    explicit Permutation(std::vector<std::size_t> map);
    static Permutation identity(std::size_t n);

    std::size_t size() const { return map_.size(); }
    std::size_t operator()(std::size_t i) const { return map_[i]; }
    std::span<const std::size_t> map() const { return map_; }
    Permutation inverse() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> map_;
};

// Cranley-Patterson shift vector U_1..U_m.
class RotationVector {
public:
    explicit RotationVector(std::vector<double> shift);

    std::size_t size() const { return shift_.size(); }
    double operator[](std::size_t j) const { return shift_[j]; }
    std::span<const double> values() const { return shift_; }
    // The shift that undoes this one: (1 - U_j) mod 1.
    RotationVector inverse() const;

private:
    std::vector<double> shift_;
};

// Clamp applied to every unit before an inverse CDF.
inline constexpr double kUnitClamp = 1e-15;
double clamp_unit(double u);

}  // namespace wcud
