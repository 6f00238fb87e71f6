#include "wcud/sequence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wcud {

std::string_view method_name(Method method) {
    switch (method) {
        case Method::iid: return "iid";
        case Method::lcg: return "lcg";
        case Method::lcg_cp: return "lcg-cp";
        case Method::liao: return "liao";
        case Method::block_perm: return "block-perm";
        case Method::iid_insert: return "iid-insert";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::iid, Method::lcg, Method::lcg_cp, Method::liao, Method::block_perm,
                     Method::iid_insert}) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

DrivingSequence::DrivingSequence(std::vector<double> values, Method method, SequenceMeta meta)
    : values_(std::move(values)), method_(method), meta_(meta) {
    if (values_.empty()) throw std::invalid_argument("DrivingSequence: empty");
    for (double v : values_) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw std::invalid_argument("DrivingSequence: value " + std::to_string(v) +
                                        " outside [0,1)");
        }
    }
}

DrivingSequence DrivingSequence::retagged(Method method, SequenceMeta meta) const {
    return DrivingSequence(values_, method, meta);
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t v : map_) {
        if (v >= map_.size() || seen[v]) {
            throw std::invalid_argument("Permutation: not a bijection on {0.." +
                                        std::to_string(map_.size()) + "-1}");
        }
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> map(n);
    std::iota(map.begin(), map.end(), std::size_t{0});
    return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
}

RotationVector::RotationVector(std::vector<double> shift) : shift_(std::move(shift)) {
    if (shift_.empty()) throw std::domain_error("RotationVector: m must be positive");
    for (double u : shift_) {
        if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("RotationVector: entry outside [0,1)");
    }
}

RotationVector RotationVector::inverse() const {
    std::vector<double> inv(shift_.size());
    for (std::size_t j = 0; j < shift_.size(); ++j) inv[j] = shift_[j] == 0.0 ? 0.0 : 1.0 - shift_[j];
    return RotationVector(std::move(inv));
}

double clamp_unit(double u) { return std::clamp(u, kUnitClamp, 1.0 - kUnitClamp); }

}  // namespace wcud
