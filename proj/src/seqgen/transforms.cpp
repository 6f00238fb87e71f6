#include "wcud/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wcud {

namespace {

inline double add_mod1(double u, double shift) {
    const double v = u + shift;
    return v >= 1.0 ? v - 1.0 : v;
}

}  // namespace

Permutation random_permutation(std::size_t n, RandomStream& rng) {
    if (n == 0) throw std::domain_error("random_permutation: n must be positive");
    std::vector<std::size_t> map(n);
    std::iota(map.begin(), map.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(map[i - 1], map[j]);
    }
    return Permutation(std::move(map));
}

RotationVector random_rotation(std::size_t m, RandomStream& rng) {
    if (m == 0) throw std::domain_error("random_rotation: m must be positive");
    return RotationVector(rng.units(m));
}

DrivingSequence cp_rotate(const DrivingSequence& u, const RotationVector& shift) {
    const std::size_t m = shift.size();
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = add_mod1(u[i], shift[i % m]);
    SequenceMeta meta = u.meta();
    meta.width = m;
    return DrivingSequence(std::move(out), Method::lcg_cp, meta);
}

PointSet cp_rotate_rows(const PointSet& points, const RotationVector& shift) {
    if (shift.size() != points.dimension()) {
        throw std::invalid_argument("cp_rotate_rows: rotation length " + std::to_string(shift.size()) +
                                    " != dimension " + std::to_string(points.dimension()));
    }
    const auto coords = points.coordinates();
    const std::size_t d = points.dimension();
    std::vector<double> out(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) out[i] = add_mod1(coords[i], shift[i % d]);
    return PointSet(d, std::move(out));
}

DrivingSequence liao_shuffle(const PointSet& points, const Permutation& tau) {
    if (tau.size() != points.size()) {
        throw std::invalid_argument("liao_shuffle: permutation length " + std::to_string(tau.size()) +
                                    " != point count " + std::to_string(points.size()));
    }
    std::vector<double> out;
    out.reserve(points.size() * points.dimension());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto row = points[tau(i)];
        out.insert(out.end(), row.begin(), row.end());
    }
    SequenceMeta meta;
    meta.width = points.dimension();
    return DrivingSequence(std::move(out), Method::liao, meta);
}

DrivingSequence block_permute(const DrivingSequence& u, std::size_t r, const Permutation& sigma) {
    if (r == 0) throw std::domain_error("block_permute: r must be positive");
    if (sigma.size() != r) throw std::invalid_argument("block_permute: sigma must act on {0..r-1}");
    const auto in = u.values();
    std::vector<double> out(in.begin(), in.end());
    const std::size_t full = (in.size() / r) * r;
    for (std::size_t i = 0; i < full; ++i) {
        const std::size_t base = (i / r) * r;
        out[i] = in[base + sigma(i - base)];
    }
    return DrivingSequence(std::move(out), Method::block_perm, u.meta());
}

DrivingSequence insert_iid(const DrivingSequence& v, std::size_t m, std::size_t offset,
                           std::span<const double> w) {
    if (m == 0) throw std::domain_error("insert_iid: m must be positive");
    if (offset > m) throw std::domain_error("insert_iid: offset p must lie in {0..m}");
    const std::size_t blocks = v.size() / m;
    if (blocks == 0) throw std::invalid_argument("insert_iid: sequence shorter than one block");
    if (w.size() < blocks) {
        throw std::invalid_argument("insert_iid: need " + std::to_string(blocks) +
                                    " IID values, got " + std::to_string(w.size()));
    }
    std::vector<double> out;
    out.reserve((m + 1) * blocks);
    for (std::size_t k = 0; k < blocks; ++k) {
        for (std::size_t j = 0; j <= m; ++j) {
            if (j == offset) out.push_back(w[k]);
            if (j < m) out.push_back(v[k * m + j]);
        }
    }
    SequenceMeta meta = v.meta();
    meta.width = m + 1;
    return DrivingSequence(std::move(out), Method::iid_insert, meta);
}

DrivingSequence insert_iid(const DrivingSequence& v, std::size_t m, std::size_t offset,
                           RandomStream& w) {
    if (m == 0) throw std::domain_error("insert_iid: m must be positive");
    const auto values = w.units(v.size() / m);
    return insert_iid(v, m, offset, values);
}

}  // namespace wcud
