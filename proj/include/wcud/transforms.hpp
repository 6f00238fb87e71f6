#pragma once

#include <cstddef>
#include <span>

#include "wcud/point_set.hpp"
#include "wcud/random.hpp"
#include "wcud/sequence.hpp"

namespace wcud {

// Uniform permutation of {0..n-1} by Fisher-Yates.
Permutation random_permutation(std::size_t n, RandomStream& rng);

RotationVector random_rotation(std::size_t m, RandomStream& rng);

// v_i = u_i + U_{i mod m} (mod 1) with m = |U|.
DrivingSequence cp_rotate(const DrivingSequence& u, const RotationVector& shift);

// Row-wise Cranley-Patterson rotation of a point set; m must equal d.
PointSet cp_rotate_rows(const PointSet& points, const RotationVector& shift);

// Rows of A in the order tau(0), tau(1), ..., concatenated.
DrivingSequence liao_shuffle(const PointSet& points, const Permutation& tau);

// Within each complete block of r values, output offset j reads input offset
// sigma(j). A trailing partial block is passed through unchanged.
DrivingSequence block_permute(const DrivingSequence& u, std::size_t r, const Permutation& sigma);

// Blocks of m values of v, each with one w value spliced in at offset p
// (0 <= p <= m). Output length (m+1) floor(N/m); block k consumes w[k].
DrivingSequence insert_iid(const DrivingSequence& v, std::size_t m, std::size_t offset,
                           std::span<const double> w);
DrivingSequence insert_iid(const DrivingSequence& v, std::size_t m, std::size_t offset,
                           RandomStream& w);

}  // namespace wcud
