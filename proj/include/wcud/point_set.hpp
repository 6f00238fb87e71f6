#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wcud {

// n points in [0,1)^d stored row-major.
class PointSet {
public:
    PointSet(std::size_t dimension, std::vector<double> coordinates);

    std::size_t size() const { return count_; }
    std::size_t dimension() const { return dimension_; }

    std::span<const double> operator[](std::size_t i) const {
        return {coords_.data() + i * dimension_, dimension_};
    }
    double at(std::size_t i, std::size_t j) const { return coords_[i * dimension_ + j]; }

    std::span<const double> coordinates() const { return coords_; }

    // Same points, new order: row i of the result is row order[i] of this set.
    PointSet reordered(std::span<const std::size_t> order) const;

private:
    std::size_t dimension_;
    std::size_t count_;
    std::vector<double> coords_;
};

}  // namespace wcud
