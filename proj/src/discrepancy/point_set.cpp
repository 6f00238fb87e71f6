#include "wcud/point_set.hpp"

#include <stdexcept>
#include <string>

namespace wcud {

PointSet::PointSet(std::size_t dimension, std::vector<double> coordinates)
    : dimension_(dimension), count_(0), coords_(std::move(coordinates)) {
    if (dimension_ == 0) throw std::invalid_argument("PointSet: dimension must be positive");
    if (coords_.empty() || coords_.size() % dimension_ != 0) {
        throw std::invalid_argument("PointSet: coordinate count " + std::to_string(coords_.size()) +
                                    " is not a positive multiple of dimension " +
                                    std::to_string(dimension_));
    }
    for (double x : coords_) {
        if (!(x >= 0.0 && x < 1.0)) {
            throw std::invalid_argument("PointSet: coordinate " + std::to_string(x) +
                                        " outside [0,1)");
        }
    }
    count_ = coords_.size() / dimension_;
}

PointSet PointSet::reordered(std::span<const std::size_t> order) const {
    if (order.size() != count_) throw std::invalid_argument("PointSet::reordered: size mismatch");
    std::vector<double> out;
    out.reserve(coords_.size());
    for (std::size_t i : order) {
        if (i >= count_) throw std::out_of_range("PointSet::reordered: index " + std::to_string(i));
        const auto row = (*this)[i];
        out.insert(out.end(), row.begin(), row.end());
    }
    return PointSet(dimension_, std::move(out));
}

}  // namespace wcud
