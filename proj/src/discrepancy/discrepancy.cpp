#include "wcud/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "wcud/number_theory.hpp"

namespace wcud {

Box::Box(std::vector<double> upper) : upper_(std::move(upper)) {
    if (upper_.empty()) throw std::invalid_argument("Box: dimension must be positive");
    for (double z : upper_) {
        if (!(z >= 0.0 && z <= 1.0)) throw std::invalid_argument("Box: anchor outside [0,1]");
    }
}

double Box::volume() const {
    double v = 1.0;
    for (double z : upper_) v *= z;
    return v;
}

PointSet overlapping_tuples(const DrivingSequence& u, std::size_t d) {
    if (d == 0) throw std::invalid_argument("overlapping_tuples: d must be positive");
    if (d > u.size()) {
        throw std::invalid_argument("overlapping_tuples: d = " + std::to_string(d) +
                                    " exceeds sequence length " + std::to_string(u.size()));
    }
    const std::size_t count = u.size() - d + 1;
    std::vector<double> coords;
    coords.reserve(count * d);
    const auto values = u.values();
    for (std::size_t i = 0; i < count; ++i) {
        coords.insert(coords.end(), values.begin() + static_cast<std::ptrdiff_t>(i),
                      values.begin() + static_cast<std::ptrdiff_t>(i + d));
    }
    return PointSet(d, std::move(coords));
}

PointSet nonoverlapping_tuples(const DrivingSequence& u, std::size_t d) {
    if (d == 0) throw std::invalid_argument("nonoverlapping_tuples: d must be positive");
    if (d > u.size()) {
        throw std::invalid_argument("nonoverlapping_tuples: d = " + std::to_string(d) +
                                    " exceeds sequence length " + std::to_string(u.size()));
    }
    const std::size_t count = u.size() / d;
    const auto values = u.values();
    return PointSet(d, std::vector<double>(values.begin(),
                                           values.begin() + static_cast<std::ptrdiff_t>(count * d)));
}

double local_discrepancy(const PointSet& points, const Box& box) {
    const std::size_t d = points.dimension();
    if (box.dimension() != d) {
        throw std::invalid_argument("local_discrepancy: box dimension " +
                                    std::to_string(box.dimension()) + " != point dimension " +
                                    std::to_string(d));
    }
    const auto z = box.upper();
    std::size_t inside = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto x = points[i];
        bool in = true;
        for (std::size_t j = 0; j < d && in; ++j) in = x[j] <= z[j];
        inside += in ? 1 : 0;
    }
    return std::abs(static_cast<double>(inside) / static_cast<double>(points.size()) - box.volume());
}

WorkBudgetExceeded::WorkBudgetExceeded(double estimated, double budget)
    : std::runtime_error("star discrepancy: estimated work " + std::to_string(estimated) +
                         " exceeds budget " + std::to_string(budget) +
                         "; subsample the points or reduce d"),
      estimated_(estimated),
      budget_(budget) {}

double star_discrepancy_work(const PointSet& points) {
    const std::size_t d = points.dimension();
    double work = static_cast<double>(points.size());
    std::vector<double> column(points.size());
    for (std::size_t j = 0; j + 1 < d; ++j) {
        for (std::size_t i = 0; i < points.size(); ++i) column[i] = points.at(i, j);
        std::sort(column.begin(), column.end());
        const auto distinct = std::unique(column.begin(), column.end()) - column.begin();
        work *= static_cast<double>(distinct + 1);
    }
    return work;
}

double star_discrepancy_sorted(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("star_discrepancy_sorted: no points");
    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    const auto n = static_cast<double>(x.size());
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double above = static_cast<double>(i + 1) / n - x[i];
        const double below = x[i] - static_cast<double>(i) / n;
        best = std::max({best, above, below});
    }
    return best;
}

namespace {

// Recursive corner enumeration. At level j the active list holds the points
// inside the box in coordinates 0..j-1 (closed); `open` records whether the
// point is also strictly inside in all of those coordinates. Candidate values
// for coordinate j are the active points' coordinates plus 1; the last
// coordinate is swept in sorted order.
class GridScan {
public:
    explicit GridScan(const PointSet& points)
        : points_(points),
          n_(points.size()),
          d_(points.dimension()),
          inv_n_(1.0 / static_cast<double>(points.size())),
          last_order_(points.size()),
          stamp_(points.size(), 0),
          open_flag_(points.size(), 0) {
        std::iota(last_order_.begin(), last_order_.end(), std::uint32_t{0});
        std::stable_sort(last_order_.begin(), last_order_.end(), [&](std::uint32_t a, std::uint32_t b) {
            return coord(a, d_ - 1) < coord(b, d_ - 1);
        });
    }

    double run() {
        std::vector<Item> all(n_);
        for (std::uint32_t i = 0; i < n_; ++i) all[i] = {i, true};
        recurse(0, all, 1.0);
        return best_;
    }

private:
    struct Item {
        std::uint32_t index;
        bool open;
    };

    double coord(std::uint32_t i, std::size_t j) const { return points_.at(i, j); }

    void recurse(std::size_t level, std::vector<Item>& active, double volume) {
        if (level + 1 == d_) {
            leaf(active, volume);
            return;
        }
        std::stable_sort(active.begin(), active.end(), [&](const Item& a, const Item& b) {
            return coord(a.index, level) < coord(b.index, level);
        });
        std::vector<Item> child;
        child.reserve(active.size());
        std::size_t i = 0;
        while (i < active.size()) {
            const double v = coord(active[i].index, level);
            std::size_t end = i;
            while (end < active.size() && coord(active[end].index, level) == v) ++end;
            child.assign(active.begin(), active.begin() + static_cast<std::ptrdiff_t>(end));
            for (std::size_t k = i; k < end; ++k) child[k].open = false;
            recurse(level + 1, child, volume * v);
            i = end;
        }
        child.assign(active.begin(), active.end());
        recurse(level + 1, child, volume);
    }

    void sweep_value(double v, std::size_t group, std::size_t group_open, double volume) {
        const double box = volume * v;
        best_ = std::max(best_, box - static_cast<double>(open_) * inv_n_);
        closed_ += group;
        open_ += group_open;
        best_ = std::max(best_, static_cast<double>(closed_) * inv_n_ - box);
    }

    void leaf(std::vector<Item>& active, double volume) {
        const std::size_t last = d_ - 1;
        closed_ = 0;
        open_ = 0;
        if (active.size() * 16 < n_) {
            std::sort(active.begin(), active.end(), [&](const Item& a, const Item& b) {
                return coord(a.index, last) < coord(b.index, last);
            });
            std::size_t i = 0;
            while (i < active.size()) {
                const double v = coord(active[i].index, last);
                std::size_t group = 0, group_open = 0;
                while (i < active.size() && coord(active[i].index, last) == v) {
                    ++group;
                    group_open += active[i].open ? 1 : 0;
                    ++i;
                }
                sweep_value(v, group, group_open, volume);
            }
        } else {
            ++epoch_;
            for (const Item& item : active) {
                stamp_[item.index] = epoch_;
                open_flag_[item.index] = item.open ? 1 : 0;
            }
            std::size_t i = 0;
            while (i < n_) {
                const double v = coord(last_order_[i], last);
                std::size_t group = 0, group_open = 0;
                while (i < n_ && coord(last_order_[i], last) == v) {
                    const std::uint32_t idx = last_order_[i];
                    if (stamp_[idx] == epoch_) {
                        ++group;
                        group_open += open_flag_[idx];
                    }
                    ++i;
                }
                if (group > 0) sweep_value(v, group, group_open, volume);
            }
        }
        // Corner at 1 in the last coordinate.
        best_ = std::max(best_, volume - static_cast<double>(open_) * inv_n_);
        best_ = std::max(best_, static_cast<double>(closed_) * inv_n_ - volume);
    }

    const PointSet& points_;
    std::size_t n_;
    std::size_t d_;
    double inv_n_;
    std::vector<std::uint32_t> last_order_;
    std::vector<std::uint64_t> stamp_;
    std::vector<std::uint8_t> open_flag_;
    std::uint64_t epoch_ = 0;
    std::size_t closed_ = 0;
    std::size_t open_ = 0;
    double best_ = 0.0;
};

void check_budget(const PointSet& points, const StarOptions& options) {
    const double work = star_discrepancy_work(points);
    if (work > options.work_budget) throw WorkBudgetExceeded(work, options.work_budget);
}

}  // namespace

double star_discrepancy_grid(const PointSet& points, const StarOptions& options) {
    check_budget(points, options);
    return GridScan(points).run();
}

double star_discrepancy(const PointSet& points, const StarOptions& options) {
    if (points.dimension() == 1) {
        check_budget(points, options);
        return star_discrepancy_sorted(points.coordinates());
    }
    return star_discrepancy_grid(points, options);
}

double niederreiter_bound(std::uint64_t prime_modulus, std::size_t s) {
    if (prime_modulus < 3 || !is_prime(prime_modulus)) {
        throw std::domain_error("niederreiter_bound: N must be a prime >= 3");
    }
    if (s == 0) throw std::domain_error("niederreiter_bound: s must be positive");
    const auto n = static_cast<double>(prime_modulus);
    const auto phi = static_cast<double>(totient(prime_modulus - 1));
    const double middle = 1.0 + (n - 2.0) * static_cast<double>(s - 1) / phi;
    const double base = 2.0 / std::numbers::pi * std::log(n) + 7.0 / 5.0;
    return middle * std::pow(base, static_cast<double>(s)) / (n - 1.0);
}

double shuffled_box_probability_bound(double star, std::size_t n, std::size_t s, std::size_t d) {
    if (s == 0 || d == 0) throw std::domain_error("shuffled_box_probability_bound: s, d must be positive");
    if (!(star >= 0.0 && star < 1.0 / 3.0)) {
        throw std::domain_error("shuffled_box_probability_bound: requires 0 <= D < 1/3");
    }
    const std::size_t chunks = (d - 1 + s - 1) / s;
    if (n <= 3 * chunks) {
        throw std::domain_error("shuffled_box_probability_bound: requires n > 3 ceil((d-1)/s)");
    }
    const double c = static_cast<double>(chunks);
    return 1.5 * (std::pow(2.0, 1.0 + c) - 1.0) * (star + c / static_cast<double>(n));
}

}  // namespace wcud
