#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "wcud/point_set.hpp"
#include "wcud/sequence.hpp"

namespace wcud {

// Anchored box [0, z]; the lower corner is the origin.
class Box {
public:
    explicit Box(std::vector<double> upper);
    std::size_t dimension() const { return upper_.size(); }
    std::span<const double> upper() const { return upper_; }
    double volume() const;

private:
    std::vector<double> upper_;
};

// (u_i, ..., u_{i+d-1}) for i = 1..n-d+1.
PointSet overlapping_tuples(const DrivingSequence& u, std::size_t d);
// (u_{d(i-1)+1}, ..., u_{di}) for i = 1..floor(n/d); the remainder is dropped.
PointSet nonoverlapping_tuples(const DrivingSequence& u, std::size_t d);

// |#{x in [0,z]} / n - Vol([0,z])| with a closed box.
double local_discrepancy(const PointSet& points, const Box& box);

class WorkBudgetExceeded : public std::runtime_error {
public:
    WorkBudgetExceeded(double estimated, double budget);
    double estimated() const { return estimated_; }
    double budget() const { return budget_; }

private:
    double estimated_;
    double budget_;
};

struct StarOptions {
    double work_budget = 1e9;
};

// Upper estimate of the corner-count operations the exact scan performs:
// n times the product over the first d-1 coordinates of (distinct values + 1).
double star_discrepancy_work(const PointSet& points);

// Exact D*. Uses the sorted formula for d = 1 and the critical-grid scan
// otherwise. Throws WorkBudgetExceeded rather than run past the budget.
double star_discrepancy(const PointSet& points, const StarOptions& options = {});

// One-dimensional formula: max_i max(i/n - x_(i), x_(i) - (i-1)/n).
double star_discrepancy_sorted(std::span<const double> values);

// Critical-grid scan for any d. Every corner with coordinates in
// {point coordinates} U {1} is evaluated with the closed count (box
// including its boundary) and the open count (the limit from below).
double star_discrepancy_grid(const PointSet& points, const StarOptions& options = {});

// Niederreiter's bound on D* of the N-1 overlapping s-tuples of a full-period
// LCG with a well chosen multiplier:
//   (1/(N-1)) (1 + (N-2)(s-1)/phi(N-1)) ((2/pi) ln N + 7/5)^s.
double niederreiter_bound(std::uint64_t prime_modulus, std::size_t s);

// Bound on |Pr(z_i in [0,z]) - Vol([0,z])| for the d-tuples cut from a
// randomly shuffled s-dimensional point set of n points with D* <= D:
//   (3/2)(2^(1+c) - 1)(D + c/n),  c = ceil((d-1)/s).
// Requires D < 1/3 and n > 3c; throws std::domain_error otherwise.
double shuffled_box_probability_bound(double star, std::size_t n, std::size_t s, std::size_t d);

enum class TupleMode { overlap, block };
std::string_view tuple_mode_name(TupleMode mode);

struct DiscrepancyEntry {
    std::size_t dimension;
    TupleMode mode;
    std::size_t tuples;
    double star;
};

struct DiscrepancyReport {
    std::vector<DiscrepancyEntry> entries;
};

// Exact D* of overlapping and non-overlapping d-tuples for each requested d.
// Finite-length evidence only: the limit definitions cannot be checked on a
// single sequence, and the default dimension set {1,2,3} is a heuristic.
DiscrepancyReport wcud_diagnostic(const DrivingSequence& u, std::span<const std::size_t> dims,
                                  const StarOptions& options = {});

// Randomized version: one report per replication, each built from
// make_sequence(replication index).
using SequenceFactory = std::function<DrivingSequence(std::uint64_t replication)>;
std::vector<DiscrepancyReport> wcud_diagnostic(const SequenceFactory& make_sequence,
                                               std::span<const std::size_t> dims,
                                               std::size_t replications,
                                               const StarOptions& options = {});

// Primitive root of the prime N minimizing exact D* of the N-1 overlapping
// pairs. Ties go to the smallest root.
std::uint64_t search_multiplier(std::uint64_t prime_modulus, const StarOptions& options = {});

// Tabulated multiplier when one exists, otherwise search_multiplier.
std::uint64_t select_multiplier(std::uint64_t prime_modulus, const StarOptions& options = {});

}  // namespace wcud
