#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcud/random.hpp"
#include "wcud/sequence.hpp"

namespace wcud {

// Proposal map Psi(from, u_1..u_{m-1}) and its transition probability
// p(from -> to). Psi must be piecewise constant on axis-parallel boxes of
// [0,1)^(m-1) (the regularity the consistency results need); the engine
// cannot verify this for arbitrary callables.
struct Proposal {
    std::function<std::size_t(std::size_t from, std::span<const double> u)> propose;
    std::function<double(std::size_t from, std::size_t to)> probability;
};

class FiniteMhModel {
public:
    // target: strictly positive, sums to 1. uniforms_per_step: m >= 2, the
    // last uniform of each block decides acceptance.
    FiniteMhModel(std::vector<double> target, Proposal proposal, std::size_t uniforms_per_step);

    // Row-stochastic proposal table realized by inverting the row CDF at
    // u_{slot+1}; the other proposal uniforms are ignored.
    static FiniteMhModel from_table(std::vector<double> target,
                                    std::vector<std::vector<double>> table,
                                    std::size_t uniforms_per_step = 2, std::size_t slot = 0);

    std::size_t states() const { return target_.size(); }
    std::size_t uniforms_per_step() const { return width_; }
    double target(std::size_t state) const { return target_.at(state); }
    std::span<const double> target() const { return target_; }
    const Proposal& proposal() const { return proposal_; }

    // Only set for table models.
    const std::vector<std::vector<double>>& table() const { return table_; }

private:
    std::vector<double> target_;
    Proposal proposal_;
    std::size_t width_;
    std::vector<std::vector<double>> table_;
};

// Smallest k with u < cdf_k for the row CDF of `row`; the last state with
// positive mass absorbs rounding at the top.
std::size_t invert_row(std::span<const double> row, double u);

// min(1, pi(to) p(to->from) / (pi(from) p(from->to))).
// Throws std::domain_error when p(from->to) is zero.
double acceptance_probability(const FiniteMhModel& model, std::size_t from, std::size_t to);

// One transition: propose from u_1..u_{m-1}, accept iff u_m <= A.
std::size_t mh_step(const FiniteMhModel& model, std::size_t current, std::span<const double> u);

// Accept-or-stay decision shared by every transition kernel.
std::size_t mh_decide(const FiniteMhModel& model, std::size_t current, std::size_t candidate,
                      double u_accept);

struct Trajectory {
    std::size_t start;
    std::vector<std::size_t> states;  // omega^(1) .. omega^(n)
    std::size_t steps() const { return states.size(); }
};

// floor(|driving| / m) transitions consuming uniforms in order; leftovers are
// unused. Throws std::invalid_argument when fewer than m uniforms are given.
Trajectory run_chain(const FiniteMhModel& model, std::span<const double> driving, std::size_t start);
Trajectory run_chain(const FiniteMhModel& model, const DrivingSequence& driving, std::size_t start);

// Fraction of omega^(1..n) in each state.
std::vector<double> empirical_distribution(const Trajectory& trajectory, std::size_t states);

struct ConsistencyPoint {
    std::size_t steps;
    std::vector<double> estimate;
};

struct ConsistencyReport {
    std::vector<std::size_t> steps;
    std::vector<std::vector<double>> state_errors;  // |pihat - pi| per sample size, per state
    std::vector<double> sup_errors;
    bool passed;  // largest-n sup error below epsilon
};

ConsistencyReport consistency_check(std::span<const ConsistencyPoint> series,
                                    std::span<const double> target, double epsilon);

// Acceptance-rejection from envelope g with f <= c g.
struct ArSpec {
    std::function<double(double)> density;           // f
    std::function<double(double)> envelope_density;  // g
    std::function<double(double)> envelope_inverse;  // G^{-1}
    double bound;                                    // c >= 1
};

class EnvelopeViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ArDraw {
    double value;
    std::size_t fallback_pairs;
};

// One trial on (primary_1, primary_2); on rejection, IID pairs from the
// fallback stream until acceptance.
ArDraw ar_sample(const ArSpec& spec, double primary_1, double primary_2, RandomStream& fallback);

// Transition kernel whose candidate is drawn by acceptance-rejection from the
// proposal row of a table model (uniform envelope over the K states). Each
// step reads three driving units: envelope draw, AR decision, MH decision.
// For every step the result also records a unit w with which inversion of the
// proposal row yields the same candidate:
//   w = H(y-) + v (H(y) - H(y-)),  v ~ U[0,1) from `coupling`.
struct ArChainResult {
    Trajectory trajectory;
    std::vector<double> coupled_units;
    std::size_t fallback_pairs;
};

ArChainResult run_ar_chain(const FiniteMhModel& table_model, std::span<const double> driving,
                           std::size_t start, RandomStream& fallback, RandomStream& coupling);

// Plain-text model: '#' comments; tokens K, then K target probabilities, then
// the K x K proposal table row by row.
FiniteMhModel parse_finite_model(std::istream& in);
FiniteMhModel load_finite_model(const std::string& path);

// CSV "step,state" with step 0 the start state.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace wcud
