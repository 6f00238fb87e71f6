#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wcud/mcmc.hpp"

namespace wcud {

namespace {

constexpr double kSumTolerance = 1e-9;

void validate_target(std::span<const double> target) {
    if (target.empty()) throw std::invalid_argument("FiniteMhModel: empty state space");
    double total = 0.0;
    for (double p : target) {
        if (!(p > 0.0)) throw std::invalid_argument("FiniteMhModel: target must be strictly positive");
        total += p;
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
        throw std::invalid_argument("FiniteMhModel: target sums to " + std::to_string(total));
    }
}

}  // namespace

FiniteMhModel::FiniteMhModel(std::vector<double> target, Proposal proposal,
                             std::size_t uniforms_per_step)
    : target_(std::move(target)), proposal_(std::move(proposal)), width_(uniforms_per_step) {
    validate_target(target_);
    if (width_ < 2) throw std::invalid_argument("FiniteMhModel: need m >= 2 uniforms per step");
    if (!proposal_.propose || !proposal_.probability) {
        throw std::invalid_argument("FiniteMhModel: proposal map and probability are required");
    }
}

std::size_t invert_row(std::span<const double> row, double u) {
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] <= 0.0) continue;
        cumulative += row[k];
        last_positive = k;
        if (u < cumulative) return k;
    }
    return last_positive;
}

FiniteMhModel FiniteMhModel::from_table(std::vector<double> target,
                                        std::vector<std::vector<double>> table,
                                        std::size_t uniforms_per_step, std::size_t slot) {
    const std::size_t k = target.size();
    if (table.size() != k) throw std::invalid_argument("FiniteMhModel: proposal table must be K x K");
    for (const auto& row : table) {
        if (row.size() != k) throw std::invalid_argument("FiniteMhModel: proposal table must be K x K");
        double total = 0.0;
        for (double q : row) {
            if (!(q >= 0.0)) throw std::invalid_argument("FiniteMhModel: negative proposal probability");
            total += q;
        }
        if (std::abs(total - 1.0) > kSumTolerance) {
            throw std::invalid_argument("FiniteMhModel: proposal row sums to " + std::to_string(total));
        }
    }
    if (uniforms_per_step < 2 || slot + 1 >= uniforms_per_step) {
        throw std::invalid_argument("FiniteMhModel: proposal slot must precede the acceptance uniform");
    }
    Proposal proposal;
    proposal.propose = [table, slot](std::size_t from, std::span<const double> u) {
        return invert_row(table[from], u[slot]);
    };
    proposal.probability = [table](std::size_t from, std::size_t to) { return table[from][to]; };
    FiniteMhModel model(std::move(target), std::move(proposal), uniforms_per_step);
    model.table_ = std::move(table);
    return model;
}

double acceptance_probability(const FiniteMhModel& model, std::size_t from, std::size_t to) {
    const auto& p = model.proposal().probability;
    const double forward = p(from, to);
    if (!(forward > 0.0)) {
        throw std::domain_error("acceptance_probability: zero proposal probability " +
                                std::to_string(from) + " -> " + std::to_string(to));
    }
    const double ratio = model.target(to) * p(to, from) / (model.target(from) * forward);
    return std::min(1.0, ratio);
}

std::size_t mh_decide(const FiniteMhModel& model, std::size_t current, std::size_t candidate,
                      double u_accept) {
    if (candidate == current) return current;
    return u_accept <= acceptance_probability(model, current, candidate) ? candidate : current;
}

std::size_t mh_step(const FiniteMhModel& model, std::size_t current, std::span<const double> u) {
    const std::size_t m = model.uniforms_per_step();
    if (u.size() != m) {
        throw std::invalid_argument("mh_step: expected " + std::to_string(m) + " uniforms, got " +
                                    std::to_string(u.size()));
    }
    const std::size_t candidate = model.proposal().propose(current, u.first(m - 1));
    return mh_decide(model, current, candidate, u[m - 1]);
}

Trajectory run_chain(const FiniteMhModel& model, std::span<const double> driving, std::size_t start) {
    const std::size_t m = model.uniforms_per_step();
    if (driving.size() < m) {
        throw std::invalid_argument("run_chain: driving sequence shorter than one step (" +
                                    std::to_string(driving.size()) + " < " + std::to_string(m) + ")");
    }
    if (start >= model.states()) throw std::invalid_argument("run_chain: start state out of range");
    const std::size_t steps = driving.size() / m;
    Trajectory out{start, {}};
    out.states.reserve(steps);
    std::size_t state = start;
    for (std::size_t i = 0; i < steps; ++i) {
        state = mh_step(model, state, driving.subspan(i * m, m));
        out.states.push_back(state);
    }
    return out;
}

Trajectory run_chain(const FiniteMhModel& model, const DrivingSequence& driving, std::size_t start) {
    return run_chain(model, driving.values(), start);
}

std::vector<double> empirical_distribution(const Trajectory& trajectory, std::size_t states) {
    if (trajectory.states.empty()) throw std::invalid_argument("empirical_distribution: empty trajectory");
    std::vector<double> counts(states, 0.0);
    for (std::size_t s : trajectory.states) counts.at(s) += 1.0;
    const auto n = static_cast<double>(trajectory.states.size());
    for (auto& c : counts) c /= n;
    return counts;
}

ConsistencyReport consistency_check(std::span<const ConsistencyPoint> series,
                                    std::span<const double> target, double epsilon) {
    ConsistencyReport report{{}, {}, {}, false};
    if (series.empty()) return report;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& point = series[i];
        if (point.estimate.size() != target.size()) {
            throw std::invalid_argument("consistency_check: estimate and target sizes differ");
        }
        std::vector<double> errors(target.size());
        double sup = 0.0;
        for (std::size_t k = 0; k < target.size(); ++k) {
            errors[k] = std::abs(point.estimate[k] - target[k]);
            sup = std::max(sup, errors[k]);
        }
        report.steps.push_back(point.steps);
        report.state_errors.push_back(std::move(errors));
        report.sup_errors.push_back(sup);
        if (point.steps >= series[largest].steps) largest = i;
    }
    report.passed = report.sup_errors[largest] < epsilon;
    return report;
}

}  // namespace wcud
