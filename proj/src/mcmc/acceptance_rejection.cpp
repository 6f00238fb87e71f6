#include <algorithm>
#include <cmath>
#include <string>

#include "wcud/mcmc.hpp"

namespace wcud {

namespace {

// f(y) / (c g(y)); throws when the sampled point exposes f > c g.
double acceptance_ratio(const ArSpec& spec, double y) {
    const double f = spec.density(y);
    const double envelope = spec.bound * spec.envelope_density(y);
    if (f > envelope * (1.0 + 1e-12)) {
        throw EnvelopeViolation("ar_sample: f(" + std::to_string(y) + ") = " + std::to_string(f) +
                                " exceeds c g(y) = " + std::to_string(envelope));
    }
    return envelope > 0.0 ? f / envelope : 0.0;
}

}  // namespace

ArDraw ar_sample(const ArSpec& spec, double primary_1, double primary_2, RandomStream& fallback) {
    if (!(spec.bound >= 1.0)) throw EnvelopeViolation("ar_sample: envelope constant c must be >= 1");
    double y = spec.envelope_inverse(primary_1);
    if (primary_2 <= acceptance_ratio(spec, y)) return {y, 0};
    std::size_t pairs = 0;
    for (;;) {
        const double v1 = fallback.next_unit();
        const double v2 = fallback.next_unit();
        ++pairs;
        y = spec.envelope_inverse(v1);
        if (v2 <= acceptance_ratio(spec, y)) return {y, pairs};
    }
}

ArChainResult run_ar_chain(const FiniteMhModel& table_model, std::span<const double> driving,
                           std::size_t start, RandomStream& fallback, RandomStream& coupling) {
    const auto& table = table_model.table();
    if (table.empty()) throw std::invalid_argument("run_ar_chain: requires a table model");
    constexpr std::size_t kWidth = 3;
    if (driving.size() < kWidth) throw std::invalid_argument("run_ar_chain: driving sequence too short");
    const std::size_t k = table_model.states();
    const auto kd = static_cast<double>(k);

    ArChainResult out{{start, {}}, {}, 0};
    const std::size_t steps = driving.size() / kWidth;
    out.trajectory.states.reserve(steps);
    out.coupled_units.reserve(steps);

    std::size_t state = start;
    for (std::size_t i = 0; i < steps; ++i) {
        const auto& row = table[state];
        const double peak = *std::max_element(row.begin(), row.end());
        ArSpec spec;
        spec.density = [&row](double y) { return row[static_cast<std::size_t>(y)]; };
        spec.envelope_density = [kd](double) { return 1.0 / kd; };
        spec.envelope_inverse = [kd, k](double u) {
            return static_cast<double>(std::min(static_cast<std::size_t>(u * kd), k - 1));
        };
        spec.bound = kd * peak;

        const auto u = driving.subspan(i * kWidth, kWidth);
        const ArDraw draw = ar_sample(spec, u[0], u[1], fallback);
        out.fallback_pairs += draw.fallback_pairs;
        const auto candidate = static_cast<std::size_t>(draw.value);

        double lower = 0.0;
        for (std::size_t j = 0; j < candidate; ++j) lower += row[j];
        const double upper = lower + row[candidate];
        double w = lower + coupling.next_unit() * row[candidate];
        if (w >= upper) w = std::nextafter(upper, 0.0);
        out.coupled_units.push_back(std::clamp(w, 0.0, std::nextafter(1.0, 0.0)));

        state = mh_decide(table_model, state, candidate, u[2]);
        out.trajectory.states.push_back(state);
    }
    return out;
}

}  // namespace wcud
