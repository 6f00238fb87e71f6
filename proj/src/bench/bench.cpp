#include "wcud/bench.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "wcud/discrepancy.hpp"
#include "wcud/lattice.hpp"
#include "wcud/random.hpp"
#include "wcud/transforms.hpp"

namespace wcud {

namespace {

bool is_bench_method(Method m) { return m == Method::iid || m == Method::lcg_cp || m == Method::liao; }

SequenceMeta meta_for(const ExperimentConfig& config, std::size_t width, std::uint64_t replication) {
    SequenceMeta meta;
    meta.width = width;
    meta.seed = config.seed;
    meta.replication = replication;
    if (config.method != Method::iid) {
        meta.modulus = config.modulus;
        meta.multiplier = config.multiplier;
    }
    return meta;
}

DrivingSequence driver_from_tableau(const ExperimentConfig& config, const PointSet* tableau,
                                    std::size_t width, std::uint64_t replication) {
    const auto meta = meta_for(config, width, replication);
    if (config.method == Method::iid) {
        auto rng = RandomStream::derive(config.seed, "iid", replication);
        return DrivingSequence(rng.units(config.modulus * width), Method::iid, meta);
    }
    auto rot_rng = RandomStream::derive(config.seed, "rotation", replication);
    const auto shift = random_rotation(width, rot_rng);
    const PointSet rotated = cp_rotate_rows(*tableau, shift);
    if (config.method == Method::lcg_cp) {
        const auto coords = rotated.coordinates();
        return DrivingSequence(std::vector<double>(coords.begin(), coords.end()), Method::lcg_cp, meta);
    }
    auto perm_rng = RandomStream::derive(config.seed, "permutation", replication);
    const auto tau = random_permutation(rotated.size(), perm_rng);
    return liao_shuffle(rotated, tau).retagged(Method::liao, meta);
}

}  // namespace

ExperimentConfig resolve(ExperimentConfig config) {
    if (!is_bench_method(config.method)) {
        throw std::invalid_argument("bench: method must be iid, lcg-cp or liao, got " +
                                    std::string(method_name(config.method)));
    }
    if (config.replications < 2) throw std::invalid_argument("bench: need at least 2 replications");
    if (config.modulus < 3) throw std::invalid_argument("bench: N must be at least 3");
    if (config.workers == 0) config.workers = 1;
    if (config.method != Method::iid) {
        if (config.multiplier == 0) config.multiplier = select_multiplier(config.modulus);
        LatticeSpec::make(config.modulus, config.multiplier, 1);
    }
    return config;
}

DrivingSequence build_driver(const ExperimentConfig& config, std::size_t width,
                             std::uint64_t replication) {
    const auto resolved = resolve(config);
    if (resolved.method == Method::iid) return driver_from_tableau(resolved, nullptr, width, replication);
    const auto tableau = lattice_tableau(LatticeSpec::make(resolved.modulus, resolved.multiplier, width));
    return driver_from_tableau(resolved, &tableau, width, replication);
}

ReplicationReport summarize(Method method, std::uint64_t modulus, std::uint64_t multiplier,
                            std::vector<std::string> parameters,
                            std::vector<std::vector<double>> estimates) {
    if (estimates.size() < 2) throw std::invalid_argument("summarize: need at least 2 replications");
    const std::size_t p = parameters.size();
    for (const auto& row : estimates) {
        if (row.size() != p) throw std::invalid_argument("summarize: estimate width differs from parameter count");
    }
    const double r = static_cast<double>(estimates.size());
    std::vector<double> mean(p, 0.0), variance(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        double sum = 0.0;
        for (const auto& row : estimates) sum += row[j];
        mean[j] = sum / r;
        double ss = 0.0;
        for (const auto& row : estimates) ss += (row[j] - mean[j]) * (row[j] - mean[j]);
        variance[j] = ss / (r - 1.0);
    }
    return ReplicationReport{method,          modulus,          multiplier,         estimates.size(),
                             std::move(parameters), std::move(mean), std::move(variance), std::move(estimates)};
}

ReplicationReport run_replications(const ExperimentConfig& config, const ProbitData& data) {
    const auto resolved = resolve(config);
    const std::size_t width = data.uniforms_per_step();
    std::optional<PointSet> tableau;
    if (resolved.method != Method::iid) {
        tableau = lattice_tableau(LatticeSpec::make(resolved.modulus, resolved.multiplier, width));
    }
    const ProbitState start = initial_state(data);
    std::vector<std::vector<double>> estimates(resolved.replications);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t rep = next++; rep < resolved.replications; rep = next++) {
            try {
                const auto driver = driver_from_tableau(resolved, tableau ? &*tableau : nullptr, width, rep);
                estimates[rep] = run_gibbs_means(data, driver.values(), start, resolved.burn);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = resolved.replications;
            }
        }
    };
    const std::size_t threads = std::min(resolved.workers, resolved.replications);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return summarize(resolved.method, resolved.modulus, resolved.method == Method::iid ? 0 : resolved.multiplier,
                     parameter_names(data.records()), std::move(estimates));
}

bool VrfTable::significant(std::size_t i) const {
    return ratio.at(i) >= threshold || ratio.at(i) <= 1.0 / threshold;
}

double significance_threshold(std::size_t replications) {
    if (replications < 2) throw std::invalid_argument("significance_threshold: need R >= 2");
    if (replications == 300) return 1.25;
    const double df = static_cast<double>(replications - 1);
    return boost::math::quantile(boost::math::fisher_f_distribution<double>(df, df), 0.975);
}

VrfTable variance_reduction(const ReplicationReport& baseline, const ReplicationReport& method) {
    if (baseline.modulus != method.modulus) {
        throw std::invalid_argument("variance_reduction: reports are for different N");
    }
    if (baseline.replications != method.replications) {
        throw std::invalid_argument("variance_reduction: reports have different replication counts");
    }
    if (baseline.parameters != method.parameters) {
        throw std::invalid_argument("variance_reduction: reports have different parameter sets");
    }
    VrfTable table{baseline.method, method.method, baseline.modulus, baseline.parameters, {},
                   significance_threshold(baseline.replications)};
    table.ratio.reserve(baseline.variance.size());
    for (std::size_t j = 0; j < baseline.variance.size(); ++j) {
        const double num = baseline.variance[j], den = method.variance[j];
        if (num == den) {
            table.ratio.push_back(1.0);
        } else if (num == 0.0 || den == 0.0) {
            throw std::domain_error("variance_reduction: zero variance for " + baseline.parameters[j]);
        } else {
            table.ratio.push_back(num / den);
        }
    }
    return table;
}

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p must lie in [0,1]");
    std::sort(values.begin(), values.end());
    const double h = static_cast<double>(values.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<BiasRow> bias_summary(std::span<const ReplicationReport> reports) {
    std::vector<Method> order;
    for (const auto& r : reports) {
        if (std::find(order.begin(), order.end(), r.method) == order.end()) order.push_back(r.method);
        if (r.parameters != reports.front().parameters) {
            throw std::invalid_argument("bias_summary: reports have different parameter sets");
        }
    }
    if (order.size() < 2) throw std::invalid_argument("bias_summary: need reports for at least 2 methods");

    std::vector<BiasRow> rows;
    for (std::size_t i = 1; i < order.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            std::vector<double> diffs;
            for (const auto& a : reports) {
                if (a.method != order[i]) continue;
                for (const auto& b : reports) {
                    if (b.method != order[k] || b.modulus != a.modulus) continue;
                    for (std::size_t j = 0; j < a.mean.size(); ++j) diffs.push_back(a.mean[j] - b.mean[j]);
                }
            }
            if (diffs.empty()) continue;
            double max_abs = 0.0;
            for (double d : diffs) max_abs = std::max(max_abs, std::abs(d));
            rows.push_back(BiasRow{order[i], order[k], quantile(diffs, 0.0), quantile(diffs, 0.25),
                                   quantile(diffs, 0.75), quantile(diffs, 1.0), max_abs, diffs.size()});
        }
    }
    return rows;
}

LatentSummary summarize_latent_vrf(const VrfTable& table) {
    std::vector<double> z;
    for (std::size_t j = 0; j < table.parameters.size(); ++j) {
        if (table.parameters[j].starts_with("z")) z.push_back(table.ratio[j]);
    }
    if (z.empty()) throw std::invalid_argument("summarize_latent_vrf: no latent parameters");
    double sum = 0.0;
    for (double v : z) sum += v;
    return LatentSummary{table.method,      table.modulus,          quantile(z, 0.0),
                         quantile(z, 0.25), quantile(z, 0.5),       sum / static_cast<double>(z.size()),
                         quantile(z, 0.75), quantile(z, 1.0)};
}

StudyConfig full_study(StudyConfig base) {
    base.replications = 300;
    base.moduli = {1021, 2039, 4093, 8191, 16381};
    return base;
}

StudyResult run_study(const StudyConfig& config, const ProbitData& data) {
    if (config.methods.empty() || config.moduli.empty()) {
        throw std::invalid_argument("run_study: need at least one method and one N");
    }
    StudyResult result;
    for (auto modulus : config.moduli) {
        for (auto method : config.methods) {
            ExperimentConfig ec;
            ec.method = method;
            ec.modulus = modulus;
            ec.replications = config.replications;
            ec.seed = config.seed;
            ec.workers = config.workers;
            result.reports.push_back(run_replications(ec, data));
        }
    }
    auto find = [&](Method m, std::uint64_t n) -> const ReplicationReport* {
        for (const auto& r : result.reports) {
            if (r.method == m && r.modulus == n) return &r;
        }
        return nullptr;
    };
    for (auto modulus : config.moduli) {
        const auto* iid = find(Method::iid, modulus);
        const auto* lcg = find(Method::lcg_cp, modulus);
        const auto* liao = find(Method::liao, modulus);
        for (const auto* m : {lcg, liao}) {
            if (iid && m) {
                result.vrf.push_back(variance_reduction(*iid, *m));
                result.latent.push_back(summarize_latent_vrf(result.vrf.back()));
            }
        }
        if (lcg && liao) result.vrf.push_back(variance_reduction(*liao, *lcg));
    }
    if (config.methods.size() >= 2) result.bias = bias_summary(result.reports);
    return result;
}

}  // namespace wcud
