#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wcud/probit.hpp"
#include "wcud/sequence.hpp"

namespace wcud {

struct ExperimentConfig {
    Method method = Method::iid;  // iid, lcg-cp or liao
    std::uint64_t modulus = 1021;
    std::uint64_t multiplier = 0;  // 0: tabulated or searched
    std::size_t replications = 100;
    std::uint64_t seed = 20080101;
    std::size_t burn = 0;
    std::size_t workers = 1;
};

// Fills in the multiplier and checks R >= 2 and the lattice parameters.
ExperimentConfig resolve(ExperimentConfig config);

// Driving sequence of length N m for one replication:
//   iid    - N m units from the "iid" sub-stream;
//   lcg-cp - the N x m lattice tableau, every row shifted by one rotation
//            drawn from the "rotation" sub-stream;
//   liao   - the same rotated rows reordered by a uniform permutation from
//            the "permutation" sub-stream.
DrivingSequence build_driver(const ExperimentConfig& config, std::size_t width,
                             std::uint64_t replication);

struct ReplicationReport {
    Method method;
    std::uint64_t modulus;
    std::uint64_t multiplier;
    std::size_t replications;
    std::vector<std::string> parameters;
    std::vector<double> mean;      // across replications
    std::vector<double> variance;  // unbiased, across replications
    std::vector<std::vector<double>> estimates;  // [replication][parameter]
};

// Runs R chains of N Gibbs sweeps each, in parallel over `workers` threads.
// The result depends only on the config, never on the schedule.
ReplicationReport run_replications(const ExperimentConfig& config, const ProbitData& data);

// Mean and unbiased variance per column; rows are replications.
ReplicationReport summarize(Method method, std::uint64_t modulus, std::uint64_t multiplier,
                            std::vector<std::string> parameters,
                            std::vector<std::vector<double>> estimates);

struct VrfTable {
    Method baseline;
    Method method;
    std::uint64_t modulus;
    std::vector<std::string> parameters;
    std::vector<double> ratio;  // Var_baseline / Var_method
    double threshold;           // ratios in (1/threshold, threshold) are not significant
    bool significant(std::size_t i) const;
};

// 0.975 quantile of F(R-1, R-1); pinned to 1.25 at R = 300.
double significance_threshold(std::size_t replications);

VrfTable variance_reduction(const ReplicationReport& baseline, const ReplicationReport& method);

// Linear interpolation between order statistics (h = (n-1) p).
double quantile(std::vector<double> values, double p);

struct BiasRow {
    Method first;
    Method second;
    double min, q25, q75, max;
    double max_abs;
    std::size_t count;
};

// For every ordered method pair (later minus earlier in first-appearance
// order), the quantiles of mean_first - mean_second over all parameters,
// pooled over the moduli both methods were run at.
std::vector<BiasRow> bias_summary(std::span<const ReplicationReport> reports);

struct LatentSummary {
    Method method;
    std::uint64_t modulus;
    double min, q25, median, mean, q75, max;
};

LatentSummary summarize_latent_vrf(const VrfTable& table);

// CSV writers; 17 significant digits so values re-parse exactly.
void write_replication_csv(std::ostream& out, std::span<const ReplicationReport> reports);
void write_vrf_csv(std::ostream& out, std::span<const VrfTable> tables);
void write_beta_vrf_csv(std::ostream& out, std::span<const VrfTable> tables);
void write_latent_vrf_csv(std::ostream& out, std::span<const LatentSummary> rows);
void write_bias_csv(std::ostream& out, std::span<const BiasRow> rows);
// Per-latent sampling variance against posterior mean, one polyline per report.
void write_latent_variance_svg(std::ostream& out, std::span<const ReplicationReport> reports);

struct StudyConfig {
    std::vector<Method> methods{Method::iid, Method::lcg_cp, Method::liao};
    std::vector<std::uint64_t> moduli{1021, 4093};
    std::size_t replications = 100;
    std::uint64_t seed = 20080101;
    std::size_t workers = 1;
    std::filesystem::path out_dir = "bench_out";
};

// Full-size configuration: R = 300 at all five tabulated moduli.
StudyConfig full_study(StudyConfig base);

struct StudyResult {
    std::vector<ReplicationReport> reports;
    std::vector<VrfTable> vrf;
    std::vector<LatentSummary> latent;
    std::vector<BiasRow> bias;
};

StudyResult run_study(const StudyConfig& config, const ProbitData& data);

// Writes replications.csv, vrf.csv, beta_vrf.csv,
// latent_vrf.csv, bias.csv and latent_variance.svg.
void emit_outputs(const StudyResult& result, const std::filesystem::path& out_dir);

}  // namespace wcud
