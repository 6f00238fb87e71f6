#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wcud {

using DesignMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3>;

class DataLoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Probit regression data with the matrices the Gibbs sampler needs:
// (X'X)^{-1}, its lower Cholesky factor, and (X'X)^{-1} X'.
class ProbitData {
public:
    // Design with an intercept column: rows (1, volume, rate).
    static ProbitData from_records(std::span<const double> volume, std::span<const double> rate,
                                   std::vector<int> response);
    static ProbitData from_design(DesignMatrix design, std::vector<int> response);

    std::size_t records() const { return response_.size(); }
    // Uniforms one Gibbs sweep consumes: 3 for beta plus one per record.
    std::size_t uniforms_per_step() const { return 3 + records(); }

    const DesignMatrix& design() const { return design_; }
    const std::vector<int>& response() const { return response_; }
    const Eigen::Matrix3d& covariance() const { return covariance_; }
    const Eigen::Matrix3d& cholesky() const { return cholesky_; }
    const Eigen::Matrix<double, 3, Eigen::Dynamic>& projection() const { return projection_; }

private:
    ProbitData() = default;

    DesignMatrix design_;
    std::vector<int> response_;
    Eigen::Matrix3d covariance_;
    Eigen::Matrix3d cholesky_;
    Eigen::Matrix<double, 3, Eigen::Dynamic> projection_;
};

struct ProbitState {
    Eigen::Vector3d beta;
    Eigen::VectorXd latent;
};

// beta = 0 and each latent at the median of its truncated conditional
// given beta = 0 (about +-0.674).
ProbitState initial_state(const ProbitData& data);

// (X'X)^{-1} X' Z + L eps with eps_j = Phi^{-1}(u_j).
Eigen::Vector3d beta_update(const Eigen::VectorXd& latent, const ProbitData& data,
                            std::span<const double> u);

// One sweep: beta from u[0..2], then Z_i from u[3+i] in record order.
// Units are clamped to [1e-15, 1 - 1e-15] before any inverse CDF.
ProbitState gibbs_step(const ProbitState& state, const ProbitData& data, std::span<const double> u);

// Running means of beta and Z over a chain.
class PosteriorAccumulator {
public:
    explicit PosteriorAccumulator(std::size_t records);
    void add(const ProbitState& state);
    std::size_t count() const { return count_; }
    // beta0, beta1, beta2, z1..zn
    std::vector<double> means() const;

private:
    Eigen::VectorXd sum_;
    std::size_t count_ = 0;
};

struct PosteriorEstimate {
    Eigen::Vector3d beta;
    Eigen::VectorXd latent;
    std::vector<double> flattened() const;
};

// Componentwise means over steps burn+1..n (0-based indices burn..n-1).
PosteriorEstimate posterior_means(std::span<const ProbitState> trajectory, std::size_t burn = 0);

// Runs floor(|driving| / (3 + n)) sweeps from `start`, averaging every state.
std::vector<double> run_gibbs_means(const ProbitData& data, std::span<const double> driving,
                                    const ProbitState& start, std::size_t burn = 0);

// CSV with header volume,rate,y and exactly 39 records of Finney's
// vasoconstriction data; checks the duplicated design point as a
// provenance anchor.
ProbitData load_finney(const std::string& path);
ProbitData parse_finney(std::istream& in, const std::string& source = "<stream>");

// Parameter names in output order: beta0, beta1, beta2, z1..zn.
std::vector<std::string> parameter_names(std::size_t records);

// One row per state, columns beta0,beta1,beta2,z1..zn.
void write_states_csv(std::ostream& out, std::span<const ProbitState> states);

}  // namespace wcud
