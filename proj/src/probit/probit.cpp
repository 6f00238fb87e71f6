#include "wcud/probit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wcud/normal.hpp"
#include "wcud/sequence.hpp"

namespace wcud {

namespace {

constexpr std::size_t kFinneyRecords = 39;

bool near(double a, double b) { return std::abs(a - b) < 1e-9; }

}  // namespace

ProbitData ProbitData::from_records(std::span<const double> volume, std::span<const double> rate,
                                    std::vector<int> response) {
    if (volume.size() != rate.size() || volume.size() != response.size()) {
        throw std::invalid_argument("ProbitData: column lengths differ");
    }
    DesignMatrix design(static_cast<Eigen::Index>(volume.size()), 3);
    for (std::size_t i = 0; i < volume.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        design(row, 0) = 1.0;
        design(row, 1) = volume[i];
        design(row, 2) = rate[i];
    }
    return from_design(std::move(design), std::move(response));
}

ProbitData ProbitData::from_design(DesignMatrix design, std::vector<int> response) {
    if (design.rows() != static_cast<Eigen::Index>(response.size()) || response.empty()) {
        throw std::invalid_argument("ProbitData: design rows and responses differ");
    }
    for (int y : response) {
        if (y != 0 && y != 1) throw std::invalid_argument("ProbitData: responses must be 0 or 1");
    }
    ProbitData data;
    const Eigen::Matrix3d gram = design.transpose() * design;
    Eigen::LLT<Eigen::Matrix3d> gram_factor(gram);
    if (gram_factor.info() != Eigen::Success) {
        throw std::invalid_argument("ProbitData: X'X is not positive definite");
    }
    data.covariance_ = gram_factor.solve(Eigen::Matrix3d::Identity());
    Eigen::LLT<Eigen::Matrix3d> cov_factor(data.covariance_);
    if (cov_factor.info() != Eigen::Success) {
        throw std::invalid_argument("ProbitData: (X'X)^{-1} is not positive definite");
    }
    data.cholesky_ = cov_factor.matrixL();
    data.projection_ = data.covariance_ * design.transpose();
    data.design_ = std::move(design);
    data.response_ = std::move(response);
    return data;
}

ProbitState initial_state(const ProbitData& data) {
    ProbitState state{Eigen::Vector3d::Zero(), Eigen::VectorXd(data.records())};
    for (std::size_t i = 0; i < data.records(); ++i) {
        state.latent(static_cast<Eigen::Index>(i)) = trunc_norm_inverse(0.0, data.response()[i] == 1, 0.5);
    }
    return state;
}

Eigen::Vector3d beta_update(const Eigen::VectorXd& latent, const ProbitData& data,
                            std::span<const double> u) {
    if (u.size() != 3) throw std::invalid_argument("beta_update: expected 3 uniforms");
    const Eigen::Vector3d noise(inv_norm_cdf(clamp_unit(u[0])), inv_norm_cdf(clamp_unit(u[1])),
                                inv_norm_cdf(clamp_unit(u[2])));
    return data.projection() * latent + data.cholesky() * noise;
}

ProbitState gibbs_step(const ProbitState& state, const ProbitData& data, std::span<const double> u) {
    if (u.size() != data.uniforms_per_step()) {
        throw std::invalid_argument("gibbs_step: expected " + std::to_string(data.uniforms_per_step()) +
                                    " uniforms, got " + std::to_string(u.size()));
    }
    ProbitState next;
    next.beta = beta_update(state.latent, data, u.first(3));
    const Eigen::VectorXd mean = data.design() * next.beta;
    next.latent.resize(mean.size());
    for (Eigen::Index i = 0; i < mean.size(); ++i) {
        const bool positive = data.response()[static_cast<std::size_t>(i)] == 1;
        next.latent(i) = trunc_norm_inverse(mean(i), positive, clamp_unit(u[3 + static_cast<std::size_t>(i)]));
    }
    return next;
}

PosteriorAccumulator::PosteriorAccumulator(std::size_t records)
    : sum_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(3 + records))) {}

void PosteriorAccumulator::add(const ProbitState& state) {
    sum_.head<3>() += state.beta;
    sum_.tail(sum_.size() - 3) += state.latent;
    ++count_;
}

std::vector<double> PosteriorAccumulator::means() const {
    if (count_ == 0) throw std::invalid_argument("PosteriorAccumulator: no states");
    std::vector<double> out(static_cast<std::size_t>(sum_.size()));
    for (Eigen::Index i = 0; i < sum_.size(); ++i) {
        out[static_cast<std::size_t>(i)] = sum_(i) / static_cast<double>(count_);
    }
    return out;
}

std::vector<double> PosteriorEstimate::flattened() const {
    std::vector<double> out{beta(0), beta(1), beta(2)};
    out.insert(out.end(), latent.data(), latent.data() + latent.size());
    return out;
}

PosteriorEstimate posterior_means(std::span<const ProbitState> trajectory, std::size_t burn) {
    if (burn >= trajectory.size()) {
        throw std::invalid_argument("posterior_means: burn-in leaves no states");
    }
    PosteriorAccumulator acc(static_cast<std::size_t>(trajectory.front().latent.size()));
    for (std::size_t i = burn; i < trajectory.size(); ++i) acc.add(trajectory[i]);
    const auto flat = acc.means();
    PosteriorEstimate est;
    est.beta = Eigen::Vector3d(flat[0], flat[1], flat[2]);
    est.latent = Eigen::Map<const Eigen::VectorXd>(flat.data() + 3, static_cast<Eigen::Index>(flat.size() - 3));
    return est;
}

std::vector<double> run_gibbs_means(const ProbitData& data, std::span<const double> driving,
                                    const ProbitState& start, std::size_t burn) {
    const std::size_t m = data.uniforms_per_step();
    const std::size_t steps = driving.size() / m;
    if (steps <= burn) throw std::invalid_argument("run_gibbs_means: burn-in leaves no steps");
    PosteriorAccumulator acc(data.records());
    ProbitState state = start;
    for (std::size_t i = 0; i < steps; ++i) {
        state = gibbs_step(state, data, driving.subspan(i * m, m));
        if (i >= burn) acc.add(state);
    }
    return acc.means();
}

ProbitData parse_finney(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw DataLoadError(source + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "volume,rate,y") {
        throw DataLoadError(source + ": expected header 'volume,rate,y', got '" + line + "'");
    }
    std::vector<double> volume, rate;
    std::vector<int> response;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream fields(line);
        std::string cell[3], extra;
        for (auto& c : cell) {
            if (!std::getline(fields, c, ',')) {
                throw DataLoadError(source + ":" + std::to_string(line_no) + ": expected 3 fields");
            }
        }
        if (std::getline(fields, extra, ',')) {
            throw DataLoadError(source + ":" + std::to_string(line_no) + ": expected 3 fields");
        }
        double v[2];
        for (int k = 0; k < 2; ++k) {
            const auto& c = cell[k];
            const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v[k]);
            if (ec != std::errc() || ptr != c.data() + c.size() || !std::isfinite(v[k])) {
                throw DataLoadError(source + ":" + std::to_string(line_no) + ": cannot parse '" + c + "'");
            }
        }
        if (cell[2] != "0" && cell[2] != "1") {
            throw DataLoadError(source + ":" + std::to_string(line_no) + ": response '" + cell[2] +
                                "' is not 0 or 1");
        }
        volume.push_back(v[0]);
        rate.push_back(v[1]);
        response.push_back(cell[2] == "1" ? 1 : 0);
    }
    if (response.size() != kFinneyRecords) {
        throw DataLoadError(source + ": expected " + std::to_string(kFinneyRecords) + " records, got " +
                            std::to_string(response.size()));
    }
    std::size_t duplicated = 0;
    bool constricted_anchor = false;
    for (std::size_t i = 0; i < response.size(); ++i) {
        if (near(volume[i], 0.95) && near(rate[i], 1.9)) ++duplicated;
        if (near(volume[i], 1.9) && near(rate[i], 0.95) && response[i] == 1) constricted_anchor = true;
    }
    if (duplicated != 2 || !constricted_anchor) {
        throw DataLoadError(source + ": does not match the Finney vasoconstriction records "
                                     "(design point (0.95, 1.9) twice, (1.9, 0.95) with y = 1)");
    }
    return ProbitData::from_records(volume, rate, std::move(response));
}

ProbitData load_finney(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataLoadError("cannot open data file " + path);
    return parse_finney(in, path);
}

std::vector<std::string> parameter_names(std::size_t records) {
    std::vector<std::string> names{"beta0", "beta1", "beta2"};
    for (std::size_t i = 1; i <= records; ++i) names.push_back("z" + std::to_string(i));
    return names;
}

void write_states_csv(std::ostream& out, std::span<const ProbitState> states) {
    if (states.empty()) return;
    const auto names = parameter_names(static_cast<std::size_t>(states.front().latent.size()));
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << '\n';
    const auto old_precision = out.precision(17);
    for (const auto& s : states) {
        out << s.beta(0) << ',' << s.beta(1) << ',' << s.beta(2);
        for (Eigen::Index i = 0; i < s.latent.size(); ++i) out << ',' << s.latent(i);
        out << '\n';
    }
    out.precision(old_precision);
}

}  // namespace wcud
