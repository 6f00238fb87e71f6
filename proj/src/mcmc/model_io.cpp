#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "wcud/mcmc.hpp"

namespace wcud {

namespace {

class TokenReader {
public:
    explicit TokenReader(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            text_ << line << '\n';
        }
    }

    double number(const char* what) {
        double value;
        if (!(text_ >> value)) {
            throw std::invalid_argument(std::string("finite model: expected ") + what);
        }
        return value;
    }

    bool exhausted() {
        std::string extra;
        return !(text_ >> extra);
    }

private:
    std::stringstream text_;
};

}  // namespace

FiniteMhModel parse_finite_model(std::istream& in) {
    TokenReader reader(in);
    const double k_raw = reader.number("state count K");
    if (k_raw < 1 || k_raw != static_cast<double>(static_cast<std::size_t>(k_raw))) {
        throw std::invalid_argument("finite model: K must be a positive integer");
    }
    const auto k = static_cast<std::size_t>(k_raw);
    std::vector<double> target(k);
    for (auto& p : target) p = reader.number("target probability");
    std::vector<std::vector<double>> table(k, std::vector<double>(k));
    for (auto& row : table) {
        for (auto& q : row) q = reader.number("proposal table entry");
    }
    if (!reader.exhausted()) throw std::invalid_argument("finite model: trailing tokens");
    return FiniteMhModel::from_table(std::move(target), std::move(table));
}

FiniteMhModel load_finite_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file " + path);
    try {
        return parse_finite_model(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "step,state\n";
    out << 0 << ',' << trajectory.start << '\n';
    for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
        out << (i + 1) << ',' << trajectory.states[i] << '\n';
    }
}

}  // namespace wcud
