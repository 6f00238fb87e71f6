// wcud: driving sequences, discrepancy reports, MCMC demos and the
// replication study from the command line.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wcud/bench.hpp"
#include "wcud/discrepancy.hpp"
#include "wcud/lattice.hpp"
#include "wcud/mcmc.hpp"
#include "wcud/probit.hpp"
#include "wcud/random.hpp"
#include "wcud/transforms.hpp"

#ifndef WCUD_DATA_DIR
#define WCUD_DATA_DIR "data"
#endif

namespace {

using namespace wcud;

Method method_or_throw(const std::string& name) {
    const auto m = parse_method(name);
    if (!m) throw std::invalid_argument("unknown method '" + name + "'");
    return *m;
}

std::uint64_t multiplier_for(std::uint64_t modulus, std::uint64_t a) {
    return a != 0 ? a : select_multiplier(modulus);
}

// Output stream that is stdout for "-" or an empty path.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

struct GenArgs {
    std::string method = "lcg-cp";
    std::uint64_t modulus = 1021;
    std::uint64_t multiplier = 0;
    std::size_t width = 2;
    std::uint64_t seed = 1;
    std::size_t block = 2;
    std::size_t offset = 0;
    std::string out;
};

DrivingSequence generate(const GenArgs& g) {
    const Method method = method_or_throw(g.method);
    if (method == Method::iid) {
        auto rng = RandomStream::derive(g.seed, "iid", 0);
        return DrivingSequence(rng.units(g.modulus * g.width), Method::iid, {0, 0, g.width, g.seed, 0});
    }
    const auto spec = LatticeSpec::make(g.modulus, multiplier_for(g.modulus, g.multiplier), g.width);
    const auto lattice = lattice_sequence(spec);
    switch (method) {
        case Method::lcg:
            return lattice;
        case Method::lcg_cp: {
            auto rng = RandomStream::derive(g.seed, "rotation", 0);
            return cp_rotate(lattice, random_rotation(g.width, rng));
        }
        case Method::liao: {
            auto rot = RandomStream::derive(g.seed, "rotation", 0);
            auto perm = RandomStream::derive(g.seed, "permutation", 0);
            const auto rotated = cp_rotate_rows(lattice_tableau(spec), random_rotation(g.width, rot));
            return liao_shuffle(rotated, random_permutation(rotated.size(), perm));
        }
        case Method::block_perm: {
            auto rng = RandomStream::derive(g.seed, "block", 0);
            return block_permute(lattice, g.block, random_permutation(g.block, rng));
        }
        case Method::iid_insert: {
            auto rng = RandomStream::derive(g.seed, "insert", 0);
            return insert_iid(lattice, g.width, g.offset, rng);
        }
        default:
            throw std::invalid_argument("unsupported method");
    }
}

// Reads decimal values, comma or whitespace separated, one row per line.
// A first line that does not parse as numbers is taken as a header.
std::vector<std::vector<double>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        for (char& c : line) {
            if (c == ',' || c == '\t' || c == '\r') c = ' ';
        }
        std::istringstream fields(line);
        std::vector<double> row;
        std::string cell;
        bool numeric = true;
        while (fields >> cell) {
            double v;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size()) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (line_no == 1) continue;
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": not a number: '" + cell + "'");
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": ragged row");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument(path + ": no data rows");
    return rows;
}

void write_report(std::ostream& out, const DiscrepancyReport& report) {
    out.precision(17);
    out << "d,mode,n_tuples,d_star\n";
    for (const auto& e : report.entries) {
        out << e.dimension << ',' << tuple_mode_name(e.mode) << ',' << e.tuples << ',' << e.star << '\n';
    }
}

int run_gen(const GenArgs& g) {
    const auto seq = generate(g);
    Output out(g.out);
    auto& os = out.stream();
    os.precision(17);
    os << "u\n";
    for (double v : seq.values()) os << v << '\n';
    return 0;
}

int run_disc(const std::string& input, const std::vector<std::size_t>& dims, const std::string& mode,
             bool as_points, double budget) {
    const auto rows = read_rows(input);
    StarOptions options{budget};
    DiscrepancyReport report;
    if (as_points) {
        std::vector<double> coords;
        for (const auto& r : rows) coords.insert(coords.end(), r.begin(), r.end());
        const PointSet points(rows.front().size(), std::move(coords));
        report.entries.push_back({points.dimension(), TupleMode::block, points.size(),
                                  star_discrepancy(points, options)});
        write_report(std::cout, report);
        return 0;
    }
    if (mode != "overlap" && mode != "block" && mode != "both") {
        throw std::invalid_argument("--mode must be overlap, block or both");
    }
    std::vector<double> values;
    for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
    const auto full = wcud_diagnostic(DrivingSequence(std::move(values), Method::iid), dims, options);
    for (const auto& e : full.entries) {
        if (mode == "both" || tuple_mode_name(e.mode) == mode) report.entries.push_back(e);
    }
    write_report(std::cout, report);
    return 0;
}

int run_finite(std::uint64_t modulus, const std::string& method_label, std::uint64_t seed,
               const std::string& model_path, const std::string& trajectory_path) {
    const auto model = load_finite_model(model_path);
    GenArgs g;
    g.method = method_label;
    g.modulus = modulus;
    g.width = model.uniforms_per_step();
    g.seed = seed;
    const auto driving = generate(g);
    const auto traj = run_chain(model, driving, 0);
    const auto estimate = empirical_distribution(traj, model.states());
    std::cout.precision(17);
    std::cout << "state,target,estimate,abs_error\n";
    double sup = 0.0;
    for (std::size_t k = 0; k < model.states(); ++k) {
        const double err = std::abs(estimate[k] - model.target(k));
        sup = std::max(sup, err);
        std::cout << k << ',' << model.target(k) << ',' << estimate[k] << ',' << err << '\n';
    }
    std::cerr << "steps " << traj.steps() << ", sup error " << sup << '\n';
    if (!trajectory_path.empty()) {
        Output out(trajectory_path);
        write_trajectory_csv(out.stream(), traj);
    }
    return 0;
}

int run_probit(const std::string& method_label, std::uint64_t modulus, std::uint64_t multiplier,
               std::uint64_t seed, const std::string& data_path, const std::string& states_path) {
    const auto data = load_finney(data_path);
    ExperimentConfig config;
    config.method = method_or_throw(method_label);
    config.modulus = modulus;
    config.multiplier = multiplier;
    config.seed = seed;
    const auto driving = build_driver(config, data.uniforms_per_step(), 0);
    const std::size_t m = data.uniforms_per_step();
    std::vector<ProbitState> states;
    ProbitState state = initial_state(data);
    for (std::size_t i = 0; i + m <= driving.size(); i += m) {
        state = gibbs_step(state, data, driving.values().subspan(i, m));
        states.push_back(state);
    }
    const auto means = posterior_means(states).flattened();
    const auto names = parameter_names(data.records());
    std::cout.precision(17);
    std::cout << "parameter,posterior_mean\n";
    for (std::size_t j = 0; j < names.size(); ++j) std::cout << names[j] << ',' << means[j] << '\n';
    if (!states_path.empty()) {
        Output out(states_path);
        write_states_csv(out.stream(), states);
    }
    return 0;
}

int run_bench(const std::vector<std::string>& methods, const std::vector<std::uint64_t>& moduli,
              std::size_t reps, std::uint64_t seed, const std::string& out_dir, bool full, std::size_t workers,
              const std::string& data_path) {
    StudyConfig config;
    config.methods.clear();
    for (const auto& m : methods) config.methods.push_back(method_or_throw(m));
    config.moduli = moduli;
    config.replications = reps;
    config.seed = seed;
    config.workers = workers;
    config.out_dir = out_dir;
    if (full) config = full_study(config);
    const auto data = load_finney(data_path);
    const auto result = run_study(config, data);
    emit_outputs(result, config.out_dir);
    std::cout.precision(4);
    for (const auto& t : result.vrf) {
        std::cout << method_name(t.method) << " vs " << method_name(t.baseline) << " N=" << t.modulus
                  << "  beta VRF " << t.ratio[0] << ' ' << t.ratio[1] << ' ' << t.ratio[2] << '\n';
    }
    for (const auto& b : result.bias) {
        std::cout << method_name(b.first) << " - " << method_name(b.second) << "  max |diff| " << b.max_abs << '\n';
    }
    std::cout << "wrote " << config.out_dir.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driving sequences and MCMC with weakly CUD inputs"};
    app.require_subcommand(1);
    const std::string default_data = std::string(WCUD_DATA_DIR) + "/finney_vaso.csv";

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Write a driving sequence as CSV (column u)");
    gen->add_option("--method", gen_args.method, "iid, lcg, lcg-cp, liao, block-perm or iid-insert")
        ->capture_default_str();
    gen->add_option("--N", gen_args.modulus, "Prime modulus (iid: number of rows)")->capture_default_str();
    gen->add_option("--a", gen_args.multiplier, "Multiplier; 0 selects one");
    gen->add_option("--m", gen_args.width, "Uniforms per step")->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_args.seed, "Master seed")->capture_default_str();
    gen->add_option("--block", gen_args.block, "Block length for block-perm")->capture_default_str();
    gen->add_option("--offset", gen_args.offset, "Insertion offset for iid-insert")->capture_default_str();
    gen->add_option("--out", gen_args.out, "Output file (default stdout)");

    std::string disc_input, disc_mode = "both";
    std::vector<std::size_t> disc_dims{1, 2, 3};
    bool disc_points = false;
    double disc_budget = 1e9;
    auto* disc = app.add_subcommand("disc", "Exact star discrepancy report of a sequence or point set");
    disc->add_option("--input", disc_input, "CSV of values (flattened row-major into a sequence)")->required();
    disc->add_option("--dims", disc_dims, "Tuple dimensions")->delimiter(',')->capture_default_str();
    disc->add_option("--mode", disc_mode, "overlap, block or both")->capture_default_str();
    disc->add_flag("--points", disc_points, "Treat rows as the points of one set instead");
    disc->add_option("--budget", disc_budget, "Work budget for the exact scan")->capture_default_str();

    std::uint64_t finite_n = 1021, finite_seed = 1;
    std::string finite_method = "lcg", finite_model = std::string(WCUD_DATA_DIR) + "/three_state.model",
                finite_traj;
    auto* finite = app.add_subcommand("finite", "Three-state Metropolis-Hastings consistency demo");
    finite->add_option("--N", finite_n, "Prime modulus")->capture_default_str();
    finite->add_option("--method", finite_method, "iid, lcg, lcg-cp, liao, block-perm or iid-insert")
        ->capture_default_str();
    finite->add_option("--seed", finite_seed)->capture_default_str();
    finite->add_option("--model", finite_model, "Model file")->capture_default_str();
    finite->add_option("--trajectory", finite_traj, "Write the trajectory CSV here");

    std::string probit_method = "lcg-cp", probit_data = default_data, probit_states;
    std::uint64_t probit_n = 1021, probit_a = 0, probit_seed = 1;
    auto* probit = app.add_subcommand("probit", "One Gibbs chain on the vasoconstriction data");
    probit->add_option("--method", probit_method, "iid, lcg-cp or liao")->capture_default_str();
    probit->add_option("--N", probit_n, "Chain length / prime modulus")->capture_default_str();
    probit->add_option("--a", probit_a, "Multiplier; 0 selects one");
    probit->add_option("--seed", probit_seed)->capture_default_str();
    probit->add_option("--data", probit_data, "Data CSV")->capture_default_str();
    probit->add_option("--states", probit_states, "Write every state to this CSV");

    std::vector<std::string> bench_methods{"iid", "lcg-cp", "liao"};
    std::vector<std::uint64_t> bench_ns{1021, 4093};
    std::size_t bench_reps = 100, bench_workers = 1;
    std::uint64_t bench_seed = 20080101;
    std::string bench_out = "bench_out", bench_data = default_data;
    bool bench_full = false;
    auto* bench = app.add_subcommand("bench", "Replication study: VRF, bias and latent-variance outputs");
    bench->add_option("--methods", bench_methods)->delimiter(',')->capture_default_str();
    bench->add_option("--Ns", bench_ns)->delimiter(',')->capture_default_str();
    bench->add_option("--reps", bench_reps)->capture_default_str();
    bench->add_option("--seed", bench_seed)->capture_default_str();
    bench->add_option("--out-dir", bench_out)->capture_default_str();
    bench->add_flag("--full", bench_full, "R = 300 at N = 1021, 2039, 4093, 8191, 16381");
    bench->add_option("--workers", bench_workers)->capture_default_str();
    bench->add_option("--data", bench_data)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return run_gen(gen_args);
        if (*disc) return run_disc(disc_input, disc_dims, disc_mode, disc_points, disc_budget);
        if (*finite) return run_finite(finite_n, finite_method, finite_seed, finite_model, finite_traj);
        if (*probit) return run_probit(probit_method, probit_n, probit_a, probit_seed, probit_data, probit_states);
        if (*bench) {
            return run_bench(bench_methods, bench_ns, bench_reps, bench_seed, bench_out, bench_full, bench_workers,
                             bench_data);
        }
    } catch (const std::exception& e) {
        std::cerr << "wcud: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
