#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wcud/bench.hpp"

namespace wcud {

namespace {

// Restores the stream's precision on scope exit.
class Precision {
public:
    Precision(std::ostream& out, int digits) : out_(out), old_(out.precision(digits)) {}
    ~Precision() { out_.precision(old_); }

private:
    std::ostream& out_;
    std::streamsize old_;
};

void check_parameters(const ReplicationReport& r) {
    if (r.mean.size() != r.parameters.size() || r.variance.size() != r.parameters.size()) {
        throw std::invalid_argument("report has inconsistent parameter columns");
    }
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

const char* const kPalette[] = {"#1b6ca8", "#d1495b", "#2e933c", "#edae49", "#66462c", "#7b2cbf"};

}  // namespace

void write_replication_csv(std::ostream& out, std::span<const ReplicationReport> reports) {
    Precision p(out, 17);
    out << "method,N,a,R,parameter,mean,variance\n";
    for (const auto& r : reports) {
        check_parameters(r);
        for (std::size_t j = 0; j < r.parameters.size(); ++j) {
            out << method_name(r.method) << ',' << r.modulus << ',' << r.multiplier << ',' << r.replications
                << ',' << r.parameters[j] << ',' << r.mean[j] << ',' << r.variance[j] << '\n';
        }
    }
}

void write_vrf_csv(std::ostream& out, std::span<const VrfTable> tables) {
    Precision p(out, 17);
    out << "method,baseline,N,parameter,vrf,threshold,significant\n";
    for (const auto& t : tables) {
        for (std::size_t j = 0; j < t.parameters.size(); ++j) {
            out << method_name(t.method) << ',' << method_name(t.baseline) << ',' << t.modulus << ','
                << t.parameters[j] << ',' << t.ratio[j] << ',' << t.threshold << ','
                << (t.significant(j) ? 1 : 0) << '\n';
        }
    }
}

void write_beta_vrf_csv(std::ostream& out, std::span<const VrfTable> tables) {
    Precision p(out, 17);
    out << "method,baseline,N,beta0,beta1,beta2\n";
    for (const auto& t : tables) {
        if (t.ratio.size() < 3) throw std::invalid_argument("write_beta_vrf_csv: table has fewer than 3 entries");
        out << method_name(t.method) << ',' << method_name(t.baseline) << ',' << t.modulus << ',' << t.ratio[0]
            << ',' << t.ratio[1] << ',' << t.ratio[2] << '\n';
    }
}

void write_latent_vrf_csv(std::ostream& out, std::span<const LatentSummary> rows) {
    Precision p(out, 17);
    out << "method,N,min,q25,median,mean,q75,max\n";
    for (const auto& r : rows) {
        out << method_name(r.method) << ',' << r.modulus << ',' << r.min << ',' << r.q25 << ',' << r.median << ','
            << r.mean << ',' << r.q75 << ',' << r.max << '\n';
    }
}

void write_bias_csv(std::ostream& out, std::span<const BiasRow> rows) {
    Precision p(out, 17);
    out << "first,second,min,q25,q75,max,max_abs,count\n";
    for (const auto& r : rows) {
        out << method_name(r.first) << ',' << method_name(r.second) << ',' << r.min << ',' << r.q25 << ','
            << r.q75 << ',' << r.max << ',' << r.max_abs << ',' << r.count << '\n';
    }
}

void write_latent_variance_svg(std::ostream& out, std::span<const ReplicationReport> reports) {
    constexpr double width = 720, height = 480, left = 80, right = 180, top = 30, bottom = 60;
    struct Series {
        std::string label;
        bool dashed;
        std::vector<std::pair<double, double>> points;  // (posterior mean, log10 variance)
    };
    std::vector<Series> series;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& r : reports) {
        check_parameters(r);
        Series s{std::string(method_name(r.method)) + " N=" + std::to_string(r.modulus), r.method == Method::iid, {}};
        for (std::size_t j = 0; j < r.parameters.size(); ++j) {
            if (!r.parameters[j].starts_with("z") || !(r.variance[j] > 0.0)) continue;
            const double x = r.mean[j], y = std::log10(r.variance[j]);
            s.points.emplace_back(x, y);
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        std::sort(s.points.begin(), s.points.end());
        series.push_back(std::move(s));
    }
    if (!(xmin < xmax)) xmin = -1, xmax = 1;
    if (!(ymin < ymax)) ymin = -6, ymax = 0;
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
    const double pw = width - left - right, ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    Precision p(out, 6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double y = ymin; y <= ymax; y += 1.0) {
        out << "<line x1=\"" << left - 4 << "\" x2=\"" << left << "\" y1=\"" << sy(y) << "\" y2=\"" << sy(y)
            << "\" stroke=\"black\"/><text x=\"" << left - 8 << "\" y=\"" << sy(y) + 4
            << "\" text-anchor=\"end\">1e" << y << "</text>\n";
    }
    for (int k = 0; k <= 4; ++k) {
        const double x = xmin + (xmax - xmin) * k / 4.0;
        out << "<line x1=\"" << sx(x) << "\" x2=\"" << sx(x) << "\" y1=\"" << top + ph << "\" y2=\"" << top + ph + 4
            << "\" stroke=\"black\"/><text x=\"" << sx(x) << "\" y=\"" << top + ph + 18
            << "\" text-anchor=\"middle\">" << x << "</text>\n";
    }
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15
        << "\" text-anchor=\"middle\">posterior mean of Z_i</text>\n";
    out << "<text transform=\"translate(20," << top + ph / 2
        << ") rotate(-90)\" text-anchor=\"middle\">variance across replications</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* colour = kPalette[k % std::size(kPalette)];
        out << "<g class=\"series\" data-label=\"" << series[k].label << "\" stroke=\"" << colour
            << "\" fill=\"" << colour << "\">\n<polyline fill=\"none\""
            << (series[k].dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        for (std::size_t i = 0; i < series[k].points.size(); ++i) {
            out << (i ? " " : "") << sx(series[k].points[i].first) << ',' << sy(series[k].points[i].second);
        }
        out << "\"/>\n";
        for (const auto& [x, y] : series[k].points) {
            std::ostringstream raw;
            raw.precision(17);
            raw << x;
            out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"2.5\" data-mean=\"" << raw.str()
                << "\"/>\n";
        }
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        out << "<text x=\"" << left + pw + 24 << "\" y=\"" << ly + 4 << "\" stroke=\"none\">" << series[k].label
            << "</text><line" << (series[k].dashed ? " stroke-dasharray=\"6 4\"" : "") << " x1=\"" << left + pw + 6
            << "\" x2=\"" << left + pw + 20 << "\" y1=\"" << ly << "\" y2=\"" << ly << "\"/>\n</g>\n";
    }
    out << "</svg>\n";
}

void emit_outputs(const StudyResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
    write_file(out_dir / "replications.csv", [&](std::ostream& o) { write_replication_csv(o, result.reports); });
    write_file(out_dir / "vrf.csv", [&](std::ostream& o) { write_vrf_csv(o, result.vrf); });
    write_file(out_dir / "beta_vrf.csv", [&](std::ostream& o) { write_beta_vrf_csv(o, result.vrf); });
    write_file(out_dir / "latent_vrf.csv", [&](std::ostream& o) { write_latent_vrf_csv(o, result.latent); });
    write_file(out_dir / "bias.csv", [&](std::ostream& o) { write_bias_csv(o, result.bias); });

    // The plot uses the largest N in the study, one series per method.
    std::vector<ReplicationReport> plotted;
    std::uint64_t largest = 0;
    for (const auto& r : result.reports) largest = std::max(largest, r.modulus);
    for (const auto& r : result.reports) {
        if (r.modulus == largest) plotted.push_back(r);
    }
    write_file(out_dir / "latent_variance.svg",
               [&](std::ostream& o) { write_latent_variance_svg(o, plotted); });
}

}  // namespace wcud
