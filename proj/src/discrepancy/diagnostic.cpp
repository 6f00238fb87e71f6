#include <string>

#include "wcud/discrepancy.hpp"

namespace wcud {

std::string_view tuple_mode_name(TupleMode mode) {
    return mode == TupleMode::overlap ? "overlap" : "block";
}

DiscrepancyReport wcud_diagnostic(const DrivingSequence& u, std::span<const std::size_t> dims,
                                  const StarOptions& options) {
    DiscrepancyReport report;
    for (std::size_t d : dims) {
        const auto overlapping = overlapping_tuples(u, d);
        report.entries.push_back(
            {d, TupleMode::overlap, overlapping.size(), star_discrepancy(overlapping, options)});
        const auto blocks = nonoverlapping_tuples(u, d);
        report.entries.push_back(
            {d, TupleMode::block, blocks.size(), star_discrepancy(blocks, options)});
    }
    return report;
}

std::vector<DiscrepancyReport> wcud_diagnostic(const SequenceFactory& make_sequence,
                                               std::span<const std::size_t> dims,
                                               std::size_t replications,
                                               const StarOptions& options) {
    std::vector<DiscrepancyReport> reports;
    reports.reserve(replications);
    for (std::size_t r = 0; r < replications; ++r) {
        reports.push_back(wcud_diagnostic(make_sequence(r), dims, options));
    }
    return reports;
}

}  // namespace wcud
