#include "wcud/discrepancy.hpp"
#include "wcud/lattice.hpp"
#include "wcud/number_theory.hpp"

namespace wcud {

std::uint64_t search_multiplier(std::uint64_t prime_modulus, const StarOptions& options) {
    if (prime_modulus < 5 || !is_prime(prime_modulus)) {
        throw std::domain_error("search_multiplier: N must be a prime >= 5");
    }
    const auto roots = primitive_roots(prime_modulus);
    // Work is identical for every root; refuse up front instead of mid-search.
    const double per_root = static_cast<double>(prime_modulus - 1) * static_cast<double>(prime_modulus);
    if (per_root * static_cast<double>(roots.size()) > options.work_budget) {
        throw WorkBudgetExceeded(per_root * static_cast<double>(roots.size()), options.work_budget);
    }
    std::uint64_t best_root = roots.front();
    double best = 2.0;
    for (std::uint64_t a : roots) {
        const double star = star_discrepancy(lcg_orbit_tuples(prime_modulus, a, 2), options);
        if (star < best) {
            best = star;
            best_root = a;
        }
    }
    return best_root;
}

std::uint64_t select_multiplier(std::uint64_t prime_modulus, const StarOptions& options) {
    if (auto a = tabulated_multiplier(prime_modulus)) return *a;
    return search_multiplier(prime_modulus, options);
}

}  // namespace wcud
