#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wcud/discrepancy.hpp"
#include "wcud/lattice.hpp"
#include "wcud/number_theory.hpp"
#include "wcud/random.hpp"
#include "wcud/transforms.hpp"

using namespace wcud;

namespace {

DrivingSequence seq(std::vector<double> v) { return DrivingSequence(std::move(v), Method::iid); }

// Naive sup over every corner built from point coordinates and 1, with
// closed counts and open (limit from below) counts done point by point.
double naive_star(const PointSet& p) {
    const std::size_t d = p.dimension(), n = p.size();
    std::vector<std::vector<double>> cand(d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < n; ++i) cand[j].push_back(p.at(i, j));
        cand[j].push_back(1.0);
    }
    std::vector<std::size_t> idx(d, 0);
    double best = 0.0;
    while (true) {
        double vol = 1.0;
        for (std::size_t j = 0; j < d; ++j) vol *= cand[j][idx[j]];
        std::size_t closed = 0, open = 0;
        for (std::size_t i = 0; i < n; ++i) {
            bool c = true, o = true;
            for (std::size_t j = 0; j < d; ++j) {
                c = c && p.at(i, j) <= cand[j][idx[j]];
                o = o && p.at(i, j) < cand[j][idx[j]];
            }
            closed += c;
            open += o;
        }
        best = std::max({best, static_cast<double>(closed) / n - vol, vol - static_cast<double>(open) / n});
        std::size_t j = 0;
        while (j < d && ++idx[j] == cand[j].size()) idx[j++] = 0;
        if (j == d) break;
    }
    return best;
}

// Sup of the closed-box local discrepancy over the corners (k/G, l/G).
double lattice_star_2d(const PointSet& p, int grid) {
    std::vector<std::vector<int>> cells(grid + 1, std::vector<int>(grid + 1, 0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        const int a = static_cast<int>(std::ceil(p.at(i, 0) * grid));
        const int b = static_cast<int>(std::ceil(p.at(i, 1) * grid));
        ++cells[a][b];
    }
    for (int a = 0; a <= grid; ++a) {
        for (int b = 0; b <= grid; ++b) {
            if (a) cells[a][b] += cells[a - 1][b];
            if (b) cells[a][b] += cells[a][b - 1];
            if (a && b) cells[a][b] -= cells[a - 1][b - 1];
        }
    }
    double best = 0.0;
    for (int a = 1; a <= grid; ++a) {
        for (int b = 1; b <= grid; ++b) {
            const double vol = (static_cast<double>(a) / grid) * (static_cast<double>(b) / grid);
            best = std::max(best, std::abs(static_cast<double>(cells[a][b]) / p.size() - vol));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("overlapping tuples") {
    const auto u = seq({0.1, 0.2, 0.3});
    const auto pairs = overlapping_tuples(u, 2);
    CHECK(pairs.size() == 2);
    CHECK(std::vector<double>(pairs.coordinates().begin(), pairs.coordinates().end()) ==
          std::vector<double>{0.1, 0.2, 0.2, 0.3});
    const auto single = overlapping_tuples(u, 1);
    CHECK(single.size() == 3);
    CHECK(single.at(2, 0) == 0.3);
    CHECK(overlapping_tuples(u, 3).size() == 1);
    CHECK_THROWS(overlapping_tuples(u, 4));
    CHECK_THROWS(overlapping_tuples(u, 0));
}

TEST_CASE("non-overlapping tuples") {
    const auto u = seq({0.1, 0.2, 0.3, 0.4});
    const auto pairs = nonoverlapping_tuples(u, 2);
    CHECK(std::vector<double>(pairs.coordinates().begin(), pairs.coordinates().end()) ==
          std::vector<double>{0.1, 0.2, 0.3, 0.4});
    CHECK(nonoverlapping_tuples(seq({0.1, 0.2, 0.3, 0.4, 0.5}), 2).size() == 2);
    const auto a = nonoverlapping_tuples(u, 1), b = overlapping_tuples(u, 1);
    CHECK(std::equal(a.coordinates().begin(), a.coordinates().end(), b.coordinates().begin()));
    CHECK_THROWS(nonoverlapping_tuples(u, 0));
}

TEST_CASE("local discrepancy") {
    const PointSet one(2, {0.5, 0.5});
    CHECK(local_discrepancy(one, Box({1.0, 1.0})) == 0.0);
    CHECK(local_discrepancy(PointSet(2, {0.25, 0.25, 0.75, 0.75}), Box({0.5, 0.5})) == doctest::Approx(0.25));
    CHECK(local_discrepancy(one, Box({0.2, 0.2})) == doctest::Approx(0.04));
    // closed boundary: a point on the face counts
    CHECK(local_discrepancy(one, Box({0.5, 0.5})) == doctest::Approx(0.75));
    CHECK_THROWS(local_discrepancy(one, Box({0.5})));
    CHECK_THROWS(Box({1.5}));
}

TEST_CASE("exact star discrepancy on small cases") {
    CHECK(star_discrepancy(PointSet(1, {0.5})) == doctest::Approx(0.5));
    std::vector<double> centred;
    for (int i = 1; i <= 10; ++i) centred.push_back((2.0 * i - 1.0) / 20.0);
    CHECK(star_discrepancy(PointSet(1, centred)) == doctest::Approx(0.05));
    CHECK(star_discrepancy(PointSet(2, {0.5, 0.5})) == doctest::Approx(0.75));
    CHECK(star_discrepancy_grid(PointSet(2, {0.5, 0.5})) == doctest::Approx(0.75));
}

TEST_CASE("one-dimensional scan agrees with the sorted formula") {
    auto rng = RandomStream::derive(1, "disc-1d");
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rng.next_below(200);
        const auto x = rng.units(n);
        CHECK(std::abs(star_discrepancy_grid(PointSet(1, x)) - star_discrepancy_sorted(x)) < 1e-12);
    }
}

TEST_CASE("grid scan matches naive corner enumeration in 2 to 4 dimensions") {
    auto rng = RandomStream::derive(2, "disc-naive");
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int rep = 0; rep < 30; ++rep) {
            const std::size_t n = 1 + rng.next_below(d == 4 ? 9 : 14);
            std::vector<double> coords = rng.units(n * d);
            // ties in a coordinate exercise the duplicate handling
            if (rep % 3 == 0) {
                for (std::size_t i = 1; i < n; i += 2) coords[i * d] = coords[0];
            }
            const PointSet p(d, coords);
            CHECK(star_discrepancy(p) == doctest::Approx(naive_star(p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("grid scan matches a 2000 x 2000 box lattice within its resolution") {
    auto rng = RandomStream::derive(3, "disc-lattice");
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t n = 1 + rng.next_below(12);
        const PointSet p(2, rng.units(2 * n));
        const double exact = star_discrepancy(p);
        const double lattice = lattice_star_2d(p, 2000);
        CHECK(lattice <= exact + 1e-12);
        CHECK(exact - lattice <= 2e-3);
    }
}

TEST_CASE("local discrepancy never exceeds the star discrepancy") {
    auto rng = RandomStream::derive(4, "disc-local");
    for (std::size_t d : {1, 2, 3}) {
        const PointSet p(d, rng.units(40 * d));
        const double star = star_discrepancy(p);
        for (int k = 0; k < 1000; ++k) CHECK(local_discrepancy(p, Box(rng.units(d))) <= star + 1e-15);
    }
}

TEST_CASE("star discrepancy is invariant under point order") {
    auto rng = RandomStream::derive(5, "disc-perm");
    const PointSet p(3, rng.units(3 * 50));
    const double base = star_discrepancy(p);
    for (int rep = 0; rep < 5; ++rep) {
        const auto tau = random_permutation(p.size(), rng);
        CHECK(star_discrepancy(p.reordered(tau.map())) == base);
    }
}

TEST_CASE("work budget refusal") {
    auto rng = RandomStream::derive(6, "disc-budget");
    const PointSet p(4, rng.units(4 * 200));
    CHECK(star_discrepancy_work(p) > 1e9);
    CHECK_THROWS_AS(star_discrepancy(p), WorkBudgetExceeded);
    try {
        star_discrepancy(p, StarOptions{1e3});
    } catch (const WorkBudgetExceeded& e) {
        CHECK(e.budget() == 1e3);
        CHECK(e.estimated() > 1e3);
    }
    CHECK_NOTHROW(star_discrepancy(PointSet(2, rng.units(2 * 50)), StarOptions{1e6}));
}

TEST_CASE("lattice bound") {
    // mpmath, 40 digits
    CHECK(niederreiter_bound(7, 1) == doctest::Approx(0.4398008126898933063).epsilon(1e-13));
    CHECK(niederreiter_bound(211, 2) == doctest::Approx(0.58916734918297354289).epsilon(1e-13));
    CHECK(niederreiter_bound(1021, 2) == doctest::Approx(0.16487260718857151439).epsilon(1e-13));
    const double factor = 2.0 / std::numbers::pi * std::log(1021.0) + 1.4;
    CHECK(niederreiter_bound(1021, 1) == doctest::Approx(factor / 1020.0).epsilon(1e-14));
    CHECK_THROWS_AS(niederreiter_bound(9, 2), std::domain_error);
}

TEST_CASE("shuffled box probability bound") {
    CHECK(shuffled_box_probability_bound(0.02, 50, 3, 1) == doctest::Approx(0.03));
    CHECK(shuffled_box_probability_bound(0.01, 100, 4, 5) == doctest::Approx(0.09));
    CHECK_THROWS_AS(shuffled_box_probability_bound(0.34, 100, 4, 5), std::domain_error);
    CHECK_THROWS_AS(shuffled_box_probability_bound(0.01, 3, 4, 5), std::domain_error);
}

TEST_CASE("diagnostic report") {
    SUBCASE("iid units pass a Kolmogorov check in most seeds") {
        const std::size_t n = 10000, seeds = 40;
        std::size_t pass = 0;
        const std::size_t dims[] = {1};
        for (std::uint64_t s = 0; s < seeds; ++s) {
            auto rng = RandomStream::derive(s, "diag-iid");
            const auto rep = wcud_diagnostic(seq(rng.units(n)), dims);
            pass += rep.entries.front().star < 1.63 / std::sqrt(static_cast<double>(n));
        }
        CHECK(pass >= 38);
    }
    SUBCASE("constant sequence") {
        for (std::size_t n : {1, 7, 100}) {
            const std::size_t dims[] = {1};
            const auto rep = wcud_diagnostic(seq(std::vector<double>(n, 0.5)), dims);
            for (const auto& e : rep.entries) CHECK(e.star == doctest::Approx(0.5));
        }
    }
    SUBCASE("lattice pairs respect the lattice bound") {
        const auto a = search_multiplier(211);
        const auto u = lattice_sequence(LatticeSpec::make(211, a, 1));
        const std::size_t dims[] = {2};
        const auto rep = wcud_diagnostic(u, dims);
        for (const auto& e : rep.entries) CHECK(e.star <= niederreiter_bound(211, 2));
    }
    SUBCASE("entries for both tuple modes") {
        auto rng = RandomStream::derive(8, "diag-shape");
        const auto rep = wcud_diagnostic(seq(rng.units(90)), std::vector<std::size_t>{1, 2, 3});
        REQUIRE(rep.entries.size() == 6);
        CHECK(rep.entries[0].tuples == 90);
        CHECK(rep.entries[3].dimension == 2);
        std::size_t overlap3 = 0, block3 = 0;
        for (const auto& e : rep.entries) {
            if (e.dimension == 3) (e.mode == TupleMode::overlap ? overlap3 : block3) = e.tuples;
        }
        CHECK(overlap3 == 88);
        CHECK(block3 == 30);
    }
    SUBCASE("replicated diagnostics") {
        const auto reports = wcud_diagnostic(
            [](std::uint64_t r) {
                auto rng = RandomStream::derive(r, "rotation");
                return cp_rotate(lattice_sequence(LatticeSpec::make(211, 2, 2)), random_rotation(2, rng));
            },
            std::vector<std::size_t>{1, 2}, 3);
        CHECK(reports.size() == 3);
    }
}

TEST_CASE("multiplier search") {
    const std::uint64_t n = 61;
    const auto best = search_multiplier(n);
    CHECK(is_primitive_root(best, n));
    double best_star = 2.0;
    std::uint64_t brute = 0;
    for (auto a : primitive_roots(n)) {
        const double s = star_discrepancy(lcg_orbit_tuples(n, a, 2));
        if (s < best_star) best_star = s, brute = a;
    }
    CHECK(best == brute);
    CHECK(select_multiplier(1021) == 65);
    CHECK_THROWS_AS(search_multiplier(1021, StarOptions{1e3}), WorkBudgetExceeded);
}
