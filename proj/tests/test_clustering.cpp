#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "specband/clustering.hpp"
#include "specband/discriminant.hpp"
#include "specband/fibonacci.hpp"
#include "specband/potential.hpp"

using namespace specband;
using doctest::Approx;

namespace {

std::vector<double> random_points(std::mt19937_64& rng, std::size_t n, double span) {
    std::uniform_real_distribution<double> dist(0.0, span);
    std::vector<double> pts(n);
    for (double& p : pts) p = dist(rng);
    std::sort(pts.begin(), pts.end());
    return pts;
}

void check_cover_invariants(const ClusterCover& cover) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < cover.intervals.size(); ++i) {
        const CoverInterval& iv = cover.intervals[i];
        CHECK(iv.hi - iv.lo <= cover.eps + 1e-15);
        CHECK(iv.count >= 1);
        if (i + 1 < cover.intervals.size()) CHECK(iv.hi < cover.intervals[i + 1].lo);
        total += iv.count;
    }
    CHECK(total == cover.q);
    const double qd = static_cast<double>(cover.q);
    if (cover.q > 1) {
        CHECK(std::pow(qd, cover.xi) <= cover.min_occupancy() * (1.0 + 1e-12));
        CHECK(static_cast<double>(cover.min_occupancy()) < std::pow(qd, cover.xi) + 1.0);
    }
}

} // namespace

TEST_CASE("greedy cover hand examples") {
    SUBCASE("two pairs") {
        const ClusterCover cover = greedy_cover({0.0, 0.1, 0.9, 1.0}, 0.2);
        REQUIRE(cover.intervals.size() == 2);
        CHECK(cover.intervals[0].lo == 0.0);
        CHECK(cover.intervals[0].hi == 0.1);
        CHECK(cover.intervals[0].count == 2);
        CHECK(cover.intervals[1].lo == 0.9);
        CHECK(cover.intervals[1].hi == 1.0);
        CHECK(cover.intervals[1].count == 2);
        CHECK(cover.xi == Approx(0.5)); // log 2 / log 4
    }
    SUBCASE("all points within eps") {
        const ClusterCover cover = greedy_cover({1.0, 1.01, 1.02, 1.05}, 0.1);
        REQUIRE(cover.intervals.size() == 1);
        CHECK(cover.xi == Approx(1.0));
    }
    SUBCASE("spread grid gives singletons") {
        const ClusterCover cover = greedy_cover({0.0, 1.0, 2.0, 3.0}, 0.5);
        CHECK(cover.intervals.size() == 4);
        CHECK(cover.xi == Approx(0.0));
    }
    SUBCASE("rejects empty and unsorted input") {
        CHECK_THROWS_AS(greedy_cover({}, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(greedy_cover({2.0, 1.0}, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(greedy_cover({1.0}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("greedy cover invariants on random point sets") {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 1 + rng() % 200;
        const std::vector<double> pts = random_points(rng, n, 10.0);
        std::uniform_real_distribution<double> edist(1e-3, 3.0);
        const ClusterCover cover = greedy_cover(pts, edist(rng));
        check_cover_invariants(cover);
    }
}

TEST_CASE("monotonicity in eps") {
    // Greedy interval counts never grow with eps. Greedy min occupancy is
    // NOT monotone (a larger eps can absorb a neighbour's points and strand
    // a singleton: {0, 1, 1.9, 2} at eps 1 vs 1.95), so the occupancy
    // monotonicity is asserted for the optimal cover, whose feasible set
    // only grows with eps.
    std::mt19937_64 rng(103);
    SUBCASE("greedy interval count") {
        const std::vector<double> pts = random_points(rng, 120, 5.0);
        std::size_t prev_count = pts.size() + 1;
        for (int i = 0; i < 50; ++i) {
            const double eps = 1e-3 * std::pow(10.0, 4.0 * i / 49.0);
            const ClusterCover cover = greedy_cover(pts, eps);
            CHECK(cover.intervals.size() <= prev_count);
            prev_count = cover.intervals.size();
        }
    }
    SUBCASE("greedy min occupancy counterexample") {
        const std::vector<double> pts{0.0, 1.0, 1.9, 2.0};
        CHECK(greedy_cover(pts, 1.0).min_occupancy() == 2);
        CHECK(greedy_cover(pts, 1.95).min_occupancy() == 1);
    }
    SUBCASE("optimal min occupancy") {
        const std::vector<double> pts = random_points(rng, 60, 5.0);
        std::size_t prev_min = 0;
        for (int i = 0; i < 50; ++i) {
            const double eps = 1e-3 * std::pow(10.0, 4.0 * i / 49.0);
            const ClusterCover cover = dp_optimal_cover(pts, eps);
            CHECK(cover.min_occupancy() >= prev_min);
            prev_min = cover.min_occupancy();
        }
    }
}

TEST_CASE("check_clustered") {
    SUBCASE("xi target 0 always passes") {
        std::mt19937_64 rng(107);
        const std::vector<double> pts = random_points(rng, 30, 4.0);
        CHECK(check_clustered(pts, 0.1, 0.0).clustered);
    }
    SUBCASE("spread points fail xi = 0.5") {
        CHECK(!check_clustered({0.0, 1.0, 2.0, 3.0}, 0.5, 0.5).clustered);
    }
    SUBCASE("self consistency with the greedy exponent") {
        std::mt19937_64 rng(109);
        for (int rep = 0; rep < 20; ++rep) {
            const std::vector<double> pts = random_points(rng, 5 + rng() % 100, 8.0);
            const ClusterCover cover = greedy_cover(pts, 0.4);
            CHECK(check_clustered(pts, 0.4, cover.xi).clustered);
        }
    }
    SUBCASE("Fibonacci zeros against the widest sigma_6 band") {
        // The hierarchy puts F_{8-6-2} = F_0 = 1 zero of D^{F_8} in a type A
        // band of sigma_6 (and F_2 = 2 in a type B band), so the guaranteed
        // clustering exponent at this scale is log F_0 / log F_8 = 0; the
        // stronger log F_2 / log F_8 target fails on the A bands. Both facts
        // are checked by brute-force counts.
        const DiscriminantData d8 = band_structure(fibonacci_potential(5.0, 34), 34);
        const DiscriminantData d6 = band_structure(fibonacci_potential(5.0, 13), 13);
        double eps = 0.0;
        for (const Band& band : d6.bands) eps = std::max(eps, band.width);
        std::size_t min_count = 34, max_count = 0;
        for (const Band& band : d6.bands) {
            std::size_t count = 0;
            for (double z : d8.zeros)
                if (z >= band.left && z <= band.right) ++count;
            min_count = std::min(min_count, count);
            max_count = std::max(max_count, count);
        }
        CHECK(min_count == fib(0));
        CHECK(max_count == fib(2));
        CHECK(check_clustered(d8.zeros, eps, 0.0).clustered);
        const double xi_strong = std::log(static_cast<double>(fib(2))) /
                                 std::log(static_cast<double>(fib(8)));
        CHECK(!check_clustered(d8.zeros, eps, xi_strong).clustered);
    }
}

TEST_CASE("dp optimal cover vs greedy") {
    std::mt19937_64 rng(113);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + rng() % 40;
        const std::vector<double> pts = random_points(rng, n, 3.0);
        std::uniform_real_distribution<double> edist(0.05, 1.5);
        const double eps = edist(rng);
        const ClusterCover greedy = greedy_cover(pts, eps);
        const ClusterCover dp = dp_optimal_cover(pts, eps);
        check_cover_invariants(dp);
        // DP maximizes the min occupancy over tight covers.
        CHECK(dp.min_occupancy() >= greedy.min_occupancy());
    }
    CHECK_THROWS_AS(dp_optimal_cover(random_points(rng, 65, 1.0), 0.1), std::invalid_argument);
}

TEST_CASE("check_uniform") {
    auto make_level = [](std::size_t q, double alpha, double xi_claim,
                         const std::vector<double>& pts) {
        const double eps = std::pow(static_cast<double>(q), -1.0 / alpha);
        UniformLevel lvl;
        lvl.q = q;
        lvl.alpha = alpha;
        lvl.xi = xi_claim;
        lvl.cover = greedy_cover(pts, eps);
        return lvl;
    };

    SUBCASE("single level sequence passes") {
        // 16 points in 4 tight clusters: xi = log4/log16 = 1/2, eps = 16^{-2}.
        const double alpha = 0.5;
        const double eps = std::pow(16.0, -1.0 / alpha);
        std::vector<double> pts;
        for (int c = 0; c < 4; ++c)
            for (int i = 0; i < 4; ++i)
                pts.push_back(c * 1.0 + i * (eps / 4.0));
        const UniformLevel lvl = make_level(16, alpha, 0.5, pts);
        const UniformReport rep = check_uniform({lvl}, 1.0, 0.1, 10.0);
        CHECK(rep.all_pass);
        CHECK(rep.delta > 0.0);
    }
    SUBCASE("xi collapse fails condition (iii) with delta 0") {
        const double alpha = 0.5;
        const double eps = std::pow(16.0, -1.0 / alpha);
        std::vector<double> pts;
        for (int i = 0; i < 16; ++i) pts.push_back(i * 1.0); // singletons: xi = 0
        UniformLevel lvl = make_level(16, alpha, 0.0, pts);
        (void)eps;
        const UniformReport rep = check_uniform({lvl}, 1.0, 0.0, 10.0);
        CHECK(!rep.conditions[2].pass);
        CHECK(rep.delta == 0.0);
        CHECK(!rep.all_pass);
    }
    SUBCASE("eps mismatch is rejected") {
        UniformLevel lvl;
        lvl.q = 16;
        lvl.alpha = 0.5;
        lvl.xi = 0.5;
        lvl.cover = greedy_cover({0.0, 0.001, 1.0, 1.001}, 0.01); // eps != q^{-2}
        CHECK_THROWS_AS(check_uniform({lvl}, 1.0, 0.1, 10.0), std::invalid_argument);
    }
}

TEST_CASE("nice scaling: middle-thirds family") {
    ScalingFamily fam;
    fam.mu = 1.0;
    fam.omega = std::log(2.0) / std::log(3.0);
    fam.c1 = 1.0;
    fam.c3 = 2.0;
    for (int level = 1; level <= 6; ++level) {
        ScalingLevel lvl;
        lvl.eps = std::pow(3.0, -level);
        const int count = 1 << level;
        for (int i = 0; i < count; ++i) {
            // enumerate Cantor intervals by base-3 digits 0/2
            double lo = 0.0;
            int bits = i;
            for (int d = 1; d <= level; ++d) {
                lo += (bits & 1 ? 2.0 : 0.0) * std::pow(3.0, -d);
                bits >>= 1;
            }
            lvl.intervals.emplace_back(lo, lo + lvl.eps);
        }
        std::sort(lvl.intervals.begin(), lvl.intervals.end());
        fam.levels.push_back(std::move(lvl));
    }
    const NiceScalingReport rep = check_nice_scaling(fam, 1e-12);
    CHECK(rep.all_pass);
    CHECK(rep.fitted_omega == Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    CHECK(rep.fitted_c3 == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nice scaling: nested single-interval family") {
    ScalingFamily fam;
    fam.mu = 1.0;
    fam.omega = 0.9;
    fam.c1 = 0.5;
    fam.c3 = 1.0;
    for (int level = 1; level <= 5; ++level)
        fam.levels.push_back({std::pow(2.0, -level), {{0.0, std::pow(2.0, -level) * 0.8}}});
    const NiceScalingReport rep = check_nice_scaling(fam);
    CHECK(rep.all_pass);
    CHECK(rep.fitted_c3 <= 1.0 + 1e-12);
}

TEST_CASE("nice scaling: straddling child fails nesting") {
    ScalingFamily fam;
    fam.mu = 1.0;
    fam.omega = 0.9;
    fam.c1 = 0.01;
    fam.c3 = 10.0;
    fam.levels.push_back({1.0, {{0.0, 1.0}, {2.0, 3.0}}});
    fam.levels.push_back({0.5, {{0.8, 1.2}, {2.0, 2.4}}}); // first child straddles the gap
    const NiceScalingReport rep = check_nice_scaling(fam);
    CHECK(!rep.conditions[1].pass);
    CHECK(!rep.all_pass);
    CHECK(rep.conditions[1].worst_level == 1);
}

TEST_CASE("cover_from_intervals validates") {
    const std::vector<double> pts{0.0, 0.5, 1.0};
    CHECK_THROWS_AS(cover_from_intervals(pts, {{0.0, 0.6}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cover_from_intervals(pts, {{0.0, 0.6}, {0.5, 1.1}}, 1.0),
                    std::invalid_argument);
    const ClusterCover cover = cover_from_intervals(pts, {{-0.1, 0.6}, {0.9, 1.05}}, 1.0);
    CHECK(cover.intervals.size() == 2);
    CHECK(cover.intervals[0].count == 2);
    CHECK(cover.provenance == CoverProvenance::supplied);
}
