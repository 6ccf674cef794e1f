#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle_helpers.hpp"
#include "specband/bounds.hpp"
#include "specband/dynamics.hpp"
#include "specband/potential.hpp"

using namespace specband;
using doctest::Approx;

TEST_CASE("Abelian kernel identity against quadrature") {
    // (2/T) int_0^inf e^{-2t/T} cos(dE t) dt = 1 / (1 + (T dE / 2)^2)
    const double T = 3.0;
    for (double de : {0.0, 0.5, 2.0, 7.0}) {
        const double h = T / 2000.0;
        const std::size_t steps = 60000; // to t = 30 T
        auto f = [&](double t) { return std::exp(-2.0 * t / T) * std::cos(de * t); };
        double s = f(0.0) + f(h * steps);
        for (std::size_t i = 1; i < steps; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(h * i);
        const double quad = (2.0 / T) * s * h / 3.0;
        const double x = 0.5 * T * de;
        CHECK(quad == Approx(1.0 / (1.0 + x * x)).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("profile normalization") {
    std::mt19937_64 rng(211);
    SUBCASE("half line, random potential") {
        const Potential v = potential_from_values(oracle::random_potential_values(rng, 150, 2.0));
        const DynamicsProfile p = evolve_profile(v, 4.0, 150, Geometry::half_line);
        double s = 0.0;
        for (double a : p.a) s += a;
        CHECK(s == Approx(1.0).epsilon(1e-8));
        for (double a : p.a) CHECK(a >= 0.0);
    }
    SUBCASE("full line, Fibonacci potential") {
        const Potential v = fibonacci_potential(5.0, 10);
        const DynamicsProfile p = evolve_profile(v, 3.0, 151, Geometry::full_line);
        CHECK(p.site_lo == -75);
        double s = 0.0;
        for (double a : p.a) s += a;
        CHECK(s == Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("full line needs a whole-line potential") {
        const Potential v = potential_from_values({1.0, 2.0, 3.0});
        CHECK_THROWS_AS(evolve_profile(v, 2.0, 51, Geometry::full_line), std::invalid_argument);
    }
}

TEST_CASE("closed-form kernel matches time quadrature") {
    // V = 0, N = 60, T = 5: composite Simpson to t = 20T with step T/200.
    const Potential v = constant_potential(0.0, 60);
    const DynamicsProfile p = evolve_profile(v, 5.0, 60, Geometry::half_line, 1.0);
    const oracle::DenseSystem sys = oracle::dense_system(v, 60, Geometry::half_line);
    for (long n : {0L, 1L, 2L, 4L, 7L, 11L, 16L, 25L, 35L, 50L}) {
        const double quad = oracle::time_quadrature_occupation(sys, n, 5.0);
        CHECK(p.a[static_cast<std::size_t>(n)] == Approx(quad).epsilon(1e-6).scale(1e-3));
    }
}

TEST_CASE("kernel matches the resolvent route") {
    // Parseval identity: a(n) = (1/pi T) int |G(1,n;E+i/T)|^2 dE, N = 40.
    const Potential v = fibonacci_potential(2.0, 40);
    const double T = 5.0;
    const DynamicsProfile p = evolve_profile(v, T, 40, Geometry::half_line, 1.0);
    for (long n : {1L, 2L, 3L, 5L, 8L, 12L}) {
        const double res = oracle::resolvent_occupation(v, 40, n, T);
        CHECK(p.a[static_cast<std::size_t>(n)] == Approx(res).epsilon(1e-6).scale(1e-3));
    }
}

TEST_CASE("diagonal kernel term is the infinite-time limit") {
    std::mt19937_64 rng(223);
    const Potential v = potential_from_values(oracle::random_potential_values(rng, 30, 2.0));
    const DynamicsProfile p = evolve_profile(v, 1e9, 30, Geometry::half_line, 1.0);
    const oracle::DenseSystem sys = oracle::dense_system(v, 30, Geometry::half_line);
    for (long n = 0; n < 30; ++n) {
        double limit = 0.0;
        for (long j = 0; j < 30; ++j)
            limit += sys.vectors(n, j) * sys.vectors(n, j) * sys.vectors(0, j) *
                     sys.vectors(0, j);
        CHECK(p.a[static_cast<std::size_t>(n)] == Approx(limit).epsilon(1e-5).scale(1e-6));
    }
}

TEST_CASE("p_tail") {
    const Potential v = constant_potential(0.0, 200);
    const DynamicsProfile p = evolve_profile(v, 4.0, 200, Geometry::half_line);
    SUBCASE("q = 0 captures everything on the half line") {
        CHECK(p_tail(p, 0) == Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("monotone in q") {
        double prev = 2.0;
        for (std::size_t q : {0ul, 5ul, 10ul, 20ul, 40ul, 80ul}) {
            const double cur = p_tail(p, q);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
    }
    SUBCASE("q too close to the boundary is rejected") {
        CHECK_THROWS_AS(p_tail(p, 196), std::invalid_argument);
    }
}

TEST_CASE("central bound dominates the oracle tail") {
    // shifted free potential, q = 8, T = 3
    const Potential v = constant_potential(1.2, 300);
    const std::size_t q = 8;
    const double T = 3.0;
    const DynamicsProfile p =
        evolve_profile(v, T, required_truncation(q, T), Geometry::half_line);
    REQUIRE(p.reliable);
    const DiscriminantData data = band_structure(v, q);
    const BoundReport rep = central_bound(data, v.sup_norm, T);
    CHECK(std::log(p_tail(p, q)) <= rep.log_value);
}

TEST_CASE("moments") {
    SUBCASE("ballistic ceiling for the free evolution") {
        const Potential v = constant_potential(0.0, 400);
        std::vector<double> logt, logm;
        for (double T : {2.0, 4.0, 8.0, 16.0}) {
            const DynamicsProfile p =
                evolve_profile(v, T, required_truncation(0, T) + 60, Geometry::half_line);
            logt.push_back(std::log(T));
            logm.push_back(std::log(moment(p, 2.0)));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < logt.size(); ++i) {
            sx += logt[i];
            sy += logm[i];
            sxx += logt[i] * logt[i];
            sxy += logt[i] * logm[i];
        }
        const double n = static_cast<double>(logt.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope <= 2.0 + 0.05);
        CHECK(slope >= 1.0); // free evolution really is ballistic
    }
    SUBCASE("stronger coupling slows the second moment") {
        const double T = 50.0;
        const std::size_t n = required_truncation(0, T) + 100;
        const DynamicsProfile weak =
            evolve_profile(fibonacci_potential(2.0, n), T, n, Geometry::half_line);
        const DynamicsProfile strong =
            evolve_profile(fibonacci_potential(10.0, n), T, n, Geometry::half_line);
        CHECK(moment(strong, 2.0) < moment(weak, 2.0));
    }
    SUBCASE("order must be positive") {
        const Potential v = constant_potential(0.0, 64);
        const DynamicsProfile p = evolve_profile(v, 2.0, 64, Geometry::half_line, 1.0);
        CHECK_THROWS_AS(moment(p, 0.0), std::invalid_argument);
    }
}

TEST_CASE("full-line reduction on computed values") {
    for (double lambda : {5.0, 10.0}) {
        const std::size_t q = 20;
        const double T = 5.0;
        const std::size_t n_half = required_truncation(q, T);
        const Potential v = fibonacci_potential(lambda, n_half);
        const DynamicsProfile full =
            evolve_profile(v, T, 2 * n_half + 1, Geometry::full_line);
        const DynamicsProfile plus = evolve_profile(v, T, n_half, Geometry::half_line);
        std::vector<double> neg(n_half);
        for (std::size_t i = 0; i < n_half; ++i)
            neg[i] = fibonacci_site(lambda, -static_cast<long long>(i) - 1);
        const DynamicsProfile minus =
            evolve_profile(potential_from_values(neg), T, n_half, Geometry::half_line);
        const double lhs = p_tail(full, q);
        const double rhs = full_line_bound(p_tail(plus, q), p_tail(minus, q), T);
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("truncation stability") {
    const double T = 5.0;
    const std::size_t q = 20;
    const std::size_t n = required_truncation(q, T);
    const Potential v = fibonacci_potential(5.0, 2 * n);
    const DynamicsProfile a = evolve_profile(v, T, n, Geometry::half_line);
    const DynamicsProfile b = evolve_profile(v, T, 2 * n, Geometry::half_line);
    REQUIRE(a.reliable);
    CHECK(std::abs(p_tail(a, q) - p_tail(b, q)) < 1e-8);
}

TEST_CASE("exponent scan") {
    SUBCASE("free evolution stays near beta = 0 below the wavefront") {
        const Potential v = constant_potential(0.0, 1);
        const ExponentScan scan = exponent_scan(v, {0.2, 0.5}, {16.0, 32.0, 64.0},
                                                Geometry::half_line);
        for (std::size_t ai = 0; ai < scan.alphas.size(); ++ai)
            for (std::size_t tj = 0; tj < scan.Ts.size(); ++tj) {
                const double beta = scan.beta[ai][tj];
                REQUIRE(std::isfinite(beta));
                CHECK(beta <= 0.0);
                CHECK(beta >= -0.2);
                if (scan.alphas[ai] == 0.2) CHECK(beta >= -0.08);
            }
    }
    SUBCASE("csv-ready matrix has missing markers only for flagged cells") {
        const Potential v = fibonacci_potential(10.0, 2000);
        const ExponentScan scan = exponent_scan(v, {0.5}, {8.0}, Geometry::half_line);
        CHECK(std::isfinite(scan.beta[0][0]));
        CHECK(scan.beta[0][0] <= 0.0);
    }
}
