#pragma once

// Independent oracles used by the test suites. Everything here recomputes
// quantities through a route different from the library implementation it
// checks: substitution words instead of the circle map, dense matrix
// assembly plus time quadrature instead of the closed-form kernel, resolvent
// quadrature instead of the eigenbasis, plain product formulas instead of
// transfer recursions.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "specband/clustering.hpp"
#include "specband/discriminant.hpp"
#include "specband/dynamics.hpp"
#include "specband/potential.hpp"

namespace oracle {

// Fibonacci word by the substitution 1 -> 10, 0 -> 1, as 0/1 letters
// (1 marks a lambda site). Starts from "1".
inline std::vector<int> fibonacci_word(std::size_t n) {
    std::vector<int> w{1};
    while (w.size() < n) {
        std::vector<int> next;
        next.reserve(2 * w.size());
        for (int letter : w) {
            if (letter == 1) {
                next.push_back(1);
                next.push_back(0);
            } else {
                next.push_back(1);
            }
        }
        w = std::move(next);
    }
    w.resize(n);
    return w;
}

// Free-Laplacian closed forms.
inline double chebyshev_disc(std::size_t q, double e) {
    return 2.0 * std::cos(static_cast<double>(q) * std::acos(0.5 * e));
}
inline double chebyshev_zero(std::size_t q, std::size_t j) { // j = 1..q, ascending
    return 2.0 * std::cos((2.0 * static_cast<double>(q - j) + 1.0) * M_PI /
                          (2.0 * static_cast<double>(q)));
}

// Dense truncation of H = Delta + V on the same site window the dynamics
// module uses, assembled independently.
struct DenseSystem {
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors; // column j = eigenvector
    long seed_row = 0;
    long long site_lo = 1;
};

inline DenseSystem dense_system(const specband::Potential& v, std::size_t n,
                                specband::Geometry geometry) {
    using specband::Geometry;
    if (geometry == Geometry::full_line && n % 2 == 0) ++n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<long>(n), static_cast<long>(n));
    DenseSystem sys;
    if (geometry == Geometry::half_line) {
        for (std::size_t i = 0; i < n; ++i) h(i, i) = v.value_at(static_cast<long long>(i) + 1);
        sys.site_lo = 1;
        sys.seed_row = 0;
    } else {
        const long long m = static_cast<long long>((n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            h(i, i) = v.value_at(-m + static_cast<long long>(i));
        sys.site_lo = -m;
        sys.seed_row = static_cast<long>(m);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) h(i, i + 1) = h(i + 1, i) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("oracle eigensolve failed");
    sys.energies = es.eigenvalues();
    sys.vectors = es.eigenvectors();
    return sys;
}

// |<delta_n, e^{-itH} delta_seed>|^2 from the dense eigensystem.
inline double amplitude_sq(const DenseSystem& sys, long row, double t) {
    std::complex<double> amp = 0.0;
    for (long j = 0; j < sys.energies.size(); ++j)
        amp += sys.vectors(row, j) * sys.vectors(sys.seed_row, j) *
               std::exp(std::complex<double>(0.0, -sys.energies[j] * t));
    return std::norm(amp);
}

// (2/T) int_0^{20T} e^{-2t/T} |amp|^2 dt by composite Simpson, step T/200.
inline double time_quadrature_occupation(const DenseSystem& sys, long row, double T) {
    const double h = T / 200.0;
    const std::size_t steps = 4000; // to t = 20 T, even count
    auto f = [&](double t) { return std::exp(-2.0 * t / T) * amplitude_sq(sys, row, t); };
    double s = f(0.0) + f(h * steps);
    for (std::size_t i = 1; i < steps; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(h * i);
    return (2.0 / T) * s * h / 3.0;
}

// Complex tridiagonal solve (H - z) x = e_seed by the Thomas algorithm.
inline std::complex<double> green_entry(const specband::Potential& v, std::size_t n, long row,
                                        long seed, std::complex<double> z) {
    using cd = std::complex<double>;
    std::vector<cd> diag(n), rhs(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) diag[i] = v.value_at(static_cast<long long>(i) + 1) - z;
    rhs[static_cast<std::size_t>(seed)] = 1.0;
    std::vector<cd> c(n, 1.0); // off-diagonals are all 1
    // forward sweep
    std::vector<cd> dp(n), bp(n);
    dp[0] = diag[0];
    bp[0] = rhs[0];
    for (std::size_t i = 1; i < n; ++i) {
        const cd w = c[i - 1] / dp[i - 1];
        dp[i] = diag[i] - w * c[i - 1];
        bp[i] = rhs[i] - w * bp[i - 1];
    }
    std::vector<cd> x(n);
    x[n - 1] = bp[n - 1] / dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (bp[i] - c[i] * x[i + 1]) / dp[i];
    return x[static_cast<std::size_t>(row)];
}

// Adaptive Simpson for smooth scalar integrands.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 40);
}

// a(n) through the resolvent route: (1/(pi T)) int |G(seed,n;E+i/T)|^2 dE.
// Half-line only, window wide enough that the discarded tails are below
// the comparison tolerance for n >= 2.
inline double resolvent_occupation(const specband::Potential& v, std::size_t n, long row,
                                   double T) {
    double vmin = 0.0, vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        vmin = std::min(vmin, v.values[i]);
        vmax = std::max(vmax, v.values[i]);
    }
    const double lo = vmin - 2.0 - 100.0;
    const double hi = vmax + 2.0 + 100.0;
    auto f = [&](double e) {
        return std::norm(green_entry(v, n, row, 0, {e, 1.0 / T}));
    };
    return integrate(f, lo, hi, 1e-10) / (M_PI * T);
}

inline std::vector<double> random_potential_values(std::mt19937_64& rng, std::size_t n,
                                                   double sup) {
    std::uniform_real_distribution<double> dist(-sup, sup);
    std::vector<double> values(n);
    for (double& x : values) x = dist(rng);
    return values;
}

// Definitional b~ of a monic polynomial with the given simple zeros: sup of
// |x - z(x)| over the |Q| = 2 points, found by bisection on each monotone
// piece that reaches modulus 2.
inline double poly_b_tilde(const std::vector<double>& zeros) {
    auto log_q = [&](double x) {
        double s = 0.0;
        for (double z : zeros) s += std::log(std::abs(x - z));
        return s;
    };
    const std::vector<double> crit = specband::critical_points(zeros);
    const double span = zeros.back() - zeros.front() + 10.0;
    double sup = 0.0;
    auto crossing = [&](double a, double b, double zref) {
        const bool rising = log_q(b) > log_q(a);
        if (std::max(log_q(a), log_q(b)) < std::log(2.0)) return;
        for (int i = 0; i < 200 && b - a > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
            const double mid = 0.5 * (a + b);
            if ((log_q(mid) > std::log(2.0)) == rising)
                b = mid;
            else
                a = mid;
        }
        sup = std::max(sup, std::abs(0.5 * (a + b) - zref));
    };
    for (std::size_t j = 0; j < zeros.size(); ++j) {
        const double left = j == 0 ? zeros.front() - span : crit[j - 1];
        const double right = j + 1 == zeros.size() ? zeros.back() + span : crit[j];
        crossing(zeros[j], right, zeros[j]); // rising side
        crossing(left, zeros[j], zeros[j]);  // falling side
    }
    return sup;
}

// Clustered zero sets on which the eps-covered hypothesis of the polynomial
// lower-bound lemmas demonstrably holds: wide gaps push |Q| above 2 inside
// every cluster hull. Returns zeros plus the hull scale.
struct ClusteredZeros {
    std::vector<double> zeros;
    double eps = 0.0;
    std::size_t clusters = 0;
};

inline ClusteredZeros make_clustered_zeros(std::mt19937_64& rng) {
    ClusteredZeros out;
    out.clusters = 3 + rng() % 3;
    const std::size_t per = 4 + rng() % 3;
    std::uniform_real_distribution<double> jitter(5e-3, 7e-3);
    std::uniform_real_distribution<double> gap(20.0, 30.0);
    double center = 0.0;
    for (std::size_t c = 0; c < out.clusters; ++c) {
        double z = center;
        for (std::size_t i = 0; i < per; ++i) {
            out.zeros.push_back(z);
            z += jitter(rng);
        }
        center += gap(rng);
    }
    const specband::ClusterCover cover = specband::greedy_cover(out.zeros, per * 7e-3);
    for (const auto& iv : cover.intervals) out.eps = std::max(out.eps, iv.hi - iv.lo);
    return out;
}

// True iff every interval of the cover contains a |Q| = 2 point. Known
// modulus-2 points (band edges, for discriminants) certify directly; the
// fallback certificate is an interior critical point whose modulus reaches
// 2, which bounds a crossing inside the hull. Touching-band criticals sit
// exactly at modulus 2, hence the one-ulp slack.
inline bool eps_covered(const std::vector<double>& zeros, const specband::ClusterCover& cover,
                        const std::vector<double>& two_points = {}, double tol = 1e-9) {
    auto log_q = [&](double x) {
        double s = 0.0;
        for (double z : zeros) s += std::log(std::abs(x - z));
        return s;
    };
    const std::vector<double> crit = specband::critical_points(zeros);
    for (const auto& iv : cover.intervals) {
        bool has_two_point = false;
        for (double p : two_points)
            if (p >= iv.lo - tol && p <= iv.hi + tol) {
                has_two_point = true;
                break;
            }
        if (has_two_point) continue;
        if (iv.count < 2) return false; // no interior critical point either
        double best = -std::numeric_limits<double>::infinity();
        for (double c : crit)
            if (c >= iv.lo && c <= iv.hi) best = std::max(best, log_q(c));
        if (best < std::log(2.0) - tol) return false;
    }
    return true;
}

inline std::vector<double> all_edges(const specband::DiscriminantData& data) {
    std::vector<double> edges = data.edges_plus;
    edges.insert(edges.end(), data.edges_minus.begin(), data.edges_minus.end());
    std::sort(edges.begin(), edges.end());
    return edges;
}

} // namespace oracle
