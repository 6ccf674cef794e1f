#include "specband/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specband/util.hpp"

namespace specband {

namespace {

// Diagonal of the truncated operator plus the site label of row 0 and the
// seed row.
struct Truncation {
    Eigen::VectorXd diag;
    long long site_lo = 1;
    long seed_row = 0;
};

Truncation make_truncation(const Potential& v, std::size_t n, Geometry geometry) {
    Truncation t;
    t.diag.resize(static_cast<long>(n));
    if (geometry == Geometry::half_line) {
        if (v.size() < n && !v.extends_to_integers())
            throw std::invalid_argument("evolve_profile: stored potential shorter than N");
        for (std::size_t i = 0; i < n; ++i) {
            const long long site = static_cast<long long>(i) + 1;
            t.diag[static_cast<long>(i)] =
                (site <= static_cast<long long>(v.size())) ? v.values[i] : v.value_at(site);
        }
        t.site_lo = 1;
        t.seed_row = 0;
    } else {
        if (!v.extends_to_integers())
            throw std::invalid_argument(
                "evolve_profile: full-line geometry needs a whole-line potential kind");
        const long long m = static_cast<long long>((n - 1) / 2);
        for (std::size_t i = 0; i < n; ++i)
            t.diag[static_cast<long>(i)] = v.value_at(-m + static_cast<long long>(i));
        t.site_lo = -m;
        t.seed_row = static_cast<long>(m); // site 0
    }
    return t;
}

} // namespace

std::size_t required_truncation(std::size_t q_max, double T) {
    return q_max + static_cast<std::size_t>(std::ceil(10.0 * T)) + 100;
}

DynamicsProfile evolve_profile(const Potential& v, double T, std::size_t n, Geometry geometry,
                               double tail_tol) {
    if (!(T > 0.0)) throw std::invalid_argument("evolve_profile: T must be > 0");
    if (n < 8) throw std::invalid_argument("evolve_profile: N too small");
    if (geometry == Geometry::full_line && n % 2 == 0) ++n;
    if (n > kMaxTruncation)
        throw std::invalid_argument("evolve_profile: N exceeds the 1e4 truncation guard");

    const Truncation tr = make_truncation(v, n, geometry);
    const long nn = static_cast<long>(n);

    Eigen::VectorXd sub = Eigen::VectorXd::Ones(nn - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(tr.diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw numerical_error("evolve_profile: eigensolver failed at N=" + std::to_string(n));
    const Eigen::VectorXd& energies = es.eigenvalues();
    const Eigen::MatrixXd& u = es.eigenvectors(); // u(site, j)

    // a(n) = sum_{j,k} B(n,j) K(j,k) B(n,k) with B(n,j) = u(n,j) u(seed,j)
    // and K the Abelian kernel; a = rowwise dot of B and B*K.
    Eigen::MatrixXd k(nn, nn);
    for (long j = 0; j < nn; ++j) {
        k(j, j) = 1.0;
        for (long l = j + 1; l < nn; ++l) {
            const double x = 0.5 * T * (energies[j] - energies[l]);
            const double val = 1.0 / (1.0 + x * x);
            k(j, l) = val;
            k(l, j) = val;
        }
    }
    Eigen::MatrixXd b = u;
    for (long j = 0; j < nn; ++j) b.col(j) *= u(tr.seed_row, j);
    const Eigen::MatrixXd bk = b * k;
    Eigen::VectorXd a = (b.cwiseProduct(bk)).rowwise().sum();

    DynamicsProfile profile;
    profile.T = T;
    profile.N = n;
    profile.geometry = geometry;
    profile.site_lo = tr.site_lo;
    profile.a.resize(n);
    for (long i = 0; i < nn; ++i) {
        double x = a[i];
        if (x < 0.0) {
            if (x < -1e-10) throw numerical_error("evolve_profile: negative occupation " +
                                                  std::to_string(x));
            x = 0.0;
        }
        profile.a[static_cast<std::size_t>(i)] = x;
    }

    double bm = 0.0;
    for (std::size_t i = n - 5; i < n; ++i) bm += profile.a[i];
    if (geometry == Geometry::full_line)
        for (std::size_t i = 0; i < 5; ++i) bm += profile.a[i];
    profile.boundary_mass = bm;
    profile.reliable = bm < tail_tol;
    return profile;
}

double p_tail(const DynamicsProfile& profile, std::size_t q) {
    const long long qq = static_cast<long long>(q);
    // full-line truncations are symmetric, so the right boundary governs
    const long long max_site = profile.site_lo + static_cast<long long>(profile.N) - 1;
    if (qq >= max_site - 5)
        throw std::invalid_argument("p_tail: q too close to the truncation boundary (boundary_mass " +
                                    std::to_string(profile.boundary_mass) + ")");
    double s = 0.0;
    for (std::size_t i = 0; i < profile.N; ++i) {
        const long long site = profile.site_lo + static_cast<long long>(i);
        if (std::llabs(site) > qq) s += profile.a[i];
    }
    return s;
}

double moment(const DynamicsProfile& profile, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("moment: order must be > 0");
    double s = 0.0;
    for (std::size_t i = 0; i < profile.N; ++i) {
        const long long site = profile.site_lo + static_cast<long long>(i);
        if (site == 0) continue;
        s += std::pow(std::abs(static_cast<double>(site)), m) * profile.a[i];
    }
    return s;
}

ExponentScan exponent_scan(const Potential& v, const std::vector<double>& alphas,
                           const std::vector<double>& Ts, Geometry geometry) {
    if (alphas.empty() || Ts.empty())
        throw std::invalid_argument("exponent_scan: empty grid");
    for (double a : alphas)
        if (!(a > 0.0)) throw std::invalid_argument("exponent_scan: alpha must be > 0");
    ExponentScan scan;
    scan.alphas = alphas;
    scan.Ts = Ts;
    std::vector<double> sorted_t = Ts;
    std::sort(sorted_t.begin(), sorted_t.end());

    scan.beta.assign(alphas.size(), std::vector<double>(Ts.size(),
                     std::numeric_limits<double>::quiet_NaN()));
    for (std::size_t tj = 0; tj < Ts.size(); ++tj) {
        const double T = Ts[tj];
        std::size_t q_max = 0;
        for (double a : alphas)
            q_max = std::max(q_max, static_cast<std::size_t>(std::ceil(std::pow(T, a))));
        // The Abelian weight decays like e^{-n/T} past the wavefront, so the
        // minimal q + 10T + 100 sizing leaves ~e^{-10} at the boundary; the
        // scan wants boundary mass below tail_tol, which needs ~25T.
        std::size_t n = q_max + static_cast<std::size_t>(std::ceil(25.0 * T)) + 100;
        if (geometry == Geometry::full_line) n = 2 * n + 1;
        const DynamicsProfile profile = evolve_profile(v, T, n, geometry);
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            if (!profile.reliable) continue; // missing, not zero
            const std::size_t q =
                static_cast<std::size_t>(std::ceil(std::pow(T, alphas[ai])));
            const double p = p_tail(profile, q);
            scan.beta[ai][tj] = p > 0.0 ? std::log(p) / std::log(T)
                                        : -std::numeric_limits<double>::infinity();
        }
    }

    // Trend over the largest three T values: slope of beta vs log T.
    scan.trend.assign(alphas.size(), std::numeric_limits<double>::quiet_NaN());
    if (sorted_t.size() >= 2) {
        std::vector<double> top(sorted_t.end() - std::min<std::size_t>(3, sorted_t.size()),
                                sorted_t.end());
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            int cnt = 0;
            for (double T : top) {
                const auto it = std::find(Ts.begin(), Ts.end(), T);
                const double b = scan.beta[ai][static_cast<std::size_t>(it - Ts.begin())];
                if (!std::isfinite(b)) continue;
                const double x = std::log(T);
                sx += x;
                sy += b;
                sxx += x * x;
                sxy += x * b;
                ++cnt;
            }
            if (cnt >= 2)
                scan.trend[ai] =
                    (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        }
    }
    return scan;
}

} // namespace specband
