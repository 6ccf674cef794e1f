#include "specband/discriminant.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specband/util.hpp"

namespace specband {

namespace {

struct Mat2d {
    double a = 1, b = 0, c = 0, d = 1;
};

inline Mat2d mul(const Mat2d& x, const Mat2d& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// NaN (from inf - inf once entries blow up) must also trip the flag.
inline bool entry_bad(double x) { return !(std::abs(x) <= kTransferOverflow); }

inline bool too_big(const Mat2d& m) {
    return entry_bad(m.a) || entry_bad(m.b) || entry_bad(m.c) || entry_bad(m.d);
}

inline bool too_big(const Mat2c& m) {
    return entry_bad(m.a.real()) || entry_bad(m.a.imag()) || entry_bad(m.b.real()) ||
           entry_bad(m.b.imag()) || entry_bad(m.c.real()) || entry_bad(m.c.imag()) ||
           entry_bad(m.d.real()) || entry_bad(m.d.imag());
}

void check_q(const Potential& v, std::size_t q) {
    if (q == 0) throw std::invalid_argument("discriminant: q must be >= 1");
    if (q > v.size()) throw std::invalid_argument("discriminant: q exceeds stored potential length");
}

// Real one-period product A_q...A_1, overflow-flagged.
struct RealProduct {
    Mat2d m;
    bool overflow = false;
};

RealProduct real_transfer_product(const Potential& v, std::size_t q, double e) {
    Mat2d p; // identity
    bool overflow = false;
    for (std::size_t j = 1; j <= q; ++j) {
        const Mat2d step{e - v.values[j - 1], -1.0, 1.0, 0.0};
        p = mul(step, p);
        if ((j & 15u) == 0 && too_big(p)) overflow = true;
    }
    if (too_big(p)) overflow = true;
    return {p, overflow};
}

double tol_root(double dprime_abs) { return 1e-10 * std::max(1.0, dprime_abs); }

// Locates the unique root of D - target inside [lo, hi], where the sign of
// D - target at lo is sign_lo. Bisection (depth-capped) plus a safeguarded
// Newton polish; Newton steps leaving the bracket fall back to bisection.
double solve_in_band(const Potential& v, std::size_t q, double lo, double hi, int sign_lo,
                     double target) {
    auto f = [&](double e) {
        const RealEval r = discriminant_eval_real(v, q, e);
        if (r.overflow) throw numerical_error("discriminant: transfer overflow inside band");
        return r.value - target;
    };
    // Strong disorder narrows bands below double resolution (widths decay
    // like e^{-gamma q}); such a band is a point at working precision.
    if (hi - lo <= 64.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::abs(lo) + std::abs(hi)))
        return 0.5 * (lo + hi);
    double a = lo, b = hi;
    for (int iter = 0; iter < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++iter) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (sign_lo > 0))
            a = mid;
        else
            b = mid;
    }
    double e = 0.5 * (a + b);
    for (int iter = 0; iter < 60; ++iter) {
        const double fe = f(e);
        const RealEval dr = discriminant_derivative(v, q, e);
        if (dr.overflow) break;
        const double dp = dr.value;
        if (std::abs(fe) < tol_root(std::abs(dp))) return e;
        if (dp == 0.0) break;
        double next = e - fe / dp;
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if ((fe > 0.0) == (sign_lo > 0))
            a = e;
        else
            b = e;
        if (next == e) break;
        e = next;
    }
    return e;
}

} // namespace

TransferResult transfer_product(const Potential& v, std::size_t q, complexd z) {
    check_q(v, q);
    Mat2c p{1.0, 0.0, 0.0, 1.0};
    bool overflow = false;
    for (std::size_t j = 1; j <= q; ++j) {
        const complexd t = z - v.values[j - 1];
        // [[t, -1], [1, 0]] * p
        const Mat2c next{t * p.a - p.c, t * p.b - p.d, p.a, p.b};
        p = next;
        if ((j & 15u) == 0 && too_big(p)) overflow = true;
    }
    if (too_big(p)) overflow = true;
    return {p, overflow};
}

EvalResult discriminant_eval(const Potential& v, std::size_t q, complexd z) {
    const TransferResult t = transfer_product(v, q, z);
    return {t.m.trace(), t.overflow};
}

RealEval discriminant_eval_real(const Potential& v, std::size_t q, double e) {
    check_q(v, q);
    const RealProduct p = real_transfer_product(v, q, e);
    return {p.m.a + p.m.d, p.overflow};
}

double discriminant_log_abs(const std::vector<double>& zeros, complexd z) {
    const double e = z.real();
    const double eps = z.imag();
    double s = 0.0;
    for (const double zj : zeros) {
        const double dx = e - zj;
        const double r2 = dx * dx + eps * eps;
        if (r2 == 0.0) return -std::numeric_limits<double>::infinity();
        s += 0.5 * std::log(r2);
    }
    return s;
}

RealEval discriminant_derivative(const Potential& v, std::size_t q, double e) {
    check_q(v, q);
    // Prefixes P_m = A_m...A_1, suffixes S_m = A_q...A_{m+1}. With
    // A'_m = [[1,0],[0,0]], tr(S_m A'_m P_{m-1}) = S11*P11 + S21*P12.
    std::vector<Mat2d> prefix(q + 1);
    bool overflow = false;
    prefix[0] = Mat2d{};
    for (std::size_t j = 1; j <= q; ++j) {
        const Mat2d step{e - v.values[j - 1], -1.0, 1.0, 0.0};
        prefix[j] = mul(step, prefix[j - 1]);
        if (too_big(prefix[j])) overflow = true;
    }
    Mat2d suffix{}; // S_q = I
    double acc = 0.0;
    for (std::size_t m = q; m >= 1; --m) {
        const Mat2d& p = prefix[m - 1];
        acc += suffix.a * p.a + suffix.c * p.b;
        const Mat2d step{e - v.values[m - 1], -1.0, 1.0, 0.0};
        suffix = mul(suffix, step);
        if (too_big(suffix)) overflow = true;
    }
    if (!std::isfinite(acc)) overflow = true;
    return {acc, overflow};
}

std::pair<std::vector<double>, std::vector<double>> band_edges(const Potential& v, std::size_t q) {
    check_q(v, q);
    if (q == 1) {
        const double c = v.values[0];
        return {{c + 2.0}, {c - 2.0}};
    }
    if (q == 2) {
        const double v1 = v.values[0], v2 = v.values[1];
        const double s = v1 + v2;
        const double disc = std::sqrt((v1 - v2) * (v1 - v2) + 16.0);
        std::vector<double> plus{0.5 * (s - disc), 0.5 * (s + disc)};
        std::vector<double> minus{std::min(v1, v2), std::max(v1, v2)};
        return {plus, minus};
    }
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<long>(q), static_cast<long>(q));
    for (std::size_t j = 0; j < q; ++j) h(j, j) = v.values[j];
    for (std::size_t j = 0; j + 1 < q; ++j) h(j, j + 1) = h(j + 1, j) = 1.0;

    auto solve = [&](double corner) {
        h(0, static_cast<long>(q) - 1) = h(static_cast<long>(q) - 1, 0) = corner;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw numerical_error("band_edges: eigensolver failed to converge at q=" +
                                  std::to_string(q));
        const auto& ev = es.eigenvalues();
        return std::vector<double>(ev.data(), ev.data() + q);
    };
    std::vector<double> plus = solve(1.0);   // k = 0
    std::vector<double> minus = solve(-1.0); // k = pi
    return {plus, minus};
}

std::vector<double> discriminant_zeros(const Potential& v, std::size_t q) {
    return band_structure(v, q).zeros;
}

DiscriminantData band_structure(const Potential& v, std::size_t q) {
    check_q(v, q);
    DiscriminantData data;
    data.q = q;
    auto [plus, minus] = band_edges(v, q);
    data.edges_plus = plus;
    data.edges_minus = minus;
    data.bands.resize(q);
    data.zeros.resize(q);
    data.dprime_at_zeros.resize(q);

    for (std::size_t j = 0; j < q; ++j) {
        Band& band = data.bands[j];
        if (plus[j] <= minus[j]) {
            band.left = plus[j];
            band.right = minus[j];
            band.left_k = EdgeK::k0;
            band.right_k = EdgeK::kpi;
        } else {
            band.left = minus[j];
            band.right = plus[j];
            band.left_k = EdgeK::kpi;
            band.right_k = EdgeK::k0;
        }
        band.width = band.right - band.left;
    }

    parallel_for(q, [&](std::size_t j) {
        Band& band = data.bands[j];
        const int sign_lo = band.left_k == EdgeK::k0 ? +1 : -1;
        const double z = solve_in_band(v, q, band.left, band.right, sign_lo, 0.0);
        band.zero = z;
        data.zeros[j] = z;
        RealEval dr = discriminant_derivative(v, q, z);
        data.dprime_at_zeros[j] = dr.value;
    });

    for (std::size_t j = 0; j + 1 < q; ++j)
        if (!(data.zeros[j] < data.zeros[j + 1]))
            throw numerical_error("band_structure: zeros not strictly increasing at j=" +
                                  std::to_string(j));

    // Transfer propagation can overflow at extreme q; the monic product over
    // the (already located) zeros is the fallback.
    for (std::size_t j = 0; j < q; ++j) {
        if (std::isfinite(data.dprime_at_zeros[j]) && data.dprime_at_zeros[j] != 0.0) continue;
        double lg = 0.0;
        for (std::size_t i = 0; i < q; ++i)
            if (i != j) lg += std::log(std::abs(data.zeros[j] - data.zeros[i]));
        const double sign = ((q - 1 - j) % 2 == 0) ? 1.0 : -1.0;
        data.dprime_at_zeros[j] = sign * std::exp(lg);
    }
    return data;
}

std::vector<double> eigenvalues_at_k(const Potential& v, std::size_t q, double k) {
    check_q(v, q);
    if (!(k >= 0.0 && k <= M_PI)) throw std::invalid_argument("eigenvalues_at_k: k outside [0, pi]");
    if (k == 0.0) return band_edges(v, q).first;
    if (k == M_PI) return band_edges(v, q).second;
    const double target = 2.0 * std::cos(k);
    DiscriminantData data = band_structure(v, q);
    std::vector<double> out(q);
    parallel_for(q, [&](std::size_t j) {
        const Band& band = data.bands[j];
        const int sign_lo = band.left_k == EdgeK::k0 ? +1 : -1;
        out[j] = solve_in_band(v, q, band.left, band.right, sign_lo, target);
    });
    return out;
}

MinAbsResult min_abs_disc_on_line(const std::vector<double>& zeros, double eps) {
    if (zeros.empty()) throw std::invalid_argument("min_abs_disc_on_line: empty zero set");
    if (!(eps > 0.0)) throw std::invalid_argument("min_abs_disc_on_line: eps must be > 0");
    const double lo = zeros.front() - 1.0;
    const double hi = zeros.back() + 1.0;
    const std::size_t npts = std::max<std::size_t>(10 * zeros.size(), 1000) + 1;
    const double step = (hi - lo) / static_cast<double>(npts - 1);

    auto f = [&](double e) { return discriminant_log_abs(zeros, {e, eps}); };

    std::vector<double> vals(npts);
    parallel_for(npts, [&](std::size_t i) { vals[i] = f(lo + step * static_cast<double>(i)); });

    std::vector<std::size_t> order(npts);
    for (std::size_t i = 0; i < npts; ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(20, npts), order.end(),
                      [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

    double best_e = lo;
    double best = std::numeric_limits<double>::infinity();
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t r = 0; r < std::min<std::size_t>(20, npts); ++r) {
        const std::size_t i = order[r];
        double a = lo + step * static_cast<double>(i == 0 ? 0 : i - 1);
        double b = lo + step * static_cast<double>(std::min(npts - 1, i + 1));
        double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
        double f1 = f(x1), f2 = f(x2);
        for (int iter = 0; iter < 120 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b));
             ++iter) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = f(x2);
            }
        }
        const double e = 0.5 * (a + b);
        const double fe = f(e);
        if (fe < best) {
            best = fe;
            best_e = e;
        }
    }
    return {best_e, best, std::exp(best)};
}

std::vector<double> critical_points(const std::vector<double>& zeros) {
    const std::size_t q = zeros.size();
    std::vector<double> crit;
    if (q < 2) return crit;
    crit.resize(q - 1);
    auto logderiv = [&](double e) {
        double s = 0.0;
        for (double z : zeros) s += 1.0 / (e - z);
        return s;
    };
    parallel_for(q - 1, [&](std::size_t j) {
        double a = zeros[j], b = zeros[j + 1];
        // sum 1/(E - z) is strictly decreasing on (z_j, z_{j+1}), +inf to -inf
        for (int iter = 0; iter < 200 && (b - a) > 1e-15 * (1.0 + std::abs(a) + std::abs(b));
             ++iter) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (logderiv(mid) > 0.0)
                a = mid;
            else
                b = mid;
        }
        crit[j] = 0.5 * (a + b);
    });
    return crit;
}

std::size_t associated_zero_index(const std::vector<double>& zeros,
                                  const std::vector<double>& criticals, double e) {
    if (zeros.empty()) throw std::invalid_argument("associated_zero_index: empty zero set");
    const auto it = std::upper_bound(criticals.begin(), criticals.end(), e);
    return static_cast<std::size_t>(it - criticals.begin());
}

std::vector<double> log_abs_dprime_at_zeros(const std::vector<double>& zeros) {
    const std::size_t q = zeros.size();
    std::vector<double> out(q, 0.0);
    parallel_for(q, [&](std::size_t j) {
        double s = 0.0;
        for (std::size_t i = 0; i < q; ++i)
            if (i != j) s += std::log(std::abs(zeros[j] - zeros[i]));
        out[j] = s;
    });
    return out;
}

double b_tilde(const DiscriminantData& data) {
    const std::size_t q = data.q;
    double sup = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
        const Band& band = data.bands[j];
        sup = std::max(sup, std::abs(band.left - band.zero));
        const double r = band.right;
        const bool shared = j + 1 < q &&
                            std::abs(r - data.bands[j + 1].left) <= 1e-9 * (1.0 + std::abs(r));
        const double z = shared ? data.bands[j + 1].zero : band.zero;
        sup = std::max(sup, std::abs(r - z));
    }
    return sup;
}

} // namespace specband
