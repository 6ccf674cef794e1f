#include "specband/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specband {

namespace {

void check_points(const std::vector<double>& points, double eps) {
    if (points.empty()) throw std::invalid_argument("cluster cover: empty point set");
    if (!(eps > 0.0)) throw std::invalid_argument("cluster cover: eps must be > 0");
    if (!std::is_sorted(points.begin(), points.end()))
        throw std::invalid_argument("cluster cover: points must be sorted");
}

double occupancy_exponent(std::size_t occ, std::size_t q) {
    if (q <= 1) return 1.0;
    return std::log(static_cast<double>(occ)) / std::log(static_cast<double>(q));
}

void finish(ClusterCover& cover) {
    cover.xi = occupancy_exponent(cover.min_occupancy(), cover.q);
    cover.xi_bar = occupancy_exponent(cover.max_occupancy(), cover.q);
}

} // namespace

std::size_t ClusterCover::min_occupancy() const {
    std::size_t m = std::numeric_limits<std::size_t>::max();
    for (const auto& iv : intervals) m = std::min(m, iv.count);
    return intervals.empty() ? 0 : m;
}

std::size_t ClusterCover::max_occupancy() const {
    std::size_t m = 0;
    for (const auto& iv : intervals) m = std::max(m, iv.count);
    return m;
}

std::size_t ClusterCover::find(double x) const {
    for (std::size_t i = 0; i < intervals.size(); ++i)
        if (x >= intervals[i].lo && x <= intervals[i].hi) return i;
    return static_cast<std::size_t>(-1);
}

ClusterCover greedy_cover(const std::vector<double>& points, double eps) {
    check_points(points, eps);
    ClusterCover cover;
    cover.eps = eps;
    cover.q = points.size();
    cover.provenance = CoverProvenance::greedy;
    std::size_t i = 0;
    while (i < points.size()) {
        const double start = points[i];
        std::size_t j = i;
        while (j + 1 < points.size() && points[j + 1] - start <= eps) ++j;
        cover.intervals.push_back({start, points[j], j - i + 1});
        i = j + 1;
    }
    finish(cover);
    return cover;
}

ClusterCover cover_from_intervals(const std::vector<double>& points,
                                  const std::vector<std::pair<double, double>>& raw, double eps,
                                  double tol) {
    check_points(points, eps);
    std::vector<std::pair<double, double>> ivs = raw;
    std::sort(ivs.begin(), ivs.end());
    for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
        if (ivs[i + 1].first <= ivs[i].second - tol)
            throw std::invalid_argument("cover_from_intervals: intervals overlap at index " +
                                        std::to_string(i));
    ClusterCover cover;
    cover.eps = eps;
    cover.q = points.size();
    cover.provenance = CoverProvenance::supplied;
    for (const auto& [lo, hi] : ivs) {
        if (hi < lo) throw std::invalid_argument("cover_from_intervals: interval with hi < lo");
        if (hi - lo > eps + tol)
            throw std::invalid_argument("cover_from_intervals: interval longer than eps");
        const auto first = std::lower_bound(points.begin(), points.end(), lo - tol);
        const auto last = std::upper_bound(points.begin(), points.end(), hi + tol);
        const std::size_t count = static_cast<std::size_t>(last - first);
        if (count > 0) cover.intervals.push_back({lo, hi, count});
    }
    std::size_t covered = 0;
    for (const auto& iv : cover.intervals) covered += iv.count;
    if (covered != points.size())
        throw std::invalid_argument("cover_from_intervals: intervals do not cover all points (" +
                                    std::to_string(covered) + " of " +
                                    std::to_string(points.size()) + ")");
    finish(cover);
    return cover;
}

ClusteredCheck check_clustered(const std::vector<double>& points, double eps, double xi_target) {
    ClusterCover cover = greedy_cover(points, eps);
    const double need = std::pow(static_cast<double>(points.size()), xi_target);
    const bool ok = static_cast<double>(cover.min_occupancy()) >= need;
    return {ok, std::move(cover)};
}

ClusterCover dp_optimal_cover(const std::vector<double>& points, double eps) {
    check_points(points, eps);
    const std::size_t q = points.size();
    if (q > 64) throw std::invalid_argument("dp_optimal_cover: guarded to q <= 64");

    // best[i] = largest achievable min-occupancy over groupings of the first
    // i points into consecutive tight groups of diameter <= eps. Equal points
    // must share a group, so a cut between tied values is disallowed.
    std::vector<std::size_t> best(q + 1, 0), cut(q + 1, 0);
    best[0] = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 1; i <= q; ++i) {
        for (std::size_t j = i; j >= 1; --j) {
            if (points[i - 1] - points[j - 1] > eps) break;
            if (j >= 2 && points[j - 1] == points[j - 2]) continue;
            const std::size_t cand = std::min(best[j - 1], i - j + 1);
            if (cand > best[i]) {
                best[i] = cand;
                cut[i] = j;
            }
        }
        if (best[i] == 0)
            throw std::invalid_argument("dp_optimal_cover: no feasible grouping (tied points?)");
    }

    ClusterCover cover;
    cover.eps = eps;
    cover.q = q;
    cover.provenance = CoverProvenance::supplied;
    std::size_t i = q;
    while (i > 0) {
        const std::size_t j = cut[i];
        cover.intervals.push_back({points[j - 1], points[i - 1], i - j + 1});
        i = j - 1;
    }
    std::reverse(cover.intervals.begin(), cover.intervals.end());
    finish(cover);
    return cover;
}

UniformReport check_uniform(const std::vector<UniformLevel>& seq, double mu, double c1, double c2) {
    if (seq.empty()) throw std::invalid_argument("check_uniform: empty sequence");
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const UniformLevel& lvl = seq[i];
        const double eps_expected =
            std::pow(static_cast<double>(lvl.q), -1.0 / lvl.alpha);
        if (std::abs(lvl.cover.eps - eps_expected) > 1e-9 * eps_expected)
            throw std::invalid_argument("check_uniform: cover eps does not match q^(-1/alpha) at level " +
                                        std::to_string(i));
    }

    UniformReport rep;

    // (i) scales strictly decreasing
    {
        ConditionReport c{"(i) scale monotonicity", true, 0, 0.0};
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            if (!(seq[i].cover.eps > seq[i + 1].cover.eps)) {
                c.pass = false;
                c.worst_level = i + 1;
                c.witness = seq[i + 1].cover.eps - seq[i].cover.eps;
                break;
            }
        }
        rep.conditions.push_back(c);
    }

    // (ii) min interval length >= C1 q^(-mu/alpha)
    {
        ConditionReport c{"(ii) interval length floor", true, 0, 0.0};
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const double floor_i =
                c1 * std::pow(static_cast<double>(seq[i].q), -mu / seq[i].alpha);
            for (const auto& iv : seq[i].cover.intervals) {
                const double len = iv.hi - iv.lo;
                if (len - floor_i < worst) {
                    worst = len - floor_i;
                    c.worst_level = i;
                    c.witness = len;
                }
            }
        }
        c.pass = worst >= 0.0;
        rep.conditions.push_back(c);
    }

    // (iii) existence of delta with delta < xi < 1-delta, delta < alpha < 1
    {
        ConditionReport c{"(iii) exponent separation", true, 0, 0.0};
        double delta = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const double d = std::min(std::min(seq[i].xi, 1.0 - seq[i].xi),
                                      std::min(seq[i].alpha, 1.0 - seq[i].alpha));
            if (d < delta) {
                delta = d;
                c.worst_level = i;
            }
        }
        rep.delta = std::max(0.0, delta);
        c.witness = rep.delta;
        c.pass = delta > 1e-3; // floor against vacuous passes from rounding
        rep.conditions.push_back(c);
    }

    // (iv) xi_bar - xi <= C2 / log q
    {
        ConditionReport c{"(iv) occupancy spread", true, 0, 0.0};
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const double gap = (seq[i].cover.xi_bar - seq[i].xi) *
                               std::log(static_cast<double>(seq[i].q));
            if (gap > worst) {
                worst = gap;
                c.worst_level = i;
                c.witness = gap;
            }
        }
        c.pass = worst <= c2;
        rep.conditions.push_back(c);
    }

    rep.all_pass = true;
    for (const auto& c : rep.conditions) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

NiceScalingReport check_nice_scaling(const ScalingFamily& fam, double tol) {
    if (fam.levels.size() < 2)
        throw std::invalid_argument("check_nice_scaling: need at least 2 levels");
    for (std::size_t i = 0; i + 1 < fam.levels.size(); ++i)
        if (!(fam.levels[i].eps > fam.levels[i + 1].eps))
            throw std::invalid_argument("check_nice_scaling: eps must strictly decrease");
    for (std::size_t i = 0; i < fam.levels.size(); ++i) {
        auto ivs = fam.levels[i].intervals;
        std::sort(ivs.begin(), ivs.end());
        for (std::size_t j = 0; j + 1 < ivs.size(); ++j)
            if (ivs[j + 1].first < ivs[j].second - tol)
                throw std::invalid_argument("check_nice_scaling: overlap at level " +
                                            std::to_string(i) + " interval " + std::to_string(j));
    }

    NiceScalingReport rep;

    // length sandwich: C1 eps^mu <= |I| <= eps
    {
        ConditionReport c{"length sandwich", true, 0, 0.0};
        for (std::size_t i = 0; i < fam.levels.size() && c.pass; ++i) {
            const double eps = fam.levels[i].eps;
            const double floor_i = fam.c1 * std::pow(eps, fam.mu);
            for (const auto& [lo, hi] : fam.levels[i].intervals) {
                const double len = hi - lo;
                if (len > eps + tol || len < floor_i - tol) {
                    c.pass = false;
                    c.worst_level = i;
                    c.witness = len;
                    break;
                }
            }
        }
        rep.conditions.push_back(c);
    }

    // (i) each finer interval is contained in some coarser interval
    {
        ConditionReport c{"(i) nesting", true, 0, 0.0};
        for (std::size_t a = 0; a < fam.levels.size() && c.pass; ++a) {
            for (std::size_t b = a + 1; b < fam.levels.size() && c.pass; ++b) {
                for (const auto& [lo, hi] : fam.levels[b].intervals) {
                    bool inside = false;
                    for (const auto& [plo, phi] : fam.levels[a].intervals)
                        if (lo >= plo - tol && hi <= phi + tol) {
                            inside = true;
                            break;
                        }
                    if (!inside) {
                        c.pass = false;
                        c.worst_level = b;
                        c.witness = lo;
                        break;
                    }
                }
            }
        }
        rep.conditions.push_back(c);
    }

    // (ii) child counts <= C3 (eps1/eps2)^omega; also fit the tightest pair
    {
        ConditionReport c{"(ii) child count", true, 0, 0.0};
        double fitted_c3 = 0.0;
        std::vector<std::pair<double, double>> fit_pts; // (log ratio, log max count)
        for (std::size_t a = 0; a < fam.levels.size(); ++a) {
            for (std::size_t b = a + 1; b < fam.levels.size(); ++b) {
                const double ratio = fam.levels[a].eps / fam.levels[b].eps;
                std::size_t max_count = 0;
                for (const auto& [plo, phi] : fam.levels[a].intervals) {
                    std::size_t count = 0;
                    for (const auto& [lo, hi] : fam.levels[b].intervals)
                        if (hi >= plo - tol && lo <= phi + tol) ++count;
                    max_count = std::max(max_count, count);
                    const double cap = fam.c3 * std::pow(ratio, fam.omega);
                    if (static_cast<double>(count) > cap && c.pass) {
                        c.pass = false;
                        c.worst_level = a;
                        c.witness = static_cast<double>(count);
                    }
                }
                if (max_count > 0) {
                    fitted_c3 = std::max(
                        fitted_c3, static_cast<double>(max_count) / std::pow(ratio, fam.omega));
                    fit_pts.emplace_back(std::log(ratio),
                                         std::log(static_cast<double>(max_count)));
                }
            }
        }
        rep.fitted_c3 = fitted_c3;
        // least-squares slope of log(max count) vs log(eps ratio)
        if (fit_pts.size() == 1) {
            rep.fitted_omega = fit_pts[0].second / fit_pts[0].first;
        } else if (fit_pts.size() > 1) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (const auto& [x, y] : fit_pts) {
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double n = static_cast<double>(fit_pts.size());
            rep.fitted_omega = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        }
        rep.conditions.push_back(c);
    }

    rep.all_pass = true;
    for (const auto& c : rep.conditions) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

} // namespace specband
