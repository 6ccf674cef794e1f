#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace specband {

struct CoverInterval {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

enum class CoverProvenance { greedy, supplied };

struct ClusterCover {
    double eps = 0.0;
    std::vector<CoverInterval> intervals; // sorted, pairwise disjoint
    std::size_t q = 0;                    // total point count
    double xi = 0.0;                      // log(min occupancy) / log q
    double xi_bar = 0.0;                  // log(max occupancy) / log q
    CoverProvenance provenance = CoverProvenance::greedy;

    std::size_t min_occupancy() const;
    std::size_t max_occupancy() const;
    // Index of the interval containing x, or npos.
    std::size_t find(double x) const;
};

// Left-to-right greedy grouping: start a group at the leftmost uncovered
// point, absorb points while the group diameter stays <= eps; each interval
// is the tight hull of its group.
ClusterCover greedy_cover(const std::vector<double>& points, double eps);

// Wraps caller-supplied intervals (e.g. approximant bands) as a cover of the
// given points. Validates sorting, disjointness, lengths <= eps and that
// every point lands in some interval; empty intervals are dropped.
ClusterCover cover_from_intervals(const std::vector<double>& points,
                                  const std::vector<std::pair<double, double>>& intervals,
                                  double eps, double tol = 0.0);

struct ClusteredCheck {
    bool clustered = false;
    ClusterCover cover;
};

// True iff the greedy cover's min occupancy is >= q^xi_target.
ClusteredCheck check_clustered(const std::vector<double>& points, double eps, double xi_target);

// Exact best achievable min-occupancy over tight consecutive groupings with
// diameter <= eps (dynamic program, guarded to q <= 64). Guards against
// greedy pessimism in tests and small-q reports.
ClusterCover dp_optimal_cover(const std::vector<double>& points, double eps);

struct ConditionReport {
    std::string condition;
    bool pass = false;
    std::size_t worst_level = 0; // index into the supplied sequence
    double witness = 0.0;        // the extremal quantity that decided pass/fail
};

struct UniformLevel {
    std::size_t q = 0;
    double alpha = 0.0;
    double xi = 0.0; // the clustering exponent claimed for this level
    ClusterCover cover;
};

struct UniformReport {
    std::vector<ConditionReport> conditions; // (i)..(iv) in order
    double delta = 0.0;                      // max usable delta for (iii)
    bool all_pass = false;
};

// Conditions of the uniform-clustering definition, evaluated on the supplied
// sequence: (i) scales strictly decrease, (ii) min interval length >=
// C1 * q^(-mu/alpha), (iii) delta-separation of xi and alpha from {0,1} with
// a 1e-3 floor, (iv) xi_bar - xi <= C2 / log q.
UniformReport check_uniform(const std::vector<UniformLevel>& seq, double mu, double c1, double c2);

struct ScalingLevel {
    double eps = 0.0;
    std::vector<std::pair<double, double>> intervals;
};

struct ScalingFamily {
    std::vector<ScalingLevel> levels; // eps strictly decreasing
    double mu = 1.0;
    double omega = 0.5;
    double c1 = 1.0;
    double c3 = 1.0;
};

struct NiceScalingReport {
    std::vector<ConditionReport> conditions; // length sandwich, (i), (ii)
    double fitted_c3 = 0.0;                  // tightest C3 at the declared omega
    double fitted_omega = 0.0;               // least-squares omega over level pairs
    bool all_pass = false;
};

// Containment and child-count conditions of nice scaling over every level
// pair, plus the length sandwich. Reports the tightest admissible constants
// seen in the data.
NiceScalingReport check_nice_scaling(const ScalingFamily& fam, double tol = 0.0);

} // namespace specband
