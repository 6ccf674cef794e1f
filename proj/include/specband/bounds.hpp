#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "specband/clustering.hpp"
#include "specband/discriminant.hpp"

namespace specband {

struct Hypothesis {
    std::string name;
    bool satisfied = false;
};

// Every bound is carried in log space end to end; `value()` exponentiates
// when representable. A report with a failed hypothesis is non-applicable
// and carries no value.
struct BoundReport {
    std::string kind;
    std::vector<std::pair<std::string, double>> inputs;
    double log_value = 0.0;
    bool applicable = true;
    std::vector<Hypothesis> hypotheses;
    std::string notes;

    double value() const;
    bool hypotheses_ok() const;
};

// Default explicit constants used when instantiating the clustering bound:
// the proof-visible pair C = 1/8 and delta = 0.9 min(3 xi/2 - 1, 1 - xi)
// (delta = 0.9 when xi = 1). Both are overridable per call and recorded in
// every report.
inline constexpr double kClusterC = 0.125;
double cluster_delta(double xi);

// P(q,T) <= 4e^2/(sqrt5+1)^2 (1+2||V||)^2 T^6 (sup_j b_{q,j})^2.
BoundReport thouless_bound(const DiscriminantData& data, double sup_norm, double T);

// P(q,T) <= 4 T^4 (1+2||V||)^2 (inf_E |D^q(E+i/T)|)^{-2}.
BoundReport central_bound(const DiscriminantData& data, double sup_norm, double T);

// Zero-set context shared by the polynomial lower-bound evaluators:
// critical points define the zone map E -> z(E); derivative magnitudes are
// kept as logs so synthetic clusters with underflowing |Q'| stay usable.
struct PolyContext {
    std::vector<double> zeros;
    std::vector<double> criticals;
    std::vector<double> log_dprime; // log|Q'(z_j)|
    double b_tilde = 0.0;
};

PolyContext make_poly_context(std::vector<double> zeros, std::vector<double> log_dprime,
                              double b_tilde);
PolyContext make_poly_context(const DiscriminantData& data);

struct RegimeBound {
    double log_value = 0.0;
    bool regime_a = false;          // d(E) below the split
    std::size_t zeros_in_interval = 0;
    bool applicable = true;
    std::vector<Hypothesis> hypotheses;
};

// Lower bounds on |Q(E + i eps)|^2 for an eps-covered polynomial, split at
// d(E) = 8 eps.
RegimeBound lemma31_bound(const PolyContext& ctx, const ClusterCover& cover, double eps, double e);

// Split at d(E) = eps^phi; applicable when 0 < phi < 1, eps < 1/5 and
// eps^(phi-1) > 5.
RegimeBound lemma32_bound(const PolyContext& ctx, const ClusterCover& cover, double eps,
                          double phi, double e);

// inf_E |Q(E + i q^{-1/alpha})|^2 >= (1/e^2) min(min|Q'|, 1/b~)^2 e^{C q^d}
// with the explicit (C, delta) recipe above.
BoundReport lemma33_bound(const PolyContext& ctx, const ClusterCover& cover, double alpha,
                          double xi);

// Clustering theorem: log value = log[4e^2 (1+2||V||)^2 T^4 (sup b)^2] -
// C q^delta, applicable when T <= q^{1/alpha}, the zeros are
// (q^{-1/alpha}, xi)-clustered and xi > 2/3.
BoundReport cluster_bound(const DiscriminantData& data, double sup_norm, double T, double alpha,
                          double xi, double c = kClusterC, double delta_override = -1.0);

struct MultiscaleHypothesis {
    double lhs = 0.0;                // 2 omega (mu-1)/(mu-omega) + zeta
    std::vector<bool> ok;            // lhs < xi_l alpha_l per level
    std::vector<double> margins;     // xi_l alpha_l - lhs
    bool all = false;
};

MultiscaleHypothesis multiscale_hypothesis(const std::vector<double>& alphas,
                                           const std::vector<double>& xis, double mu,
                                           double omega, double zeta_margin);

// Full-line reduction P_{delta_0}(q,T) <= T^2 (P+ + P-).
double full_line_bound(double p_plus, double p_minus, double T);

enum class DecayMode { polynomial, superpolynomial };

// Finite-sample floor standing in for "inf_n q_{n+1}/q_n > 1": a finite
// increasing sequence always has min ratio > 1, so growth is declared only
// when every ratio clears this margin.
inline constexpr double kGrowthRatioFloor = 1.1;

struct ExponentConclusion {
    bool exponential_growth = false; // inf ratio > 1 on the supplied sequence
    double inf_ratio = 0.0;
    double sup_ratio = 0.0;
    double fitted_slope = 0.0; // least-squares slope of log bound vs log q
    bool decay_verified = false;
    std::vector<std::string> conclusions; // which alpha exponents are bounded
};

// Matches the decay pattern of the supplied bound sequence against the
// requirements that turn finite-volume bounds into transport-exponent
// conclusions. Polynomial mode checks slope <= -eps; superpolynomial mode
// checks that local slopes steepen without bound on the data (strictly
// decreasing, final slope <= -1).
ExponentConclusion exponents_from_bounds(const std::vector<double>& qs,
                                         const std::vector<double>& bounds, double alpha,
                                         DecayMode mode, double eps_param = 0.0);

} // namespace specband
