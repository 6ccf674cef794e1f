#pragma once

#include <cstddef>
#include <vector>

#include "specband/potential.hpp"

namespace specband {

enum class Geometry { half_line, full_line };

// Time-averaged occupation profile a(n) under the Abelian weight
// (2/T) e^{-2t/T}, computed in closed form through the eigenbasis of the
// truncated operator. Half-line: sites 1..N, seed delta_1, Dirichlet cutoff
// at the far end. Full-line: sites -M..M (N = 2M+1), seed delta_0.
struct DynamicsProfile {
    double T = 0.0;
    std::size_t N = 0;
    Geometry geometry = Geometry::half_line;
    long long site_lo = 1; // site index of a[0]
    std::vector<double> a;
    double boundary_mass = 0.0;
    bool reliable = true; // boundary_mass < tail_tol
};

inline constexpr double kDefaultTailTol = 1e-8;
inline constexpr std::size_t kMaxTruncation = 10'000;

// Ballistic-wavefront sizing rule: N >= q_max + ceil(10 T) + 100.
std::size_t required_truncation(std::size_t q_max, double T);

// Full-line runs need a whole-line potential (fibonacci / constant /
// periodic kinds); N is rounded up to odd. The kernel
// 1/(1 + (T(E_j - E_k)/2)^2) is the exact Abelian average of
// cos((E_j - E_k) t).
DynamicsProfile evolve_profile(const Potential& v, double T, std::size_t N, Geometry geometry,
                               double tail_tol = kDefaultTailTol);

// P(q,T): total mass on sites |n| > q.
double p_tail(const DynamicsProfile& profile, std::size_t q);

// sum_n |n|^m a(n).
double moment(const DynamicsProfile& profile, double m);

struct ExponentScan {
    std::vector<double> alphas;
    std::vector<double> Ts;
    // beta[i][j] = log p_tail(ceil(T_j^alpha_i), T_j) / log T_j; NaN marks a
    // cell whose truncation was flagged unreliable.
    std::vector<std::vector<double>> beta;
    // Per alpha: slope of beta over the largest three T values.
    std::vector<double> trend;
};

ExponentScan exponent_scan(const Potential& v, const std::vector<double>& alphas,
                           const std::vector<double>& Ts, Geometry geometry);

} // namespace specband
