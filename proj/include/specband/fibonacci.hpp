#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specband/bounds.hpp"
#include "specband/clustering.hpp"
#include "specband/discriminant.hpp"

namespace specband {

// F_0 = F_1 = 1, F_l = F_{l-1} + F_{l-2}.
std::uint64_t fib(int ell);

inline constexpr int kMaxFibLevel = 25; // F_25 = 121393

enum class BandType { A, B };

struct TypedBand {
    double lo = 0.0;
    double hi = 0.0;
    BandType type = BandType::A;
    int parent_level = -1; // -1: parent is the sigma_{-1} = R convention
    int parent_index = -1;
};

struct FibonacciHierarchy {
    double lambda = 0.0;
    int depth = 0; // levels 0..depth present
    std::vector<std::vector<TypedBand>> levels;
};

struct FibConstants {
    double lambda = 0.0;
    double eta = 0.0;      // (sqrt5 + 1)/2
    double zeta = 0.0;     // (lambda - 4 + sqrt((lambda-4)^2 - 12))/2
    double r = 0.0;        // 2 lambda + 22
    double omega = 0.0;    // 2 log eta / log zeta
    double mu_prime = 0.0; // 2 log r / log zeta
    double alpha_bound = 0.0;
    bool alpha_applicable = false; // lambda > 8
};

// Spectrum of the F_ell-periodic approximant whose first F_ell entries are
// the Fibonacci potential. Level 0 is the free spectrum [-2, 2] by
// convention.
DiscriminantData sigma_data(double lambda, int ell);
std::vector<Band> sigma_bands(double lambda, int ell);

// Labels every band of sigma_ell: A if contained in a band of sigma_{ell-1},
// B if contained in a band of sigma_{ell-2} (sigma_{-1} = R, sigma_0 =
// [-2,2]); a band matching neither or both is a structural error.
FibonacciHierarchy build_hierarchy(double lambda, int depth);

// Cache wrapper: reads/writes <dir>/hierarchy_<lambda>_<depth>.json.
FibonacciHierarchy load_or_build_hierarchy(double lambda, int depth, const std::string& cache_dir);

// Level-m descendants of the band at (level, index) that are contained in
// it. Closed form: F_{m-k} below a type B band, F_{m-k-2} below a type A
// band (m >= k+2; the level k+1 class under a type A band is empty).
std::size_t count_descendants(const FibonacciHierarchy& hier, int level, int index, int m);

struct CoverUm {
    int m = 0;
    std::vector<std::pair<double, double>> intervals; // sorted
    std::size_t from_sigma_m = 0;
    std::size_t from_sigma_m1 = 0; // type B bands of sigma_{m+1}
};

// U~_m: all bands of sigma_m plus the type B bands of sigma_{m+1}; covers
// sigma_k for every k >= m.
CoverUm cover_Um(const FibonacciHierarchy& hier, int m);

FibConstants fib_constants(double lambda);

struct DerivativeBoundReport {
    int k = 0;
    double min_abs_dprime = 0.0;
    double max_abs_dprime = 0.0;
    double zeta_floor = 0.0; // zeta^{k/2}
    bool lower_ok = false;
    double violating_e = 0.0; // valid when !lower_ok
    double fitted_c = 0.0;    // smallest C with max |D'| <= C (2 lambda + 22)^k
};

// |D^{F_k}'| >= zeta^{k/2} at every zero and band edge of sigma_k; fits the
// constant of the (2 lambda + 22)^k upper bound.
DerivativeBoundReport verify_derivative_bounds(double lambda, int k);

struct AdmissibleT {
    double lower = 0.0; // omega(lambda)
    double upper = 0.0; // (mu' - omega) / (3 mu' - 2 - omega)
    bool empty = true;
};

AdmissibleT admissible_t(const FibConstants& constants);

struct PipelineLevel {
    int ell = 0;
    int m = 0;
    std::uint64_t q = 0;
    double eps_m = 0.0; // 4e zeta^{-m/2}
    double alpha = 0.0; // -log q / log eps_m
    double xi = 0.0;    // log F_{ell-m-2} / log F_ell
    ClusterCover cover;
};

struct FibPipelineReport {
    double lambda = 0.0;
    double t = 0.0;
    double mu = 0.0; // mu'(lambda) + 0.5, the pipeline's nice-scaling exponent
    FibConstants constants;
    std::vector<PipelineLevel> levels;
    double fitted_c1 = 0.0;
    double fitted_c2 = 0.0;
    UniformReport uniform;
    NiceScalingReport scaling;
    MultiscaleHypothesis multiscale;
    std::vector<Hypothesis> hypotheses; // the admissible-t window for lambda
    bool chain_verdict = false;
    std::string conclusion;
};

// Assembles the covers U~_{m(ell)} (m(ell) = floor(t ell)) for the zero sets
// of D^{F_ell}, computes the per-level exponents, and runs the uniform
// clustering, nice scaling and multiscale-hypothesis checks. Coverage or
// occupancy mismatches abort with the failing condition.
FibPipelineReport fib_cluster_pipeline(double lambda, double t, int ell_lo, int ell_hi,
                                       const std::string& cache_dir = "");

} // namespace specband
