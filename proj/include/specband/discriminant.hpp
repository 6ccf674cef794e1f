#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "specband/potential.hpp"

namespace specband {

using complexd = std::complex<double>;

// Entry-magnitude ceiling above which transfer products are flagged and the
// caller must switch to the product-over-zeros log evaluation.
inline constexpr double kTransferOverflow = 1e300;

struct Mat2c {
    complexd a, b, c, d; // [[a, b], [c, d]]
    complexd trace() const { return a + d; }
    complexd det() const { return a * d - b * c; }
};

struct TransferResult {
    Mat2c m;
    bool overflow = false;
};

struct EvalResult {
    complexd value;
    bool overflow = false;
};

struct RealEval {
    double value = 0.0;
    bool overflow = false;
};

enum class EdgeK { k0, kpi };

struct Band {
    double left = 0.0;
    double right = 0.0;
    double zero = 0.0;
    double width = 0.0;
    EdgeK left_k = EdgeK::k0;
    EdgeK right_k = EdgeK::kpi;
};

struct DiscriminantData {
    std::size_t q = 0;
    std::vector<double> zeros;       // E~_{q,1} < ... < E~_{q,q}
    std::vector<double> edges_plus;  // D = +2, sorted, with multiplicity
    std::vector<double> edges_minus; // D = -2, sorted, with multiplicity
    std::vector<Band> bands;
    std::vector<double> dprime_at_zeros;
};

// A_q ... A_1 with A_j = [[z - V_j, -1], [1, 0]].
TransferResult transfer_product(const Potential& v, std::size_t q, complexd z);

// D^q(z) = tr(A_q ... A_1); monic of degree q.
EvalResult discriminant_eval(const Potential& v, std::size_t q, complexd z);
RealEval discriminant_eval_real(const Potential& v, std::size_t q, double e);

// Overflow-free log|D^q(z)| = sum_j log|z - zeros_j|. Returns -inf when z
// coincides with a zero.
double discriminant_log_abs(const std::vector<double>& zeros, complexd z);

// (D^q)'(E) by product-rule propagation through the transfer product.
RealEval discriminant_derivative(const Potential& v, std::size_t q, double e);

// Eigenvalues of H^q(0) and H^q(pi). For q in {1,2} the corner and the
// off-diagonal hopping coincide in the truncation matrix; spectra are
// defined through D(E) = 2 cos k, which gives closed forms.
std::pair<std::vector<double>, std::vector<double>> band_edges(const Potential& v, std::size_t q);

std::vector<double> discriminant_zeros(const Potential& v, std::size_t q);

DiscriminantData band_structure(const Potential& v, std::size_t q);

// Solutions of D^q(E) = 2 cos k, one per band. k in [0, pi].
std::vector<double> eigenvalues_at_k(const Potential& v, std::size_t q, double k);

struct MinAbsResult {
    double e_star = 0.0;
    double log_min = 0.0; // log of the minimum modulus
    double min = 0.0;     // exp(log_min); may underflow to 0 for large q
};

// Numerical minimum of |D^q(E + i*eps)| over E in [zeros.front()-1,
// zeros.back()+1]: coarse grid of max(10q, 1000) points plus golden-section
// refinement around the 20 smallest grid values. Outside the zero hull the
// modulus increases monotonically, so the window contains the global minimum.
MinAbsResult min_abs_disc_on_line(const std::vector<double>& zeros, double eps);

// ---- zero-set utilities shared by the bound evaluators ----

// Critical points of the monic polynomial with the given simple real zeros,
// i.e. the q-1 roots of sum_j 1/(E - z_j), one between each adjacent pair.
std::vector<double> critical_points(const std::vector<double>& zeros);

// Index of the zero associated with E: each E lies in a half-open interval
// [c_{j-1}, c_j) between critical points, and that interval holds one zero.
std::size_t associated_zero_index(const std::vector<double>& zeros,
                                  const std::vector<double>& criticals, double e);

// log|Q'(z_j)| = sum_{i != j} log|z_j - z_i| for every j (monic Q).
std::vector<double> log_abs_dprime_at_zeros(const std::vector<double>& zeros);

// sup over the |D|=2 points (band edges) of the distance to their associated
// zero. A shared edge of two touching bands is a critical point; the
// half-open convention assigns it the zero on its right.
double b_tilde(const DiscriminantData& data);

} // namespace specband
