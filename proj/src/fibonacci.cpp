#include "specband/fibonacci.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <stdexcept>

#include "specband/json_io.hpp"
#include "specband/potential.hpp"
#include "specband/util.hpp"

namespace specband {

namespace {

double containment_tol(double lambda) { return 1e-10 * (1.0 + lambda); }

bool contains(const TypedBand& parent, double lo, double hi, double tol) {
    return lo >= parent.lo - tol && hi <= parent.hi + tol;
}

int find_container(const std::vector<TypedBand>& level, double lo, double hi, double tol) {
    for (std::size_t i = 0; i < level.size(); ++i)
        if (contains(level[i], lo, hi, tol)) return static_cast<int>(i);
    return -1;
}

void check_level(int ell, int cap = kMaxFibLevel) {
    if (ell < 0) throw std::invalid_argument("fibonacci: level must be >= 0");
    if (ell > cap)
        throw std::invalid_argument("fibonacci: level " + std::to_string(ell) +
                                    " exceeds the cap " + std::to_string(cap));
}

} // namespace

std::uint64_t fib(int ell) {
    check_level(ell, 90);
    std::uint64_t a = 1, b = 1; // F_0, F_1
    for (int i = 0; i < ell; ++i) {
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

DiscriminantData sigma_data(double lambda, int ell) {
    check_level(ell);
    if (!(lambda > 0.0)) throw std::invalid_argument("sigma_data: lambda must be > 0");
    if (ell == 0) return band_structure(constant_potential(0.0, 1), 1);
    const std::size_t q = static_cast<std::size_t>(fib(ell));
    return band_structure(fibonacci_potential(lambda, q), q);
}

std::vector<Band> sigma_bands(double lambda, int ell) { return sigma_data(lambda, ell).bands; }

FibonacciHierarchy build_hierarchy(double lambda, int depth) {
    check_level(depth);
    if (!(lambda > 4.0))
        throw std::invalid_argument("build_hierarchy: lambda must exceed 4 (disjoint-band regime)");
    const double tol = containment_tol(lambda);

    FibonacciHierarchy hier;
    hier.lambda = lambda;
    hier.depth = depth;
    hier.levels.resize(depth + 1);
    hier.levels[0] = {TypedBand{-2.0, 2.0, BandType::A, -1, -1}};
    if (depth >= 1) {
        const DiscriminantData s1 = sigma_data(lambda, 1);
        hier.levels[1] = {TypedBand{s1.bands[0].left, s1.bands[0].right, BandType::B, -1, -1}};
    }
    for (int ell = 2; ell <= depth; ++ell) {
        const DiscriminantData data = sigma_data(lambda, ell);
        std::vector<TypedBand>& out = hier.levels[ell];
        out.reserve(data.bands.size());
        for (const Band& band : data.bands) {
            const int in_a = find_container(hier.levels[ell - 1], band.left, band.right, tol);
            const int in_b = find_container(hier.levels[ell - 2], band.left, band.right, tol);
            if ((in_a >= 0) == (in_b >= 0))
                throw numerical_error(
                    "build_hierarchy: band [" + std::to_string(band.left) + ", " +
                    std::to_string(band.right) + "] of sigma_" + std::to_string(ell) +
                    (in_a >= 0 ? " matches both containments" : " matches no containment"));
            TypedBand tb;
            tb.lo = band.left;
            tb.hi = band.right;
            if (in_a >= 0) {
                tb.type = BandType::A;
                tb.parent_level = ell - 1;
                tb.parent_index = in_a;
            } else {
                tb.type = BandType::B;
                tb.parent_level = ell - 2;
                tb.parent_index = in_b;
            }
            out.push_back(tb);
        }
        if (out.size() != fib(ell))
            throw numerical_error("build_hierarchy: sigma_" + std::to_string(ell) + " has " +
                                  std::to_string(out.size()) + " bands, expected F_ell");
    }
    return hier;
}

FibonacciHierarchy load_or_build_hierarchy(double lambda, int depth,
                                           const std::string& cache_dir) {
    if (cache_dir.empty()) return build_hierarchy(lambda, depth);
    char key[64];
    std::snprintf(key, sizeof(key), "hierarchy_%.17g_L%d.json", lambda, depth);
    const std::filesystem::path path = std::filesystem::path(cache_dir) / key;
    if (std::filesystem::exists(path)) return load_hierarchy_json(path.string());
    FibonacciHierarchy hier = build_hierarchy(lambda, depth);
    std::filesystem::create_directories(cache_dir);
    save_hierarchy_json(hier, path.string());
    return hier;
}

std::size_t count_descendants(const FibonacciHierarchy& hier, int level, int index, int m) {
    if (level < 0 || level > hier.depth || m > hier.depth)
        throw std::invalid_argument("count_descendants: level beyond built depth");
    if (m < level) throw std::invalid_argument("count_descendants: m must be >= band level");
    const TypedBand& band = hier.levels[level].at(static_cast<std::size_t>(index));
    const double tol = containment_tol(hier.lambda);
    std::size_t count = 0;
    for (const TypedBand& cand : hier.levels[m])
        if (contains(band, cand.lo, cand.hi, tol)) ++count;
    return count;
}

CoverUm cover_Um(const FibonacciHierarchy& hier, int m) {
    if (m < 0 || m + 1 > hier.depth)
        throw std::invalid_argument("cover_Um: need hierarchy built to level m+1");
    CoverUm cover;
    cover.m = m;
    for (const TypedBand& band : hier.levels[m]) {
        cover.intervals.emplace_back(band.lo, band.hi);
        ++cover.from_sigma_m;
    }
    for (const TypedBand& band : hier.levels[m + 1])
        if (band.type == BandType::B) {
            cover.intervals.emplace_back(band.lo, band.hi);
            ++cover.from_sigma_m1;
        }
    std::sort(cover.intervals.begin(), cover.intervals.end());
    return cover;
}

FibConstants fib_constants(double lambda) {
    if (!(lambda > 4.0)) throw std::invalid_argument("fib_constants: lambda must exceed 4");
    FibConstants c;
    c.lambda = lambda;
    c.eta = (std::sqrt(5.0) + 1.0) / 2.0;
    const double disc = (lambda - 4.0) * (lambda - 4.0) - 12.0;
    c.zeta = disc >= 0.0 ? 0.5 * (lambda - 4.0 + std::sqrt(disc))
                         : std::numeric_limits<double>::quiet_NaN();
    c.r = 2.0 * lambda + 22.0;
    c.alpha_applicable = lambda > 8.0;
    if (std::isfinite(c.zeta) && c.zeta > 1.0) {
        const double log_zeta = std::log(c.zeta);
        c.omega = 2.0 * std::log(c.eta) / log_zeta;
        c.mu_prime = 2.0 * std::log(c.r) / log_zeta;
        c.alpha_bound = (3.0 * std::log(c.r) - std::log(c.zeta * c.eta)) /
                        std::log(c.r * c.eta) * c.omega;
    } else {
        c.omega = c.mu_prime = c.alpha_bound = std::numeric_limits<double>::quiet_NaN();
    }
    return c;
}

DerivativeBoundReport verify_derivative_bounds(double lambda, int k) {
    if (!(lambda > 8.0))
        throw std::invalid_argument("verify_derivative_bounds: lambda must exceed 8");
    if (k < 1) throw std::invalid_argument("verify_derivative_bounds: k must be >= 1");
    const FibConstants c = fib_constants(lambda);
    const std::size_t q = static_cast<std::size_t>(fib(k));
    const Potential v = fibonacci_potential(lambda, q);
    const DiscriminantData data = band_structure(v, q);

    DerivativeBoundReport rep;
    rep.k = k;
    rep.zeta_floor = std::pow(c.zeta, 0.5 * k);
    rep.min_abs_dprime = std::numeric_limits<double>::infinity();
    rep.violating_e = std::numeric_limits<double>::quiet_NaN();

    auto take = [&](double e, double dprime) {
        const double ad = std::abs(dprime);
        rep.max_abs_dprime = std::max(rep.max_abs_dprime, ad);
        if (ad < rep.min_abs_dprime) {
            rep.min_abs_dprime = ad;
            if (k >= 3 && ad < rep.zeta_floor) rep.violating_e = e;
        }
    };
    for (std::size_t j = 0; j < q; ++j) take(data.zeros[j], data.dprime_at_zeros[j]);
    for (const Band& band : data.bands) {
        for (double e : {band.left, band.right}) {
            const RealEval d = discriminant_derivative(v, q, e);
            if (d.overflow)
                throw numerical_error("verify_derivative_bounds: transfer overflow at edge");
            take(e, d.value);
        }
    }
    rep.lower_ok = k < 3 || rep.min_abs_dprime >= rep.zeta_floor;
    rep.fitted_c = rep.max_abs_dprime / std::pow(2.0 * lambda + 22.0, k);
    return rep;
}

AdmissibleT admissible_t(const FibConstants& constants) {
    AdmissibleT t;
    t.lower = constants.omega;
    t.upper = (constants.mu_prime - constants.omega) /
              (3.0 * constants.mu_prime - 2.0 - constants.omega);
    t.empty = !(t.lower < t.upper);
    return t;
}

FibPipelineReport fib_cluster_pipeline(double lambda, double t, int ell_lo, int ell_hi,
                                       const std::string& cache_dir) {
    if (!(lambda > 8.0))
        throw std::invalid_argument("fib_cluster_pipeline: lambda must exceed 8");
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("fib_cluster_pipeline: t must lie in (0,1)");
    if (ell_lo < 2 || ell_hi < ell_lo)
        throw std::invalid_argument("fib_cluster_pipeline: bad level range");
    check_level(ell_hi);

    FibPipelineReport rep;
    rep.lambda = lambda;
    rep.t = t;
    rep.constants = fib_constants(lambda);
    rep.mu = rep.constants.mu_prime + 0.5;
    const double tol = containment_tol(lambda);

    int m_max = 0;
    for (int ell = ell_lo; ell <= ell_hi; ++ell)
        m_max = std::max(m_max, static_cast<int>(std::floor(t * ell)));
    const FibonacciHierarchy hier = load_or_build_hierarchy(lambda, m_max + 1, cache_dir);

    std::vector<UniformLevel> uniform_levels;
    std::vector<double> alphas, xis;
    std::vector<int> distinct_m;
    for (int ell = ell_lo; ell <= ell_hi; ++ell) {
        PipelineLevel lvl;
        lvl.ell = ell;
        lvl.m = static_cast<int>(std::floor(t * ell));
        if (ell < lvl.m + 2)
            throw numerical_error("fib_cluster_pipeline: ell < m+2 at ell=" + std::to_string(ell));
        lvl.q = fib(ell);
        lvl.eps_m = 4.0 * std::exp(1.0) * std::pow(rep.constants.zeta, -0.5 * lvl.m);
        lvl.alpha = -std::log(static_cast<double>(lvl.q)) / std::log(lvl.eps_m);
        lvl.xi = std::log(static_cast<double>(fib(ell - lvl.m - 2))) /
                 std::log(static_cast<double>(lvl.q));

        const DiscriminantData data = sigma_data(lambda, ell);
        const CoverUm um = cover_Um(hier, lvl.m);
        for (double z : data.zeros) {
            bool inside = false;
            for (const auto& [lo, hi] : um.intervals)
                if (z >= lo - tol && z <= hi + tol) {
                    inside = true;
                    break;
                }
            if (!inside)
                throw numerical_error("fib_cluster_pipeline: zero " + std::to_string(z) +
                                      " of D^F_" + std::to_string(ell) +
                                      " escapes the U~_m cover");
        }
        lvl.cover = cover_from_intervals(data.zeros, um.intervals, lvl.eps_m, tol);
        if (lvl.cover.min_occupancy() != fib(ell - lvl.m - 2))
            throw numerical_error(
                "fib_cluster_pipeline: min occupancy != F_{ell-m-2} at ell=" +
                std::to_string(ell));

        uniform_levels.push_back({static_cast<std::size_t>(lvl.q), lvl.alpha, lvl.xi, lvl.cover});
        alphas.push_back(lvl.alpha);
        xis.push_back(lvl.xi);
        if (distinct_m.empty() || distinct_m.back() != lvl.m) distinct_m.push_back(lvl.m);
        rep.levels.push_back(std::move(lvl));
    }

    // Fit the free constants, then check the conditions against them.
    double c1 = std::numeric_limits<double>::infinity();
    double c2 = 0.0;
    for (const auto& lvl : rep.levels) {
        const double scale = std::pow(lvl.eps_m, rep.mu);
        for (const auto& iv : lvl.cover.intervals)
            c1 = std::min(c1, (iv.hi - iv.lo) / scale);
        c2 = std::max(c2, (lvl.cover.xi_bar - lvl.xi) * std::log(static_cast<double>(lvl.q)));
    }
    rep.fitted_c1 = c1;
    rep.fitted_c2 = c2;
    rep.uniform = check_uniform(uniform_levels, rep.mu, c1 * (1.0 - 1e-12), c2 * (1.0 + 1e-12));

    ScalingFamily fam;
    fam.mu = rep.mu;
    fam.omega = rep.constants.omega;
    fam.c1 = c1 * (1.0 - 1e-12);
    fam.c3 = std::numeric_limits<double>::infinity();
    for (int m : distinct_m) {
        const CoverUm um = cover_Um(hier, m);
        fam.levels.push_back(
            {4.0 * std::exp(1.0) * std::pow(rep.constants.zeta, -0.5 * m), um.intervals});
    }
    if (fam.levels.size() >= 2) {
        const NiceScalingReport pre = check_nice_scaling(fam, tol);
        fam.c3 = pre.fitted_c3 * (1.0 + 1e-12);
        rep.scaling = check_nice_scaling(fam, tol);
    } else {
        // A single built scale cannot exercise the pair conditions; report
        // them as not run rather than passing vacuously.
        rep.scaling.all_pass = false;
        rep.scaling.conditions = {{"(i) nesting (needs >= 2 scales)", false, 0, 0.0}};
    }

    rep.multiscale = multiscale_hypothesis(alphas, xis, rep.mu, rep.constants.omega, 0.0);

    const AdmissibleT window = admissible_t(rep.constants);
    rep.hypotheses = {{"lambda > 8", lambda > 8.0},
                      {"omega(lambda) < t", window.lower < t},
                      {"t < (mu'-omega)/(3mu'-2-omega)", t < window.upper},
                      {"uniform clustering (i)-(iv)", rep.uniform.all_pass},
                      {"nice scaling", rep.scaling.all_pass},
                      {"multiscale inequality at every level", rep.multiscale.all}};
    rep.chain_verdict = true;
    for (const auto& h : rep.hypotheses) rep.chain_verdict = rep.chain_verdict && h.satisfied;
    if (rep.chain_verdict) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "alpha_u^+ <= alpha(lambda) = %.6f",
                      rep.constants.alpha_bound);
        rep.conclusion = buf;
    } else {
        rep.conclusion = "chain hypotheses not satisfied at these parameters";
    }
    return rep;
}

} // namespace specband
