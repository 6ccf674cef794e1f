// specband: finite-volume spectral data, dynamical bounds and the exact
// dynamics oracle behind them, exposed as subcommands with machine-readable
// output. Exit codes: 0 success, 1 numerical failure, 2 usage/validation.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "specband/bounds.hpp"
#include "specband/clustering.hpp"
#include "specband/discriminant.hpp"
#include "specband/dynamics.hpp"
#include "specband/fibonacci.hpp"
#include "specband/json_io.hpp"
#include "specband/potential.hpp"
#include "specband/util.hpp"

using namespace specband;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
}

std::string cache_dir_from_env() {
    const char* dir = std::getenv("SPECBAND_CACHE_DIR");
    return dir ? dir : "";
}

// Potential spec mini-language: const:<v>, fib:<lambda>, file:<path>,
// periodic:<path>:<q>.
Potential make_potential(const std::string& spec, std::size_t min_len) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("potential spec needs a kind prefix: " + spec);
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "const")
        return constant_potential(std::stod(rest), std::max<std::size_t>(1, min_len));
    if (kind == "fib")
        return fibonacci_potential(std::stod(rest), std::max<std::size_t>(1, min_len));
    if (kind == "file") {
        Potential v = load_potential(rest);
        if (v.size() < min_len)
            throw std::invalid_argument("file potential shorter than required length " +
                                        std::to_string(min_len));
        return v;
    }
    if (kind == "periodic") {
        const auto second = rest.rfind(':');
        if (second == std::string::npos)
            throw std::invalid_argument("periodic spec is periodic:<path>:<q>");
        const std::string path = rest.substr(0, second);
        const std::size_t q = std::stoul(rest.substr(second + 1));
        return periodize(load_potential(path), q, std::max(q, min_len));
    }
    throw std::invalid_argument("unknown potential kind: " + kind);
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    if (out.empty()) throw std::invalid_argument("empty grid: " + csv);
    return out;
}

std::vector<double> load_points(const std::string& path) {
    Potential v = load_potential(path); // same one-real-per-line format
    std::vector<double> pts = v.values;
    std::sort(pts.begin(), pts.end());
    return pts;
}

// ---- verify: the runtime invariant suite -------------------------------

struct VerifyRow {
    std::string name;
    bool pass = false;
};

void add(std::vector<VerifyRow>& rows, const std::string& name, bool pass) {
    rows.push_back({name, pass});
}

void verify_potential(std::vector<VerifyRow>& rows, std::mt19937_64& rng) {
    const Potential v = fibonacci_potential(3.0, static_cast<std::size_t>(fib(12)));
    bool two_valued = true;
    for (double x : v.values) two_valued = two_valued && (x == 0.0 || x == 3.0);
    add(rows, "potential: fibonacci values two-valued", two_valued);
    bool substitution = true;
    for (int ell = 3; ell <= 12; ++ell) {
        const std::size_t a = fib(ell - 1), b = fib(ell - 2);
        for (std::size_t i = 0; i < b; ++i)
            substitution = substitution && v.values[a + i] == v.values[i];
    }
    add(rows, "potential: prefix substitution", substitution);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> vals(37);
    for (double& x : vals) x = dist(rng);
    const Potential base = potential_from_values(vals);
    const Potential once = periodize(base, 9, 31);
    const Potential twice = periodize(once, 9, 31);
    add(rows, "potential: periodize idempotent", once.values == twice.values);
}

void verify_discriminant(std::vector<VerifyRow>& rows, std::mt19937_64& rng) {
    const Potential zero = constant_potential(0.0, 3);
    const DiscriminantData d3 = band_structure(zero, 3);
    const bool closed = std::abs(d3.zeros[0] + std::sqrt(3.0)) < 1e-10 &&
                        std::abs(d3.zeros[1]) < 1e-10 &&
                        std::abs(d3.zeros[2] - std::sqrt(3.0)) < 1e-10;
    add(rows, "discriminant: free q=3 zeros", closed);

    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> vals(60);
    for (double& x : vals) x = dist(rng);
    const Potential v = potential_from_values(vals);
    const std::size_t q = 60;
    const DiscriminantData data = band_structure(v, q);

    bool residuals = true;
    auto edge_scale = [&](double e) {
        return std::max(1.0, std::abs(discriminant_derivative(v, q, e).value));
    };
    for (double e : data.edges_plus)
        residuals = residuals &&
                    std::abs(discriminant_eval_real(v, q, e).value - 2.0) < 1e-7 * edge_scale(e);
    for (double e : data.edges_minus)
        residuals = residuals &&
                    std::abs(discriminant_eval_real(v, q, e).value + 2.0) < 1e-7 * edge_scale(e);
    add(rows, "discriminant: edge residuals", residuals);

    bool widths = true, interlace = true, derivative = true;
    const double golden = std::sqrt(5.0) + 1.0;
    for (std::size_t j = 0; j < q; ++j) {
        const Band& band = data.bands[j];
        widths = widths && band.width <= 2.0 * M_PI / static_cast<double>(q) + 1e-12;
        if (band.width > 1e-12) {
            interlace = interlace && band.left < band.zero && band.zero < band.right;
            derivative = derivative && std::abs(data.dprime_at_zeros[j]) >=
                                           golden / band.width * (1.0 - 1e-9);
        }
    }
    add(rows, "discriminant: width bound 2pi/q", widths);
    add(rows, "discriminant: zero interlacing", interlace);
    add(rows, "discriminant: derivative floor (sqrt5+1)/b", derivative);

    bool twopath = true;
    std::uniform_real_distribution<double> edist(data.zeros.front() - 0.5,
                                                 data.zeros.back() + 0.5);
    for (int rep = 0; rep < 10; ++rep) {
        const complexd z{edist(rng), 0.01};
        const EvalResult direct = discriminant_eval(v, q, z);
        if (direct.overflow) continue;
        twopath = twopath && std::abs(std::exp(discriminant_log_abs(data.zeros, z)) -
                                      std::abs(direct.value)) <
                                 1e-8 * std::abs(direct.value);
    }
    add(rows, "discriminant: trace vs zero-product evaluation", twopath);

    bool minabs = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (double eps : {0.01, 0.05, 0.1, 0.5, 1.0}) {
        const double cur = min_abs_disc_on_line(data.zeros, eps).log_min;
        minabs = minabs && cur >= prev - 1e-9;
        prev = cur;
    }
    add(rows, "discriminant: min|D| nondecreasing in eps", minabs);
}

void verify_clustering(std::vector<VerifyRow>& rows, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(0.0, 8.0);
    bool invariants = true, dp_ok = true;
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> pts(4 + rng() % 36);
        for (double& p : pts) p = dist(rng);
        std::sort(pts.begin(), pts.end());
        const double eps = 0.05 + 0.2 * static_cast<double>(rep);
        const ClusterCover cover = greedy_cover(pts, eps);
        std::size_t total = 0;
        for (std::size_t i = 0; i < cover.intervals.size(); ++i) {
            const auto& iv = cover.intervals[i];
            invariants = invariants && iv.hi - iv.lo <= eps && iv.count >= 1;
            if (i + 1 < cover.intervals.size())
                invariants = invariants && iv.hi < cover.intervals[i + 1].lo;
            total += iv.count;
        }
        invariants = invariants && total == pts.size();
        dp_ok = dp_ok && dp_optimal_cover(pts, eps).min_occupancy() >= cover.min_occupancy();
    }
    add(rows, "clustering: greedy cover invariants", invariants);
    add(rows, "clustering: dp optimum >= greedy", dp_ok);

    ScalingFamily fam;
    fam.mu = 1.0;
    fam.omega = std::log(2.0) / std::log(3.0);
    fam.c1 = 1.0;
    fam.c3 = 2.0;
    for (int level = 1; level <= 5; ++level) {
        ScalingLevel lvl;
        lvl.eps = std::pow(3.0, -level);
        for (int i = 0; i < (1 << level); ++i) {
            double lo = 0.0;
            int bits = i;
            for (int d = 1; d <= level; ++d) {
                lo += (bits & 1 ? 2.0 : 0.0) * std::pow(3.0, -d);
                bits >>= 1;
            }
            lvl.intervals.emplace_back(lo, lo + lvl.eps);
        }
        std::sort(lvl.intervals.begin(), lvl.intervals.end());
        fam.levels.push_back(std::move(lvl));
    }
    const NiceScalingReport rep = check_nice_scaling(fam, 1e-12);
    add(rows, "clustering: middle-thirds family scales nicely",
        rep.all_pass && std::abs(rep.fitted_omega - fam.omega) < 1e-9);
}

void verify_bounds(std::vector<VerifyRow>& rows, std::mt19937_64& rng) {
    const DiscriminantData d3 = band_structure(constant_potential(0.0, 3), 3);
    const BoundReport t1 = thouless_bound(d3, 0.0, 1.0);
    const BoundReport t2 = thouless_bound(d3, 0.0, 2.0);
    add(rows, "bounds: thouless value and T^6 scaling",
        std::abs(t1.value() - 11.289487) < 1e-4 &&
            std::abs(t2.log_value - t1.log_value - 6.0 * std::log(2.0)) < 1e-12);

    const std::size_t q = 12;
    const DiscriminantData data = band_structure(constant_potential(0.0, q), q);
    const PolyContext ctx = make_poly_context(data);
    std::vector<std::pair<double, double>> hulls;
    for (std::size_t j = 0; j < q; j += 2) hulls.emplace_back(data.zeros[j], data.zeros[j + 1]);
    double eps = 0.0;
    for (const auto& [lo, hi] : hulls) eps = std::max(eps, hi - lo);
    const ClusterCover cover = cover_from_intervals(data.zeros, hulls, eps);
    bool dominated = true;
    std::uniform_real_distribution<double> edist(-2.5, 2.5);
    for (int i = 0; i < 60; ++i) {
        const double e = edist(rng);
        const RegimeBound r = lemma31_bound(ctx, cover, eps, e);
        double direct = 0.0;
        for (double z : data.zeros) direct += std::log((e - z) * (e - z) + eps * eps);
        dominated = dominated && direct >= r.log_value - 1e-9;
    }
    add(rows, "bounds: lemma 3.1 dominated by |D(E+i eps)|^2", dominated);
    add(rows, "bounds: full-line arithmetic",
        full_line_bound(0.25, 0.5, 1.0) == 0.75 && full_line_bound(0.0, 0.0, 9.0) == 0.0);
}

void verify_dynamics(std::vector<VerifyRow>& rows, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> vals(140);
    for (double& x : vals) x = dist(rng);
    const Potential v = potential_from_values(vals);
    const DynamicsProfile p = evolve_profile(v, 3.0, 140, Geometry::half_line);
    double sum = 0.0;
    for (double a : p.a) sum += a;
    add(rows, "dynamics: profile normalization", std::abs(sum - 1.0) < 1e-8);
    bool monotone = true;
    double prev = 2.0;
    for (std::size_t qq : {0ul, 10ul, 20ul, 40ul, 80ul}) {
        const double cur = p_tail(p, qq);
        monotone = monotone && cur <= prev + 1e-15;
        prev = cur;
    }
    add(rows, "dynamics: p_tail monotone", monotone);

    const Potential f = fibonacci_potential(5.0, 400);
    const DynamicsProfile a = evolve_profile(f, 4.0, 180, Geometry::half_line);
    const DynamicsProfile b = evolve_profile(f, 4.0, 360, Geometry::half_line);
    add(rows, "dynamics: truncation stability",
        a.reliable && std::abs(p_tail(a, 15) - p_tail(b, 15)) < 1e-8);
}

void verify_fibonacci(std::vector<VerifyRow>& rows) {
    const FibonacciHierarchy hier = build_hierarchy(10.0, 8);
    bool counts = true;
    for (int ell = 0; ell <= 8; ++ell)
        counts = counts && hier.levels[static_cast<std::size_t>(ell)].size() == fib(ell);
    add(rows, "fibonacci: level band counts F_ell", counts);

    bool descendants = true;
    for (int k = 0; k <= 8 && descendants; ++k) {
        for (std::size_t i = 0; i < hier.levels[static_cast<std::size_t>(k)].size(); ++i) {
            const BandType type = hier.levels[static_cast<std::size_t>(k)][i].type;
            for (int m = k; m <= 8; ++m) {
                const std::size_t count = count_descendants(hier, k, static_cast<int>(i), m);
                std::size_t expected;
                if (type == BandType::B)
                    expected = fib(m - k);
                else if (m == k)
                    expected = 1;
                else if (m == k + 1)
                    expected = 0;
                else
                    expected = fib(m - k - 2);
                descendants = descendants && count == expected;
            }
        }
    }
    add(rows, "fibonacci: descendant counts", descendants);

    const FibConstants c8 = fib_constants(8.0);
    const FibConstants c17 = fib_constants(17.0);
    add(rows, "fibonacci: zeta(8)=3 and alpha(17)<1",
        c8.zeta == 3.0 && c17.alpha_bound < 1.0 && !admissible_t(c17).empty);
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out_path) {
    std::mt19937_64 rng(seed);
    std::vector<VerifyRow> rows;
    const bool all = suite == "all";
    if (all || suite == "potential") verify_potential(rows, rng);
    if (all || suite == "discriminant") verify_discriminant(rows, rng);
    if (all || suite == "clustering") verify_clustering(rows, rng);
    if (all || suite == "bounds") verify_bounds(rows, rng);
    if (all || suite == "dynamics") verify_dynamics(rows, rng);
    if (all || suite == "fibonacci") verify_fibonacci(rows);
    if (rows.empty()) throw std::invalid_argument("unknown suite: " + suite);

    std::ostringstream table;
    bool ok = true;
    for (const VerifyRow& row : rows) {
        table << (row.pass ? "PASS  " : "FAIL  ") << row.name << '\n';
        ok = ok && row.pass;
    }
    table << (ok ? "verify: all invariants hold\n" : "verify: FAILURES present\n");
    emit(table.str(), out_path);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-volume spectral data and dynamical bounds for 1d Schrodinger operators"};
    app.require_subcommand(0, 1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker cap (0 = hardware parallelism)");

    std::string potential_spec, out_path, format = "json";

    auto* spectrum = app.add_subcommand("spectrum", "bands, zeros and widths of D^q");
    std::size_t q = 0;
    spectrum->add_option("--potential", potential_spec,
                         "const:<v>|fib:<l>|file:<p>|periodic:<p>:<q>")
        ->required();
    spectrum->add_option("--q", q, "approximant period")->required();
    spectrum->add_option("--format", format, "json|csv");
    spectrum->add_option("--out", out_path, "output path (default stdout)");

    auto* bound = app.add_subcommand("bound", "evaluate a dynamical upper bound");
    std::string kind;
    double T = 0.0, alpha = 0.0, xi = 0.0, cluster_c = kClusterC, delta = -1.0;
    double p_plus = -1.0, p_minus = -1.0;
    bool t_from_alpha = false;
    bound->add_option("--kind", kind, "thouless|central|cluster|full_line")->required();
    bound->add_option("--potential", potential_spec, "potential spec");
    bound->add_option("--q", q, "approximant period");
    bound->add_option("--T", T, "time scale");
    bound->add_flag("--T-from-alpha", t_from_alpha, "set T = q^(1/alpha)");
    bound->add_option("--alpha", alpha, "scale exponent");
    bound->add_option("--xi", xi, "clustering exponent");
    bound->add_option("--C", cluster_c, "clustering-theorem constant override");
    bound->add_option("--delta", delta, "clustering-theorem delta override");
    bound->add_option("--p-plus", p_plus, "half-line tail (full_line kind)");
    bound->add_option("--p-minus", p_minus, "half-line tail (full_line kind)");
    bound->add_option("--out", out_path, "output path");

    auto* cluster = app.add_subcommand("cluster", "covers and clustering checks");
    std::string points_path;
    double eps = 0.0, xi_target = -1.0;
    bool with_dp = false;
    cluster->add_option("--points", points_path, "file of reals, one per line");
    cluster->add_option("--potential", potential_spec, "potential spec (zeros of D^q)");
    cluster->add_option("--q", q, "approximant period");
    cluster->add_option("--eps", eps, "cover scale")->required();
    cluster->add_option("--xi-target", xi_target, "clustering exponent to check");
    cluster->add_flag("--dp", with_dp, "also report the small-q optimal cover");
    cluster->add_option("--out", out_path, "output path");

    auto* dynamics = app.add_subcommand("dynamics", "time-averaged profiles and tails");
    double moment_order = 0.0;
    std::size_t trunc = 0;
    std::string geometry = "half", alphas_csv, ts_csv;
    dynamics->add_option("--potential", potential_spec, "potential spec")->required();
    dynamics->add_option("--T", T, "time scale");
    dynamics->add_option("--q", q, "tail cutoff");
    dynamics->add_option("--N", trunc, "truncation size (default: sizing rule)");
    dynamics->add_option("--geometry", geometry, "half|full");
    dynamics->add_option("--moment", moment_order, "also report sum |n|^m a(n)");
    dynamics->add_option("--alphas", alphas_csv, "scan: comma-separated alpha grid");
    dynamics->add_option("--Ts", ts_csv, "scan: comma-separated T grid");
    dynamics->add_option("--out", out_path, "output path");

    auto* fibonacci = app.add_subcommand("fibonacci", "band hierarchy and the coupling analysis");
    double lambda = 0.0, t_param = 0.0;
    int depth = 12, ell_lo = 10, ell_hi = 14, k_lo = 3, k_hi = 8;
    std::string report = "hierarchy";
    fibonacci->add_option("--lambda", lambda, "coupling")->required();
    fibonacci->add_option("--depth", depth, "hierarchy depth");
    fibonacci->add_option("--report", report, "hierarchy|constants|derivative-bounds|pipeline");
    fibonacci->add_option("--t", t_param, "pipeline scale fraction m(ell) = floor(t ell)");
    fibonacci->add_option("--ell-lo", ell_lo, "pipeline first level");
    fibonacci->add_option("--ell-hi", ell_hi, "pipeline last level");
    fibonacci->add_option("--k-lo", k_lo, "derivative-bounds first level");
    fibonacci->add_option("--k-hi", k_hi, "derivative-bounds last level");
    fibonacci->add_option("--out", out_path, "output path");

    auto* exponents = app.add_subcommand("exponents", "transport conclusions from bound sequences");
    std::string data_path, mode = "polynomial";
    double eps_param = 0.0;
    exponents->add_option("--data", data_path, "csv lines q,bound")->required();
    exponents->add_option("--alpha", alpha, "candidate exponent")->required();
    exponents->add_option("--mode", mode, "polynomial|superpolynomial");
    exponents->add_option("--eps", eps_param, "polynomial decay exponent");
    exponents->add_option("--out", out_path, "output path");

    auto* verify = app.add_subcommand("verify", "run the runtime invariant suite");
    std::string suite = "all";
    std::uint64_t seed = 7;
    verify->add_option("--suite", suite,
                       "all|potential|discriminant|clustering|bounds|dynamics|fibonacci");
    verify->add_option("--seed", seed, "rng seed");
    verify->add_option("--out", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    set_max_threads(threads);

    try {
        if (*spectrum) {
            const Potential v = make_potential(potential_spec, q);
            const DiscriminantData data = band_structure(v, q);
            if (format == "csv")
                emit(spectrum_csv(data), out_path);
            else
                emit(to_json(data).dump(2) + "\n", out_path);
        } else if (*bound) {
            if (kind == "full_line") {
                if (p_plus < 0.0 || p_minus < 0.0 || !(T > 0.0))
                    throw std::invalid_argument("full_line needs --p-plus, --p-minus, --T");
                ojson j;
                j["kind"] = "full_line";
                j["T"] = T;
                j["p_plus"] = p_plus;
                j["p_minus"] = p_minus;
                j["value"] = full_line_bound(p_plus, p_minus, T);
                emit(j.dump(2) + "\n", out_path);
            } else {
                if (potential_spec.empty() || q == 0)
                    throw std::invalid_argument("bound needs --potential and --q");
                if (t_from_alpha) {
                    if (!(alpha > 0.0))
                        throw std::invalid_argument("--T-from-alpha needs --alpha > 0");
                    T = std::pow(static_cast<double>(q), 1.0 / alpha);
                }
                if (!(T > 0.0)) throw std::invalid_argument("bound needs --T > 0");
                const Potential v = make_potential(potential_spec, q);
                const DiscriminantData data = band_structure(v, q);
                BoundReport rep;
                if (kind == "thouless")
                    rep = thouless_bound(data, v.sup_norm, T);
                else if (kind == "central")
                    rep = central_bound(data, v.sup_norm, T);
                else if (kind == "cluster")
                    rep = cluster_bound(data, v.sup_norm, T, alpha, xi, cluster_c, delta);
                else
                    throw std::invalid_argument("unknown bound kind: " + kind);
                emit(to_json(rep).dump(2) + "\n", out_path);
            }
        } else if (*cluster) {
            std::vector<double> pts;
            if (!points_path.empty())
                pts = load_points(points_path);
            else if (!potential_spec.empty() && q > 0)
                pts = band_structure(make_potential(potential_spec, q), q).zeros;
            else
                throw std::invalid_argument("cluster needs --points or --potential with --q");
            if (xi_target < 0.0 && !with_dp) {
                emit(to_json(greedy_cover(pts, eps)).dump(2) + "\n", out_path);
            } else {
                ojson j;
                if (xi_target >= 0.0) {
                    const ClusteredCheck res = check_clustered(pts, eps, xi_target);
                    j["xi_target"] = xi_target;
                    j["clustered"] = res.clustered;
                    j["cover"] = to_json(res.cover);
                } else {
                    j["cover"] = to_json(greedy_cover(pts, eps));
                }
                if (with_dp) j["dp_cover"] = to_json(dp_optimal_cover(pts, eps));
                emit(j.dump(2) + "\n", out_path);
            }
        } else if (*dynamics) {
            Geometry geom;
            if (geometry == "full")
                geom = Geometry::full_line;
            else if (geometry == "half")
                geom = Geometry::half_line;
            else
                throw std::invalid_argument("geometry must be half or full");
            if (!alphas_csv.empty() || !ts_csv.empty()) {
                const Potential v = make_potential(potential_spec, 1);
                const ExponentScan scan =
                    exponent_scan(v, parse_grid(alphas_csv), parse_grid(ts_csv), geom);
                emit(exponent_scan_csv(scan), out_path);
            } else {
                if (!(T > 0.0)) throw std::invalid_argument("dynamics needs --T > 0");
                std::size_t n = trunc > 0 ? trunc : required_truncation(q, T);
                if (geom == Geometry::full_line && trunc == 0) n = 2 * n + 1;
                const Potential v = make_potential(potential_spec, n);
                const DynamicsProfile profile = evolve_profile(v, T, n, geom);
                ojson j = to_json(profile);
                if (q > 0) j["p_tail"] = p_tail(profile, q);
                if (moment_order > 0.0) j["moment"] = moment(profile, moment_order);
                emit(j.dump(2) + "\n", out_path);
            }
        } else if (*fibonacci) {
            if (report == "hierarchy") {
                const FibonacciHierarchy hier =
                    load_or_build_hierarchy(lambda, depth, cache_dir_from_env());
                emit(to_json(hier).dump(2) + "\n", out_path);
            } else if (report == "constants") {
                ojson j = to_json(fib_constants(lambda));
                const AdmissibleT window = admissible_t(fib_constants(lambda));
                j["admissible_t"] = {{"lower", window.lower},
                                     {"upper", window.upper},
                                     {"empty", window.empty}};
                emit(j.dump(2) + "\n", out_path);
            } else if (report == "derivative-bounds") {
                ojson j = ojson::array();
                for (int k = k_lo; k <= k_hi; ++k)
                    j.push_back(to_json(verify_derivative_bounds(lambda, k)));
                emit(j.dump(2) + "\n", out_path);
            } else if (report == "pipeline") {
                if (!(t_param > 0.0))
                    throw std::invalid_argument("pipeline needs --t in (0,1)");
                const FibPipelineReport rep =
                    fib_cluster_pipeline(lambda, t_param, ell_lo, ell_hi, cache_dir_from_env());
                emit(to_json(rep).dump(2) + "\n", out_path);
            } else {
                throw std::invalid_argument("unknown report: " + report);
            }
        } else if (*exponents) {
            std::ifstream in(data_path);
            if (!in) throw std::invalid_argument("cannot open " + data_path);
            std::vector<double> qs, bs;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                const auto comma = line.find(',');
                if (comma == std::string::npos)
                    throw std::invalid_argument("expected q,bound lines in " + data_path);
                qs.push_back(std::stod(line.substr(0, comma)));
                bs.push_back(std::stod(line.substr(comma + 1)));
            }
            const DecayMode decay =
                mode == "superpolynomial" ? DecayMode::superpolynomial : DecayMode::polynomial;
            emit(to_json(exponents_from_bounds(qs, bs, alpha, decay, eps_param)).dump(2) + "\n",
                 out_path);
        } else if (*verify) {
            return cmd_verify(suite, seed, out_path);
        } else {
            std::cout << app.help();
            return 0;
        }
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const numerical_error& err) {
        std::cerr << "numerical failure: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
