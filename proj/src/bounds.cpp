#include "specband/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specband {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double sup_width(const DiscriminantData& data) {
    double w = 0.0;
    for (const Band& band : data.bands) w = std::max(w, band.width);
    return w;
}

double min_log_dprime(const PolyContext& ctx) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : ctx.log_dprime) m = std::min(m, x);
    return m;
}

} // namespace

double BoundReport::value() const { return applicable ? std::exp(log_value) : kNan; }

bool BoundReport::hypotheses_ok() const {
    for (const auto& h : hypotheses)
        if (!h.satisfied) return false;
    return true;
}

double cluster_delta(double xi) {
    if (xi >= 1.0) return 0.9;
    return 0.9 * std::min(1.5 * xi - 1.0, 1.0 - xi);
}

BoundReport thouless_bound(const DiscriminantData& data, double sup_norm, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("thouless_bound: T must be > 0");
    const double sb = sup_width(data);
    BoundReport rep;
    rep.kind = "thouless";
    rep.inputs = {{"q", static_cast<double>(data.q)}, {"T", T}, {"sup_norm", sup_norm},
                  {"sup_b", sb}};
    const double sqrt5p1 = std::sqrt(5.0) + 1.0;
    rep.log_value = std::log(4.0) + 2.0 - 2.0 * std::log(sqrt5p1) +
                    2.0 * std::log1p(2.0 * sup_norm) + 6.0 * std::log(T) + 2.0 * std::log(sb);
    return rep;
}

BoundReport central_bound(const DiscriminantData& data, double sup_norm, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("central_bound: T must be > 0");
    const MinAbsResult mn = min_abs_disc_on_line(data.zeros, 1.0 / T);
    BoundReport rep;
    rep.kind = "central";
    rep.inputs = {{"q", static_cast<double>(data.q)},
                  {"T", T},
                  {"sup_norm", sup_norm},
                  {"log_min_abs_disc", mn.log_min},
                  {"argmin_E", mn.e_star}};
    rep.log_value = std::log(4.0) + 4.0 * std::log(T) + 2.0 * std::log1p(2.0 * sup_norm) -
                    2.0 * mn.log_min;
    return rep;
}

PolyContext make_poly_context(std::vector<double> zeros, std::vector<double> log_dprime,
                              double b_tilde_in) {
    if (zeros.size() != log_dprime.size())
        throw std::invalid_argument("make_poly_context: zeros/dprime size mismatch");
    if (!(b_tilde_in > 0.0)) throw std::invalid_argument("make_poly_context: b_tilde must be > 0");
    PolyContext ctx;
    ctx.criticals = critical_points(zeros);
    ctx.zeros = std::move(zeros);
    ctx.log_dprime = std::move(log_dprime);
    ctx.b_tilde = b_tilde_in;
    return ctx;
}

PolyContext make_poly_context(const DiscriminantData& data) {
    std::vector<double> lg(data.q);
    for (std::size_t j = 0; j < data.q; ++j) lg[j] = std::log(std::abs(data.dprime_at_zeros[j]));
    return make_poly_context(data.zeros, std::move(lg), b_tilde(data));
}

RegimeBound lemma31_bound(const PolyContext& ctx, const ClusterCover& cover, double eps,
                          double e) {
    if (!(eps > 0.0)) throw std::invalid_argument("lemma31_bound: eps must be > 0");
    const std::size_t j = associated_zero_index(ctx.zeros, ctx.criticals, e);
    const double z = ctx.zeros[j];
    const double d = std::abs(e - z);
    const std::size_t iv = cover.find(z);
    if (iv == static_cast<std::size_t>(-1))
        throw std::invalid_argument("lemma31_bound: associated zero not covered");
    const std::size_t count = cover.intervals[iv].count;
    const std::size_t q = ctx.zeros.size();

    RegimeBound out;
    out.zeros_in_interval = count;
    out.regime_a = d <= 8.0 * eps; // boundary goes to the A regime
    if (out.regime_a) {
        out.log_value = 2.0 * (std::log(eps) + ctx.log_dprime[j] - 1.0) +
                        static_cast<double>(count) * std::log1p(1.0 / 81.0);
    } else {
        out.log_value = 2.0 * (std::log(eps) - std::log(ctx.b_tilde)) +
                        static_cast<double>(count) * std::log(9.0) -
                        static_cast<double>(q) * std::log(4.0);
    }
    return out;
}

RegimeBound lemma32_bound(const PolyContext& ctx, const ClusterCover& cover, double eps,
                          double phi, double e) {
    if (!(eps > 0.0)) throw std::invalid_argument("lemma32_bound: eps must be > 0");
    RegimeBound out;
    out.hypotheses = {{"0 < phi < 1", phi > 0.0 && phi < 1.0},
                      {"eps < 1/5", eps < 0.2},
                      {"eps^(phi-1) > 5", std::pow(eps, phi - 1.0) > 5.0}};
    for (const auto& h : out.hypotheses)
        if (!h.satisfied) {
            out.applicable = false;
            out.log_value = kNan;
            return out;
        }

    const std::size_t j = associated_zero_index(ctx.zeros, ctx.criticals, e);
    const double z = ctx.zeros[j];
    const double d = std::abs(e - z);
    const std::size_t iv = cover.find(z);
    if (iv == static_cast<std::size_t>(-1))
        throw std::invalid_argument("lemma32_bound: associated zero not covered");
    const std::size_t count = cover.intervals[iv].count;
    const std::size_t q = ctx.zeros.size();

    out.zeros_in_interval = count;
    out.regime_a = d <= std::pow(eps, phi);
    if (out.regime_a) {
        out.log_value = 2.0 * (std::log(eps) + ctx.log_dprime[j] - 1.0) +
                        static_cast<double>(count) *
                            std::log1p(0.25 * std::pow(eps, 2.0 - 2.0 * phi));
    } else {
        out.log_value = 2.0 * (std::log(eps) - std::log(ctx.b_tilde)) +
                        static_cast<double>(count) * std::log(9.0) +
                        2.0 * static_cast<double>(q) *
                            std::log1p(-4.0 * std::pow(eps, 1.0 - phi));
    }
    return out;
}

BoundReport lemma33_bound(const PolyContext& ctx, const ClusterCover& cover, double alpha,
                          double xi) {
    const std::size_t q = ctx.zeros.size();
    const double eps = std::pow(static_cast<double>(q), -1.0 / alpha);
    BoundReport rep;
    rep.kind = "lemma33";
    rep.hypotheses = {
        {"0 < alpha < 1", alpha > 0.0 && alpha < 1.0},
        {"2/3 < xi <= 1", xi > 2.0 / 3.0 && xi <= 1.0},
        {"cover eps = q^(-1/alpha)", std::abs(cover.eps - eps) <= 1e-9 * eps},
        {"min occupancy >= q^xi",
         static_cast<double>(cover.min_occupancy()) >=
             std::pow(static_cast<double>(q), xi)}};
    const double delta = cluster_delta(xi);
    rep.inputs = {{"q", static_cast<double>(q)}, {"alpha", alpha}, {"xi", xi},
                  {"C", kClusterC},              {"delta", delta}};
    if (!rep.hypotheses_ok()) {
        rep.applicable = false;
        rep.log_value = kNan;
        return rep;
    }
    const double floor_log = std::min(min_log_dprime(ctx), -std::log(ctx.b_tilde));
    rep.log_value = -2.0 + 2.0 * floor_log +
                    kClusterC * std::pow(static_cast<double>(q), delta);
    return rep;
}

BoundReport cluster_bound(const DiscriminantData& data, double sup_norm, double T, double alpha,
                          double xi, double c, double delta_override) {
    if (!(T > 0.0)) throw std::invalid_argument("cluster_bound: T must be > 0");
    const std::size_t q = data.q;
    const double eps = std::pow(static_cast<double>(q), -1.0 / alpha);
    const double delta = delta_override > 0.0 ? delta_override : cluster_delta(xi);

    BoundReport rep;
    rep.kind = "cluster";
    rep.inputs = {{"q", static_cast<double>(q)}, {"T", T},     {"sup_norm", sup_norm},
                  {"alpha", alpha},              {"xi", xi},   {"C", c},
                  {"delta", delta},              {"eps", eps}};
    bool clustered = false;
    if (xi > 2.0 / 3.0 && alpha > 0.0 && alpha < 1.0)
        clustered = check_clustered(data.zeros, eps, xi).clustered;
    rep.hypotheses = {{"T <= q^(1/alpha)", T <= std::pow(static_cast<double>(q), 1.0 / alpha)},
                      {"0 < alpha < 1", alpha > 0.0 && alpha < 1.0},
                      {"xi > 2/3", xi > 2.0 / 3.0},
                      {"zeros (q^(-1/alpha), xi)-clustered", clustered}};
    if (!rep.hypotheses_ok()) {
        rep.applicable = false;
        rep.log_value = kNan;
        return rep;
    }
    const double sb = sup_width(data);
    rep.log_value = std::log(4.0) + 2.0 + 2.0 * std::log1p(2.0 * sup_norm) + 4.0 * std::log(T) +
                    2.0 * std::log(sb) - c * std::pow(static_cast<double>(q), delta);
    return rep;
}

MultiscaleHypothesis multiscale_hypothesis(const std::vector<double>& alphas,
                                           const std::vector<double>& xis, double mu,
                                           double omega, double zeta_margin) {
    if (alphas.size() != xis.size())
        throw std::invalid_argument("multiscale_hypothesis: alpha/xi size mismatch");
    if (!(mu >= 1.0)) throw std::invalid_argument("multiscale_hypothesis: mu must be >= 1");
    if (!(omega > 0.0 && omega < 1.0))
        throw std::invalid_argument("multiscale_hypothesis: omega must lie in (0,1)");
    if (omega >= mu) throw std::invalid_argument("multiscale_hypothesis: omega >= mu");
    MultiscaleHypothesis out;
    out.lhs = 2.0 * omega * (mu - 1.0) / (mu - omega) + zeta_margin;
    out.all = true;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double rhs = xis[i] * alphas[i];
        out.ok.push_back(out.lhs < rhs);
        out.margins.push_back(rhs - out.lhs);
        out.all = out.all && out.ok.back();
    }
    return out;
}

double full_line_bound(double p_plus, double p_minus, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("full_line_bound: T must be > 0");
    if (p_plus < 0.0 || p_plus > 1.0 || p_minus < 0.0 || p_minus > 1.0)
        throw std::invalid_argument("full_line_bound: tail probabilities must lie in [0,1]");
    return T * T * (p_plus + p_minus);
}

ExponentConclusion exponents_from_bounds(const std::vector<double>& qs,
                                         const std::vector<double>& bounds, double alpha,
                                         DecayMode mode, double eps_param) {
    if (qs.size() != bounds.size() || qs.size() < 2)
        throw std::invalid_argument("exponents_from_bounds: need matching sequences, length >= 2");
    for (std::size_t i = 0; i + 1 < qs.size(); ++i)
        if (!(qs[i] < qs[i + 1]))
            throw std::invalid_argument("exponents_from_bounds: q sequence must increase");
    for (double b : bounds)
        if (!(b > 0.0)) throw std::invalid_argument("exponents_from_bounds: bounds must be > 0");

    ExponentConclusion out;
    out.inf_ratio = std::numeric_limits<double>::infinity();
    out.sup_ratio = 0.0;
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        const double r = qs[i + 1] / qs[i];
        out.inf_ratio = std::min(out.inf_ratio, r);
        out.sup_ratio = std::max(out.sup_ratio, r);
    }
    // Any finite increasing sequence has min ratio > 1; requiring the ratios
    // to stay above a fixed margin is the finite-sample stand-in for
    // inf a_{n+1}/a_n > 1, and separates q_l = 2^l or F_l from q_l = l.
    out.exponential_growth =
        out.inf_ratio >= kGrowthRatioFloor && std::isfinite(out.sup_ratio);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double x = std::log(qs[i]);
        const double y = std::log(bounds[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(qs.size());
    out.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    if (mode == DecayMode::polynomial) {
        if (!(eps_param > 0.0))
            throw std::invalid_argument("exponents_from_bounds: polynomial mode needs eps > 0");
        out.decay_verified = out.fitted_slope <= -eps_param + 1e-9;
        if (out.decay_verified) {
            out.conclusions.push_back("alpha_l^- <= alpha");
            if (out.exponential_growth) out.conclusions.push_back("alpha_l^+ <= alpha");
        }
    } else {
        // local slopes must steepen monotonically and end below -1
        std::vector<double> slopes;
        for (std::size_t i = 0; i + 1 < qs.size(); ++i)
            slopes.push_back((std::log(bounds[i + 1]) - std::log(bounds[i])) /
                             (std::log(qs[i + 1]) - std::log(qs[i])));
        bool steepening = true;
        for (std::size_t i = 0; i + 1 < slopes.size(); ++i)
            if (!(slopes[i + 1] < slopes[i])) steepening = false;
        out.decay_verified = steepening && slopes.back() <= -1.0;
        if (out.decay_verified) {
            out.conclusions.push_back("alpha_u^- <= alpha");
            if (out.exponential_growth) out.conclusions.push_back("alpha_u^+ <= alpha");
        }
    }
    (void)alpha;
    return out;
}

} // namespace specband
