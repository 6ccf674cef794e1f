#include "specband/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "specband/util.hpp"

namespace specband {

namespace {

const char* edge_tag(EdgeK k) { return k == EdgeK::k0 ? "0" : "pi"; }

ojson finite_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

} // namespace

ojson to_json(const DiscriminantData& data) {
    ojson j;
    j["q"] = data.q;
    j["zeros"] = data.zeros;
    ojson bands = ojson::array();
    for (const Band& band : data.bands) {
        ojson b;
        b["left"] = band.left;
        b["right"] = band.right;
        b["zero"] = band.zero;
        b["width"] = band.width;
        b["left_k"] = edge_tag(band.left_k);
        b["right_k"] = edge_tag(band.right_k);
        bands.push_back(std::move(b));
    }
    j["bands"] = std::move(bands);
    j["dprime"] = data.dprime_at_zeros;
    return j;
}

ojson to_json(const ClusterCover& cover) {
    ojson j;
    j["eps"] = cover.eps;
    j["q"] = cover.q;
    j["xi"] = cover.xi;
    j["xi_bar"] = cover.xi_bar;
    ojson ivs = ojson::array();
    for (const CoverInterval& iv : cover.intervals) {
        ojson e;
        e["l"] = iv.lo;
        e["r"] = iv.hi;
        e["count"] = iv.count;
        ivs.push_back(std::move(e));
    }
    j["intervals"] = std::move(ivs);
    return j;
}

ojson to_json(const ConditionReport& report) {
    ojson j;
    j["condition"] = report.condition;
    j["pass"] = report.pass;
    j["worst_level"] = report.worst_level;
    j["witness"] = finite_or_null(report.witness);
    return j;
}

ojson to_json(const UniformReport& report) {
    ojson j;
    ojson conds = ojson::array();
    for (const auto& c : report.conditions) conds.push_back(to_json(c));
    j["conditions"] = std::move(conds);
    j["delta"] = report.delta;
    j["all_pass"] = report.all_pass;
    return j;
}

ojson to_json(const NiceScalingReport& report) {
    ojson j;
    ojson conds = ojson::array();
    for (const auto& c : report.conditions) conds.push_back(to_json(c));
    j["conditions"] = std::move(conds);
    j["fitted_C3"] = finite_or_null(report.fitted_c3);
    j["fitted_omega"] = finite_or_null(report.fitted_omega);
    j["all_pass"] = report.all_pass;
    return j;
}

ojson to_json(const BoundReport& report) {
    ojson j;
    j["kind"] = report.kind;
    ojson inputs;
    for (const auto& [k, v] : report.inputs) inputs[k] = finite_or_null(v);
    j["inputs"] = std::move(inputs);
    j["log_scale"] = true;
    j["log_value"] = report.applicable ? finite_or_null(report.log_value) : ojson(nullptr);
    const double lin = report.applicable ? std::exp(report.log_value) : 0.0;
    j["value"] = report.applicable && std::isfinite(lin) ? ojson(lin) : ojson(nullptr);
    j["applicable"] = report.applicable;
    ojson hyps = ojson::array();
    for (const auto& h : report.hypotheses) {
        ojson e;
        e["name"] = h.name;
        e["satisfied"] = h.satisfied;
        hyps.push_back(std::move(e));
    }
    j["hypotheses"] = std::move(hyps);
    j["notes"] = report.notes;
    return j;
}

ojson to_json(const DynamicsProfile& profile) {
    ojson j;
    j["T"] = profile.T;
    j["N"] = profile.N;
    j["geometry"] = profile.geometry == Geometry::half_line ? "half_line" : "full_line";
    j["a"] = profile.a;
    j["boundary_mass"] = profile.boundary_mass;
    j["site_lo"] = profile.site_lo;
    j["reliable"] = profile.reliable;
    return j;
}

ojson to_json(const FibonacciHierarchy& hier) {
    ojson j;
    j["lambda"] = hier.lambda;
    ojson levels = ojson::array();
    for (int ell = 0; ell <= hier.depth; ++ell) {
        ojson lvl;
        lvl["ell"] = ell;
        ojson bands = ojson::array();
        for (const TypedBand& band : hier.levels[static_cast<std::size_t>(ell)]) {
            ojson b;
            b["l"] = band.lo;
            b["r"] = band.hi;
            b["type"] = band.type == BandType::A ? "A" : "B";
            if (band.parent_level >= 0) {
                ojson p;
                p["ell"] = band.parent_level;
                p["idx"] = band.parent_index;
                b["parent"] = std::move(p);
            } else {
                b["parent"] = nullptr;
            }
            bands.push_back(std::move(b));
        }
        lvl["bands"] = std::move(bands);
        levels.push_back(std::move(lvl));
    }
    j["levels"] = std::move(levels);
    return j;
}

ojson to_json(const FibConstants& constants) {
    ojson j;
    j["lambda"] = constants.lambda;
    j["eta"] = constants.eta;
    j["zeta"] = finite_or_null(constants.zeta);
    j["r"] = constants.r;
    j["omega"] = finite_or_null(constants.omega);
    j["mu_prime"] = finite_or_null(constants.mu_prime);
    j["alpha_bound"] = finite_or_null(constants.alpha_bound);
    j["alpha_applicable"] = constants.alpha_applicable;
    return j;
}

ojson to_json(const DerivativeBoundReport& report) {
    ojson j;
    j["k"] = report.k;
    j["min_abs_dprime"] = report.min_abs_dprime;
    j["max_abs_dprime"] = report.max_abs_dprime;
    j["zeta_floor"] = report.zeta_floor;
    j["lower_ok"] = report.lower_ok;
    j["violating_E"] = finite_or_null(report.violating_e);
    j["fitted_C"] = report.fitted_c;
    return j;
}

ojson to_json(const MultiscaleHypothesis& hyp) {
    ojson j;
    j["lhs"] = hyp.lhs;
    j["ok"] = hyp.ok;
    j["margins"] = hyp.margins;
    j["all"] = hyp.all;
    return j;
}

ojson to_json(const FibPipelineReport& report) {
    ojson j;
    j["lambda"] = report.lambda;
    j["t"] = report.t;
    j["mu"] = report.mu;
    j["constants"] = to_json(report.constants);
    ojson levels = ojson::array();
    for (const PipelineLevel& lvl : report.levels) {
        ojson e;
        e["ell"] = lvl.ell;
        e["m"] = lvl.m;
        e["q"] = lvl.q;
        e["eps_m"] = lvl.eps_m;
        e["alpha"] = lvl.alpha;
        e["xi"] = lvl.xi;
        e["cover"] = to_json(lvl.cover);
        levels.push_back(std::move(e));
    }
    j["levels"] = std::move(levels);
    j["fitted_C1"] = report.fitted_c1;
    j["fitted_C2"] = report.fitted_c2;
    j["uniform"] = to_json(report.uniform);
    j["nice_scaling"] = to_json(report.scaling);
    j["multiscale"] = to_json(report.multiscale);
    ojson hyps = ojson::array();
    for (const auto& h : report.hypotheses) {
        ojson e;
        e["name"] = h.name;
        e["satisfied"] = h.satisfied;
        hyps.push_back(std::move(e));
    }
    j["hypotheses"] = std::move(hyps);
    j["chain_verdict"] = report.chain_verdict;
    j["conclusion"] = report.conclusion;
    return j;
}

ojson to_json(const ExponentConclusion& conclusion) {
    ojson j;
    j["exponential_growth"] = conclusion.exponential_growth;
    j["inf_ratio"] = conclusion.inf_ratio;
    j["sup_ratio"] = conclusion.sup_ratio;
    j["fitted_slope"] = conclusion.fitted_slope;
    j["decay_verified"] = conclusion.decay_verified;
    j["conclusions"] = conclusion.conclusions;
    return j;
}

std::string spectrum_csv(const DiscriminantData& data) {
    std::ostringstream out;
    out << "j,left,right,zero,width,dprime,left_k,right_k\n";
    for (std::size_t j = 0; j < data.q; ++j) {
        const Band& band = data.bands[j];
        out << (j + 1) << ',' << format_sci(band.left) << ',' << format_sci(band.right) << ','
            << format_sci(band.zero) << ',' << format_sci(band.width) << ','
            << format_sci(data.dprime_at_zeros[j]) << ',' << edge_tag(band.left_k) << ','
            << edge_tag(band.right_k) << '\n';
    }
    return out.str();
}

std::string exponent_scan_csv(const ExponentScan& scan) {
    std::ostringstream out;
    out << "alpha,T,beta\n";
    for (std::size_t ai = 0; ai < scan.alphas.size(); ++ai)
        for (std::size_t tj = 0; tj < scan.Ts.size(); ++tj) {
            out << format_sci(scan.alphas[ai]) << ',' << format_sci(scan.Ts[tj]) << ',';
            const double b = scan.beta[ai][tj];
            if (std::isfinite(b))
                out << format_sci(b);
            else
                out << "missing";
            out << '\n';
        }
    for (std::size_t ai = 0; ai < scan.alphas.size(); ++ai) {
        out << "# trend alpha=" << format_sci(scan.alphas[ai]) << " dbeta/dlogT=";
        if (std::isfinite(scan.trend[ai]))
            out << format_sci(scan.trend[ai]);
        else
            out << "missing";
        out << '\n';
    }
    return out.str();
}

void save_hierarchy_json(const FibonacciHierarchy& hier, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_hierarchy_json: cannot open " + path);
    out << to_json(hier).dump(2) << '\n';
}

FibonacciHierarchy load_hierarchy_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_hierarchy_json: cannot open " + path);
    ojson j;
    in >> j;
    FibonacciHierarchy hier;
    hier.lambda = j.at("lambda").get<double>();
    const auto& levels = j.at("levels");
    hier.depth = static_cast<int>(levels.size()) - 1;
    hier.levels.resize(levels.size());
    for (const auto& lvl : levels) {
        const int ell = lvl.at("ell").get<int>();
        auto& out = hier.levels.at(static_cast<std::size_t>(ell));
        for (const auto& b : lvl.at("bands")) {
            TypedBand band;
            band.lo = b.at("l").get<double>();
            band.hi = b.at("r").get<double>();
            band.type = b.at("type").get<std::string>() == "A" ? BandType::A : BandType::B;
            if (!b.at("parent").is_null()) {
                band.parent_level = b.at("parent").at("ell").get<int>();
                band.parent_index = b.at("parent").at("idx").get<int>();
            }
            out.push_back(band);
        }
    }
    return hier;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("write_text: cannot open " + path);
    out << text;
}

} // namespace specband
