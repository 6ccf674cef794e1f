#include "specband/potential.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace specband {

namespace {

constexpr long long kMaxFibSite = 10'000'000;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void check_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("potential: non-finite value");
}

} // namespace

double Potential::at(std::size_t n) const {
    if (n < 1 || n > values.size())
        throw std::invalid_argument("potential: site index out of stored range");
    return values[n - 1];
}

bool Potential::extends_to_integers() const { return kind != PotentialKind::file; }

double Potential::value_at(long long n) const {
    switch (kind) {
        case PotentialKind::fibonacci:
            return fibonacci_site(lambda, n);
        case PotentialKind::constant:
            return constant;
        case PotentialKind::periodic: {
            const long long p = static_cast<long long>(period);
            long long j = ((n - 1) % p + p) % p; // 0-based offset into one period
            return values[static_cast<std::size_t>(j)];
        }
        case PotentialKind::file:
            if (n >= 1 && n <= static_cast<long long>(values.size()))
                return values[static_cast<std::size_t>(n - 1)];
            throw std::invalid_argument("potential: file potential has no whole-line extension");
    }
    throw std::logic_error("potential: unknown kind");
}

double fibonacci_site(double lambda, long long n) {
    if (std::llabs(n) > kMaxFibSite)
        throw std::invalid_argument("fibonacci_site: |n| exceeds 1e7 precision cap");
    const double theta = (std::sqrt(5.0) - 1.0) / 2.0;
    const double x = static_cast<double>(n) * theta;
    const double frac = x - std::floor(x);
    return (frac >= 1.0 - theta && frac < 1.0) ? lambda : 0.0;
}

Potential fibonacci_potential(double lambda, std::size_t n) {
    if (!(lambda > 0.0)) throw std::invalid_argument("fibonacci_potential: lambda must be > 0");
    if (n == 0) throw std::invalid_argument("fibonacci_potential: N must be >= 1");
    if (n > static_cast<std::size_t>(kMaxFibSite))
        throw std::invalid_argument("fibonacci_potential: N exceeds 1e7 precision cap");
    Potential v;
    v.kind = PotentialKind::fibonacci;
    v.lambda = lambda;
    v.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        v.values[i] = fibonacci_site(lambda, static_cast<long long>(i) + 1);
    v.sup_norm = lambda; // V_1 = lambda, so the sup is attained
    return v;
}

Potential constant_potential(double c, std::size_t n) {
    if (!std::isfinite(c)) throw std::invalid_argument("constant_potential: non-finite value");
    if (n == 0) throw std::invalid_argument("constant_potential: N must be >= 1");
    Potential v;
    v.kind = PotentialKind::constant;
    v.constant = c;
    v.values.assign(n, c);
    v.sup_norm = std::abs(c);
    return v;
}

Potential potential_from_values(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("potential: empty value list");
    check_finite(values);
    Potential v;
    v.kind = PotentialKind::file;
    v.sup_norm = max_abs(values);
    v.values = std::move(values);
    return v;
}

Potential periodize(const Potential& v, std::size_t q, std::size_t n) {
    if (q == 0) throw std::invalid_argument("periodize: period must be >= 1");
    if (q > v.size()) throw std::invalid_argument("periodize: period exceeds stored length");
    if (n < q) throw std::invalid_argument("periodize: target length shorter than period");
    Potential out;
    out.kind = PotentialKind::periodic;
    out.period = q;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = v.values[i % q];
    out.sup_norm = max_abs({out.values.begin(), out.values.begin() + static_cast<long>(q)});
    return out;
}

Potential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_potential: cannot open " + path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const char* s = line.c_str() + start;
        char* end = nullptr;
        const double x = std::strtod(s, &end);
        bool trailing_junk = false;
        for (const char* p = end; *p; ++p)
            if (*p != ' ' && *p != '\t') trailing_junk = true;
        if (end == s || trailing_junk || !std::isfinite(x))
            throw std::invalid_argument("load_potential: parse error at line " +
                                        std::to_string(lineno) + " of " + path);
        values.push_back(x);
    }
    if (values.empty()) throw std::invalid_argument("load_potential: no values in " + path);
    return potential_from_values(std::move(values));
}

void save_potential(const Potential& v, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_potential: cannot open " + path);
    out.precision(17);
    for (double x : v.values) out << x << '\n';
}

} // namespace specband
