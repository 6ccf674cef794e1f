#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace specband {

enum class PotentialKind { fibonacci, periodic, file, constant };

// A bounded real sequence V_1..V_N together with the rule that generated it.
// Values are immutable after construction and safe to share across threads.
struct Potential {
    std::vector<double> values; // V_n stored at values[n-1]
    PotentialKind kind = PotentialKind::file;
    double lambda = 0.0;        // fibonacci coupling
    std::size_t period = 0;     // periodic kind
    double constant = 0.0;      // constant kind
    double sup_norm = 0.0;

    std::size_t size() const { return values.size(); }

    // 1-based site access within the stored range.
    double at(std::size_t n) const;

    // Whole-line extension V_n for n in Z. Defined for the generator kinds
    // (fibonacci by its formula, constant, periodic by tiling); a file
    // potential has no canonical extension and throws.
    bool extends_to_integers() const;
    double value_at(long long n) const;
};

// lambda * chi_[1-theta,1)(n*theta mod 1), theta = (sqrt(5)-1)/2, at any
// integer site. Sites beyond |n| = 10^7 are rejected: n*theta mod 1 loses
// the digits that decide boundary sites long before that.
double fibonacci_site(double lambda, long long n);

Potential fibonacci_potential(double lambda, std::size_t n);
Potential constant_potential(double c, std::size_t n);
Potential potential_from_values(std::vector<double> values);

// q-periodic extension of the first q stored values out to length n.
Potential periodize(const Potential& v, std::size_t q, std::size_t n);

// One real per line; '#' comments and blank lines ignored; LF or CRLF.
Potential load_potential(const std::string& path);
void save_potential(const Potential& v, const std::string& path);

} // namespace specband
