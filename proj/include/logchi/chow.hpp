#pragma once

#include <map>
#include <string>
#include <vector>

#include "logchi/space.hpp"

namespace logchi {

// Integer class in the Chow ring of a product of projective spaces:
// Z[h_1..h_r] / (h_i^{n_i+1}). Exponent vectors run over factors.
class ChowClass {
public:
    explicit ChowClass(std::vector<std::size_t> factor_dims);

    static ChowClass zero(const Space& X);
    static ChowClass one(const Space& X);
    // The hyperplane class of one factor.
    static ChowClass hyperplane(const Space& X, std::size_t factor);

    const std::vector<std::size_t>& factor_dims() const { return dims_; }
    const std::map<std::vector<unsigned>, long long>& terms() const { return terms_; }

    ChowClass operator+(const ChowClass& rhs) const;
    ChowClass operator-(const ChowClass& rhs) const;
    ChowClass operator*(const ChowClass& rhs) const; // truncated product
    ChowClass operator*(long long c) const;

    bool operator==(const ChowClass& rhs) const;

    // Coefficient of h_1^{e_1}...h_r^{e_r}.
    long long coefficient(const std::vector<unsigned>& e) const;
    // Graded piece of total degree d.
    ChowClass graded_part(unsigned d) const;

    // Degree of a pure top-degree class (coefficient of the top monomial).
    // Throws input_error if the class has terms below the top degree.
    long long degree_of_top() const;

    std::string str() const; // canonical form in h (or h1, h2, ...)

private:
    void add_term(const std::vector<unsigned>& e, long long c);

    std::vector<std::size_t> dims_;
    std::map<std::vector<unsigned>, long long> terms_;
};

// Total Chern class of the log cotangent bundle of (X, D): the Euler
// sequence gives c(Omega^1) per factor and the residue sequence adds one
// geometric-series factor per boundary component.
ChowClass chern_log_cotangent(const Space& X);

// (-1)^n deg c_n(Omega^1_X(log D)) = topological Euler characteristic of U.
long long euler_open(const Space& X);

} // namespace logchi
