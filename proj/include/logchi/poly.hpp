#pragma once

#include <map>
#include <string>
#include <vector>

#include "logchi/context.hpp"
#include "logchi/rational.hpp"

namespace logchi {

// Dense fixed-length exponent vector; length always equals the context size.
using ExpVec = std::vector<unsigned>;

inline unsigned total_degree(const ExpVec& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in a std::map keyed by exponent vector (lexicographic on
// the raw vectors), which gives a canonical, deterministic layout; no zero
// coefficient is ever stored. Values are immutable in spirit: all
// operations return fresh polynomials.
class Poly {
public:
    Poly() = default;
    explicit Poly(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static Poly zero(ContextPtr ctx) { return Poly(std::move(ctx)); }
    static Poly constant(ContextPtr ctx, const Rational& c);
    static Poly variable(ContextPtr ctx, std::size_t index);
    static Poly monomial(ContextPtr ctx, ExpVec exp, const Rational& coeff);

    const ContextPtr& context() const { return ctx_; }
    const std::map<ExpVec, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (zero if absent).
    Rational constant_value() const;
    std::size_t term_count() const { return terms_.size(); }
    unsigned degree() const; // total degree; 0 for the zero polynomial
    unsigned degree_in(std::size_t var) const;

    Poly operator-() const;
    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    Poly operator*(const Rational& c) const;
    Poly pow(unsigned e) const;

    bool operator==(const Poly& rhs) const;
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    // Formal partial derivative.
    Poly partial(std::size_t var) const;
    // Euler-operator form x * d/dx, exact.
    Poly log_derive(std::size_t var) const;

    // Ring homomorphism: sends variable i to images[i] (all over target
    // context). The workhorse behind dehomogenization, chart transitions
    // and frame changes.
    Poly compose(const ContextPtr& target, const std::vector<Poly>& images) const;

    // Substitute a rational value for one variable.
    Poly substitute(std::size_t var, const Rational& value) const;

    // Coefficient of var^k viewed as a polynomial in the remaining
    // variables (still over the full context).
    Poly coefficient_of(std::size_t var, unsigned k) const;

    // True when every term has the same total degree in the given block
    // of variables (conicity checks on fiber variables).
    bool homogeneous_in(const std::vector<std::size_t>& vars) const;

    // Canonical form: terms in descending graded order, explicit '*' and '^'.
    std::string str() const;

    // Internal: add c*x^exp in place (used by builders); keeps invariants.
    void add_term(const ExpVec& exp, const Rational& coeff);

private:
    void check_same_context(const Poly& rhs) const;

    ContextPtr ctx_;
    std::map<ExpVec, Rational> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

// Unreduced quotient of polynomials. Operations never require GCDs;
// normalization happens only where a caller extracts numerators.
class RatFunc {
public:
    RatFunc(Poly num, Poly den);
    explicit RatFunc(Poly num);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const ContextPtr& context() const { return num_.context(); }

    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator-() const { return RatFunc(-num_, den_); }
    RatFunc operator+(const RatFunc& rhs) const;
    RatFunc operator-(const RatFunc& rhs) const;
    RatFunc operator*(const RatFunc& rhs) const;
    RatFunc operator/(const RatFunc& rhs) const;

    std::string str() const;

private:
    Poly num_;
    Poly den_;
};

} // namespace logchi
