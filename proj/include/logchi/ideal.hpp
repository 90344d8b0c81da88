#pragma once

#include <map>
#include <optional>
#include <vector>

#include "logchi/order.hpp"
#include "logchi/poly.hpp"

namespace logchi {

struct GbOptions {
    // Counts S-polynomial normal forms plus single reduction steps.
    unsigned long long budget = 1'000'000;
};

// Finitely generated ideal. Reduced Groebner bases are cached per
// monomial order; each cache slot is written once and never mutated
// afterwards, so distinct Ideal values can be used from concurrent
// tasks as long as a single value stays on one task.
class Ideal {
public:
    Ideal(ContextPtr ctx, std::vector<Poly> gens);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Poly>& gens() const { return gens_; }

    // Reduced Groebner basis for the order (monic, inter-reduced,
    // deterministically sorted). Throws resource_error past the budget.
    const std::vector<Poly>& groebner(const MonomialOrder& order = MonomialOrder::grevlex(),
                                      const GbOptions& opts = {}) const;

private:
    ContextPtr ctx_;
    std::vector<Poly> gens_;
    mutable std::map<std::string, std::vector<Poly>> cache_;
};

// Normal form of p modulo the reduced basis of I; zero iff p lies in I.
Poly reduce(const Poly& p, const Ideal& I,
            const MonomialOrder& order = MonomialOrder::grevlex(), const GbOptions& opts = {});

bool ideal_contains(const Ideal& I, const Poly& p, const GbOptions& opts = {});

// Equality via reduced-grevlex-basis comparison (bases are canonical).
bool ideal_equal(const Ideal& a, const Ideal& b, const GbOptions& opts = {});

// I : g^infinity by the auxiliary-variable method (adjoin w, add w*g - 1,
// eliminate w through a block order).
Ideal saturate(const Ideal& I, const Poly& g, const GbOptions& opts = {});

struct QuotientDim {
    bool finite = false;
    unsigned long long dim = 0; // meaningful only when finite
};

// Vector-space dimension of the residue ring (standard monomial count);
// infinite exactly when the ideal is not zero-dimensional. The empty
// variety (unit ideal) has dimension 0.
QuotientDim quotient_dim(const Ideal& I, const GbOptions& opts = {});

// Generators of I intersected with the subring on the kept variables,
// returned over the keep-subcontext (original relative order).
Ideal eliminate(const Ideal& I, const std::vector<std::size_t>& keep,
                const GbOptions& opts = {});

// Exact radicality test for a zero-dimensional ideal: every univariate
// eliminant squarefree. Precondition: quotient_dim(I) finite.
bool is_radical_zero_dimensional(const Ideal& I, const GbOptions& opts = {});

// Best-effort solver: back-substitution through generators that become
// linear in one unknown once earlier values are plugged in. Returns the
// point when the reduced basis is triangular-linear with rational
// solution, nullopt otherwise. Counting never depends on this.
std::optional<std::vector<Rational>> try_rational_point(const Ideal& I,
                                                        const GbOptions& opts = {});

} // namespace logchi
