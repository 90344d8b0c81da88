#pragma once

#include <string>
#include <vector>

#include "logchi/poly.hpp"

namespace logchi {

// Local model of a rank-1 twisted Deligne lattice at a point where k
// boundary components meet, with n_free transverse disc directions.
// lambda_l in (-1, 0] is the residue exponent along component l (semisimple
// monodromy only); shift_l twists the lattice by shift_l times component l.
struct Rank1Data {
    std::size_t k = 0;
    std::size_t n_free = 0;
    std::vector<Rational> lambda;
    std::vector<long long> shift;

    void validate() const;
};

// Stalk cohomology dimensions of a complex placed in degrees
// [lowest_degree, 0]; stored trimmed (no leading/trailing zeros).
class StalkCohomology {
public:
    StalkCohomology() = default; // the zero stalk
    StalkCohomology(int lowest_degree, std::vector<long long> dims);

    bool is_zero() const { return dims_.empty(); }
    int lowest_degree() const { return lowest_; }
    const std::vector<long long>& dims() const { return dims_; }
    long long dim_at(int degree) const;
    long long euler() const; // alternating sum

    bool operator==(const StalkCohomology& rhs) const {
        return lowest_ == rhs.lowest_ && dims_ == rhs.dims_;
    }
    bool operator!=(const StalkCohomology& rhs) const { return !(*this == rhs); }

    std::string str() const;

private:
    int lowest_ = 0;
    std::vector<long long> dims_;
};

// Stalk of the log de Rham complex of the shifted lattice, computed from
// the Koszul complex of the diagonal operators x_l d/dx_l (eigenvalue
// m_l + lambda_l - shift_l on the monomial basis) and d/dy on the free
// directions; Kuenneth product of the per-variable factors, starting in
// degree -(k + n_free).
StalkCohomology stalk_dr(const Rank1Data& data);

// Topological oracle for the same stalk: the extension j^I_{2!} R j^I_{1*}
// of the rank-1 local system, evaluated combinatorially (zero on I, the
// binomial exterior-algebra dims when every residue is trivial). I lists
// the components with shift <= -1; shifts must be I-consistent.
StalkCohomology expected_stalk(const Rank1Data& data, const std::vector<std::size_t>& I);

// Roots (with multiplicity) of the minimal b-polynomial of component l
// for the given shift; in the semisimple rank-1 case the single root
// lambda_l - shift_l, always inside (-shift_l - 1, -shift_l].
std::vector<Rational> b_roots_shifted(const Rank1Data& data, std::size_t l);

struct Stabilization {
    long long q0 = 1;
    std::vector<long long> jumps; // q with DR(M(qD)/M((q-1)D)) non-acyclic
};

// Jump set of the lattice sweep M(qD) and the threshold beyond which the
// stalk is constant: q0 = max(1, 1 + max jump).
Stabilization stabilization_threshold(const Rank1Data& data);

enum class GenerationMode { Star, ShriekStar };
enum class SpanResult { True, False, BudgetExhausted };

// Desk-scale generation checks on the affine line with h = y.
// Star: does D . y^{-v} span every y^{-m}, m >= 1 (true iff v >= 1)?
// ShriekStar: does D . y^{v} equal C[y] (true for every v >= 0)?
// Monotone span saturation with an explicit depth budget; an undecided
// outcome is reported as BudgetExhausted, never as False.
SpanResult weyl_monomial_generation(long long v, GenerationMode mode, int depth = 10);

// A word in the operators y (multiplication) and d (= d/dy), applied
// right to left.
class OperatorWord {
public:
    static OperatorWord parse(const std::string& text);
    const std::vector<char>& ops() const { return ops_; } // 'y' or 'd'

private:
    std::vector<char> ops_;
};

// Exact check of P . y^{s+w} = b(s) . y^s on the symbolic module
// y^s C[y, 1/y], where y d/dy acts diagonally: (y d/dy) y^{s+m} = (s+m) y^{s+m}.
// b is a polynomial in the single variable s.
bool verify_b_identity(long long w, const Poly& b, const OperatorWord& P);

} // namespace logchi
