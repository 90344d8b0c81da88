#include "logchi/logdr.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "logchi/errors.hpp"

namespace logchi {

void Rank1Data::validate() const {
    if (lambda.size() != k || shift.size() != k)
        throw input_error("Rank1Data: lambda and shift must have length k");
    for (const Rational& l : lambda)
        if (!(l > -1 && l <= 0))
            throw input_error("Rank1Data: residue exponents must lie in (-1, 0]");
}

StalkCohomology::StalkCohomology(int lowest_degree, std::vector<long long> dims)
    : lowest_(lowest_degree), dims_(std::move(dims)) {
    for (long long d : dims_)
        if (d < 0) throw internal_error("negative stalk dimension");
    while (!dims_.empty() && dims_.front() == 0) {
        dims_.erase(dims_.begin());
        ++lowest_;
    }
    while (!dims_.empty() && dims_.back() == 0) dims_.pop_back();
    if (dims_.empty()) lowest_ = 0;
}

long long StalkCohomology::dim_at(int degree) const {
    int idx = degree - lowest_;
    if (idx < 0 || idx >= static_cast<int>(dims_.size())) return 0;
    return dims_[idx];
}

long long StalkCohomology::euler() const {
    long long chi = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        int degree = lowest_ + static_cast<int>(i);
        chi += (degree % 2 == 0 ? 1 : -1) * dims_[i];
    }
    return chi;
}

std::string StalkCohomology::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (i) out << ", ";
        out << "h^" << lowest_ + static_cast<int>(i) << "=" << dims_[i];
    }
    return out.str();
}

StalkCohomology stalk_dr(const Rank1Data& data) {
    data.validate();
    // Per-variable two-term factors in degrees (-1, 0).
    std::vector<std::pair<long long, long long>> factors;
    for (std::size_t l = 0; l < data.k; ++l) {
        bool zero_eigenvalue = (data.lambda[l] == 0 && data.shift[l] >= 0);
        factors.push_back(zero_eigenvalue ? std::make_pair(1LL, 1LL) : std::make_pair(0LL, 0LL));
    }
    for (std::size_t t = 0; t < data.n_free; ++t) factors.emplace_back(1LL, 0LL);

    std::vector<long long> dims{1}; // empty product
    for (const auto& [a, b] : factors) {
        std::vector<long long> next(dims.size() + 1, 0);
        for (std::size_t i = 0; i < dims.size(); ++i) {
            next[i] += dims[i] * a;
            next[i + 1] += dims[i] * b;
        }
        dims = std::move(next);
    }
    return StalkCohomology(-static_cast<int>(factors.size()), std::move(dims));
}

StalkCohomology expected_stalk(const Rank1Data& data, const std::vector<std::size_t>& I) {
    data.validate();
    std::set<std::size_t> in_I(I.begin(), I.end());
    for (std::size_t l : in_I)
        if (l >= data.k) throw input_error("expected_stalk: component index out of range");
    for (std::size_t l = 0; l < data.k; ++l) {
        if (in_I.count(l) && data.shift[l] > -1)
            throw input_error("expected_stalk: components of I need shift <= -1");
        if (!in_I.count(l) && data.shift[l] < 0)
            throw input_error("expected_stalk: components off I need shift >= 0");
    }
    // The point lies on every component; a !-extension along any of them
    // has zero stalk.
    if (!in_I.empty()) return StalkCohomology();
    for (std::size_t l = 0; l < data.k; ++l)
        if (data.lambda[l] != 0) return StalkCohomology(); // nontrivial monodromy

    // R j_* of the trivial rank-1 system at a k-fold crossing: exterior
    // algebra on k generators, perverse shift by k + n_free.
    std::vector<long long> dims(data.k + 1, 0);
    long long binom = 1;
    for (std::size_t j = 0; j <= data.k; ++j) {
        dims[j] = binom;
        binom = binom * static_cast<long long>(data.k - j) / static_cast<long long>(j + 1);
    }
    return StalkCohomology(-static_cast<int>(data.k + data.n_free), std::move(dims));
}

std::vector<Rational> b_roots_shifted(const Rank1Data& data, std::size_t l) {
    data.validate();
    if (l >= data.k) throw input_error("b_roots_shifted: component index out of range");
    return {data.lambda[l] - Rational(static_cast<long>(data.shift[l]))};
}

Stabilization stabilization_threshold(const Rank1Data& data) {
    data.validate();
    Stabilization out;
    bool all_trivial = data.k > 0;
    for (std::size_t l = 0; l < data.k; ++l)
        if (data.lambda[l] != 0) all_trivial = false;
    if (all_trivial) {
        long long min_shift = data.shift[0];
        for (long long a : data.shift) min_shift = std::min(min_shift, a);
        out.jumps.push_back(-min_shift);
    }
    long long max_jump = 0;
    for (long long j : out.jumps) max_jump = std::max(max_jump, j);
    out.q0 = std::max(1LL, max_jump + 1);
    return out;
}

SpanResult weyl_monomial_generation(long long v, GenerationMode mode, int depth) {
    if (v < 0) throw input_error("weyl_monomial_generation: v must be >= 0");
    if (depth < 1) throw input_error("weyl_monomial_generation: depth must be positive");
    const long long start = mode == GenerationMode::Star ? -v : v;
    const long long window = static_cast<long long>(depth) + v;
    std::set<long long> span{start};
    std::vector<long long> targets;
    if (mode == GenerationMode::Star)
        for (int m = 1; m <= depth; ++m) targets.push_back(-m);
    else
        for (int m = 0; m <= depth; ++m) targets.push_back(m);

    auto covered = [&] {
        for (long long t : targets)
            if (!span.count(t)) return false;
        return true;
    };
    // One closure round: multiply by y (exponent +1) and apply d/dy
    // (exponent -1, except d(y^0) = 0). Exponents move by exactly one, so
    // a path from the start to any missed target would have to pass
    // through the window; clipping at the edges cannot hide one.
    auto round = [&] {
        std::set<long long> next = span;
        for (long long e : span) {
            if (e + 1 <= window) next.insert(e + 1);
            if (e != 0 && e - 1 >= -window) next.insert(e - 1);
        }
        return next;
    };
    for (int r = 0; r < depth; ++r) {
        if (covered()) return SpanResult::True;
        std::set<long long> next = round();
        if (next == span) break; // saturated: nothing will ever be added
        span = std::move(next);
    }
    if (covered()) return SpanResult::True;
    if (round() == span) return SpanResult::False;
    return SpanResult::BudgetExhausted;
}

OperatorWord OperatorWord::parse(const std::string& text) {
    OperatorWord word;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
            ++i;
    };
    skip();
    if (i == text.size()) throw input_error("malformed operator word: empty");
    while (i < text.size()) {
        char c = text[i];
        if (c != 'd' && c != 'y')
            throw input_error("malformed operator word: expected 'd' or 'y' at position " +
                              std::to_string(i));
        ++i;
        unsigned rep = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) throw input_error("malformed operator word: missing exponent");
            rep = static_cast<unsigned>(std::stoul(text.substr(start, i - start)));
        }
        for (unsigned r = 0; r < rep; ++r) word.ops_.push_back(c);
        skip();
    }
    return word;
}

bool verify_b_identity(long long w, const Poly& b, const OperatorWord& P) {
    if (w < 1) throw input_error("verify_b_identity: w must be a positive integer");
    const ContextPtr& ctx = b.context();
    if (!ctx || ctx->size() != 1)
        throw input_error("verify_b_identity: b must live in a single-variable context (s)");
    Poly s = Poly::variable(ctx, 0);
    // element = sum of coeff(s) * y^{s+m}, keyed by m
    std::map<long long, Poly> element{{w, Poly::constant(ctx, Rational(1))}};
    const auto& ops = P.ops();
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        std::map<long long, Poly> next;
        for (const auto& [m, coeff] : element) {
            if (*it == 'y') {
                Poly& slot = next.try_emplace(m + 1, Poly::zero(ctx)).first->second;
                slot = slot + coeff;
            } else {
                // d . y^{s+m} = (s+m) y^{s+m-1}
                Poly& slot = next.try_emplace(m - 1, Poly::zero(ctx)).first->second;
                slot = slot + coeff * (s + Poly::constant(ctx, Rational(static_cast<long>(m))));
            }
        }
        for (auto jt = next.begin(); jt != next.end();)
            jt = jt->second.is_zero() ? next.erase(jt) : std::next(jt);
        element = std::move(next);
    }
    if (element.size() != 1) return false;
    const auto& [m, coeff] = *element.begin();
    return m == 0 && coeff == b;
}

} // namespace logchi
