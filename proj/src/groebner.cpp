#include <algorithm>
#include <set>

#include "logchi/ideal.hpp"

namespace logchi {

int MonomialOrder::compare(const ExpVec& a, const ExpVec& b) const {
    auto grevlex_range = [](const ExpVec& x, const ExpVec& y, std::size_t lo,
                            std::size_t hi) -> int {
        unsigned dx = 0, dy = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            dx += x[i];
            dy += y[i];
        }
        if (dx != dy) return dx > dy ? 1 : -1;
        for (std::size_t i = hi; i-- > lo;)
            if (x[i] != y[i]) return x[i] < y[i] ? 1 : -1;
        return 0;
    };
    switch (kind) {
    case OrderKind::Grevlex:
        return grevlex_range(a, b, 0, a.size());
    case OrderKind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
    case OrderKind::Block: {
        int c = grevlex_range(a, b, 0, std::min(block_split, a.size()));
        if (c != 0) return c;
        return grevlex_range(a, b, std::min(block_split, a.size()), a.size());
    }
    }
    return 0;
}

std::string MonomialOrder::cache_key() const {
    switch (kind) {
    case OrderKind::Grevlex: return "grevlex";
    case OrderKind::Lex: return "lex";
    case OrderKind::Block: return "block:" + std::to_string(block_split);
    }
    return "?";
}

namespace {

// Term list sorted strictly descending in the active order.
using OrdTerm = std::pair<ExpVec, Rational>;
using OrdPoly = std::vector<OrdTerm>;

OrdPoly to_ordered(const Poly& p, const MonomialOrder& ord) {
    OrdPoly t(p.terms().begin(), p.terms().end());
    std::sort(t.begin(), t.end(), [&](const OrdTerm& a, const OrdTerm& b) {
        return ord.compare(a.first, b.first) > 0;
    });
    return t;
}

Poly from_ordered(const OrdPoly& t, const ContextPtr& ctx) {
    Poly p = Poly::zero(ctx);
    for (const auto& [e, c] : t) p.add_term(e, c);
    return p;
}

bool divides(const ExpVec& a, const ExpVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

ExpVec exp_lcm(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool coprime(const ExpVec& a, const ExpVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

struct Budget {
    unsigned long long left;
    void spend() {
        if (left == 0)
            throw resource_error("Groebner step budget exceeded; raise --gb-budget");
        --left;
    }
};

// h -= c * x^shift * g, merging sorted term lists.
OrdPoly subtract_multiple(const OrdPoly& h, const Rational& c, const ExpVec& shift,
                          const OrdPoly& g, const MonomialOrder& ord) {
    OrdPoly out;
    out.reserve(h.size() + g.size());
    std::size_t i = 0, j = 0;
    ExpVec shifted(shift.size());
    while (i < h.size() || j < g.size()) {
        if (j < g.size()) {
            for (std::size_t k = 0; k < shift.size(); ++k)
                shifted[k] = g[j].first[k] + shift[k];
        }
        if (j == g.size()) {
            out.push_back(h[i++]);
        } else if (i == h.size()) {
            out.emplace_back(shifted, -c * g[j].second);
            ++j;
        } else {
            int cmp = ord.compare(h[i].first, shifted);
            if (cmp > 0) {
                out.push_back(h[i++]);
            } else if (cmp < 0) {
                out.emplace_back(shifted, -c * g[j].second);
                ++j;
            } else {
                Rational v = h[i].second - c * g[j].second;
                if (v != 0) out.emplace_back(h[i].first, v);
                ++i;
                ++j;
            }
        }
    }
    return out;
}

// Full normal form modulo basis (leading and lower terms reduced).
OrdPoly normal_form(OrdPoly h, const std::vector<OrdPoly>& basis, const MonomialOrder& ord,
                    Budget& budget) {
    OrdPoly remainder;
    while (!h.empty()) {
        bool reduced = false;
        for (const OrdPoly& g : basis) {
            if (g.empty()) continue;
            if (!divides(g.front().first, h.front().first)) continue;
            budget.spend();
            ExpVec shift(h.front().first.size());
            for (std::size_t k = 0; k < shift.size(); ++k)
                shift[k] = h.front().first[k] - g.front().first[k];
            Rational c = h.front().second / g.front().second;
            h = subtract_multiple(h, c, shift, g, ord);
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.push_back(h.front());
            h.erase(h.begin());
        }
    }
    return remainder;
}

OrdPoly s_polynomial(const OrdPoly& f, const OrdPoly& g, const MonomialOrder& ord) {
    const ExpVec lcm = exp_lcm(f.front().first, g.front().first);
    ExpVec sf(lcm.size()), sg(lcm.size());
    for (std::size_t k = 0; k < lcm.size(); ++k) {
        sf[k] = lcm[k] - f.front().first[k];
        sg[k] = lcm[k] - g.front().first[k];
    }
    // lcm/LT(f) * f - lcm/LT(g) * g, leading terms cancel by construction.
    OrdPoly a;
    a.reserve(f.size());
    for (const auto& [e, c] : f) {
        ExpVec ee(e.size());
        for (std::size_t k = 0; k < e.size(); ++k) ee[k] = e[k] + sf[k];
        a.emplace_back(std::move(ee), c / f.front().second);
    }
    return subtract_multiple(a, Rational(1) / g.front().second, sg, g, ord);
}

struct PairKey {
    unsigned lcm_degree;
    ExpVec lcm;
    std::size_t i, j;

    bool operator<(const PairKey& o) const {
        if (lcm_degree != o.lcm_degree) return lcm_degree < o.lcm_degree;
        if (lcm != o.lcm) return lcm < o.lcm;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

// Buchberger with the product and chain criteria. Small systems only;
// correctness and determinism over speed.
std::vector<OrdPoly> buchberger(std::vector<OrdPoly> basis, const MonomialOrder& ord,
                                Budget& budget) {
    basis.erase(std::remove_if(basis.begin(), basis.end(),
                               [](const OrdPoly& p) { return p.empty(); }),
                basis.end());
    std::set<PairKey> pending;
    std::set<std::pair<std::size_t, std::size_t>> handled;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            ExpVec l = exp_lcm(basis[i].front().first, basis[j].front().first);
            pending.insert(PairKey{total_degree(l), std::move(l), i, j});
        }
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs(j);

    while (!pending.empty()) {
        PairKey pk = *pending.begin();
        pending.erase(pending.begin());
        handled.insert({pk.i, pk.j});
        const OrdPoly& f = basis[pk.i];
        const OrdPoly& g = basis[pk.j];
        if (coprime(f.front().first, g.front().first)) continue;
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pk.i || k == pk.j) continue;
            if (!divides(basis[k].front().first, pk.lcm)) continue;
            auto key = [](std::size_t a, std::size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (handled.count(key(pk.i, k)) && handled.count(key(pk.j, k))) chained = true;
        }
        if (chained) continue;
        budget.spend();
        OrdPoly s = normal_form(s_polynomial(f, g, ord), basis, ord, budget);
        if (!s.empty()) {
            basis.push_back(std::move(s));
            push_pairs(basis.size() - 1);
        }
    }
    return basis;
}

std::vector<OrdPoly> reduce_basis(std::vector<OrdPoly> basis, const MonomialOrder& ord,
                                  Budget& budget) {
    // Minimalize: drop members whose leading monomial another one divides.
    std::vector<OrdPoly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (!divides(basis[j].front().first, basis[i].front().first)) continue;
            if (basis[j].front().first == basis[i].front().first && j > i) continue;
            redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // Tail-reduce each member against the rest and normalize monic.
    std::vector<OrdPoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<OrdPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        OrdPoly nf = normal_form(minimal[i], others, ord, budget);
        if (nf.empty()) continue;
        Rational lead = nf.front().second;
        for (auto& [e, c] : nf) c /= lead;
        reduced.push_back(std::move(nf));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const OrdPoly& a, const OrdPoly& b) {
        return ord.compare(a.front().first, b.front().first) > 0;
    });
    return reduced;
}

ContextPtr keep_subcontext(const ContextPtr& ctx, const std::vector<std::size_t>& keep) {
    std::vector<std::string> names;
    names.reserve(keep.size());
    for (std::size_t k : keep) names.push_back(ctx->name(k));
    return make_context(std::move(names));
}

std::string fresh_name(const ContextPtr& ctx, std::string base) {
    std::string name = base;
    int suffix = 0;
    while (ctx->index_of(name)) name = base + std::to_string(suffix++);
    return name;
}

} // namespace

Ideal::Ideal(ContextPtr ctx, std::vector<Poly> gens) : ctx_(std::move(ctx)) {
    if (!ctx_ || ctx_->size() == 0) throw input_error("ideal requires a nonempty context");
    for (auto& g : gens) {
        if (!same_context(g.context(), ctx_))
            throw input_error("ideal generator context mismatch");
        if (!g.is_zero()) gens_.push_back(std::move(g));
    }
}

const std::vector<Poly>& Ideal::groebner(const MonomialOrder& order,
                                         const GbOptions& opts) const {
    auto it = cache_.find(order.cache_key());
    if (it != cache_.end()) return it->second;
    Budget budget{opts.budget};
    std::vector<OrdPoly> basis;
    basis.reserve(gens_.size());
    for (const Poly& g : gens_) basis.push_back(to_ordered(g, order));
    basis = reduce_basis(buchberger(std::move(basis), order, budget), order, budget);
    std::vector<Poly> out;
    out.reserve(basis.size());
    for (const OrdPoly& b : basis) out.push_back(from_ordered(b, ctx_));
    return cache_.emplace(order.cache_key(), std::move(out)).first->second;
}

Poly reduce(const Poly& p, const Ideal& I, const MonomialOrder& order, const GbOptions& opts) {
    if (!same_context(p.context(), I.context()))
        throw input_error("reduce: context mismatch");
    const std::vector<Poly>& gb = I.groebner(order, opts);
    Budget budget{opts.budget};
    std::vector<OrdPoly> basis;
    basis.reserve(gb.size());
    for (const Poly& g : gb) basis.push_back(to_ordered(g, order));
    return from_ordered(normal_form(to_ordered(p, order), basis, order, budget), I.context());
}

bool ideal_contains(const Ideal& I, const Poly& p, const GbOptions& opts) {
    return reduce(p, I, MonomialOrder::grevlex(), opts).is_zero();
}

bool ideal_equal(const Ideal& a, const Ideal& b, const GbOptions& opts) {
    if (!same_context(a.context(), b.context())) return false;
    return a.groebner(MonomialOrder::grevlex(), opts) ==
           b.groebner(MonomialOrder::grevlex(), opts);
}

Ideal saturate(const Ideal& I, const Poly& g, const GbOptions& opts) {
    if (g.is_zero()) throw input_error("saturation by the zero polynomial");
    const ContextPtr& ctx = I.context();
    std::vector<std::string> names;
    names.push_back(fresh_name(ctx, "_w"));
    for (const auto& n : ctx->names()) names.push_back(n);
    ContextPtr ext = make_context(names);

    std::vector<Poly> images;
    images.reserve(ctx->size());
    for (std::size_t i = 0; i < ctx->size(); ++i)
        images.push_back(Poly::variable(ext, i + 1));
    std::vector<Poly> gens;
    for (const Poly& p : I.gens()) gens.push_back(p.compose(ext, images));
    Poly w = Poly::variable(ext, 0);
    gens.push_back(w * g.compose(ext, images) - Poly::constant(ext, Rational(1)));

    Ideal J(ext, std::move(gens));
    const std::vector<Poly>& gb = J.groebner(MonomialOrder::block(1), opts);
    std::vector<Poly> out;
    for (const Poly& p : gb) {
        if (p.degree_in(0) > 0) continue;
        Poly q = Poly::zero(ctx);
        for (const auto& [e, c] : p.terms())
            q.add_term(ExpVec(e.begin() + 1, e.end()), c);
        out.push_back(std::move(q));
    }
    return Ideal(ctx, std::move(out));
}

QuotientDim quotient_dim(const Ideal& I, const GbOptions& opts) {
    const std::vector<Poly>& gb = I.groebner(MonomialOrder::grevlex(), opts);
    const std::size_t n = I.context()->size();
    std::vector<ExpVec> lms;
    MonomialOrder ord = MonomialOrder::grevlex();
    for (const Poly& g : gb) {
        ExpVec lm;
        for (const auto& [e, c] : g.terms())
            if (lm.empty() || ord.compare(e, lm) > 0) lm = e;
        if (total_degree(lm) == 0) return {true, 0}; // unit ideal, empty variety
        lms.push_back(std::move(lm));
    }
    // Zero-dimensional over the closure iff every variable has a pure
    // power among the leading monomials.
    std::vector<unsigned> bound(n, 0);
    for (const ExpVec& lm : lms) {
        std::size_t support = 0, var = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (lm[i] > 0) {
                ++support;
                var = i;
            }
        if (support == 1 && (bound[var] == 0 || lm[var] < bound[var])) bound[var] = lm[var];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (bound[i] == 0) return {false, 0};

    // Count standard monomials under the staircase; anything outside the
    // box bound[] is divisible by a pure power already.
    unsigned long long count = 0;
    ExpVec mono(n, 0);
    auto dominated = [&](const ExpVec& m) {
        for (const ExpVec& lm : lms)
            if (divides(lm, m)) return true;
        return false;
    };
    while (true) {
        if (!dominated(mono)) ++count;
        std::size_t i = 0;
        while (i < n) {
            if (mono[i] + 1 < bound[i]) {
                ++mono[i];
                break;
            }
            mono[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return {true, count};
}

Ideal eliminate(const Ideal& I, const std::vector<std::size_t>& keep, const GbOptions& opts) {
    const ContextPtr& ctx = I.context();
    std::vector<bool> kept(ctx->size(), false);
    for (std::size_t k : keep) {
        if (k >= ctx->size()) throw input_error("eliminate: variable index out of range");
        kept[k] = true;
    }
    std::vector<std::size_t> discard;
    for (std::size_t i = 0; i < ctx->size(); ++i)
        if (!kept[i]) discard.push_back(i);

    std::vector<std::string> names;
    for (std::size_t d : discard) names.push_back(ctx->name(d));
    for (std::size_t k : keep) names.push_back(ctx->name(k));
    ContextPtr perm = make_context(names);
    std::vector<Poly> images(ctx->size(), Poly());
    for (std::size_t i = 0; i < discard.size(); ++i)
        images[discard[i]] = Poly::variable(perm, i);
    for (std::size_t i = 0; i < keep.size(); ++i)
        images[keep[i]] = Poly::variable(perm, discard.size() + i);

    std::vector<Poly> gens;
    for (const Poly& p : I.gens()) gens.push_back(p.compose(perm, images));
    Ideal J(perm, std::move(gens));
    const std::vector<Poly>& gb = J.groebner(MonomialOrder::block(discard.size()), opts);

    ContextPtr sub = keep_subcontext(ctx, keep);
    std::vector<Poly> out;
    for (const Poly& p : gb) {
        bool pure = true;
        for (std::size_t i = 0; i < discard.size() && pure; ++i)
            if (p.degree_in(i) > 0) pure = false;
        if (!pure) continue;
        Poly q = Poly::zero(sub);
        for (const auto& [e, c] : p.terms())
            q.add_term(ExpVec(e.begin() + discard.size(), e.end()), c);
        out.push_back(std::move(q));
    }
    return Ideal(sub, std::move(out));
}

namespace {

// Univariate helpers on single-variable contexts (squarefree test).

Poly uni_derivative(const Poly& p) { return p.partial(0); }

Poly uni_remainder(Poly a, const Poly& b) {
    unsigned db = b.degree();
    Rational lead = b.coefficient_of(0, db).constant_value();
    while (!a.is_zero() && a.degree() >= db) {
        unsigned da = a.degree();
        Rational ca = a.coefficient_of(0, da).constant_value();
        ExpVec shift(1, da - db);
        a = a - b * Poly::monomial(a.context(), shift, ca / lead);
        if (!a.is_zero() && a.degree() == da && a.coefficient_of(0, da).constant_value() != 0)
            throw internal_error("univariate division failed to cancel");
    }
    return a;
}

bool uni_squarefree(const Poly& p) {
    if (p.is_constant()) return true;
    Poly a = p, b = uni_derivative(p);
    // gcd(p, p') constant <=> squarefree
    while (!b.is_zero()) {
        Poly r = uni_remainder(a, b);
        a = b;
        b = r;
    }
    return a.is_constant();
}

} // namespace

bool is_radical_zero_dimensional(const Ideal& I, const GbOptions& opts) {
    const std::size_t n = I.context()->size();
    for (std::size_t v = 0; v < n; ++v) {
        Ideal elim = eliminate(I, {v}, opts);
        // Zero-dimensional: the eliminant ideal is principal; its reduced
        // basis has exactly one member.
        const std::vector<Poly>& gb = elim.groebner(MonomialOrder::grevlex(), opts);
        if (gb.size() != 1)
            throw internal_error("univariate eliminant of a zero-dimensional ideal not principal");
        if (!uni_squarefree(gb.front())) return false;
    }
    return true;
}

std::optional<std::vector<Rational>> try_rational_point(const Ideal& I, const GbOptions& opts) {
    const std::size_t n = I.context()->size();
    const std::vector<Poly>& gb = I.groebner(MonomialOrder::grevlex(), opts);
    std::vector<std::optional<Rational>> value(n);
    std::vector<Poly> work(gb.begin(), gb.end());
    bool progress = true;
    while (progress) {
        progress = false;
        for (Poly& g : work) {
            if (g.is_zero()) continue;
            // substitute known values
            Poly h = g;
            for (std::size_t v = 0; v < n; ++v)
                if (value[v] && h.degree_in(v) > 0) h = h.substitute(v, *value[v]);
            // linear in exactly one unknown?
            std::size_t unknown = n;
            bool linear = true;
            for (std::size_t v = 0; v < n && linear; ++v) {
                unsigned d = h.degree_in(v);
                if (d == 0) continue;
                if (d > 1 || unknown != n) linear = false;
                else unknown = v;
            }
            if (!linear || unknown == n) continue;
            Poly a = h.coefficient_of(unknown, 1);
            Poly b = h.coefficient_of(unknown, 0);
            if (!a.is_constant() || !b.is_constant()) continue;
            Rational av = a.constant_value();
            if (av == 0) continue;
            value[unknown] = -b.constant_value() / av;
            g = Poly::zero(I.context());
            progress = true;
        }
    }
    std::vector<Rational> point;
    for (std::size_t v = 0; v < n; ++v) {
        if (!value[v]) return std::nullopt;
        point.push_back(*value[v]);
    }
    // confirm: every generator vanishes at the point
    for (const Poly& g : gb) {
        Poly h = g;
        for (std::size_t v = 0; v < n; ++v)
            if (h.degree_in(v) > 0) h = h.substitute(v, point[v]);
        if (!h.is_zero()) return std::nullopt;
    }
    return point;
}

} // namespace logchi
