#include "logchi/sscycle.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "logchi/parse.hpp"

namespace logchi {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Rebuild a polynomial over a context with identical layout (renaming).
Poly rename(const Poly& p, const ContextPtr& target) {
    Poly out = Poly::zero(target);
    for (const auto& [e, c] : p.terms()) out.add_term(e, c);
    return out;
}

// Embed a base-context polynomial into a phase context whose leading
// variables are the base variables.
Poly lift(const Poly& p, const ContextPtr& phase) {
    Poly out = Poly::zero(phase);
    for (const auto& [e, c] : p.terms()) {
        ExpVec ee(phase->size(), 0);
        std::copy(e.begin(), e.end(), ee.begin());
        out.add_term(ee, c);
    }
    return out;
}

RatFunc compose_rational(const Poly& p, const ContextPtr& target,
                         const std::vector<RatFunc>& images) {
    RatFunc acc(Poly::zero(target));
    for (const auto& [e, c] : p.terms()) {
        RatFunc term(Poly::constant(target, c));
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) term = term * images[i];
        acc = acc + term;
    }
    return acc;
}

// Exact division attempt in the polynomial ring; nullopt when not a
// multiple.
std::optional<Poly> try_divide(const Poly& p, const Poly& d) {
    if (d.is_zero()) return std::nullopt;
    MonomialOrder ord = MonomialOrder::grevlex();
    auto leading = [&](const Poly& q) {
        const std::pair<const ExpVec, Rational>* best = nullptr;
        for (const auto& t : q.terms())
            if (!best || ord.compare(t.first, best->first) > 0) best = &t;
        return best;
    };
    const auto* ld = leading(d);
    Poly q = Poly::zero(p.context());
    Poly r = p;
    while (!r.is_zero()) {
        const auto* lr = leading(r);
        ExpVec shift(lr->first.size());
        for (std::size_t i = 0; i < shift.size(); ++i) {
            if (lr->first[i] < ld->first[i]) return std::nullopt;
            shift[i] = lr->first[i] - ld->first[i];
        }
        Poly t = Poly::monomial(p.context(), shift, lr->second / ld->second);
        q = q + t;
        r = r - t * d;
    }
    return q;
}

// Substitute xi_slot -> eta_slot / form and clear denominators exactly:
// sum of slices times form^(maxdeg - deg). The slot keeps its index; only
// its meaning (and display name) changes.
Poly clear_fiber_direction(const Poly& p, std::size_t slot, const Poly& form_lifted) {
    unsigned top = p.degree_in(slot);
    if (top == 0) return p;
    Poly out = Poly::zero(p.context());
    for (unsigned e = 0; e <= top; ++e) {
        Poly slice = p.coefficient_of(slot, e);
        if (slice.is_zero()) continue;
        ExpVec mono(p.context()->size(), 0);
        mono[slot] = e;
        out = out + slice * Poly::monomial(p.context(), mono, Rational(1)) *
                        form_lifted.pow(top - e);
    }
    return out;
}

std::string component_label_list(const Space& X, const std::vector<std::size_t>& comps) {
    std::string s;
    for (std::size_t c : comps) {
        if (!s.empty()) s += ",";
        s += X.boundary()[c].label;
    }
    return s.empty() ? "U" : s;
}

// The vanishing point [p0 : p1] of a P^1 component form.
std::array<Rational, 2> p1_point(const BoundaryComponent& c) {
    return {c.form[1], -c.form[0]};
}

bool chart_sees_component(const Space& X, const std::vector<std::size_t>& dehom,
                          std::size_t comp) {
    const BoundaryComponent& c = X.boundary()[comp];
    std::size_t a;
    if (c.is_coordinate(a)) return dehom[c.factor] != a;
    auto p = p1_point(c);
    return p[dehom[c.factor]] != 0;
}

bool stratum_nonempty(const Space& X, const std::vector<std::size_t>& comps) {
    for (std::size_t i = 0; i < X.factor_count(); ++i) {
        std::size_t here = 0;
        bool has_point = false;
        for (std::size_t c : comps) {
            if (X.boundary()[c].factor != i) continue;
            ++here;
            std::size_t a;
            if (!X.boundary()[c].is_coordinate(a)) has_point = true;
        }
        if (here > X.factor_dim(i)) return false;
        if (has_point && here > 1) return false; // two points of one P^1
    }
    return true;
}

std::vector<std::size_t> charts_seeing(const Space& X, const std::vector<std::size_t>& comps,
                                       std::size_t rotation) {
    std::vector<std::size_t> out;
    const std::size_t n = X.chart_count();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = (i + rotation) % n;
        auto dehom = X.chart_dehom(k);
        bool ok = true;
        for (std::size_t c : comps)
            if (!chart_sees_component(X, dehom, c)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(k);
    }
    return out;
}

struct Frame {
    ContextPtr phase; // renamed fiber coordinates
    // per base var: visible-component index whose log coordinate this is
    std::vector<std::size_t> log_comp;
};

Frame make_frame(const ChartGeometry& g, const std::vector<std::size_t>& j_visible) {
    Frame f;
    const std::size_t n = g.base->size();
    f.log_comp.assign(n, npos);
    for (std::size_t jv : j_visible) f.log_comp[g.visible[jv].dir_var] = jv;
    std::vector<std::string> names = g.base->names();
    for (std::size_t v = 0; v < n; ++v) {
        const std::string& base = g.base->name(v);
        names.push_back(f.log_comp[v] != npos ? "eta_" + base : "xi_" + base);
    }
    f.phase = make_context(names);
    return f;
}

} // namespace

// ---------------------------------------------------------------- section

LogSection::LogSection(const Space& X, std::vector<long long> exponents, Rational scale)
    : exps_(std::move(exponents)), scale_(std::move(scale)) {
    if (exps_.size() != X.boundary().size())
        throw input_error("section exponent list must match the boundary components");
    std::vector<long long> degree(X.factor_count(), 0);
    for (std::size_t c = 0; c < exps_.size(); ++c)
        degree[X.boundary()[c].factor] += exps_[c];
    for (long long d : degree)
        if (d != 0)
            throw input_error("f must have multidegree zero (a rational function on X)");
}

LogSection LogSection::from_expression(const Space& X, const std::string& f_text,
                                       const Rational& scale) {
    // Homogeneous spelling first, then the default chart's affine one.
    Poly num = Poly::zero(X.hom_context()), den = num;
    bool parsed = false;
    try {
        ParsedExpr e = parse_expr(f_text, X.hom_context());
        if (auto* p = std::get_if<Poly>(&e)) {
            num = *p;
            den = Poly::constant(X.hom_context(), Rational(1));
        } else {
            num = std::get<RatFunc>(e).num();
            den = std::get<RatFunc>(e).den();
        }
        parsed = true;
    } catch (const input_error&) {
    }
    if (!parsed) {
        ChartGeometry g = make_chart_geometry(X, X.default_chart());
        ParsedExpr e = parse_expr(f_text, g.base);
        Poly anum, aden;
        if (auto* p = std::get_if<Poly>(&e)) {
            anum = *p;
            aden = Poly::constant(g.base, Rational(1));
        } else {
            anum = std::get<RatFunc>(e).num();
            aden = std::get<RatFunc>(e).den();
        }
        num = homogenize(X, g, anum);
        den = homogenize(X, g, aden);
        // Pad with the dehomogenizers so f has multidegree zero.
        for (std::size_t i = 0; i < X.factor_count(); ++i) {
            unsigned dn = 0, dd = 0;
            for (const auto& [e2, c2] : num.terms()) {
                unsigned d = 0;
                for (std::size_t a = 0; a <= X.factor_dim(i); ++a) d += e2[X.hom_var(i, a)];
                dn = std::max(dn, d);
            }
            for (const auto& [e2, c2] : den.terms()) {
                unsigned d = 0;
                for (std::size_t a = 0; a <= X.factor_dim(i); ++a) d += e2[X.hom_var(i, a)];
                dd = std::max(dd, d);
            }
            Poly z = Poly::variable(X.hom_context(), X.hom_var(i, g.dehom[i]));
            if (dn < dd) num = num * z.pow(dd - dn);
            if (dd < dn) den = den * z.pow(dn - dd);
        }
    }
    if (num.is_zero()) throw input_error("f must be a nonzero rational function");

    std::vector<long long> exps(X.boundary().size(), 0);
    auto peel = [&](Poly p, long long sign) {
        for (std::size_t c = 0; c < X.boundary().size(); ++c) {
            Poly form = X.component_form(c);
            while (true) {
                auto q = try_divide(p, form);
                if (!q) break;
                p = *q;
                exps[c] += sign;
            }
        }
        if (!p.is_constant())
            throw input_error("div(f) is not supported on D: leftover factor " + p.str());
    };
    peel(num, +1);
    peel(den, -1);
    return LogSection(X, std::move(exps), scale);
}

RatFunc LogSection::xi_value(const ChartGeometry& g, std::size_t base_var) const {
    RatFunc val(Poly::zero(g.base));
    for (const auto& vc : g.visible) {
        long long e = exps_.at(vc.comp);
        if (e == 0 || vc.dir_var != base_var) continue;
        Poly d = vc.affine_form.partial(base_var) * Rational(static_cast<long>(e));
        val = val + RatFunc(d, vc.affine_form);
    }
    return val * RatFunc(Poly::constant(g.base, scale_));
}

std::string LogSection::f_str(const Space& X) const {
    std::string up, down;
    for (std::size_t c = 0; c < exps_.size(); ++c) {
        long long e = exps_[c];
        if (e == 0) continue;
        std::string piece = "(" + X.component_form(c).str() + ")";
        long long a = e > 0 ? e : -e;
        if (a > 1) piece += "^" + std::to_string(a);
        (e > 0 ? up : down) += piece;
    }
    if (up.empty()) up = "1";
    return down.empty() ? up : up + "/" + down;
}

// ----------------------------------------------------------------- cycles

LagCycle LagCycle::zero_section(const Space&) {
    LagCycle c;
    Component comp;
    comp.label = "zero_section";
    comp.kind = Kind::ZeroSection;
    c.components_.push_back(std::move(comp));
    return c;
}

LagCycle LagCycle::conormal(const Space& X, std::size_t input_chart, const Poly& f_affine,
                            std::string label, const GbOptions& opts) {
    if (X.dim() > 2)
        throw input_error("conormal constructor supports spaces of dimension <= 2");
    if (f_affine.is_zero()) throw input_error("conormal: f vanishes identically");
    ChartGeometry g0 = make_chart_geometry(X, input_chart);
    if (!same_context(f_affine.context(), g0.base))
        throw input_error("conormal: expression not over the chart coordinates");
    Poly hom = homogenize(X, g0, f_affine);

    bool meets_u = false;
    for (std::size_t k = 0; k < X.chart_count(); ++k) {
        ChartGeometry g = make_chart_geometry(X, k);
        Poly f = dehomogenize(X, g, hom);
        Poly unit_product = g.product_of_visible_forms();
        if (!f.is_constant()) {
            Ideal meets = saturate(Ideal(g.base, {f}), unit_product, opts);
            const auto& sat = meets.groebner({}, opts);
            if (!(sat.size() == 1 && sat.front().is_constant())) meets_u = true;
        }
        std::vector<Poly> jac{f};
        for (std::size_t v = 0; v < g.base->size(); ++v) jac.push_back(f.partial(v));
        Ideal sing = saturate(Ideal(g.base, jac), unit_product, opts);
        const auto& gb = sing.groebner({}, opts);
        bool empty = gb.empty() || (gb.size() == 1 && gb.front().is_constant());
        if (!empty)
            throw input_error("conormal: hypersurface is singular on U (chart " + g.label +
                              ")");
    }
    if (!meets_u) throw input_error("conormal: hypersurface does not meet U");

    LagCycle c;
    Component comp;
    comp.label = label.empty() ? "conormal(" + f_affine.str() + ")" : std::move(label);
    comp.kind = Kind::Conormal;
    comp.hom_form = hom;
    c.components_.push_back(std::move(comp));
    return c;
}

ContextPtr toric_frame_context(const ChartGeometry& g) {
    const std::size_t n = g.base->size();
    std::vector<std::size_t> count(n, 0);
    for (const auto& vc : g.visible) ++count[vc.dir_var];
    std::vector<std::string> names = g.base->names();
    for (std::size_t v = 0; v < n; ++v)
        names.push_back((count[v] == 1 ? "eta_" : "xi_") + g.base->name(v));
    return make_context(names);
}

Poly toric_frame_to_ordinary(const ChartGeometry& g, const Poly& p) {
    const std::size_t n = g.base->size();
    std::vector<std::size_t> unique_comp(n, npos);
    std::vector<std::size_t> count(n, 0);
    for (std::size_t i = 0; i < g.visible.size(); ++i) {
        ++count[g.visible[i].dir_var];
        unique_comp[g.visible[i].dir_var] = i;
    }
    std::vector<Poly> images;
    for (std::size_t v = 0; v < n; ++v) images.push_back(Poly::variable(g.phase, v));
    for (std::size_t v = 0; v < n; ++v) {
        Poly xi = Poly::variable(g.phase, g.fiber_slot(v));
        if (count[v] == 1)
            xi = xi * lift(g.visible[unique_comp[v]].affine_form, g.phase);
        images.push_back(std::move(xi));
    }
    return p.compose(g.phase, images);
}

LagCycle LagCycle::raw(const Space& X, std::size_t chart,
                       const std::vector<std::string>& gen_texts, long long multiplicity,
                       std::string label) {
    ChartGeometry g = make_chart_geometry(X, chart);
    ContextPtr frame = toric_frame_context(g);
    std::vector<std::size_t> fiber_vars;
    for (std::size_t v = 0; v < g.base->size(); ++v) fiber_vars.push_back(g.fiber_slot(v));
    std::vector<Poly> gens;
    for (const auto& text : gen_texts) {
        Poly p = parse_poly(text, frame);
        if (!p.homogeneous_in(fiber_vars))
            throw input_error("raw cycle generator is not conic (fiber-homogeneous): " + text);
        gens.push_back(toric_frame_to_ordinary(g, rename(p, g.phase)));
    }
    LagCycle c;
    Component comp;
    comp.label = std::move(label);
    comp.multiplicity = multiplicity;
    comp.kind = Kind::Raw;
    comp.raw_gens[chart] = std::move(gens);
    c.components_.push_back(std::move(comp));
    return c;
}

LagCycle LagCycle::raw_ordinary(const Space&, std::map<std::size_t, std::vector<Poly>> gens,
                                long long multiplicity, std::string label) {
    if (gens.empty()) throw input_error("raw cycle needs generators in at least one chart");
    LagCycle c;
    Component comp;
    comp.label = std::move(label);
    comp.multiplicity = multiplicity;
    comp.kind = Kind::Raw;
    comp.raw_gens = std::move(gens);
    c.components_.push_back(std::move(comp));
    return c;
}

LagCycle& LagCycle::operator+=(const LagCycle& more) {
    for (const auto& comp : more.components_) components_.push_back(comp);
    return *this;
}

LagCycle LagCycle::scaled(long long multiplier) const {
    LagCycle c = *this;
    for (auto& comp : c.components_) comp.multiplicity *= multiplier;
    return c;
}

namespace {

// Monomial chart transition of ordinary-frame generators, saturated by
// the transition units (requires the component to be determined by its
// torus part, which holds for closures of cycles met in the source chart).
std::vector<Poly> transition_ordinary(const Space& X, const ChartGeometry& from,
                                      const ChartGeometry& to, const std::vector<Poly>& gens,
                                      const GbOptions& opts) {
    if (from.chart_index == to.chart_index) return gens;
    const std::size_t n = from.base->size();
    std::vector<RatFunc> images;
    images.reserve(2 * n);
    Poly one = Poly::constant(to.phase, Rational(1));
    auto base_var = [&](std::size_t factor, std::size_t a) {
        return Poly::variable(to.phase, to.var_of_hom(factor, a));
    };
    // base coordinates u_a = Z_a / Z_w  ->  (u-hat_a) / (u-hat_w)
    for (std::size_t v = 0; v < n; ++v) {
        auto [factor, a] = from.var_hom[v];
        std::size_t w = from.dehom[factor], vt = to.dehom[factor];
        Poly num = (a == vt) ? one : base_var(factor, a);
        Poly den = (w == vt) ? one : base_var(factor, w);
        images.emplace_back(num, den);
    }
    // ordinary fiber coordinates by the chain rule (polynomial images)
    for (std::size_t v = 0; v < n; ++v) {
        auto [factor, a] = from.var_hom[v];
        std::size_t w = from.dehom[factor], vt = to.dehom[factor];
        if (w == vt) {
            images.emplace_back(Poly::variable(to.phase, to.fiber_slot(to.var_of_hom(factor, a))));
            continue;
        }
        Poly uhat_w = base_var(factor, w);
        if (a != vt) {
            Poly xi = Poly::variable(to.phase, to.fiber_slot(to.var_of_hom(factor, a)));
            images.emplace_back(uhat_w * xi);
        } else {
            Poly sum = Poly::zero(to.phase);
            for (std::size_t b = 0; b <= X.factor_dim(factor); ++b) {
                if (b == vt) continue;
                std::size_t bv = to.var_of_hom(factor, b);
                sum = sum + Poly::variable(to.phase, bv) *
                                Poly::variable(to.phase, to.fiber_slot(bv));
            }
            images.emplace_back(-(uhat_w * sum));
        }
    }
    std::vector<Poly> out;
    for (const Poly& p : gens) out.push_back(compose_rational(p, to.phase, images).num());
    Poly units = one;
    for (std::size_t i = 0; i < X.factor_count(); ++i)
        if (from.dehom[i] != to.dehom[i])
            units = units * Poly::variable(to.phase, to.var_of_hom(i, from.dehom[i]));
    if (units.is_constant()) return out;
    return saturate(Ideal(to.phase, out), units, opts).gens();
}

} // namespace

std::vector<Poly> LagCycle::ordinary_gens(const Space& X, const ChartGeometry& g,
                                          std::size_t comp_idx, const GbOptions& opts) const {
    const Component& comp = components_.at(comp_idx);
    const std::size_t n = g.base->size();
    switch (comp.kind) {
    case Kind::ZeroSection: {
        std::vector<Poly> gens;
        for (std::size_t v = 0; v < n; ++v)
            gens.push_back(Poly::variable(g.phase, g.fiber_slot(v)));
        return gens;
    }
    case Kind::Conormal: {
        Poly f = lift(dehomogenize(X, g, comp.hom_form), g.phase);
        if (f.is_constant()) return {Poly::constant(g.phase, Rational(1))};
        std::vector<Poly> gens{f};
        if (n == 2) {
            Poly xi0 = Poly::variable(g.phase, g.fiber_slot(0));
            Poly xi1 = Poly::variable(g.phase, g.fiber_slot(1));
            gens.push_back(xi0 * f.partial(1) - xi1 * f.partial(0));
        }
        return gens;
    }
    case Kind::Raw: {
        auto it = comp.raw_gens.find(g.chart_index);
        if (it != comp.raw_gens.end()) return it->second;
        ChartGeometry from = make_chart_geometry(X, comp.raw_gens.begin()->first);
        return transition_ordinary(X, from, g, comp.raw_gens.begin()->second, opts);
    }
    }
    throw internal_error("unknown cycle kind");
}

Ideal LagCycle::closure_ideal(const Space& X, const ChartGeometry& g, std::size_t comp_idx,
                              const GbOptions& opts) const {
    std::vector<Poly> gens = ordinary_gens(X, g, comp_idx, opts);
    Ideal I(g.phase, std::move(gens));
    Poly units = lift(g.product_of_visible_forms(), g.phase);
    if (units.is_constant()) return I;
    return saturate(I, units, opts);
}

std::pair<ContextPtr, std::vector<Poly>> toric_display(const ChartGeometry& g,
                                                       const std::vector<Poly>& gens,
                                                       const GbOptions& opts) {
    const std::size_t n = g.base->size();
    std::vector<std::size_t> unique_comp(n, npos);
    std::vector<std::size_t> count(n, 0);
    for (std::size_t i = 0; i < g.visible.size(); ++i) {
        ++count[g.visible[i].dir_var];
        unique_comp[g.visible[i].dir_var] = i;
    }
    ContextPtr src = gens.empty() ? nullptr : gens.front().context();
    if (!src) return {nullptr, {}};
    std::vector<std::string> names = src->names();
    for (std::size_t v = 0; v < n; ++v)
        if (count[v] == 1) names[n + v] = "eta_" + g.base->name(v);
    ContextPtr renamed = make_context(names);

    Poly units = Poly::constant(renamed, Rational(1));
    std::vector<Poly> out;
    for (const Poly& p : gens) out.push_back(rename(p, renamed));
    for (std::size_t v = 0; v < n; ++v) {
        if (count[v] != 1) continue;
        Poly form = lift(g.visible[unique_comp[v]].affine_form, renamed);
        for (Poly& p : out) p = clear_fiber_direction(p, n + v, form);
        units = units * form;
    }
    if (!units.is_constant() && !out.empty())
        out = saturate(Ideal(renamed, out), units, opts).gens();
    return {renamed, out};
}

// ------------------------------------------------------------- the count

namespace {

struct SectionEquations {
    std::vector<Poly> eqs;       // over the frame phase context
    Poly denominator_product;    // over the frame phase context
};

// eta_j = g_j * xi_j with the g_j-cancellation done symbolically, so the
// equation stays meaningful on the stratum g_j = 0.
RatFunc eta_value(const ChartGeometry& g, const Frame& frame, const LogSection& section,
                  std::size_t base_var) {
    const VisibleComponent& me = g.visible[frame.log_comp[base_var]];
    RatFunc val(me.affine_form.partial(base_var) *
                Rational(static_cast<long>(section.exponents()[me.comp])));
    for (const auto& vc : g.visible) {
        long long e = section.exponents()[vc.comp];
        if (e == 0 || vc.dir_var != base_var || vc.comp == me.comp) continue;
        val = val + RatFunc(me.affine_form * vc.affine_form.partial(base_var) * Rational(static_cast<long>(e)),
                            vc.affine_form);
    }
    return val * RatFunc(Poly::constant(g.base, section.scale()));
}

SectionEquations section_equations(const ChartGeometry& g, const Frame& frame,
                                   const LogSection& section) {
    SectionEquations out;
    out.denominator_product = Poly::constant(frame.phase, Rational(1));
    const std::size_t n = g.base->size();
    for (std::size_t v = 0; v < n; ++v) {
        RatFunc val = frame.log_comp[v] != npos ? eta_value(g, frame, section, v)
                                                : section.xi_value(g, v);
        Poly num = lift(val.num(), frame.phase);
        Poly den = lift(val.den(), frame.phase);
        Poly fiber = Poly::variable(frame.phase, g.fiber_slot(v));
        out.eqs.push_back(fiber * den - num);
        if (!den.is_constant()) out.denominator_product = out.denominator_product * den;
    }
    return out;
}

long long checked_count(const QuotientDim& qd, const std::string& comp, const std::string& stratum,
                        const std::string& chart) {
    if (!qd.finite)
        throw nontransverse_error("NON_TRANSVERSE: positive-dimensional intersection of '" +
                                      comp + "' over stratum {" + stratum + "} in chart " +
                                      chart + "; try a different f",
                                  comp, stratum, chart);
    return static_cast<long long>(qd.dim);
}

// Degree of the part of the zero-dimensional scheme visible in at least
// one earlier chart (inclusion-exclusion over the overlap units).
long long overlap_degree(const Ideal& I, const std::vector<std::set<std::size_t>>& units,
                         const GbOptions& opts) {
    if (units.empty()) return 0;
    std::map<std::set<std::size_t>, long long> memo;
    auto degree_off = [&](const std::set<std::size_t>& vars) {
        auto it = memo.find(vars);
        if (it != memo.end()) return it->second;
        Poly prod = Poly::constant(I.context(), Rational(1));
        for (std::size_t v : vars) prod = prod * Poly::variable(I.context(), v);
        QuotientDim qd = quotient_dim(saturate(I, prod, opts), opts);
        if (!qd.finite) throw internal_error("saturation of a zero-dimensional ideal blew up");
        return memo.emplace(vars, static_cast<long long>(qd.dim)).first->second;
    };
    long long total = 0;
    const std::size_t m = units.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
        std::set<std::size_t> u;
        int bits = 0;
        for (std::size_t t = 0; t < m; ++t)
            if (mask & (std::size_t(1) << t)) {
                u.insert(units[t].begin(), units[t].end());
                ++bits;
            }
        total += (bits % 2 == 1 ? 1 : -1) * degree_off(u);
    }
    return total;
}

} // namespace

CountReport intersect_count(const Space& X, const LagCycle& cycle, const LogSection& section,
                            const CountOptions& opts) {
    CountReport report;
    report.f = section.f_str(X);
    report.scale = to_string(section.scale());

    std::vector<ChartGeometry> geoms;
    for (std::size_t k = 0; k < X.chart_count(); ++k) geoms.push_back(make_chart_geometry(X, k));
    const bool complete = X.boundary_contains_all_coordinate_hyperplanes();
    const std::size_t ncomp = X.boundary().size();

    std::set<std::string> warnings;
    for (std::size_t ci = 0; ci < cycle.components().size(); ++ci) {
        ComponentCount cc;
        cc.label = cycle.components()[ci].label;
        cc.multiplicity = cycle.components()[ci].multiplicity;

        for (std::size_t mask = 0; mask < (std::size_t(1) << ncomp); ++mask) {
            std::vector<std::size_t> comps;
            for (std::size_t c = 0; c < ncomp; ++c)
                if (mask & (std::size_t(1) << c)) comps.push_back(c);
            if (!stratum_nonempty(X, comps)) continue;
            std::vector<std::size_t> seeing = charts_seeing(X, comps, opts.chart_rotation);
            std::string stratum_str = component_label_list(X, comps);

            for (std::size_t pos = 0; pos < seeing.size(); ++pos) {
                // With every coordinate hyperplane on the boundary each
                // stratum lies inside its first chart; later charts only
                // recount the same points.
                if (complete && pos > 0) break;
                const ChartGeometry& g = geoms[seeing[pos]];

                std::vector<std::size_t> j_visible;
                for (std::size_t c : comps) j_visible.push_back(*g.visible_index_of(c));
                Frame frame = make_frame(g, j_visible);

                // Cycle closure in the stratum-adapted frame.
                std::vector<Poly> gens;
                for (const Poly& p : cycle.ordinary_gens(X, g, ci, opts.gb))
                    gens.push_back(rename(p, frame.phase));
                for (std::size_t v = 0; v < g.base->size(); ++v)
                    if (frame.log_comp[v] != npos)
                        for (Poly& p : gens)
                            p = clear_fiber_direction(
                                p, g.fiber_slot(v),
                                lift(g.visible[frame.log_comp[v]].affine_form, frame.phase));
                Poly all_forms = lift(g.product_of_visible_forms(), frame.phase);
                Ideal closure = all_forms.is_constant()
                                    ? Ideal(frame.phase, gens)
                                    : saturate(Ideal(frame.phase, gens), all_forms, opts.gb);

                // Full intersection scheme over the stratum-adapted frame:
                // closure of the cycle plus the section equations, with the
                // off-stratum components and denominators inverted. The
                // stratum equations are NOT imposed; the part of the scheme
                // supported on the stratum is extracted below, so that
                // non-reduced structure sticking out of the stratum is
                // still counted by its full length.
                std::vector<Poly> combined = closure.gens();
                SectionEquations sect = section_equations(g, frame, section);
                for (Poly& e : sect.eqs) combined.push_back(std::move(e));

                Poly off = sect.denominator_product;
                for (const auto& vc : g.visible) {
                    bool in_j = false;
                    for (std::size_t jv : j_visible)
                        if (g.visible[jv].comp == vc.comp) in_j = true;
                    if (!in_j) off = off * lift(vc.affine_form, frame.phase);
                }
                Ideal I(frame.phase, std::move(combined));
                if (!off.is_constant()) I = saturate(I, off, opts.gb);
                checked_count(quotient_dim(I, opts.gb), cc.label, stratum_str, g.label);

                std::vector<std::set<std::size_t>> units;
                for (std::size_t prev = 0; prev < pos; ++prev) {
                    auto dehom_prev = X.chart_dehom(seeing[prev]);
                    std::set<std::size_t> vars;
                    for (std::size_t i = 0; i < X.factor_count(); ++i)
                        if (dehom_prev[i] != g.dehom[i])
                            vars.insert(g.var_of_hom(i, dehom_prev[i]));
                    units.push_back(std::move(vars));
                }

                // Moebius extraction: sum over T of (-1)^|T| deg(I : g_T^oo)
                // counts exactly the points with every g_j = 0 (j in J),
                // with their full scheme length; the same signed sum of the
                // earlier-chart overlaps attributes each point to its first
                // chart.
                long long on_stratum = 0, fresh = 0;
                const std::size_t jn = j_visible.size();
                for (std::size_t tmask = 0; tmask < (std::size_t(1) << jn); ++tmask) {
                    Poly prod = Poly::constant(frame.phase, Rational(1));
                    int bits = 0;
                    for (std::size_t t = 0; t < jn; ++t)
                        if (tmask & (std::size_t(1) << t)) {
                            prod = prod * lift(g.visible[j_visible[t]].affine_form, frame.phase);
                            ++bits;
                        }
                    Ideal sat_t = bits == 0 ? I : saturate(I, prod, opts.gb);
                    long long deg = checked_count(quotient_dim(sat_t, opts.gb), cc.label,
                                                  stratum_str, g.label);
                    long long sign = (bits % 2 == 0) ? 1 : -1;
                    on_stratum += sign * deg;
                    fresh += sign * (deg - overlap_degree(sat_t, units, opts.gb));
                }
                if (fresh < 0 || on_stratum < 0)
                    throw internal_error("negative stratum count after attribution");

                // The stratum-cut scheme (length computed after imposing the
                // stratum equations): equal to on_stratum exactly when the
                // intersection is transverse along the stratum directions.
                std::vector<Poly> cut = I.gens();
                for (std::size_t jv : j_visible)
                    cut.push_back(lift(g.visible[jv].affine_form, frame.phase));
                Ideal Icut(frame.phase, std::move(cut));
                long long cut_deg = checked_count(quotient_dim(Icut, opts.gb), cc.label,
                                                  stratum_str, g.label);

                StratumEntry entry;
                entry.chart = g.label;
                for (std::size_t c : comps) entry.stratum.push_back(X.boundary()[c].label);
                entry.count = fresh;
                if (fresh > 0) {
                    if (on_stratum != cut_deg || !is_radical_zero_dimensional(Icut, opts.gb))
                        warnings.insert("non-reduced intersection over stratum {" + stratum_str +
                                        "}: counted by scheme length");
                    if (opts.extract_points && fresh == on_stratum && cut_deg == on_stratum) {
                        if (auto pt = try_rational_point(Icut, opts.gb)) {
                            PointRecord rec;
                            for (std::size_t v = 0; v < frame.phase->size(); ++v)
                                rec.coordinates.emplace_back(frame.phase->name(v),
                                                             to_string((*pt)[v]));
                            entry.points.push_back(std::move(rec));
                        }
                    }
                }
                if (pos == 0 || fresh != 0) cc.strata.push_back(std::move(entry));
                cc.degree += fresh;
            }
        }
        report.total += cc.multiplicity * cc.degree;
        report.components.push_back(std::move(cc));
    }
    report.warnings.assign(warnings.begin(), warnings.end());
    return report;
}

long long euler_char(const Space& X, const std::vector<std::pair<LagCycle, long long>>& cycles,
                     const LogSection& section, const CountOptions& opts) {
    long long chi = 0;
    for (const auto& [cycle, mult] : cycles)
        chi += mult * intersect_count(X, cycle, section, opts).total;
    return chi;
}

// ------------------------------------------------------------ sharp family

SharpFamily::SharpFamily(const Space& X, const LagCycle& cycle, const LogSection& section,
                         const GbOptions& opts)
    : SharpFamily(X, cycle, std::vector<LogSection>{section}, opts) {}

SharpFamily::SharpFamily(const Space& X, const LagCycle& cycle,
                         std::vector<LogSection> sections, const GbOptions& opts)
    : space_(&X), nparams_(sections.size()) {
    if (sections.empty()) throw input_error("sharp family needs at least one f");
    for (const auto& comp : cycle.components()) {
        labels_.push_back(comp.label);
        mults_.push_back(comp.multiplicity);
    }
    for (std::size_t k = 0; k < X.chart_count(); ++k) {
        ChartGeometry g = make_chart_geometry(X, k);
        std::vector<std::string> names = g.phase->names();
        if (nparams_ == 1) {
            names.push_back("s");
        } else {
            for (std::size_t l = 1; l <= nparams_; ++l)
                names.push_back("s" + std::to_string(l));
        }
        ContextPtr fam = make_context(names);
        const std::size_t n = g.base->size();
        const std::size_t s_base = g.phase->size();

        // xi_v -> xi_v - sum_l s_l * (dlog f_l)_v, denominators cleared.
        std::vector<RatFunc> images;
        for (std::size_t v = 0; v < n; ++v)
            images.emplace_back(Poly::variable(fam, v));
        for (std::size_t v = 0; v < n; ++v) {
            RatFunc shear(Poly::variable(fam, g.fiber_slot(v)));
            for (std::size_t l = 0; l < nparams_; ++l) {
                RatFunc val = sections[l].xi_value(g, v);
                RatFunc term(Poly::variable(fam, s_base + l) * lift(val.num(), fam),
                             lift(val.den(), fam));
                shear = shear - term;
            }
            images.push_back(std::move(shear));
        }

        std::vector<std::vector<Poly>> per_comp;
        Poly units = lift(g.product_of_visible_forms(), fam);
        for (std::size_t ci = 0; ci < cycle.components().size(); ++ci) {
            std::vector<Poly> gens;
            for (const Poly& p : cycle.ordinary_gens(X, g, ci, opts))
                gens.push_back(compose_rational(p, fam, images).num());
            if (!units.is_constant())
                gens = saturate(Ideal(fam, gens), units, opts).gens();
            per_comp.push_back(std::move(gens));
        }
        ctx_.push_back(fam);
        gens_.push_back(std::move(per_comp));
    }
}

const ContextPtr& SharpFamily::family_context(std::size_t chart) const { return ctx_.at(chart); }

const std::vector<Poly>& SharpFamily::gens(std::size_t chart, std::size_t comp_idx) const {
    return gens_.at(chart).at(comp_idx);
}

LagCycle SharpFamily::fiber(const std::vector<Rational>& s0, const GbOptions&) const {
    if (s0.size() != nparams_)
        throw input_error("sharp fiber needs one value per parameter");
    LagCycle out;
    for (std::size_t ci = 0; ci < labels_.size(); ++ci) {
        std::map<std::size_t, std::vector<Poly>> by_chart;
        for (std::size_t k = 0; k < ctx_.size(); ++k) {
            ChartGeometry g = make_chart_geometry(*space_, k);
            const std::size_t s_base = g.phase->size();
            std::vector<Poly> gens;
            for (const Poly& p : gens_[k][ci]) {
                Poly q = p;
                for (std::size_t l = 0; l < nparams_; ++l)
                    q = q.substitute(s_base + l, s0[l]);
                Poly shrunk = Poly::zero(g.phase);
                for (const auto& [e, c] : q.terms())
                    shrunk.add_term(ExpVec(e.begin(), e.begin() + s_base), c);
                gens.push_back(std::move(shrunk));
            }
            by_chart[k] = std::move(gens);
        }
        std::string tag = labels_[ci] + "#s=";
        for (std::size_t l = 0; l < s0.size(); ++l) tag += (l ? "," : "") + to_string(s0[l]);
        out += LagCycle::raw_ordinary(*space_, std::move(by_chart), mults_[ci], tag);
    }
    return out;
}

LagCycle SharpFamily::fiber(const Rational& s0, const GbOptions& opts) const {
    return fiber(std::vector<Rational>(nparams_, s0), opts);
}

} // namespace logchi
